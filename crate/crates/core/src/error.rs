use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} elements, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unsupported unroll factor {0} (supported: 1, 2, 4, 8)")]
    UnsupportedUnroll(usize),

    #[error("packages per iteration must be >= 1 and divide the unroll factor {unroll}, got {packages}")]
    PackagesDoNotDivide { unroll: usize, packages: usize },

    #[error("unroll x width = {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("plan lane width {plan} does not match backend width {backend}")]
    WidthMismatch { plan: usize, backend: usize },

    #[error("plan was built for length {plan}, expression has length {expr}")]
    PlanLengthMismatch { plan: usize, expr: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
