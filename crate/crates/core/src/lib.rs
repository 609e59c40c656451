//! Dense vector arithmetic with lazy expressions and explicitly scheduled
//! SIMD loops.
//!
//! ```
//! use lanefuse::DenseVector;
//!
//! let a = DenseVector::from_values(&[1.0f32, 1.0, 1.0, 1.0, 1.0]);
//! let b = DenseVector::from_values(&[5.0f32, 5.0, 5.0, 5.0, 5.0]);
//! let c = DenseVector::from_values(&[1.0f32, 2.0, 3.0, 4.0, 5.0]);
//! let mut d = DenseVector::zeros(5);
//!
//! // Builds an expression tree; nothing is computed yet.
//! let e = &a + (&b - &c);
//! // One fused loop over all five elements.
//! d.assign(e).unwrap();
//! assert_eq!(d.to_values(), vec![5.0, 4.0, 3.0, 2.0, 1.0]);
//! ```
//!
//! The pieces:
//!
//! * [`lanes`]: backend-independent lane vectors ([`Scalar`], [`Sse`]).
//! * [`vector`]: the aligned [`DenseVector`] container.
//! * [`expr`]: expression nodes and operator overloading.
//! * [`engine`]: plan selection and the unrolled loop templates.
//! * [`blas`]: `dot`, `scal`, `axpy`, fused `scaled_copy`, `sum`, `norm2`.
//! * [`oracle`]: naive reference loops and counting instrumentation.
//! * [`bench`]: throughput sweeps written as CSV.

pub mod bench;
pub mod blas;
pub mod element;
pub mod engine;
pub mod error;
pub mod expr;
pub mod lanes;
pub mod oracle;
pub mod vector;

pub use blas::{axpy, dot, norm2, scal, scaled_copy, sum};
pub use element::Element;
pub use engine::{Executor, PlanOverrides, UnrollPlan};
pub use error::{Error, Result};
pub use expr::{Expr, ExprNode, IntoExpr, Reduction};
pub use lanes::{LaneCapabilities, LaneVector, Native, Scalar, Vectorizer};
#[cfg(target_arch = "x86_64")]
pub use lanes::Sse;
pub use vector::DenseVector;
