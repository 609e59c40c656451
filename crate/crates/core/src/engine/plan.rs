use crate::error::{Error, Result};
use crate::lanes::LaneCapabilities;

/// Unroll factors with a compiled loop template.
pub const SUPPORTED_UNROLLS: [usize; 4] = [1, 2, 4, 8];

/// Vector registers assumed available per loop (x86-64 SSE has 16).
pub const DEFAULT_REGISTER_BUDGET: usize = 16;

/// Optional pins for plan selection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlanOverrides {
    pub unroll: Option<usize>,
    pub packages: Option<usize>,
    pub register_budget: Option<usize>,
}

impl PlanOverrides {
    pub fn unroll(mut self, unroll: usize) -> Self {
        self.unroll = Some(unroll);
        self
    }

    pub fn packages(mut self, packages: usize) -> Self {
        self.packages = Some(packages);
        self
    }

    pub fn register_budget(mut self, budget: usize) -> Self {
        self.register_budget = Some(budget);
        self
    }
}

/// Shape of one evaluation loop.
///
/// Each main-loop iteration covers `unroll * width` elements split into
/// `packages` instruction packages of `unroll / packages` slots each. The
/// main loop stops at `masked_length`; the rest is handled one element at a
/// time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnrollPlan {
    unroll: usize,
    width: usize,
    packages: usize,
    length: usize,
    masked_length: usize,
}

impl UnrollPlan {
    /// Validates and builds a plan.
    pub fn new(unroll: usize, width: usize, packages: usize, length: usize) -> Result<Self> {
        if !SUPPORTED_UNROLLS.contains(&unroll) {
            return Err(Error::UnsupportedUnroll(unroll));
        }
        if packages == 0 || unroll % packages != 0 {
            return Err(Error::PackagesDoNotDivide { unroll, packages });
        }
        let step = unroll * width;
        if !step.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(step));
        }
        Ok(UnrollPlan { unroll, width, packages, length, masked_length: masked_length(length, step) })
    }

    pub fn unroll(&self) -> usize {
        self.unroll
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn packages(&self) -> usize {
        self.packages
    }

    pub fn slots_per_package(&self) -> usize {
        self.unroll / self.packages
    }

    /// Elements per main-loop iteration.
    pub fn step(&self) -> usize {
        self.unroll * self.width
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn masked_length(&self) -> usize {
        self.masked_length
    }

    /// Number of elements left to the scalar remainder loop.
    pub fn remainder(&self) -> usize {
        self.length - self.masked_length
    }

    /// Same loop shape for a different length.
    pub fn with_length(&self, length: usize) -> Self {
        UnrollPlan { length, masked_length: masked_length(length, self.step()), ..*self }
    }
}

/// Largest multiple of `step` not above `length`. `step` must be a power of
/// two.
#[inline]
pub fn masked_length(length: usize, step: usize) -> usize {
    debug_assert!(step.is_power_of_two());
    length & !(step - 1)
}

/// Chooses the loop shape for an expression.
///
/// Without overrides the unroll factor is the largest of 1, 2, 4, 8 whose
/// slots fit in the register budget (`unroll * footprint <= budget`), and
/// every package holds a single slot. A non-specialized backend runs
/// unrolled once. An explicit unroll override is honoured as is, even past
/// the budget.
pub fn select_plan(
    footprint: usize,
    length: usize,
    caps: LaneCapabilities,
    overrides: &PlanOverrides,
) -> Result<UnrollPlan> {
    let footprint = footprint.max(1);
    let unroll = match overrides.unroll {
        Some(u) => u,
        None if !caps.specialized => 1,
        None => {
            let budget = overrides.register_budget.unwrap_or(DEFAULT_REGISTER_BUDGET);
            SUPPORTED_UNROLLS
                .iter()
                .rev()
                .copied()
                .find(|u| u * footprint <= budget)
                .unwrap_or(1)
        }
    };
    let packages = overrides.packages.unwrap_or(unroll);
    UnrollPlan::new(unroll, caps.width, packages, length)
}
