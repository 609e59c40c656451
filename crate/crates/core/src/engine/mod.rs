//! The execute function and its loop templates.
//!
//! An evaluation runs
//!
//! ```text
//! init
//! load_once            (once per slot)
//! for each window of unroll * width elements:
//!     for each package:
//!         load      slot k..k+m   (burst)
//!         vector_op slot k..k+m   (burst)
//!         store     slot k..k+m   (burst)
//! single_op            (each index past the masked length)
//! cleanup
//! reduction            (reduction roots only)
//! ```
//!
//! Slot `k` of a window starting at `i` covers elements `i + k * width ..`.
//! Every supported `(unroll, packages)` pair has its own monomorphized loop,
//! so slot arrays and package bounds are compile-time constants.

use std::marker::PhantomData;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::{AssignNode, Destination, ExprNode, Reduction};
use crate::lanes::{LaneCapabilities, Native, Vectorizer};

mod plan;
mod trace;

pub use plan::{
    masked_length, select_plan, PlanOverrides, UnrollPlan, DEFAULT_REGISTER_BUDGET,
    SUPPORTED_UNROLLS,
};
pub use trace::{call_trace, TraceEvent};

#[inline(always)]
fn drive<S, V, R, F, T, const U: usize, const P: usize>(root: &R, plan: &UnrollPlan, finish: F) -> T
where
    S: Element,
    V: Vectorizer<S>,
    R: ExprNode<S, V>,
    F: FnOnce(&R, &[R::Storage], &R::TemporaryStorage) -> T,
{
    let w = V::WIDTH;
    let per_package = U / P;
    let len = plan.length();
    let n = plan.masked_length();

    let mut ts = R::TemporaryStorage::default();
    root.init(&mut ts);

    let mut slots: [R::Storage; U] = std::array::from_fn(|_| R::Storage::default());
    for s in slots.iter_mut() {
        root.load_once(s, &mut ts);
    }

    let mut i = 0;
    while i < n {
        for package in slots.chunks_exact_mut(per_package) {
            // SAFETY: i + U * w <= n <= len, every window start is a
            // multiple of w and lengths were checked by the caller.
            for (k, s) in package.iter_mut().enumerate() {
                unsafe { root.load(i + k * w, s, &mut ts) };
            }
            for (k, s) in package.iter_mut().enumerate() {
                root.vector_op(i + k * w, s, &mut ts);
            }
            for (k, s) in package.iter_mut().enumerate() {
                unsafe { root.store(i + k * w, s, &mut ts) };
            }
            i += per_package * w;
        }
    }

    for j in n..len {
        unsafe { root.single_op(j, &mut ts) };
    }
    root.cleanup(&mut ts);
    finish(root, &slots, &ts)
}

fn validate<S, V, R>(root: &R, plan: &UnrollPlan) -> Result<()>
where
    S: Element,
    V: Vectorizer<S>,
    R: ExprNode<S, V>,
{
    if plan.width() != V::WIDTH {
        return Err(Error::WidthMismatch { plan: plan.width(), backend: V::WIDTH });
    }
    let len = root.len();
    if plan.length() != len {
        return Err(Error::PlanLengthMismatch { plan: plan.length(), expr: len });
    }
    root.check_len(len)
}

/// Runs the loop template selected by `plan` over `root`, then hands the
/// slot storages and loop-wide storage to `finish`.
pub(crate) fn run<S, V, R, F, T>(root: &R, plan: &UnrollPlan, finish: F) -> Result<T>
where
    S: Element,
    V: Vectorizer<S>,
    R: ExprNode<S, V>,
    F: FnOnce(&R, &[R::Storage], &R::TemporaryStorage) -> T,
{
    validate::<S, V, R>(root, plan)?;
    macro_rules! templates {
        ($(($u:literal, $p:literal)),*) => {
            match (plan.unroll(), plan.packages()) {
                $(($u, $p) => drive::<S, V, R, F, T, $u, $p>(root, plan, finish),)*
                (u, p) => unreachable!("plan ({u}, {p}) passed validation"),
            }
        };
    }
    Ok(templates!((1, 1), (2, 1), (2, 2), (4, 1), (4, 2), (4, 4), (8, 1), (8, 2), (8, 4), (8, 8)))
}

/// Evaluates an assignment: `destination[i] = source(i)` for every `i`.
pub fn execute_assign<S, V, D, E>(root: &AssignNode<D, E>, plan: &UnrollPlan) -> Result<()>
where
    S: Element,
    V: Vectorizer<S>,
    D: Destination<S>,
    E: ExprNode<S, V>,
{
    run::<S, V, _, _, _>(root, plan, |_, _, _| ())
}

/// Evaluates a reduction root and returns its scalar.
pub fn execute_reduce<S, V, R>(root: &R, plan: &UnrollPlan) -> Result<S>
where
    S: Element,
    V: Vectorizer<S>,
    R: Reduction<S, V>,
{
    run::<S, V, _, _, _>(root, plan, |r, slots, ts| r.reduction(slots, ts))
}

/// Plans and runs evaluations on backend `V`.
#[derive(Debug)]
pub struct Executor<V = Native> {
    overrides: PlanOverrides,
    _backend: PhantomData<V>,
}

impl<V> Clone for Executor<V> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<V> Copy for Executor<V> {}

impl<V> Default for Executor<V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<V> Executor<V> {
    pub fn new() -> Self {
        Executor { overrides: PlanOverrides::default(), _backend: PhantomData }
    }

    pub fn with_overrides(overrides: PlanOverrides) -> Self {
        Executor { overrides, _backend: PhantomData }
    }

    /// Pins the unroll factor.
    pub fn unroll(mut self, unroll: usize) -> Self {
        self.overrides.unroll = Some(unroll);
        self
    }

    /// Pins the number of instruction packages per iteration.
    pub fn packages(mut self, packages: usize) -> Self {
        self.overrides.packages = Some(packages);
        self
    }

    pub fn register_budget(mut self, budget: usize) -> Self {
        self.overrides.register_budget = Some(budget);
        self
    }

    pub fn overrides(&self) -> &PlanOverrides {
        &self.overrides
    }

    /// The plan this executor would use for `root`.
    pub fn plan<S, R>(&self, root: &R) -> Result<UnrollPlan>
    where
        S: Element,
        V: Vectorizer<S>,
        R: ExprNode<S, V>,
    {
        select_plan(
            R::REGISTER_FOOTPRINT,
            root.len(),
            LaneCapabilities::of::<S, V>(),
            &self.overrides,
        )
    }

    pub fn run_assign<S, D, E>(&self, root: &AssignNode<D, E>) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
        D: Destination<S>,
        E: ExprNode<S, V>,
    {
        let plan = self.plan(root)?;
        execute_assign(root, &plan)
    }

    pub fn run_reduce<S, R>(&self, root: &R) -> Result<S>
    where
        S: Element,
        V: Vectorizer<S>,
        R: Reduction<S, V>,
    {
        let plan = self.plan(root)?;
        execute_reduce(root, &plan)
    }
}

#[cfg(test)]
mod tests;
