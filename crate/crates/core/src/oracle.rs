//! Independent reference implementations and instrumentation.
//!
//! The `oracle_*` functions are plain left-to-right loops over slices with
//! no lanes, unrolling or masking. [`CountingVector`] is a vector whose
//! element reads and writes are tallied when it takes part in an
//! evaluation, which makes single-pass and laziness claims checkable.

use std::cell::Cell;
use std::marker::PhantomData;

use crate::element::Element;
use crate::engine::Executor;
use crate::error::{Error, Result};
use crate::expr::{impl_expr_ops, AssignNode, Destination, Expr, ExprNode, IntoExpr};
use crate::lanes::{LaneVector, Vectorizer};
use crate::vector::DenseVector;

fn check(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

pub fn oracle_dot<S: Element>(x: &[S], y: &[S]) -> Result<S> {
    check(x.len(), y.len())?;
    let mut acc = S::ZERO;
    for i in 0..x.len() {
        acc = acc + x[i] * y[i];
    }
    Ok(acc)
}

pub fn oracle_sum<S: Element>(x: &[S]) -> S {
    let mut acc = S::ZERO;
    for &v in x {
        acc = acc + v;
    }
    acc
}

pub fn oracle_norm2<S: Element>(x: &[S]) -> S {
    let mut acc = S::ZERO;
    for &v in x {
        acc = acc + v * v;
    }
    acc.sqrt()
}

pub fn oracle_scal<S: Element>(alpha: S, x: &mut [S]) {
    for v in x.iter_mut() {
        *v = alpha * *v;
    }
}

pub fn oracle_axpy<S: Element>(alpha: S, x: &[S], y: &mut [S]) -> Result<()> {
    check(x.len(), y.len())?;
    for i in 0..x.len() {
        y[i] = y[i] + alpha * x[i];
    }
    Ok(())
}

pub fn oracle_scaled_copy<S: Element>(alpha: S, x: &[S], out: &mut [S]) -> Result<()> {
    check(x.len(), out.len())?;
    for i in 0..x.len() {
        out[i] = alpha * x[i];
    }
    Ok(())
}

/// Kahan compensated sum, left to right.
pub fn kahan_sum<S: Element, I: IntoIterator<Item = S>>(values: I) -> S {
    let mut sum = S::ZERO;
    let mut c = S::ZERO;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Compensated dot product; the products themselves are rounded to `S`.
pub fn kahan_dot<S: Element>(x: &[S], y: &[S]) -> Result<S> {
    check(x.len(), y.len())?;
    Ok(kahan_sum(x.iter().zip(y).map(|(&a, &b)| a * b)))
}

/// Relative error bound for an `n`-term reduction in `S`:
/// `max(1e-6, 4 n eps)` for `f32`, `max(1e-12, 4 n eps)` for `f64`.
pub fn reduction_tolerance<S: Element>(n: usize) -> f64 {
    let floor: f64 = if std::mem::size_of::<S>() == 4 { 1e-6 } else { 1e-12 };
    floor.max(4.0 * n as f64 * S::EPSILON.to_f64())
}

/// `|got - reference| <= reduction_tolerance(n) * magnitude`.
///
/// `magnitude` is normally `|reference|`; for sums whose terms cancel pass
/// the sum of absolute terms instead, the quantity the rounding error scales
/// with.
pub fn within_reduction_tolerance<S: Element>(got: S, reference: S, magnitude: S, n: usize) -> bool {
    let err = (got.to_f64() - reference.to_f64()).abs();
    err <= reduction_tolerance::<S>(n) * magnitude.to_f64().abs()
}

/// A vector that counts element reads and writes made by evaluations.
///
/// Counts are per element: a lane load of width `W` counts `W` reads.
/// Building expressions over it never counts anything.
#[derive(Debug)]
pub struct CountingVector<S: Element> {
    data: DenseVector<S>,
    reads: Cell<usize>,
    writes: Cell<usize>,
}

impl<S: Element> CountingVector<S> {
    pub fn new(data: DenseVector<S>) -> Self {
        CountingVector { data, reads: Cell::new(0), writes: Cell::new(0) }
    }

    pub fn from_values(values: &[S]) -> Self {
        Self::new(DenseVector::from_values(values))
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(DenseVector::zeros(len))
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn reads(&self) -> usize {
        self.reads.get()
    }

    pub fn writes(&self) -> usize {
        self.writes.get()
    }

    pub fn reset_counts(&self) {
        self.reads.set(0);
        self.writes.set(0);
    }

    /// Uncounted view of the values.
    pub fn values(&self) -> &[S] {
        self.data.as_slice()
    }

    pub fn into_inner(self) -> DenseVector<S> {
        self.data
    }

    pub fn expr(&self) -> Expr<CountingLeaf<'_, S>> {
        self.into_expr()
    }

    /// `self = source`, counting writes into `self`.
    pub fn assign<V, Src>(&mut self, exec: &Executor<V>, source: Src) -> Result<()>
    where
        V: Vectorizer<S>,
        Src: IntoExpr,
        Src::Node: ExprNode<S, V>,
    {
        let target = CountingTarget {
            ptr: self.data.as_mut_ptr(),
            len: self.data.len(),
            writes: &self.writes,
            _borrow: PhantomData,
        };
        exec.run_assign(&AssignNode::new(target, source.into_expr().into_node()))
    }

    /// `self = build(self)`, counting reads and writes of `self`.
    pub fn update<'a, V, E, F>(&'a mut self, exec: &Executor<V>, build: F) -> Result<()>
    where
        V: Vectorizer<S>,
        E: ExprNode<S, V>,
        F: FnOnce(Expr<CountingLeaf<'a, S>>) -> Expr<E>,
    {
        let len = self.data.len();
        let ptr = self.data.as_mut_ptr();
        let leaf = CountingLeaf { ptr: ptr as *const S, len, reads: &self.reads, _borrow: PhantomData };
        let source = build(Expr::new(leaf)).into_node();
        let target = CountingTarget { ptr, len, writes: &self.writes, _borrow: PhantomData };
        exec.run_assign(&AssignNode::new(target, source))
    }
}

/// Expression leaf over a [`CountingVector`].
#[derive(Debug)]
pub struct CountingLeaf<'a, S> {
    ptr: *const S,
    len: usize,
    reads: &'a Cell<usize>,
    _borrow: PhantomData<&'a [S]>,
}

impl<S> Clone for CountingLeaf<'_, S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for CountingLeaf<'_, S> {}

impl<'a, S: Element> IntoExpr for &'a CountingVector<S> {
    type Node = CountingLeaf<'a, S>;

    fn into_expr(self) -> Expr<CountingLeaf<'a, S>> {
        Expr::new(CountingLeaf {
            ptr: self.data.as_ptr(),
            len: self.data.len(),
            reads: &self.reads,
            _borrow: PhantomData,
        })
    }
}

impl_expr_ops!(['a, S: Element,] &'a CountingVector<S>);

impl<S: Element, V: Vectorizer<S>> ExprNode<S, V> for CountingLeaf<'_, S> {
    type Storage = LaneVector<S, V>;
    type TemporaryStorage = ();

    const REGISTER_FOOTPRINT: usize = 1;

    fn len(&self) -> usize {
        self.len
    }

    fn check_len(&self, len: usize) -> Result<()> {
        check(len, self.len)
    }

    fn init(&self, _ts: &mut ()) {}

    fn cleanup(&self, _ts: &mut ()) {}

    fn load_once(&self, _s: &mut LaneVector<S, V>, _ts: &mut ()) {}

    unsafe fn load(&self, i: usize, s: &mut LaneVector<S, V>, _ts: &mut ()) {
        self.reads.set(self.reads.get() + V::WIDTH);
        *s = LaneVector::from_raw(unsafe { V::load(self.ptr.add(i)) });
    }

    fn vector_op(&self, _i: usize, s: &mut LaneVector<S, V>, _ts: &mut ()) -> LaneVector<S, V> {
        *s
    }

    unsafe fn store(&self, _i: usize, _s: &mut LaneVector<S, V>, _ts: &mut ()) {}

    unsafe fn single_op(&self, i: usize, _ts: &mut ()) -> S {
        self.reads.set(self.reads.get() + 1);
        unsafe { self.ptr.add(i).read() }
    }
}

/// Assignment target that counts writes.
#[derive(Debug)]
pub struct CountingTarget<'a, S> {
    ptr: *mut S,
    len: usize,
    writes: &'a Cell<usize>,
    _borrow: PhantomData<&'a mut [S]>,
}

impl<S: Element> Destination<S> for CountingTarget<'_, S> {
    fn len(&self) -> usize {
        self.len
    }

    unsafe fn write_lanes<V: Vectorizer<S>>(&self, i: usize, v: LaneVector<S, V>) {
        self.writes.set(self.writes.get() + V::WIDTH);
        unsafe { V::store(self.ptr.add(i), v.raw()) }
    }

    unsafe fn write(&self, i: usize, value: S) {
        self.writes.set(self.writes.get() + 1);
        unsafe { self.ptr.add(i).write(value) }
    }
}
