//! Reduction roots. Each keeps one lane accumulator per unroll slot plus a
//! scalar accumulator for the remainder, and combines them in a fixed order:
//! slots ascending, lanes left to right, remainder last.

use super::{ExprNode, Reduction};
use crate::element::Element;
use crate::error::Result;
use crate::lanes::{LaneVector, Vectorizer};

#[inline]
fn combine<'s, S, V, I>(accumulators: I, remainder: S) -> S
where
    S: Element,
    V: Vectorizer<S>,
    I: IntoIterator<Item = &'s LaneVector<S, V>>,
{
    let mut total = S::ZERO;
    for acc in accumulators {
        total = total + acc.horizontal_sum();
    }
    total + remainder
}

/// `Σ child(i)`.
#[derive(Clone, Copy, Debug)]
pub struct SumNode<E> {
    child: E,
}

impl<E> SumNode<E> {
    pub fn new(child: E) -> Self {
        SumNode { child }
    }
}

impl<S, V, E> ExprNode<S, V> for SumNode<E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    type Storage = (E::Storage, LaneVector<S, V>);
    type TemporaryStorage = (E::TemporaryStorage, S);

    const REGISTER_FOOTPRINT: usize = E::REGISTER_FOOTPRINT + 1;

    #[inline(always)]
    fn len(&self) -> usize {
        self.child.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        self.child.check_len(len)
    }

    #[inline(always)]
    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.child.init(&mut ts.0);
        ts.1 = S::ZERO;
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.child.cleanup(&mut ts.0);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.child.load_once(&mut s.0, &mut ts.0);
        s.1 = LaneVector::splat(S::ZERO);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.load(i, &mut s.0, &mut ts.0) }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        let v = self.child.vector_op(i, &mut s.0, &mut ts.0);
        s.1 = s.1 + v;
        s.1
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.store(i, &mut s.0, &mut ts.0) }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        let v = unsafe { self.child.single_op(i, &mut ts.0) };
        ts.1 = ts.1 + v;
        ts.1
    }
}

impl<S, V, E> Reduction<S, V> for SumNode<E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    fn reduction(&self, slots: &[Self::Storage], ts: &Self::TemporaryStorage) -> S {
        combine(slots.iter().map(|s| &s.1), ts.1)
    }
}

/// `Σ left(i) * right(i)`.
#[derive(Clone, Copy, Debug)]
pub struct DotNode<L, R> {
    left: L,
    right: R,
}

impl<L, R> DotNode<L, R> {
    pub fn new(left: L, right: R) -> Self {
        DotNode { left, right }
    }
}

impl<S, V, L, R> ExprNode<S, V> for DotNode<L, R>
where
    S: Element,
    V: Vectorizer<S>,
    L: ExprNode<S, V>,
    R: ExprNode<S, V>,
{
    type Storage = (L::Storage, R::Storage, LaneVector<S, V>);
    type TemporaryStorage = (L::TemporaryStorage, R::TemporaryStorage, S);

    const REGISTER_FOOTPRINT: usize = L::REGISTER_FOOTPRINT + R::REGISTER_FOOTPRINT + 1;

    #[inline(always)]
    fn len(&self) -> usize {
        self.left.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        self.left.check_len(len)?;
        self.right.check_len(len)
    }

    #[inline(always)]
    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.left.init(&mut ts.0);
        self.right.init(&mut ts.1);
        ts.2 = S::ZERO;
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.left.cleanup(&mut ts.0);
        self.right.cleanup(&mut ts.1);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.left.load_once(&mut s.0, &mut ts.0);
        self.right.load_once(&mut s.1, &mut ts.1);
        s.2 = LaneVector::splat(S::ZERO);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe {
            self.left.load(i, &mut s.0, &mut ts.0);
            self.right.load(i, &mut s.1, &mut ts.1);
        }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        let a = self.left.vector_op(i, &mut s.0, &mut ts.0);
        let b = self.right.vector_op(i, &mut s.1, &mut ts.1);
        s.2 = s.2 + a * b;
        s.2
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe {
            self.left.store(i, &mut s.0, &mut ts.0);
            self.right.store(i, &mut s.1, &mut ts.1);
        }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        let a = unsafe { self.left.single_op(i, &mut ts.0) };
        let b = unsafe { self.right.single_op(i, &mut ts.1) };
        ts.2 = ts.2 + a * b;
        ts.2
    }
}

impl<S, V, L, R> Reduction<S, V> for DotNode<L, R>
where
    S: Element,
    V: Vectorizer<S>,
    L: ExprNode<S, V>,
    R: ExprNode<S, V>,
{
    fn reduction(&self, slots: &[Self::Storage], ts: &Self::TemporaryStorage) -> S {
        combine(slots.iter().map(|s| &s.2), ts.2)
    }
}

/// Euclidean norm `sqrt(Σ child(i)²)`.
#[derive(Clone, Copy, Debug)]
pub struct Norm2Node<E> {
    child: E,
}

impl<E> Norm2Node<E> {
    pub fn new(child: E) -> Self {
        Norm2Node { child }
    }
}

impl<S, V, E> ExprNode<S, V> for Norm2Node<E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    type Storage = (E::Storage, LaneVector<S, V>);
    type TemporaryStorage = (E::TemporaryStorage, S);

    const REGISTER_FOOTPRINT: usize = E::REGISTER_FOOTPRINT + 1;

    #[inline(always)]
    fn len(&self) -> usize {
        self.child.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        self.child.check_len(len)
    }

    #[inline(always)]
    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.child.init(&mut ts.0);
        ts.1 = S::ZERO;
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.child.cleanup(&mut ts.0);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.child.load_once(&mut s.0, &mut ts.0);
        s.1 = LaneVector::splat(S::ZERO);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.load(i, &mut s.0, &mut ts.0) }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        let v = self.child.vector_op(i, &mut s.0, &mut ts.0);
        s.1 = s.1 + v * v;
        s.1
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.store(i, &mut s.0, &mut ts.0) }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        let v = unsafe { self.child.single_op(i, &mut ts.0) };
        ts.1 = ts.1 + v * v;
        ts.1
    }
}

impl<S, V, E> Reduction<S, V> for Norm2Node<E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    fn reduction(&self, slots: &[Self::Storage], ts: &Self::TemporaryStorage) -> S {
        combine(slots.iter().map(|s| &s.1), ts.1).sqrt()
    }
}
