//! Lazy expression graphs.
//!
//! Arithmetic on `&DenseVector` and [`Expr`] values builds a tree of nodes
//! without touching any element. The tree is evaluated only when it is
//! assigned to a destination or reduced to a scalar, and then in a single
//! fused loop driven by [`crate::engine`].
//!
//! Every node implements [`ExprNode`], the contract the loop engine calls
//! into. The engine owns the loop shape (unrolling, burst order, remainder
//! handling); the nodes own the instructions. Per-slot state lives in
//! `Storage` (one instance per unroll slot) and loop-wide state in
//! `TemporaryStorage` (one instance per evaluation). Composite nodes build
//! both by pairing their children's types.

use crate::element::Element;
use crate::error::Result;
use crate::lanes::{LaneVector, Vectorizer};

mod nodes;
mod ops;
mod reduce;

pub use nodes::{AddNode, AssignNode, DenseTarget, Leaf, MulNode, NegNode, ScaleNode, SubNode};
pub use ops::IntoExpr;
pub(crate) use ops::impl_expr_ops;
pub use reduce::{DotNode, Norm2Node, SumNode};

/// The evaluation contract of an expression node for element type `S`
/// on backend `V`.
///
/// Call protocol for one evaluation (see [`crate::engine`]):
///
/// 1. `init` once;
/// 2. `load_once` once per unroll slot;
/// 3. for each main-loop window `i` of a slot: `load`, `vector_op`, `store`;
/// 4. `single_op` for every index past the masked length;
/// 5. `cleanup` once.
pub trait ExprNode<S: Element, V: Vectorizer<S>> {
    /// Per-unroll-slot state.
    type Storage: Default;
    /// Loop-wide state, instantiated once per evaluation.
    type TemporaryStorage: Default;

    /// Lane registers held per slot by this subtree.
    const REGISTER_FOOTPRINT: usize;

    /// Length of the first leaf.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks that every leaf (and destination) has length `len`.
    fn check_len(&self, len: usize) -> Result<()>;

    fn init(&self, ts: &mut Self::TemporaryStorage);

    fn cleanup(&self, ts: &mut Self::TemporaryStorage);

    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage);

    /// Brings lanes `i..i + V::WIDTH` of every leaf into `s`.
    ///
    /// # Safety
    ///
    /// `i + V::WIDTH <= self.len()`, `i` is a multiple of `V::WIDTH`, and
    /// `check_len(self.len())` has succeeded.
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage);

    /// Computes the lanes for window `i` from what `load` left in `s`.
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V>;

    /// Writes the window's result, if this subtree has a destination.
    ///
    /// # Safety
    ///
    /// Same as [`load`](Self::load).
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage);

    /// Scalar evaluation at a single index, used for the loop remainder.
    ///
    /// # Safety
    ///
    /// `i < self.len()` and `check_len(self.len())` has succeeded.
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S;
}

/// A node that folds its loop into a single scalar.
pub trait Reduction<S: Element, V: Vectorizer<S>>: ExprNode<S, V> {
    /// Combines the per-slot accumulators (slot order, lanes left to right)
    /// and then the scalar remainder accumulator.
    fn reduction(&self, slots: &[Self::Storage], ts: &Self::TemporaryStorage) -> S;
}

/// Write side of an assignment.
pub trait Destination<S: Element> {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// # Safety
    ///
    /// Window `i..i + V::WIDTH` in bounds and `i` a multiple of `V::WIDTH`.
    unsafe fn write_lanes<V: Vectorizer<S>>(&self, i: usize, v: LaneVector<S, V>);

    /// # Safety
    ///
    /// `i < self.len()`.
    unsafe fn write(&self, i: usize, value: S);
}

/// A lazily evaluated expression.
///
/// Produced by arithmetic operators; holds the node tree and nothing else.
#[derive(Clone, Copy, Debug)]
pub struct Expr<E>(E);

impl<E> Expr<E> {
    pub fn new(node: E) -> Self {
        Expr(node)
    }

    pub fn node(&self) -> &E {
        &self.0
    }

    pub fn into_node(self) -> E {
        self.0
    }

    /// Register footprint of the tree on backend `V`.
    pub fn register_footprint<S: Element, V: Vectorizer<S>>(&self) -> usize
    where
        E: ExprNode<S, V>,
    {
        E::REGISTER_FOOTPRINT
    }

    /// Elementwise product, spelled out.
    pub fn mul_elementwise<R: IntoExpr>(self, rhs: R) -> Expr<MulNode<E, R::Node>> {
        Expr(MulNode::new(self.0, rhs.into_expr().0))
    }

    pub fn dot_node<R: IntoExpr>(self, rhs: R) -> DotNode<E, R::Node> {
        DotNode::new(self.0, rhs.into_expr().0)
    }

    pub fn sum_node(self) -> SumNode<E> {
        SumNode::new(self.0)
    }

    pub fn norm2_node(self) -> Norm2Node<E> {
        Norm2Node::new(self.0)
    }
}

#[cfg(test)]
mod tests;
