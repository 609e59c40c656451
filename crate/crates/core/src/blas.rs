//! Level-1 BLAS style entry points built on the expression machinery.
//!
//! The free functions evaluate on the [`Native`] backend with default
//! plans; [`Executor`] offers the same operations with a chosen backend and
//! pinned loop shape.

use crate::element::Element;
use crate::engine::Executor;
use crate::error::Result;
use crate::expr::{
    AssignNode, DenseTarget, DotNode, Expr, ExprNode, IntoExpr, Leaf, Norm2Node, ScaleNode,
    SumNode,
};
use crate::lanes::{Native, Vectorizer};
use crate::vector::DenseVector;

impl<V> Executor<V> {
    /// `destination = source`, evaluated in one pass.
    pub fn assign<S, Src>(&self, destination: &mut DenseVector<S>, source: Src) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
        Src: IntoExpr,
        Src::Node: ExprNode<S, V>,
    {
        let root = AssignNode::new(DenseTarget::new(destination), source.into_expr().into_node());
        self.run_assign(&root)
    }

    /// `destination = build(destination)`, where the expression may read
    /// `destination` itself (e.g. `|y| y + 2.0 * &x`).
    pub fn update<'a, S, E, F>(&self, destination: &'a mut DenseVector<S>, build: F) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
        E: ExprNode<S, V>,
        F: FnOnce(Expr<Leaf<'a, S>>) -> Expr<E>,
    {
        let len = destination.len();
        let ptr = destination.as_mut_ptr();
        // SAFETY: both the leaf and the target derive from the exclusive
        // borrow held for 'a; each window is read before it is written.
        let leaf = unsafe { Leaf::from_raw(ptr as *const S, len) };
        let source = build(Expr::new(leaf)).into_node();
        let target = unsafe { DenseTarget::from_raw(ptr, len) };
        self.run_assign(&AssignNode::new(target, source))
    }

    pub fn sum<S, Src>(&self, source: Src) -> Result<S>
    where
        S: Element,
        V: Vectorizer<S>,
        Src: IntoExpr,
        Src::Node: ExprNode<S, V>,
    {
        self.run_reduce(&SumNode::new(source.into_expr().into_node()))
    }

    pub fn dot<S, L, R>(&self, left: L, right: R) -> Result<S>
    where
        S: Element,
        V: Vectorizer<S>,
        L: IntoExpr,
        R: IntoExpr,
        L::Node: ExprNode<S, V>,
        R::Node: ExprNode<S, V>,
    {
        self.run_reduce(&DotNode::new(left.into_expr().into_node(), right.into_expr().into_node()))
    }

    pub fn norm2<S, Src>(&self, source: Src) -> Result<S>
    where
        S: Element,
        V: Vectorizer<S>,
        Src: IntoExpr,
        Src::Node: ExprNode<S, V>,
    {
        self.run_reduce(&Norm2Node::new(source.into_expr().into_node()))
    }

    /// `x = alpha * x`.
    pub fn scal<S>(&self, alpha: S, x: &mut DenseVector<S>) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
    {
        self.update(x, |x| Expr::new(ScaleNode::new(alpha, x.into_node())))
    }

    /// `y = y + alpha * x`.
    pub fn axpy<S>(&self, alpha: S, x: &DenseVector<S>, y: &mut DenseVector<S>) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
    {
        self.update(y, |y| y + Expr::new(ScaleNode::new(alpha, Leaf::new(x))))
    }

    /// `out = alpha * x` in a single traversal.
    pub fn scaled_copy<S>(&self, alpha: S, x: &DenseVector<S>, out: &mut DenseVector<S>) -> Result<()>
    where
        S: Element,
        V: Vectorizer<S>,
    {
        self.assign(out, Expr::new(ScaleNode::new(alpha, Leaf::new(x))))
    }
}

/// `Σ x[i] * y[i]`.
pub fn dot<S: Element>(x: &DenseVector<S>, y: &DenseVector<S>) -> Result<S>
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().dot(x, y)
}

/// `x = alpha * x`.
pub fn scal<S: Element>(alpha: S, x: &mut DenseVector<S>)
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().scal(alpha, x).expect("default plan over a single vector")
}

/// `y = y + alpha * x`.
pub fn axpy<S: Element>(alpha: S, x: &DenseVector<S>, y: &mut DenseVector<S>) -> Result<()>
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().axpy(alpha, x, y)
}

/// `out = alpha * x`, fused: one read of `x` and one write of `out` per
/// element, where a BLAS caller would need a copy followed by a scal.
pub fn scaled_copy<S: Element>(alpha: S, x: &DenseVector<S>, out: &mut DenseVector<S>) -> Result<()>
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().scaled_copy(alpha, x, out)
}

/// Euclidean norm.
pub fn norm2<S: Element>(x: &DenseVector<S>) -> S
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().norm2(x).expect("single-vector reduction")
}

pub fn sum<S: Element>(x: &DenseVector<S>) -> S
where
    Native: Vectorizer<S>,
{
    Executor::<Native>::new().sum(x).expect("single-vector reduction")
}

impl<S: Element> DenseVector<S>
where
    Native: Vectorizer<S>,
{
    /// Evaluates `source` into `self`.
    pub fn assign<Src>(&mut self, source: Src) -> Result<()>
    where
        Src: IntoExpr,
        Src::Node: ExprNode<S, Native>,
    {
        Executor::<Native>::new().assign(self, source)
    }

    /// Evaluates `build(self)` into `self`.
    pub fn update<'a, E, F>(&'a mut self, build: F) -> Result<()>
    where
        E: ExprNode<S, Native>,
        F: FnOnce(Expr<Leaf<'a, S>>) -> Expr<E>,
    {
        Executor::<Native>::new().update(self, build)
    }
}

impl<E> Expr<E> {
    /// Evaluates into a freshly allocated vector.
    pub fn eval<S>(self) -> Result<DenseVector<S>>
    where
        S: Element,
        Native: Vectorizer<S>,
        E: ExprNode<S, Native>,
    {
        let mut out = DenseVector::zeros(self.node().len());
        out.assign(self)?;
        Ok(out)
    }

    pub fn sum<S>(self) -> Result<S>
    where
        S: Element,
        Native: Vectorizer<S>,
        E: ExprNode<S, Native>,
    {
        Executor::<Native>::new().sum(self)
    }

    pub fn dot<S, R>(self, rhs: R) -> Result<S>
    where
        S: Element,
        Native: Vectorizer<S>,
        E: ExprNode<S, Native>,
        R: IntoExpr,
        R::Node: ExprNode<S, Native>,
    {
        Executor::<Native>::new().dot(self, rhs)
    }

    pub fn norm2<S>(self) -> Result<S>
    where
        S: Element,
        Native: Vectorizer<S>,
        E: ExprNode<S, Native>,
    {
        Executor::<Native>::new().norm2(self)
    }
}
