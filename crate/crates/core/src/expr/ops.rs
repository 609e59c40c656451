//! Operator overloading. Every operator only assembles nodes.
//!
//! | expression            | node                  |
//! |-----------------------|-----------------------|
//! | `a + b`               | [`AddNode`]           |
//! | `a - b`               | [`SubNode`]           |
//! | `a * b`               | [`MulNode`] (elementwise) |
//! | `alpha * a`, `a * alpha` | [`ScaleNode`]      |
//! | `-a`                  | [`NegNode`]           |

#[cfg(doc)]
use super::{AddNode, MulNode, NegNode, ScaleNode, SubNode};
use super::{Expr, Leaf};
use crate::element::Element;
use crate::vector::DenseVector;

/// Anything that can appear as an operand of an expression.
pub trait IntoExpr {
    type Node;

    fn into_expr(self) -> Expr<Self::Node>;
}

impl<E> IntoExpr for Expr<E> {
    type Node = E;

    #[inline(always)]
    fn into_expr(self) -> Expr<E> {
        self
    }
}

impl<'a, S: Element> IntoExpr for &'a DenseVector<S> {
    type Node = Leaf<'a, S>;

    #[inline(always)]
    fn into_expr(self) -> Expr<Leaf<'a, S>> {
        Expr::new(Leaf::new(self))
    }
}

impl<S: Element> DenseVector<S> {
    /// This vector as an expression leaf.
    pub fn expr(&self) -> Expr<Leaf<'_, S>> {
        self.into_expr()
    }
}

/// Implements the arithmetic operators for an operand type that already
/// implements [`IntoExpr`].
macro_rules! impl_expr_ops {
    ([$($gen:tt)*] $lhs:ty) => {
        impl<$($gen)* Rhs: $crate::expr::IntoExpr> ::std::ops::Add<Rhs> for $lhs {
            type Output = $crate::expr::Expr<
                $crate::expr::AddNode<<$lhs as $crate::expr::IntoExpr>::Node, Rhs::Node>,
            >;

            #[inline(always)]
            fn add(self, rhs: Rhs) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::AddNode::new(
                    self.into_expr().into_node(),
                    rhs.into_expr().into_node(),
                ))
            }
        }

        impl<$($gen)* Rhs: $crate::expr::IntoExpr> ::std::ops::Sub<Rhs> for $lhs {
            type Output = $crate::expr::Expr<
                $crate::expr::SubNode<<$lhs as $crate::expr::IntoExpr>::Node, Rhs::Node>,
            >;

            #[inline(always)]
            fn sub(self, rhs: Rhs) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::SubNode::new(
                    self.into_expr().into_node(),
                    rhs.into_expr().into_node(),
                ))
            }
        }

        impl<$($gen)* Rhs: $crate::expr::IntoExpr> ::std::ops::Mul<Rhs> for $lhs {
            type Output = $crate::expr::Expr<
                $crate::expr::MulNode<<$lhs as $crate::expr::IntoExpr>::Node, Rhs::Node>,
            >;

            #[inline(always)]
            fn mul(self, rhs: Rhs) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::MulNode::new(
                    self.into_expr().into_node(),
                    rhs.into_expr().into_node(),
                ))
            }
        }

        impl<$($gen)*> ::std::ops::Neg for $lhs {
            type Output =
                $crate::expr::Expr<$crate::expr::NegNode<<$lhs as $crate::expr::IntoExpr>::Node>>;

            #[inline(always)]
            fn neg(self) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::NegNode::new(self.into_expr().into_node()))
            }
        }

        impl_expr_ops!(@scalar [$($gen)*] $lhs, f32);
        impl_expr_ops!(@scalar [$($gen)*] $lhs, f64);
    };

    (@scalar [$($gen:tt)*] $lhs:ty, $s:ty) => {
        impl<$($gen)*> ::std::ops::Mul<$lhs> for $s {
            type Output = $crate::expr::Expr<
                $crate::expr::ScaleNode<$s, <$lhs as $crate::expr::IntoExpr>::Node>,
            >;

            #[inline(always)]
            fn mul(self, rhs: $lhs) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::ScaleNode::new(self, rhs.into_expr().into_node()))
            }
        }

        impl<$($gen)*> ::std::ops::Mul<$s> for $lhs {
            type Output = $crate::expr::Expr<
                $crate::expr::ScaleNode<$s, <$lhs as $crate::expr::IntoExpr>::Node>,
            >;

            #[inline(always)]
            fn mul(self, alpha: $s) -> Self::Output {
                use $crate::expr::IntoExpr as _;
                $crate::expr::Expr::new($crate::expr::ScaleNode::new(alpha, self.into_expr().into_node()))
            }
        }
    };
}

pub(crate) use impl_expr_ops;

impl_expr_ops!([E,] Expr<E>);
impl_expr_ops!(['a, S: Element,] &'a DenseVector<S>);

