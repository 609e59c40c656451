use std::marker::PhantomData;

use super::{Destination, ExprNode};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::lanes::{LaneVector, Vectorizer};
use crate::vector::DenseVector;

/// Read-only reference to a vector's elements.
#[derive(Debug)]
pub struct Leaf<'a, S> {
    ptr: *const S,
    len: usize,
    _borrow: PhantomData<&'a [S]>,
}

impl<S> Clone for Leaf<'_, S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for Leaf<'_, S> {}

// A leaf is a shared borrow of the vector's elements.
unsafe impl<S: Sync> Send for Leaf<'_, S> {}
unsafe impl<S: Sync> Sync for Leaf<'_, S> {}

impl<'a, S: Element> Leaf<'a, S> {
    pub fn new(v: &'a DenseVector<S>) -> Self {
        Leaf { ptr: v.as_ptr(), len: v.len(), _borrow: PhantomData }
    }

    /// # Safety
    ///
    /// `ptr` must point to `len` initialized elements, aligned to
    /// [`VECTOR_ALIGN`](crate::vector::VECTOR_ALIGN), that stay valid and are
    /// only written through pointers sharing `ptr`'s provenance for `'a`.
    pub(crate) unsafe fn from_raw(ptr: *const S, len: usize) -> Self {
        Leaf { ptr, len, _borrow: PhantomData }
    }
}

impl<S: Element, V: Vectorizer<S>> ExprNode<S, V> for Leaf<'_, S> {
    type Storage = LaneVector<S, V>;
    type TemporaryStorage = ();

    const REGISTER_FOOTPRINT: usize = 1;

    #[inline(always)]
    fn len(&self) -> usize {
        self.len
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if self.len == len {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: len, found: self.len })
        }
    }

    #[inline(always)]
    fn init(&self, _ts: &mut ()) {}

    #[inline(always)]
    fn cleanup(&self, _ts: &mut ()) {}

    #[inline(always)]
    fn load_once(&self, _s: &mut LaneVector<S, V>, _ts: &mut ()) {}

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut LaneVector<S, V>, _ts: &mut ()) {
        *s = LaneVector::from_raw(unsafe { V::load(self.ptr.add(i)) });
    }

    #[inline(always)]
    fn vector_op(&self, _i: usize, s: &mut LaneVector<S, V>, _ts: &mut ()) -> LaneVector<S, V> {
        *s
    }

    #[inline(always)]
    unsafe fn store(&self, _i: usize, _s: &mut LaneVector<S, V>, _ts: &mut ()) {}

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, _ts: &mut ()) -> S {
        unsafe { self.ptr.add(i).read() }
    }
}

macro_rules! binary_node {
    ($(#[$meta:meta])* $name:ident, $op:tt) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug)]
        pub struct $name<L, R> {
            left: L,
            right: R,
        }

        impl<L, R> $name<L, R> {
            pub fn new(left: L, right: R) -> Self {
                $name { left, right }
            }

            pub fn left(&self) -> &L {
                &self.left
            }

            pub fn right(&self) -> &R {
                &self.right
            }
        }

        impl<S, V, L, R> ExprNode<S, V> for $name<L, R>
        where
            S: Element,
            V: Vectorizer<S>,
            L: ExprNode<S, V>,
            R: ExprNode<S, V>,
        {
            type Storage = (L::Storage, R::Storage);
            type TemporaryStorage = (L::TemporaryStorage, R::TemporaryStorage);

            const REGISTER_FOOTPRINT: usize = L::REGISTER_FOOTPRINT + R::REGISTER_FOOTPRINT;

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
                a $op b
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
                a $op b
            }
        }
    };
}

binary_node!(
    /// Elementwise `left + right`.
    AddNode, +
);
binary_node!(
    /// Elementwise `left - right`.
    SubNode, -
);
binary_node!(
    /// Elementwise `left * right`.
    MulNode, *
);

/// `alpha * child`. The broadcast of `alpha` happens once per slot in
/// `load_once` and stays in the slot for the whole loop.
#[derive(Clone, Copy, Debug)]
pub struct ScaleNode<S, E> {
    alpha: S,
    child: E,
}

impl<S: Element, E> ScaleNode<S, E> {
    pub fn new(alpha: S, child: E) -> Self {
        ScaleNode { alpha, child }
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn child(&self) -> &E {
        &self.child
    }
}

impl<S, V, E> ExprNode<S, V> for ScaleNode<S, E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    type Storage = (LaneVector<S, V>, E::Storage);
    type TemporaryStorage = E::TemporaryStorage;

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
        self.child.init(ts);
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.child.cleanup(ts);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        s.0 = LaneVector::splat(self.alpha);
        self.child.load_once(&mut s.1, ts);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.load(i, &mut s.1, ts) }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        s.0 * self.child.vector_op(i, &mut s.1, ts)
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.store(i, &mut s.1, ts) }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        self.alpha * unsafe { self.child.single_op(i, ts) }
    }
}

/// Unary negation, evaluated as a multiply by `-1` in both the lane and the
/// scalar path so the two agree on signed zeros.
#[derive(Clone, Copy, Debug)]
pub struct NegNode<E> {
    child: E,
}

impl<E> NegNode<E> {
    pub fn new(child: E) -> Self {
        NegNode { child }
    }
}

impl<S, V, E> ExprNode<S, V> for NegNode<E>
where
    S: Element,
    V: Vectorizer<S>,
    E: ExprNode<S, V>,
{
    type Storage = (LaneVector<S, V>, E::Storage);
    type TemporaryStorage = E::TemporaryStorage;

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
        self.child.init(ts);
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.child.cleanup(ts);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        s.0 = LaneVector::splat(-S::ONE);
        self.child.load_once(&mut s.1, ts);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.load(i, &mut s.1, ts) }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        s.0 * self.child.vector_op(i, &mut s.1, ts)
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.child.store(i, &mut s.1, ts) }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        -S::ONE * unsafe { self.child.single_op(i, ts) }
    }
}

/// Mutable reference to a vector's elements, used as an assignment target.
#[derive(Debug)]
pub struct DenseTarget<'a, S> {
    ptr: *mut S,
    len: usize,
    _borrow: PhantomData<&'a mut [S]>,
}

unsafe impl<S: Send> Send for DenseTarget<'_, S> {}

impl<'a, S: Element> DenseTarget<'a, S> {
    pub fn new(v: &'a mut DenseVector<S>) -> Self {
        DenseTarget { ptr: v.as_mut_ptr(), len: v.len(), _borrow: PhantomData }
    }

    /// # Safety
    ///
    /// As for [`Leaf::from_raw`], with write access.
    pub(crate) unsafe fn from_raw(ptr: *mut S, len: usize) -> Self {
        DenseTarget { ptr, len, _borrow: PhantomData }
    }
}

impl<S: Element> Destination<S> for DenseTarget<'_, S> {
    #[inline(always)]
    fn len(&self) -> usize {
        self.len
    }

    #[inline(always)]
    unsafe fn write_lanes<V: Vectorizer<S>>(&self, i: usize, v: LaneVector<S, V>) {
        unsafe { V::store(self.ptr.add(i), v.raw()) }
    }

    #[inline(always)]
    unsafe fn write(&self, i: usize, value: S) {
        unsafe { self.ptr.add(i).write(value) }
    }
}

/// Root of an elementwise evaluation: `destination[i] = source(i)`.
///
/// The destination may be the very same vector as one of the source leaves
/// (`x = 2 * x`); every window is loaded before it is stored. A destination
/// that overlaps a source at a shifted offset is not supported and not
/// detected.
#[derive(Debug)]
pub struct AssignNode<D, E> {
    destination: D,
    source: E,
}

impl<D, E> AssignNode<D, E> {
    pub fn new(destination: D, source: E) -> Self {
        AssignNode { destination, source }
    }

    pub fn source(&self) -> &E {
        &self.source
    }
}

impl<S, V, D, E> ExprNode<S, V> for AssignNode<D, E>
where
    S: Element,
    V: Vectorizer<S>,
    D: Destination<S>,
    E: ExprNode<S, V>,
{
    type Storage = (E::Storage, LaneVector<S, V>);
    type TemporaryStorage = E::TemporaryStorage;

    // The result lanes reuse a source register.
    const REGISTER_FOOTPRINT: usize = E::REGISTER_FOOTPRINT;

    #[inline(always)]
    fn len(&self) -> usize {
        self.destination.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if self.destination.len() != len {
            return Err(Error::LengthMismatch { expected: len, found: self.destination.len() });
        }
        self.source.check_len(len)
    }

    #[inline(always)]
    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.source.init(ts);
    }

    #[inline(always)]
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.source.cleanup(ts);
    }

    #[inline(always)]
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.source.load_once(&mut s.0, ts);
    }

    #[inline(always)]
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.source.load(i, &mut s.0, ts) }
    }

    #[inline(always)]
    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        s.1 = self.source.vector_op(i, &mut s.0, ts);
        s.1
    }

    #[inline(always)]
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe {
            self.source.store(i, &mut s.0, ts);
            self.destination.write_lanes(i, s.1);
        }
    }

    #[inline(always)]
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        unsafe {
            let v = self.source.single_op(i, ts);
            self.destination.write(i, v);
            v
        }
    }
}
