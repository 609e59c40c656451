use std::cell::Cell;
use std::marker::PhantomData;

use super::*;
use crate::engine::Executor;
use crate::error::Error;
use crate::lanes::Scalar;
#[cfg(target_arch = "x86_64")]
use crate::lanes::Sse;
use crate::oracle::CountingVector;
use crate::vector::DenseVector;

#[cfg(target_arch = "x86_64")]
type W4 = Sse;

fn same_type<T>(_: PhantomData<T>, _: PhantomData<T>) {}

#[cfg(target_arch = "x86_64")]
#[test]
fn leaf_load_window() {
    let v = DenseVector::from_fn(8, |i| (i + 1) as f32);
    let leaf = Leaf::new(&v);
    let mut s = LaneVector::<f32, W4>::default();
    unsafe { ExprNode::<f32, W4>::load(&leaf, 4, &mut s, &mut ()) };
    assert_eq!(s.to_vec(), vec![5.0, 6.0, 7.0, 8.0]);
    assert_eq!(unsafe { ExprNode::<f32, W4>::single_op(&leaf, 2, &mut ()) }, 3.0);
}

#[cfg(target_arch = "x86_64")]
#[test]
fn sum_of_difference_vector_op() {
    let a = DenseVector::from_values(&[1.0f32; 4]);
    let b = DenseVector::from_values(&[5.0f32; 4]);
    let c = DenseVector::from_values(&[1.0f32, 2.0, 3.0, 4.0]);

    let diff = (&b - &c).into_node();
    let mut s = Default::default();
    let mut ts = Default::default();
    ExprNode::<f32, W4>::load_once(&diff, &mut s, &mut ts);
    unsafe { ExprNode::<f32, W4>::load(&diff, 0, &mut s, &mut ts) };
    let got = ExprNode::<f32, W4>::vector_op(&diff, 0, &mut s, &mut ts);
    assert_eq!(got.to_vec(), vec![4.0, 3.0, 2.0, 1.0]);

    let tree = (&a + (&b - &c)).into_node();
    let mut s = Default::default();
    let mut ts = Default::default();
    ExprNode::<f32, W4>::init(&tree, &mut ts);
    ExprNode::<f32, W4>::load_once(&tree, &mut s, &mut ts);
    unsafe { ExprNode::<f32, W4>::load(&tree, 0, &mut s, &mut ts) };
    let got = ExprNode::<f32, W4>::vector_op(&tree, 0, &mut s, &mut ts);
    // Scalar oracle of d = a + (b - c).
    let expect: Vec<f32> = (0..4).map(|i| a.get(i) + (b.get(i) - c.get(i))).collect();
    assert_eq!(got.to_vec(), expect);
    assert_eq!(expect, vec![5.0, 4.0, 3.0, 2.0]);
}

#[cfg(target_arch = "x86_64")]
#[test]
fn dot_accumulates_in_slot() {
    let x = DenseVector::from_values(&[1.0f32; 8]);
    let dot = x.expr().dot_node(&x);
    let mut s = Default::default();
    let mut ts = Default::default();
    ExprNode::<f32, W4>::init(&dot, &mut ts);
    assert_eq!(ts.2, 0.0);
    ExprNode::<f32, W4>::load_once(&dot, &mut s, &mut ts);
    assert_eq!(s.2.to_vec(), vec![0.0; 4]);
    for i in [0, 4] {
        unsafe { ExprNode::<f32, W4>::load(&dot, i, &mut s, &mut ts) };
        ExprNode::<f32, W4>::vector_op(&dot, i, &mut s, &mut ts);
    }
    let oracle: f32 = (0..8).map(|i| x.get(i) * x.get(i)).sum();
    assert_eq!(s.2.horizontal_sum(), oracle);
    assert_eq!(oracle, 8.0);
    // store is a no-op for reductions
    unsafe { ExprNode::<f32, W4>::store(&dot, 4, &mut s, &mut ts) };
    assert_eq!(x.to_values(), vec![1.0; 8]);
}

#[cfg(target_arch = "x86_64")]
#[test]
fn reduction_combines_slots_then_remainder() {
    let x = DenseVector::<f32>::zeros(0);
    let sum = x.expr().sum_node();
    let slots: [<SumNode<Leaf<f32>> as ExprNode<f32, W4>>::Storage; 2] = [
        (Default::default(), LaneVector::splat(1.0)),
        (Default::default(), LaneVector::splat(2.0)),
    ];
    assert_eq!(Reduction::<f32, W4>::reduction(&sum, &slots, &((), 3.0)), 15.0);

    let zero: [<SumNode<Leaf<f32>> as ExprNode<f32, W4>>::Storage; 2] = Default::default();
    assert_eq!(Reduction::<f32, W4>::reduction(&sum, &zero, &((), 0.0)), 0.0);
}

#[cfg(target_arch = "x86_64")]
#[test]
fn scale_broadcasts_in_load_once() {
    let x = DenseVector::from_values(&[1.0f32, 2.0, 3.0, 4.0]);
    let e = (2.0f32 * &x).into_node();
    let mut s: <ScaleNode<f32, Leaf<f32>> as ExprNode<f32, W4>>::Storage = Default::default();
    ExprNode::<f32, W4>::load_once(&e, &mut s, &mut ());
    assert_eq!(s.0.to_vec(), vec![2.0; 4]);
    unsafe { ExprNode::<f32, W4>::load(&e, 0, &mut s, &mut ()) };
    assert_eq!(ExprNode::<f32, W4>::vector_op(&e, 0, &mut s, &mut ()).to_vec(), vec![2.0, 4.0, 6.0, 8.0]);
}

#[test]
fn remainder_single_op_axpy() {
    let x = DenseVector::from_fn(10, |i| if i == 9 { 3.0f32 } else { 0.0 });
    let y = DenseVector::from_fn(10, |i| if i == 9 { 1.0f32 } else { 0.0 });
    let mut out = DenseVector::<f32>::zeros(10);
    let root = AssignNode::new(DenseTarget::new(&mut out), (&y + 2.0f32 * &x).into_node());
    let v = unsafe { ExprNode::<f32, Scalar>::single_op(&root, 9, &mut ((), ())) };
    assert_eq!(v, 7.0);
    drop(root);
    assert_eq!(out.get(9), 7.0);
    assert_eq!(out.get(8), 0.0);
}

#[test]
fn storage_is_pair_of_children() {
    type L<'a> = Leaf<'a, f64>;
    same_type(
        PhantomData::<<AddNode<L, L> as ExprNode<f64, Scalar>>::Storage>,
        PhantomData::<(F64Lanes, F64Lanes)>,
    );
    same_type(
        PhantomData::<<SubNode<L, AddNode<L, L>> as ExprNode<f64, Scalar>>::TemporaryStorage>,
        PhantomData::<((), ((), ()))>,
    );
}

type F64Lanes = LaneVector<f64, Scalar>;

#[test]
fn register_footprint_is_additive() {
    let a = DenseVector::<f32>::zeros(4);
    let b = DenseVector::<f32>::zeros(4);
    let c = DenseVector::<f32>::zeros(4);
    assert_eq!((&a + (&b - &c)).register_footprint::<f32, Scalar>(), 3);
    assert_eq!((&a + 2.0f32 * &b).register_footprint::<f32, Scalar>(), 3);
    assert_eq!((2.0f32 * &a).register_footprint::<f32, Scalar>(), 2);
    assert_eq!((-&a).register_footprint::<f32, Scalar>(), 2);
    assert_eq!(<DotNode<Leaf<f32>, Leaf<f32>> as ExprNode<f32, Scalar>>::REGISTER_FOOTPRINT, 3);
    assert_eq!(<SumNode<Leaf<f32>> as ExprNode<f32, Scalar>>::REGISTER_FOOTPRINT, 2);
    assert_eq!(<Norm2Node<Leaf<f32>> as ExprNode<f32, Scalar>>::REGISTER_FOOTPRINT, 2);
}

/// Leaf wrapper counting contract calls.
struct Spy<'a> {
    inner: Leaf<'a, f32>,
    inits: &'a Cell<usize>,
    cleanups: &'a Cell<usize>,
    load_onces: &'a Cell<usize>,
}

impl ExprNode<f32, Scalar> for Spy<'_> {
    type Storage = F32Lanes;
    type TemporaryStorage = ();
    const REGISTER_FOOTPRINT: usize = 1;

    fn len(&self) -> usize {
        ExprNode::<f32, Scalar>::len(&self.inner)
    }
    fn check_len(&self, len: usize) -> crate::Result<()> {
        ExprNode::<f32, Scalar>::check_len(&self.inner, len)
    }
    fn init(&self, _: &mut ()) {
        self.inits.set(self.inits.get() + 1);
    }
    fn cleanup(&self, _: &mut ()) {
        self.cleanups.set(self.cleanups.get() + 1);
    }
    fn load_once(&self, _: &mut F32Lanes, _: &mut ()) {
        self.load_onces.set(self.load_onces.get() + 1);
    }
    unsafe fn load(&self, i: usize, s: &mut F32Lanes, ts: &mut ()) {
        unsafe { self.inner.load(i, s, ts) }
    }
    fn vector_op(&self, i: usize, s: &mut F32Lanes, ts: &mut ()) -> F32Lanes {
        self.inner.vector_op(i, s, ts)
    }
    unsafe fn store(&self, _: usize, _: &mut F32Lanes, _: &mut ()) {}
    unsafe fn single_op(&self, i: usize, ts: &mut ()) -> f32 {
        unsafe { ExprNode::<f32, Scalar>::single_op(&self.inner, i, ts) }
    }
}

type F32Lanes = LaneVector<f32, Scalar>;

#[test]
fn composite_forwards_lifecycle_to_each_child_once() {
    let v = DenseVector::from_values(&[1.0f32, 2.0, 3.0]);
    let counters: Vec<_> = (0..6).map(|_| Cell::new(0)).collect();
    let left = Spy { inner: Leaf::new(&v), inits: &counters[0], cleanups: &counters[1], load_onces: &counters[2] };
    let right = Spy { inner: Leaf::new(&v), inits: &counters[3], cleanups: &counters[4], load_onces: &counters[5] };
    let mut out = DenseVector::zeros(3);
    let root = AssignNode::new(DenseTarget::new(&mut out), AddNode::new(left, right));
    Executor::<Scalar>::new().unroll(4).run_assign(&root).unwrap();
    drop(root);
    assert_eq!(out.to_values(), vec![2.0, 4.0, 6.0]);
    for side in [0, 3] {
        assert_eq!(counters[side].get(), 1, "init");
        assert_eq!(counters[side + 1].get(), 1, "cleanup");
        assert_eq!(counters[side + 2].get(), 4, "load_once per slot");
    }
}

#[test]
fn building_is_lazy() {
    let a = CountingVector::from_values(&[1.0f32; 16]);
    let b = CountingVector::from_values(&[2.0f32; 16]);
    let c = CountingVector::from_values(&[3.0f32; 16]);
    let e = -(2.0f32 * ((&a + &b) * (&c - &a)) + &b);
    assert_eq!((a.reads(), b.reads(), c.reads()), (0, 0, 0));
    let s = Executor::<Scalar>::new().sum(e).unwrap();
    // -(2 * (3 * 2) + 2) = -14 per element
    assert_eq!(s, -14.0 * 16.0);
    assert_eq!((a.reads(), b.reads(), c.reads()), (32, 32, 16));
}

#[test]
fn length_mismatch_rejected_before_access() {
    let a = CountingVector::from_values(&[1.0f32; 8]);
    let b = CountingVector::from_values(&[1.0f32; 9]);
    let mut d = CountingVector::<f32>::zeros(8);
    let err = d.assign(&Executor::<Scalar>::new(), &a + &b).unwrap_err();
    assert_eq!(err, Error::LengthMismatch { expected: 8, found: 9 });
    assert_eq!((a.reads(), b.reads(), d.writes()), (0, 0, 0));

    let mut short = CountingVector::<f32>::zeros(7);
    let err = short.assign(&Executor::<Scalar>::new(), &a + &a).unwrap_err();
    assert_eq!(err, Error::LengthMismatch { expected: 7, found: 8 });
    assert_eq!(a.reads(), 0);
}

#[test]
fn negation_keeps_signed_zero() {
    let x = DenseVector::from_values(&[0.0f64, -0.0, 1.5, f64::INFINITY, 2.0]);
    let got = (-&x).eval::<f64>().unwrap();
    let bits: Vec<u64> = got.iter().map(|v| v.to_bits()).collect();
    let expect: Vec<u64> = x.iter().map(|v| (-v).to_bits()).collect();
    assert_eq!(bits, expect);
}
