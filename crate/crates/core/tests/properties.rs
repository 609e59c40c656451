use lanefuse::engine::{call_trace, masked_length, TraceEvent, UnrollPlan};
use lanefuse::expr::{ExprNode, Leaf};
use lanefuse::lanes::{LaneVector, Scalar, Vectorizer};
#[cfg(target_arch = "x86_64")]
use lanefuse::lanes::Sse;
use lanefuse::oracle::{self, CountingVector};
use lanefuse::{DenseVector, Executor};
use proptest::prelude::*;

fn finite_f32() -> impl Strategy<Value = f32> {
    -1.0e3f32..1.0e3
}

fn finite_f64() -> impl Strategy<Value = f64> {
    -1.0e6f64..1.0e6
}

fn vec_pair(max: usize) -> impl Strategy<Value = (Vec<f32>, Vec<f32>)> {
    (0..max).prop_flat_map(|n| (prop::collection::vec(finite_f32(), n), prop::collection::vec(finite_f32(), n)))
}

fn lanes_match_scalar<V: Vectorizer<f32>>(a: &[f32], b: &[f32]) -> Result<(), TestCaseError> {
    let w = V::WIDTH;
    let x = LaneVector::<f32, V>::from_slice(&a[..w]);
    let y = LaneVector::<f32, V>::from_slice(&b[..w]);
    for k in 0..w {
        prop_assert_eq!((x + y).lane(k).to_bits(), (a[k] + b[k]).to_bits());
        prop_assert_eq!((x - y).lane(k).to_bits(), (a[k] - b[k]).to_bits());
        prop_assert_eq!((x * y).lane(k).to_bits(), (a[k] * b[k]).to_bits());
    }
    let left_to_right = a[..w].iter().fold(0.0f32, |acc, v| acc + v);
    prop_assert_eq!(x.horizontal_sum().to_bits(), left_to_right.to_bits());
    Ok(())
}

proptest! {
    #[test]
    fn lane_ops_are_scalar_ops(a in prop::collection::vec(finite_f32(), 4), b in prop::collection::vec(finite_f32(), 4)) {
        lanes_match_scalar::<Scalar>(&a, &b)?;
        #[cfg(target_arch = "x86_64")]
        lanes_match_scalar::<Sse>(&a, &b)?;
    }

    #[test]
    fn load_store_round_trip(values in prop::collection::vec(finite_f64(), 0..40), slot in 0usize..8) {
        let src = DenseVector::from_values(&values);
        let mut dst = DenseVector::<f64>::zeros(values.len());
        #[cfg(target_arch = "x86_64")]
        type Wide = Sse;
        #[cfg(not(target_arch = "x86_64"))]
        type Wide = Scalar;
        let w = <Wide as Vectorizer<f64>>::WIDTH;
        let offset = slot * w;
        if offset + w <= values.len() {
            let v = LaneVector::<f64, Wide>::load_aligned(src.as_slice(), offset);
            v.store_aligned(dst.as_mut_slice(), offset);
            prop_assert_eq!(&dst.as_slice()[offset..offset + w], &values[offset..offset + w]);
            prop_assert!(dst.iter().enumerate().all(|(i, v)| (offset..offset + w).contains(&i) || *v == 0.0));
        }
    }

    #[test]
    fn single_op_equals_vector_lane((a, b) in vec_pair(64), alpha in finite_f32()) {
        #[cfg(target_arch = "x86_64")]
        type V = Sse;
        #[cfg(not(target_arch = "x86_64"))]
        type V = Scalar;
        let w = <V as Vectorizer<f32>>::WIDTH;
        let x = DenseVector::from_values(&a);
        let y = DenseVector::from_values(&b);
        let node = (&x - alpha * &y).into_node();
        let mut ts = Default::default();
        <_ as ExprNode<f32, V>>::init(&node, &mut ts);
        let mut s = Default::default();
        <_ as ExprNode<f32, V>>::load_once(&node, &mut s, &mut ts);
        let mut i = 0;
        while i + w <= a.len() {
            let lanes = unsafe {
                <_ as ExprNode<f32, V>>::load(&node, i, &mut s, &mut ts);
                <_ as ExprNode<f32, V>>::vector_op(&node, i, &mut s, &mut ts)
            };
            for k in 0..w {
                let single = unsafe { <_ as ExprNode<f32, V>>::single_op(&node, i + k, &mut ts) };
                prop_assert_eq!(lanes.lane(k).to_bits(), single.to_bits());
            }
            i += w;
        }
    }

    #[test]
    fn backends_agree_elementwise((a, b) in vec_pair(200), alpha in finite_f32()) {
        let x = DenseVector::from_values(&a);
        let y = DenseVector::from_values(&b);
        let mut scalar = DenseVector::zeros(a.len());
        Executor::<Scalar>::new().assign(&mut scalar, &y + alpha * &x).unwrap();
        let mut native = DenseVector::zeros(a.len());
        Executor::<lanefuse::Native>::new().assign(&mut native, &y + alpha * &x).unwrap();
        prop_assert_eq!(scalar, native);
    }

    #[test]
    fn unroll_factor_does_not_change_results((a, b) in vec_pair(300), u in prop::sample::select(vec![2usize, 4, 8])) {
        let x = DenseVector::from_values(&a);
        let y = DenseVector::from_values(&b);
        let one = Executor::<lanefuse::Native>::new().unroll(1);
        let many = Executor::<lanefuse::Native>::new().unroll(u);
        let mut r1 = y.clone();
        one.axpy(1.5, &x, &mut r1).unwrap();
        let mut ru = y.clone();
        many.axpy(1.5, &x, &mut ru).unwrap();
        prop_assert_eq!(r1, ru);

        let d1 = one.dot(&x, &y).unwrap();
        let du = many.dot(&x, &y).unwrap();
        let mag = oracle::kahan_sum(a.iter().zip(&b).map(|(p, q)| (p * q).abs()));
        prop_assert!(oracle::within_reduction_tolerance(du, d1, mag, a.len()));
    }

    #[test]
    fn mask_invariants(length in 0usize..100_000, shift in 0u32..6) {
        let step = 1usize << shift;
        let n = masked_length(length, step);
        prop_assert!(n <= length);
        prop_assert_eq!(n % step, 0);
        prop_assert!(length - n < step);
    }

    #[test]
    fn remainder_calls_match_mask(length in 0usize..300, u in prop::sample::select(vec![1usize, 2, 4, 8])) {
        let x = DenseVector::<f64>::filled(length, 1.0);
        let plan = UnrollPlan::new(u, 1, 1, length).unwrap();
        let root = x.expr().sum_node();
        let trace = call_trace::<f64, Scalar, _>(&root, &plan).unwrap();
        let singles = trace.iter().filter(|e| matches!(e, TraceEvent::SingleOp { .. })).count();
        prop_assert_eq!(singles, length - masked_length(length, u));
    }

    #[test]
    fn every_element_touched_once(length in 0usize..500, alpha in finite_f32(), u in prop::sample::select(vec![1usize, 2, 4, 8])) {
        let x = CountingVector::new(DenseVector::from_fn(length, |i| i as f32));
        let mut out = CountingVector::<f32>::zeros(length);
        out.assign(&Executor::<lanefuse::Native>::new().unroll(u), alpha * &x).unwrap();
        prop_assert_eq!((x.reads(), out.writes(), out.reads()), (length, length, 0));
    }

    #[test]
    fn leaf_window_is_the_slice(values in prop::collection::vec(finite_f32(), 0..50)) {
        let x = DenseVector::from_values(&values);
        let leaf = Leaf::new(&x);
        for (i, v) in values.iter().enumerate() {
            let got = unsafe { <Leaf<'_, f32> as ExprNode<f32, Scalar>>::single_op(&leaf, i, &mut ()) };
            prop_assert_eq!(got.to_bits(), v.to_bits());
        }
    }
}
