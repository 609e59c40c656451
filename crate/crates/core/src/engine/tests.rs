use super::*;
use crate::expr::{AssignNode, DenseTarget};
use crate::lanes::Scalar;
#[cfg(target_arch = "x86_64")]
use crate::lanes::Sse;
use crate::vector::DenseVector;

use TraceEvent::*;

#[cfg(target_arch = "x86_64")]
#[test]
fn trace_two_slots_one_package() {
    let x = DenseVector::from_fn(16, |i| i as f32);
    let mut y = DenseVector::<f32>::zeros(16);
    let root = AssignNode::new(DenseTarget::new(&mut y), (2.0f32 * &x).into_node());
    let plan = UnrollPlan::new(2, 4, 1, 16).unwrap();
    let trace = call_trace::<f32, Sse, _>(&root, &plan).unwrap();
    let expect = vec![
        Init,
        LoadOnce { slot: 0 },
        LoadOnce { slot: 1 },
        Load { slot: 0, index: 0 },
        Load { slot: 1, index: 4 },
        VectorOp { slot: 0, index: 0 },
        VectorOp { slot: 1, index: 4 },
        Store { slot: 0, index: 0 },
        Store { slot: 1, index: 4 },
        Load { slot: 0, index: 8 },
        Load { slot: 1, index: 12 },
        VectorOp { slot: 0, index: 8 },
        VectorOp { slot: 1, index: 12 },
        Store { slot: 0, index: 8 },
        Store { slot: 1, index: 12 },
        Cleanup,
    ];
    assert_eq!(trace, expect);
    drop(root);
    assert_eq!(y.to_values(), (0..16).map(|i| 2.0 * i as f32).collect::<Vec<_>>());
}

#[cfg(target_arch = "x86_64")]
#[test]
fn length_ten_leaves_two_remainder_calls() {
    let x = DenseVector::from_fn(10, |i| i as f32);
    let plan = UnrollPlan::new(2, 4, 2, 10).unwrap();
    let root = x.expr().sum_node();
    let trace = call_trace::<f32, Sse, _>(&root, &plan).unwrap();
    let loads: Vec<_> = trace.iter().filter(|e| matches!(e, Load { .. })).collect();
    assert_eq!(loads, vec![&Load { slot: 0, index: 0 }, &Load { slot: 1, index: 4 }]);
    let tail: Vec<_> = trace.iter().filter(|e| matches!(e, SingleOp { .. })).collect();
    assert_eq!(tail, vec![&SingleOp { index: 8 }, &SingleOp { index: 9 }]);
    let last_store = trace.iter().rposition(|e| matches!(e, Store { .. })).unwrap();
    let first_single = trace.iter().position(|e| matches!(e, SingleOp { .. })).unwrap();
    assert!(first_single > last_store);
}

#[test]
fn unroll_one_alternates() {
    let x = DenseVector::from_fn(3, |i| i as f64);
    let plan = UnrollPlan::new(1, 1, 1, 3).unwrap();
    let trace = call_trace::<f64, Scalar, _>(&x.expr().sum_node(), &plan).unwrap();
    let body: Vec<_> = trace[2..trace.len() - 1].to_vec();
    let expect: Vec<_> = (0..3)
        .flat_map(|i| {
            [Load { slot: 0, index: i }, VectorOp { slot: 0, index: i }, Store { slot: 0, index: i }]
        })
        .collect();
    assert_eq!(body, expect);
}

#[test]
fn empty_runs_init_and_cleanup_only() {
    let x = DenseVector::<f32>::zeros(0);
    let mut y = DenseVector::<f32>::zeros(0);
    let root = AssignNode::new(DenseTarget::new(&mut y), (3.0f32 * &x).into_node());
    let plan = UnrollPlan::new(4, 1, 4, 0).unwrap();
    let trace = call_trace::<f32, Scalar, _>(&root, &plan).unwrap();
    assert_eq!(
        trace,
        vec![
            Init,
            LoadOnce { slot: 0 },
            LoadOnce { slot: 1 },
            LoadOnce { slot: 2 },
            LoadOnce { slot: 3 },
            Cleanup
        ]
    );
    assert_eq!(execute_reduce::<f32, Scalar, _>(&x.expr().dot_node(&x), &plan).unwrap(), 0.0);
}

#[test]
fn sum_of_difference_assignment() {
    let a = DenseVector::from_values(&[1.0f32; 5]);
    let b = DenseVector::from_values(&[5.0f32; 5]);
    let c = DenseVector::from_values(&[1.0f32, 2.0, 3.0, 4.0, 5.0]);
    let expect: Vec<f32> = (0..5).map(|i| a.get(i) + (b.get(i) - c.get(i))).collect();
    for u in SUPPORTED_UNROLLS {
        let mut d = DenseVector::zeros(5);
        Executor::<Native>::new().unroll(u).assign(&mut d, &a + (&b - &c)).unwrap();
        assert_eq!(d.to_values(), expect);
        let mut d = DenseVector::zeros(5);
        Executor::<Scalar>::new().unroll(u).assign(&mut d, &a + (&b - &c)).unwrap();
        assert_eq!(d.to_values(), expect);
    }
    assert_eq!(expect, vec![5.0, 4.0, 3.0, 2.0, 1.0]);
}

#[test]
fn small_dot() {
    let x = DenseVector::from_values(&[1.0f64, 2.0, 3.0]);
    assert_eq!(Executor::<Native>::new().dot(&x, &x).unwrap(), 14.0);
    assert_eq!(Executor::<Scalar>::new().dot(&x, &x).unwrap(), 14.0);
}

#[test]
fn plan_must_fit_backend_and_tree() {
    let x = DenseVector::from_values(&[1.0f32; 8]);
    let node = x.expr().sum_node();
    let wide = UnrollPlan::new(2, 4, 2, 8).unwrap();
    assert_eq!(
        execute_reduce::<f32, Scalar, _>(&node, &wide),
        Err(Error::WidthMismatch { plan: 4, backend: 1 })
    );
    let short = UnrollPlan::new(2, 1, 2, 7).unwrap();
    assert_eq!(
        execute_reduce::<f32, Scalar, _>(&node, &short),
        Err(Error::PlanLengthMismatch { plan: 7, expr: 8 })
    );
}

#[test]
fn executor_plan_choice() {
    let x = DenseVector::from_values(&[1.0f32; 100]);
    let dot = x.expr().dot_node(&x);
    let plan = Executor::<Native>::new().plan(&dot).unwrap();
    if <Native as crate::lanes::Vectorizer<f32>>::SPECIALIZED {
        assert_eq!(plan.unroll(), 4);
    }
    let scalar_plan = Executor::<Scalar>::new().plan(&dot).unwrap();
    assert_eq!((scalar_plan.unroll(), scalar_plan.width(), scalar_plan.masked_length()), (1, 1, 100));
    let pinned = Executor::<Scalar>::new().unroll(8).packages(2).plan(&dot).unwrap();
    assert_eq!((pinned.unroll(), pinned.packages(), pinned.masked_length()), (8, 2, 96));
    assert!(Executor::<Scalar>::new().unroll(5).plan(&dot).is_err());
}
