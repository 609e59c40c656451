// Plan selection and the call sequence the loop template makes.

use lanefuse::engine::{call_trace, TraceEvent, UnrollPlan};
use lanefuse::expr::{AssignNode, DenseTarget};
use lanefuse::lanes::{Native, Vectorizer};
use lanefuse::{DenseVector, Executor};

pub fn run_example() -> lanefuse::Result<()> {
    let x = DenseVector::from_fn(19, |i| i as f32);
    let y = DenseVector::filled(19, 1.0f32);

    let exec = Executor::<Native>::new();
    let axpy_tree = &y + 0.5f32 * &x;
    println!("footprint {}", axpy_tree.register_footprint::<f32, Native>());
    let plan = exec.plan(axpy_tree.node())?;
    println!(
        "default plan: U={} W={} P={} step={} masked={} remainder={}",
        plan.unroll(),
        plan.width(),
        plan.packages(),
        plan.step(),
        plan.masked_length(),
        plan.remainder()
    );

    let w = <Native as Vectorizer<f32>>::WIDTH;
    let plan = UnrollPlan::new(2, w, 1, x.len())?;
    let mut out = DenseVector::zeros(19);
    let root = AssignNode::new(DenseTarget::new(&mut out), (&y + 0.5f32 * &x).into_node());
    for event in call_trace::<f32, Native, _>(&root, &plan)? {
        match event {
            TraceEvent::Load { .. } => println!("  {event:?}"),
            _ => println!("{event:?}"),
        }
    }
    drop(root);
    println!("result {:?}", out.to_values());
    Ok(())
}

fn main() {
    run_example().expect("plan example failed");
}
