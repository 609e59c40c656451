#[allow(dead_code)]
mod expression_tree {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/expression_tree.rs"));
}

#[test]
fn expression_tree_runs() {
    expression_tree::run_example().expect("expression_tree example should run");
}

#[allow(dead_code)]
mod blas_level1 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/blas_level1.rs"));
}

#[test]
fn blas_level1_runs() {
    blas_level1::run_example().expect("blas_level1 example should run");
}

#[allow(dead_code)]
mod fused_scaled_copy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fused_scaled_copy.rs"));
}

#[test]
fn fused_scaled_copy_runs() {
    fused_scaled_copy::run_example().expect("fused_scaled_copy example should run");
}

#[allow(dead_code)]
mod lane_backends {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lane_backends.rs"));
}

#[test]
fn lane_backends_runs() {
    lane_backends::run_example().expect("lane_backends example should run");
}

#[allow(dead_code)]
mod unroll_plan {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/unroll_plan.rs"));
}

#[test]
fn unroll_plan_runs() {
    unroll_plan::run_example().expect("unroll_plan example should run");
}

#[allow(dead_code)]
mod bench_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bench_sweep.rs"));
}

#[test]
fn bench_sweep_runs() {
    bench_sweep::run_example().expect("bench_sweep example should run");
}

#[allow(dead_code)]
mod custom_node {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_node.rs"));
}

#[test]
fn custom_node_runs() {
    custom_node::run_example().expect("custom_node example should run");
}
