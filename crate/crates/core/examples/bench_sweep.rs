// A small throughput sweep written as CSV to stdout.

use lanefuse::bench::{emit_csv, run_sweep, BenchConfig, BenchOp, Variant};

pub fn run_example() -> Result<(), lanefuse::bench::BenchError> {
    let config = BenchConfig {
        ops: vec![BenchOp::Dot, BenchOp::ScaledCopy],
        variants: vec![Variant::Engine, Variant::Naive, Variant::EngineUnroll(1)],
        sizes: vec![63, 1024, 4097],
        reps: 5,
        warmup: 1,
        ..BenchConfig::default()
    };
    let records = run_sweep(&config)?;
    emit_csv(&records, std::io::stdout().lock())?;
    Ok(())
}

fn main() {
    run_example().expect("bench example failed");
}
