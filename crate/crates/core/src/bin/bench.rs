//! Level-1 throughput sweep.
//!
//! ```text
//! bench --op dot --type f32 --variants engine,naive --sizes 4096,65536 --csv out.csv
//! ```

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lanefuse::bench::{
    cache_metadata_line, emit_csv, parse_ops, parse_sizes, parse_variants, run_sweep,
    write_csv_file, BenchConfig, BenchOp, ElementType, Variant,
};

#[derive(Parser, Debug)]
#[command(name = "bench", about = "Throughput sweep for dot, scal, axpy and scaled_copy")]
struct Args {
    /// dot, scal, axpy, scaled_copy, a comma separated list, or all
    #[arg(long, default_value = "all", value_parser = parse_ops)]
    op: std::vec::Vec<BenchOp>,

    /// f32 or f64
    #[arg(long = "type", default_value = "f32", value_parser = |s: &str| s.parse::<ElementType>())]
    element: ElementType,

    /// Comma separated: engine, naive, engine-U1, engine-U2, engine-U4, engine-U8
    #[arg(long, default_value = "engine,naive", value_parser = parse_variants)]
    variants: std::vec::Vec<Variant>,

    /// Comma separated element counts, or `default`
    #[arg(long, default_value = "default", value_parser = parse_sizes)]
    sizes: std::vec::Vec<usize>,

    #[arg(long, default_value_t = 25)]
    reps: usize,

    #[arg(long, default_value_t = 5)]
    warmup: usize,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output file; standard output when absent
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Instruction packages per unrolled iteration for engine variants
    #[arg(long)]
    packages: Option<usize>,

    /// Cache sizes in bytes, written as a metadata line to `<csv>.meta`
    #[arg(long, value_delimiter = ',')]
    cache_sizes: Vec<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    // Fully qualified Vec above: each flag is a single value parsed as a list.
    let config = BenchConfig {
        ops: args.op,
        variants: args.variants,
        element: args.element,
        sizes: args.sizes,
        reps: args.reps,
        warmup: args.warmup,
        seed: args.seed,
        packages: args.packages,
    };

    let result = run_sweep(&config).and_then(|records| match &args.csv {
        Some(path) => {
            write_csv_file(&records, path)?;
            if !args.cache_sizes.is_empty() {
                let mut meta = path.clone().into_os_string();
                meta.push(".meta");
                let mut f = std::fs::File::create(PathBuf::from(meta))?;
                writeln!(f, "{}", cache_metadata_line(&args.cache_sizes))?;
            }
            Ok(())
        }
        None => {
            if !args.cache_sizes.is_empty() {
                eprintln!("{}", cache_metadata_line(&args.cache_sizes));
            }
            emit_csv(&records, std::io::stdout().lock())
        }
    });

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
