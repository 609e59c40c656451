//! Throughput sweeps for the level-1 operations.
//!
//! Each record times one operation × variant × size. Per record the input
//! data is drawn from a seeded RNG; before every timed repetition the
//! mutated operands are restored from a pristine copy (untimed), so every
//! repetition sees the same values. A repetition runs the kernel enough
//! times back to back to cover roughly [`ELEMENTS_PER_REP`] elements and
//! reports the time per call.
//!
//! Accounting per call on `n` elements of `s` bytes:
//!
//! | op            | flops | bytes  |
//! |---------------|-------|--------|
//! | `dot`         | 2n    | 2n·s   |
//! | `scal`        | n     | 2n·s   |
//! | `axpy`        | 2n    | 3n·s   |
//! | `scaled_copy` | n     | 2n·s   |
//!
//! `gflops` and `gbytes` are computed from the best time.

use std::fmt;
use std::hint::black_box;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::element::Element;
use crate::engine::{Executor, PlanOverrides};
use crate::lanes::{Native, Vectorizer};
use crate::oracle;
use crate::vector::DenseVector;

/// Target number of elements processed per timed repetition.
pub const ELEMENTS_PER_REP: usize = 1 << 16;

pub const CSV_HEADER: &str = "op,variant,type,n,reps,best_s,median_s,gflops,gbytes";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown op `{0}` (expected dot, scal, axpy, scaled_copy or all)")]
    UnknownOp(String),
    #[error("unknown variant `{0}` (expected engine, naive, engine-U1, engine-U2, engine-U4 or engine-U8)")]
    UnknownVariant(String),
    #[error("unknown element type `{0}` (expected f32 or f64)")]
    UnknownType(String),
    #[error("invalid size list `{0}`")]
    InvalidSizes(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Engine(#[from] crate::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl BenchError {
    /// Configuration problems map to 2, runtime failures to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io(_) | BenchError::Csv(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Dot,
    Scal,
    Axpy,
    ScaledCopy,
}

impl BenchOp {
    pub const ALL: [BenchOp; 4] = [BenchOp::Dot, BenchOp::Scal, BenchOp::Axpy, BenchOp::ScaledCopy];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Dot => "dot",
            BenchOp::Scal => "scal",
            BenchOp::Axpy => "axpy",
            BenchOp::ScaledCopy => "scaled_copy",
        }
    }

    pub fn flops(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            BenchOp::Dot | BenchOp::Axpy => 2.0 * n,
            BenchOp::Scal | BenchOp::ScaledCopy => n,
        }
    }

    pub fn bytes(self, n: usize, scalar_size: usize) -> f64 {
        let moved = match self {
            BenchOp::Dot | BenchOp::Scal | BenchOp::ScaledCopy => 2 * n,
            BenchOp::Axpy => 3 * n,
        };
        (moved * scalar_size) as f64
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        BenchOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| BenchError::UnknownOp(s.to_string()))
    }
}

/// Parses `all` or a comma separated op list.
pub fn parse_ops(s: &str) -> Result<Vec<BenchOp>, BenchError> {
    if s == "all" {
        return Ok(BenchOp::ALL.to_vec());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Engine with the default plan.
    Engine,
    /// Plain scalar loops; `scaled_copy` is a copy followed by a scal.
    Naive,
    /// Engine with the unroll factor pinned.
    EngineUnroll(usize),
}

impl Variant {
    pub fn name(self) -> String {
        match self {
            Variant::Engine => "engine".to_string(),
            Variant::Naive => "naive".to_string(),
            Variant::EngineUnroll(u) => format!("engine-U{u}"),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Variant {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "engine" => Ok(Variant::Engine),
            "naive" => Ok(Variant::Naive),
            "engine-U1" => Ok(Variant::EngineUnroll(1)),
            "engine-U2" => Ok(Variant::EngineUnroll(2)),
            "engine-U4" => Ok(Variant::EngineUnroll(4)),
            "engine-U8" => Ok(Variant::EngineUnroll(8)),
            _ => Err(BenchError::UnknownVariant(s.to_string())),
        }
    }
}

pub fn parse_variants(s: &str) -> Result<Vec<Variant>, BenchError> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ElementType {
    #[default]
    F32,
    F64,
}

impl ElementType {
    pub fn name(self) -> &'static str {
        match self {
            ElementType::F32 => "f32",
            ElementType::F64 => "f64",
        }
    }

    pub fn size(self) -> usize {
        match self {
            ElementType::F32 => 4,
            ElementType::F64 => 8,
        }
    }
}

impl FromStr for ElementType {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "f32" => Ok(ElementType::F32),
            "f64" => Ok(ElementType::F64),
            _ => Err(BenchError::UnknownType(s.to_string())),
        }
    }
}

/// Powers of two from 2^6 to 2^22, each with its neighbours ±1.
pub fn default_sizes() -> Vec<usize> {
    (6..=22).flat_map(|k| [(1usize << k) - 1, 1 << k, (1 << k) + 1]).collect()
}

/// Parses `default` or a comma separated list of sizes.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, BenchError> {
    if s == "default" {
        return Ok(default_sizes());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| BenchError::InvalidSizes(s.to_string())))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub ops: Vec<BenchOp>,
    pub variants: Vec<Variant>,
    pub element: ElementType,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub warmup: usize,
    pub seed: u64,
    /// Packages per iteration for engine variants; `None` keeps the default.
    pub packages: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ops: BenchOp::ALL.to_vec(),
            variants: vec![Variant::Engine, Variant::Naive],
            element: ElementType::F32,
            sizes: default_sizes(),
            reps: 25,
            warmup: 5,
            seed: 42,
            packages: None,
        }
    }
}

impl BenchConfig {
    /// Number of records a sweep produces.
    pub fn record_count(&self) -> usize {
        self.ops.len() * self.variants.len() * self.sizes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub op: String,
    pub variant: String,
    #[serde(rename = "type")]
    pub element: String,
    pub n: usize,
    pub reps: usize,
    pub best_s: f64,
    pub median_s: f64,
    pub gflops: f64,
    pub gbytes: f64,
}

/// Reproducible benchmark input: `n` values uniform in `[-1, 1)`.
pub fn bench_data<S: Element>(n: usize, seed: u64) -> DenseVector<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseVector::from_fn(n, |_| S::from_f64(rng.random_range(-1.0..1.0)))
}

/// Runs every op × variant × size combination, in that nesting order.
pub fn run_sweep(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if config.reps == 0 {
        return Err(BenchError::InvalidConfig("reps must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(config.record_count());
    let mut index = 0u64;
    for &op in &config.ops {
        for &variant in &config.variants {
            for &n in &config.sizes {
                let seed = config.seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let record = match config.element {
                    ElementType::F32 => measure::<f32>(op, variant, n, seed, config)?,
                    ElementType::F64 => measure::<f64>(op, variant, n, seed, config)?,
                };
                records.push(record);
                index += 1;
            }
        }
    }
    Ok(records)
}

struct Operands<S: Element> {
    x: DenseVector<S>,
    y: DenseVector<S>,
    pristine_x: DenseVector<S>,
    pristine_y: DenseVector<S>,
}

impl<S: Element> Operands<S> {
    fn new(n: usize, seed: u64) -> Self {
        let x = bench_data::<S>(n, seed);
        let y = bench_data::<S>(n, seed ^ 0x5555_5555);
        Operands { pristine_x: x.clone(), pristine_y: y.clone(), x, y }
    }

    fn reset(&mut self) {
        self.x.as_mut_slice().copy_from_slice(self.pristine_x.as_slice());
        self.y.as_mut_slice().copy_from_slice(self.pristine_y.as_slice());
    }
}

fn run_kernel<S: Element>(
    op: BenchOp,
    exec: Option<&Executor<Native>>,
    data: &mut Operands<S>,
) -> Result<(), crate::Error>
where
    Native: Vectorizer<S>,
{
    // Close to one so repeated in-place scaling stays in the normal range.
    let scale = S::from_f64(0.9999);
    let alpha = S::from_f64(0.5);
    let x = black_box(&mut data.x);
    let y = black_box(&mut data.y);
    match (op, exec) {
        (BenchOp::Dot, Some(e)) => {
            black_box(e.dot(&*x, &*y)?);
        }
        (BenchOp::Dot, None) => {
            black_box(oracle::oracle_dot(x.as_slice(), y.as_slice())?);
        }
        (BenchOp::Scal, Some(e)) => e.scal(scale, x)?,
        (BenchOp::Scal, None) => oracle::oracle_scal(scale, x.as_mut_slice()),
        (BenchOp::Axpy, Some(e)) => e.axpy(alpha, x, y)?,
        (BenchOp::Axpy, None) => oracle::oracle_axpy(alpha, x.as_slice(), y.as_mut_slice())?,
        (BenchOp::ScaledCopy, Some(e)) => e.scaled_copy(alpha, x, y)?,
        (BenchOp::ScaledCopy, None) => {
            y.as_mut_slice().copy_from_slice(x.as_slice());
            oracle::oracle_scal(alpha, y.as_mut_slice());
        }
    }
    Ok(())
}

fn measure<S: Element>(
    op: BenchOp,
    variant: Variant,
    n: usize,
    seed: u64,
    config: &BenchConfig,
) -> Result<BenchRecord, BenchError>
where
    Native: Vectorizer<S>,
{
    let exec = match variant {
        Variant::Naive => None,
        Variant::Engine => Some(Executor::<Native>::with_overrides(PlanOverrides {
            packages: config.packages,
            ..PlanOverrides::default()
        })),
        Variant::EngineUnroll(u) => Some(Executor::<Native>::with_overrides(PlanOverrides {
            unroll: Some(u),
            packages: config.packages,
            register_budget: None,
        })),
    };
    let mut data = Operands::<S>::new(n, seed);
    let inner = (ELEMENTS_PER_REP / n.max(1)).max(1);

    for _ in 0..config.warmup {
        data.reset();
        for _ in 0..inner {
            run_kernel(op, exec.as_ref(), &mut data)?;
        }
    }

    let mut times = Vec::with_capacity(config.reps);
    for _ in 0..config.reps {
        data.reset();
        let start = Instant::now();
        for _ in 0..inner {
            run_kernel(op, exec.as_ref(), &mut data)?;
        }
        let elapsed = start.elapsed().as_secs_f64().max(1e-9);
        times.push(elapsed / inner as f64);
    }
    times.sort_by(f64::total_cmp);
    let best = times[0];
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 { times[mid] } else { 0.5 * (times[mid - 1] + times[mid]) };

    Ok(BenchRecord {
        op: op.name().to_string(),
        variant: variant.name(),
        element: S::NAME.to_string(),
        n,
        reps: config.reps,
        best_s: best,
        median_s: median,
        gflops: op.flops(n) / best / 1e9,
        gbytes: op.bytes(n, std::mem::size_of::<S>()) / best / 1e9,
    })
}

/// Writes the header and one row per record.
pub fn emit_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    let file = std::fs::File::create(path)?;
    emit_csv(records, std::io::BufWriter::new(file))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let records = r.deserialize().collect::<Result<Vec<BenchRecord>, _>>()?;
    Ok(records)
}

/// Sidecar line recording cache sizes (bytes) for plotting.
pub fn cache_metadata_line(cache_sizes: &[usize]) -> String {
    let list: Vec<String> = cache_sizes.iter().map(|c| c.to_string()).collect();
    format!("# cache_bytes={}", list.join(","))
}
