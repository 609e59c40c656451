// Counts element traffic to show that `out = alpha * x` is one pass:
// every source element read once, every destination element written once,
// the destination never read.

use lanefuse::oracle::CountingVector;
use lanefuse::{DenseVector, Executor, Native};

pub fn run_example() -> lanefuse::Result<()> {
    let n = 1000;
    let x = CountingVector::new(DenseVector::from_fn(n, |i| i as f32));
    let mut out = CountingVector::<f32>::zeros(n);

    let tree = 2.5f32 * &x;
    println!("after building: {} reads", x.reads());

    out.assign(&Executor::<Native>::new(), tree)?;
    println!("source reads       {}", x.reads());
    println!("destination writes {}", out.writes());
    println!("destination reads  {}", out.reads());

    assert_eq!((x.reads(), out.writes(), out.reads()), (n, n, 0));

    let a = CountingVector::<f32>::from_values(&[1.0; 64]);
    let b = CountingVector::<f32>::from_values(&[2.0; 64]);
    let c = CountingVector::<f32>::from_values(&[3.0; 64]);
    let mut d = CountingVector::<f32>::zeros(64);
    d.assign(&Executor::<Native>::new(), &a + (&b - &c))?;
    println!("a + (b - c): {} reads, {} writes", a.reads() + b.reads() + c.reads(), d.writes());
    Ok(())
}

fn main() {
    run_example().expect("fused example failed");
}
