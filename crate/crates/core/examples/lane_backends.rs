// The lane abstraction and the backends available on this host.

use lanefuse::lanes::{LaneCapabilities, LaneVector, Native, Scalar, Vectorizer};
use lanefuse::Element;

fn describe<S: Element, V: Vectorizer<S>>() {
    let caps = LaneCapabilities::of::<S, V>();
    println!(
        "{:>6} {}: width {}, specialized {}, alignment {} bytes",
        V::NAME,
        S::NAME,
        caps.width,
        caps.specialized,
        caps.required_alignment
    );
}

pub fn run_example() -> lanefuse::Result<()> {
    describe::<f32, Scalar>();
    describe::<f64, Scalar>();
    describe::<f32, Native>();
    describe::<f64, Native>();

    let w = <Native as Vectorizer<f32>>::WIDTH;
    let a = LaneVector::<f32, Native>::from_slice(&(1..=w).map(|i| i as f32).collect::<Vec<_>>());
    let b = LaneVector::<f32, Native>::splat(10.0);
    let c = a * b + a;
    println!("a * 10 + a = {:?}", c.to_vec());
    println!("horizontal sum = {}", c.horizontal_sum());
    Ok(())
}

fn main() {
    run_example().expect("lanes example failed");
}
