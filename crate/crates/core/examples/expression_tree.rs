// Builds `d = a + (b - c)` as one lazy tree and evaluates it in a single loop.

use lanefuse::DenseVector;

pub fn run_example() -> lanefuse::Result<()> {
    let n = 10;
    let a = DenseVector::from_fn(n, |i| i as f64);
    let b = DenseVector::filled(n, 2.0);
    let c = DenseVector::from_fn(n, |i| 0.5 * i as f64);

    // nothing is computed here
    let tree = &a + (&b - &c);

    let mut d = DenseVector::zeros(n);
    d.assign(tree)?;
    println!("d = {:?}", d.to_values());

    for i in 0..n {
        assert_eq!(d.get(i), a.get(i) + (b.get(i) - c.get(i)));
    }

    // in-place updates read the destination through the tree
    d.update(|d| d * 2.0 - &a)?;
    println!("2d - a = {:?}", d.to_values());
    Ok(())
}

fn main() {
    run_example().expect("expression example failed");
}
