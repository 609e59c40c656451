// The level-1 kernels: dot, scal, axpy, scaled_copy, sum and norm2.

use lanefuse::{axpy, dot, norm2, scal, scaled_copy, sum, DenseVector};

pub fn run_example() -> lanefuse::Result<()> {
    let x = DenseVector::from_values(&[1.0f32, 2.0, 3.0]);
    let y = DenseVector::from_values(&[4.0f32, 5.0, 6.0]);
    println!("dot(x, y)   = {}", dot(&x, &y)?);

    let mut z = x.clone();
    scal(2.0, &mut z);
    println!("2 * x       = {:?}", z.to_values());

    let mut w = y.clone();
    axpy(0.5, &x, &mut w)?;
    println!("y + 0.5 x   = {:?}", w.to_values());

    let mut out = DenseVector::zeros(3);
    scaled_copy(3.0, &x, &mut out)?;
    println!("3 x (copy)  = {:?}", out.to_values());

    println!("sum(x)      = {}", sum(&x));
    println!("norm2(3, 4) = {}", norm2(&DenseVector::from_values(&[3.0f32, 4.0])));
    Ok(())
}

fn main() {
    run_example().expect("blas example failed");
}
