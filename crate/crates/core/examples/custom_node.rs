// A user-defined node: elementwise absolute value. Implementing the node
// contract is enough for the engine to fuse it with the built-in operators.

use lanefuse::expr::{ExprNode, Leaf};
use lanefuse::lanes::{LaneVector, Vectorizer};
use lanefuse::{DenseVector, Element, Executor, Expr};

struct Abs<E>(E);

impl<S: Element, V: Vectorizer<S>, E: ExprNode<S, V>> ExprNode<S, V> for Abs<E> {
    type Storage = E::Storage;
    type TemporaryStorage = E::TemporaryStorage;
    const REGISTER_FOOTPRINT: usize = E::REGISTER_FOOTPRINT + 1;

    fn len(&self) -> usize {
        self.0.len()
    }
    fn check_len(&self, len: usize) -> lanefuse::Result<()> {
        self.0.check_len(len)
    }
    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.0.init(ts)
    }
    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.0.cleanup(ts)
    }
    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.0.load_once(s, ts)
    }
    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.0.load(i, s, ts) }
    }
    fn vector_op(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) -> LaneVector<S, V> {
        // no abs lane op, so go through the lanes one at a time
        let v = self.0.vector_op(i, s, ts);
        let lanes: Vec<S> = v.to_vec().into_iter().map(S::abs).collect();
        LaneVector::from_slice(&lanes)
    }
    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        unsafe { self.0.store(i, s, ts) }
    }
    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        unsafe { self.0.single_op(i, ts) }.abs()
    }
}

fn abs<E>(e: Expr<E>) -> Expr<Abs<E>> {
    Expr::new(Abs(e.into_node()))
}

pub fn run_example() -> lanefuse::Result<()> {
    let x = DenseVector::from_fn(11, |i| i as f64 - 5.0);
    let y = DenseVector::filled(11, 1.0);

    let mut out = DenseVector::zeros(11);
    Executor::<lanefuse::Native>::new().assign(&mut out, abs(&x - &y) * 2.0)?;
    println!("2 |x - 1| = {:?}", out.to_values());

    let l1 = abs(Expr::new(Leaf::new(&x))).sum()?;
    println!("sum |x| = {l1}");
    assert_eq!(l1, 30.0);
    Ok(())
}

fn main() {
    run_example().expect("custom node example failed");
}
