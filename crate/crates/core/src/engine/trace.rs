//! Call recording for loop-template inspection.

use std::cell::RefCell;

use super::{run, UnrollPlan};
use crate::element::Element;
use crate::error::Result;
use crate::expr::ExprNode;
use crate::lanes::{LaneVector, Vectorizer};

/// One contract call made by the engine on the root node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceEvent {
    Init,
    LoadOnce { slot: usize },
    Load { slot: usize, index: usize },
    VectorOp { slot: usize, index: usize },
    Store { slot: usize, index: usize },
    SingleOp { index: usize },
    Cleanup,
}

/// Wraps a root and logs every call. Slots are numbered in the order
/// `load_once` reaches them.
struct Traced<'r, R> {
    inner: &'r R,
    log: RefCell<Vec<TraceEvent>>,
}

impl<R> Traced<'_, R> {
    fn record(&self, e: TraceEvent) {
        self.log.borrow_mut().push(e);
    }
}

impl<S, V, R> ExprNode<S, V> for Traced<'_, R>
where
    S: Element,
    V: Vectorizer<S>,
    R: ExprNode<S, V>,
{
    type Storage = (usize, R::Storage);
    type TemporaryStorage = (usize, R::TemporaryStorage);

    const REGISTER_FOOTPRINT: usize = R::REGISTER_FOOTPRINT;

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        self.inner.check_len(len)
    }

    fn init(&self, ts: &mut Self::TemporaryStorage) {
        self.record(TraceEvent::Init);
        ts.0 = 0;
        self.inner.init(&mut ts.1);
    }

    fn cleanup(&self, ts: &mut Self::TemporaryStorage) {
        self.record(TraceEvent::Cleanup);
        self.inner.cleanup(&mut ts.1);
    }

    fn load_once(&self, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        s.0 = ts.0;
        ts.0 += 1;
        self.record(TraceEvent::LoadOnce { slot: s.0 });
        self.inner.load_once(&mut s.1, &mut ts.1);
    }

    unsafe fn load(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.record(TraceEvent::Load { slot: s.0, index: i });
        unsafe { self.inner.load(i, &mut s.1, &mut ts.1) }
    }

    fn vector_op(
        &self,
        i: usize,
        s: &mut Self::Storage,
        ts: &mut Self::TemporaryStorage,
    ) -> LaneVector<S, V> {
        self.record(TraceEvent::VectorOp { slot: s.0, index: i });
        self.inner.vector_op(i, &mut s.1, &mut ts.1)
    }

    unsafe fn store(&self, i: usize, s: &mut Self::Storage, ts: &mut Self::TemporaryStorage) {
        self.record(TraceEvent::Store { slot: s.0, index: i });
        unsafe { self.inner.store(i, &mut s.1, &mut ts.1) }
    }

    unsafe fn single_op(&self, i: usize, ts: &mut Self::TemporaryStorage) -> S {
        self.record(TraceEvent::SingleOp { index: i });
        unsafe { self.inner.single_op(i, &mut ts.1) }
    }
}

/// Evaluates `root` under `plan` and returns the sequence of contract calls
/// the engine made. The evaluation's side effects (stores) happen as usual.
pub fn call_trace<S, V, R>(root: &R, plan: &UnrollPlan) -> Result<Vec<TraceEvent>>
where
    S: Element,
    V: Vectorizer<S>,
    R: ExprNode<S, V>,
{
    let traced = Traced { inner: root, log: RefCell::new(Vec::new()) };
    run::<S, V, _, _, _>(&traced, plan, |_, _, _| ())?;
    Ok(traced.log.into_inner())
}
