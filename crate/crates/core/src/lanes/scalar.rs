use super::Vectorizer;
use crate::element::Element;

/// Portable one-lane fallback.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Scalar;

impl<S: Element> Vectorizer<S> for Scalar {
    type Vector = S;

    const WIDTH: usize = 1;
    const SPECIALIZED: bool = false;
    const NAME: &'static str = "scalar";

    #[inline(always)]
    fn splat(value: S) -> S {
        value
    }

    #[inline(always)]
    unsafe fn load(ptr: *const S) -> S {
        unsafe { ptr.read() }
    }

    #[inline(always)]
    unsafe fn store(ptr: *mut S, v: S) {
        unsafe { ptr.write(v) }
    }

    #[inline(always)]
    fn add(a: S, b: S) -> S {
        a + b
    }

    #[inline(always)]
    fn sub(a: S, b: S) -> S {
        a - b
    }

    #[inline(always)]
    fn mul(a: S, b: S) -> S {
        a * b
    }

    #[inline(always)]
    fn extract(v: S, k: usize) -> S {
        debug_assert_eq!(k, 0);
        v
    }

    #[inline(always)]
    fn horizontal_sum(v: S) -> S {
        v
    }
}
