//! SSE2 backend. SSE2 is part of the x86-64 baseline, so no runtime
//! feature detection is needed.
#![allow(unused_unsafe)]

use std::arch::x86_64::*;

use super::Vectorizer;

/// 128-bit SSE registers: 4 × `f32` or 2 × `f64`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sse;

impl Vectorizer<f32> for Sse {
    type Vector = __m128;

    const WIDTH: usize = 4;
    const SPECIALIZED: bool = true;
    const NAME: &'static str = "sse";

    #[inline(always)]
    fn splat(value: f32) -> __m128 {
        unsafe { _mm_set1_ps(value) }
    }

    #[inline(always)]
    unsafe fn load(ptr: *const f32) -> __m128 {
        unsafe { _mm_load_ps(ptr) }
    }

    #[inline(always)]
    unsafe fn store(ptr: *mut f32, v: __m128) {
        unsafe { _mm_store_ps(ptr, v) }
    }

    #[inline(always)]
    fn add(a: __m128, b: __m128) -> __m128 {
        unsafe { _mm_add_ps(a, b) }
    }

    #[inline(always)]
    fn sub(a: __m128, b: __m128) -> __m128 {
        unsafe { _mm_sub_ps(a, b) }
    }

    #[inline(always)]
    fn mul(a: __m128, b: __m128) -> __m128 {
        unsafe { _mm_mul_ps(a, b) }
    }

    #[inline(always)]
    fn extract(v: __m128, k: usize) -> f32 {
        let lanes: [f32; 4] = unsafe { std::mem::transmute(v) };
        lanes[k]
    }

    #[inline(always)]
    fn horizontal_sum(v: __m128) -> f32 {
        let l: [f32; 4] = unsafe { std::mem::transmute(v) };
        ((l[0] + l[1]) + l[2]) + l[3]
    }
}

impl Vectorizer<f64> for Sse {
    type Vector = __m128d;

    const WIDTH: usize = 2;
    const SPECIALIZED: bool = true;
    const NAME: &'static str = "sse";

    #[inline(always)]
    fn splat(value: f64) -> __m128d {
        unsafe { _mm_set1_pd(value) }
    }

    #[inline(always)]
    unsafe fn load(ptr: *const f64) -> __m128d {
        unsafe { _mm_load_pd(ptr) }
    }

    #[inline(always)]
    unsafe fn store(ptr: *mut f64, v: __m128d) {
        unsafe { _mm_store_pd(ptr, v) }
    }

    #[inline(always)]
    fn add(a: __m128d, b: __m128d) -> __m128d {
        unsafe { _mm_add_pd(a, b) }
    }

    #[inline(always)]
    fn sub(a: __m128d, b: __m128d) -> __m128d {
        unsafe { _mm_sub_pd(a, b) }
    }

    #[inline(always)]
    fn mul(a: __m128d, b: __m128d) -> __m128d {
        unsafe { _mm_mul_pd(a, b) }
    }

    #[inline(always)]
    fn extract(v: __m128d, k: usize) -> f64 {
        let lanes: [f64; 2] = unsafe { std::mem::transmute(v) };
        lanes[k]
    }

    #[inline(always)]
    fn horizontal_sum(v: __m128d) -> f64 {
        let l: [f64; 2] = unsafe { std::mem::transmute(v) };
        l[0] + l[1]
    }
}
