//! Platform abstraction for SIMD lane vectors.
//!
//! A [`Vectorizer`] backend supplies the register type and the handful of
//! instructions the loop engine needs: broadcast, aligned load and store,
//! elementwise add/sub/mul and a horizontal sum. Algorithms are written
//! against [`LaneVector`] and never touch intrinsics directly, so adding a
//! new instruction set means adding one backend type.
//!
//! Two backends ship with the crate:
//!
//! * [`Scalar`]: one lane, `SPECIALIZED = false`, available everywhere.
//! * [`Sse`] (x86-64 only): 128-bit registers, 4 lanes of `f32` or 2 of `f64`.
//!
//! [`Native`] names the best backend for the compilation target.
//!
//! There is no fused multiply-add; products and sums are separate,
//! individually rounded instructions.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Sub};

use crate::element::Element;

mod scalar;
#[cfg(target_arch = "x86_64")]
mod sse;

pub use scalar::Scalar;
#[cfg(target_arch = "x86_64")]
pub use sse::Sse;

/// Best backend available for the compilation target.
#[cfg(target_arch = "x86_64")]
pub type Native = Sse;
/// Best backend available for the compilation target.
#[cfg(not(target_arch = "x86_64"))]
pub type Native = Scalar;

/// Instruction set wrapper for element type `S`.
///
/// Implementations must be purely elementwise for `add`, `sub` and `mul`:
/// lane `k` of the result depends only on lane `k` of the operands and is
/// rounded exactly like the scalar operation.
pub trait Vectorizer<S: Element>: Copy + Default + fmt::Debug + Send + Sync + 'static {
    /// The register type.
    type Vector: Copy + fmt::Debug;

    /// Number of `S` lanes per register. A power of two.
    const WIDTH: usize;
    /// `true` when backed by real vector instructions.
    const SPECIALIZED: bool;
    const NAME: &'static str;

    fn splat(value: S) -> Self::Vector;

    /// # Safety
    ///
    /// `ptr` must be valid for reading `WIDTH` elements and aligned to
    /// `WIDTH * size_of::<S>()` bytes.
    unsafe fn load(ptr: *const S) -> Self::Vector;

    /// # Safety
    ///
    /// `ptr` must be valid for writing `WIDTH` elements and aligned to
    /// `WIDTH * size_of::<S>()` bytes.
    unsafe fn store(ptr: *mut S, v: Self::Vector);

    fn add(a: Self::Vector, b: Self::Vector) -> Self::Vector;
    fn sub(a: Self::Vector, b: Self::Vector) -> Self::Vector;
    fn mul(a: Self::Vector, b: Self::Vector) -> Self::Vector;

    /// Lane `k`, `k < WIDTH`.
    fn extract(v: Self::Vector, k: usize) -> S;

    /// Sum of all lanes, accumulated left to right starting from lane 0.
    #[inline(always)]
    fn horizontal_sum(v: Self::Vector) -> S {
        let mut acc = Self::extract(v, 0);
        for k in 1..Self::WIDTH {
            acc = acc + Self::extract(v, k);
        }
        acc
    }
}

/// Static properties of a backend for one element type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaneCapabilities {
    pub width: usize,
    pub specialized: bool,
    /// Bytes; `width * size_of::<S>()`.
    pub required_alignment: usize,
}

impl LaneCapabilities {
    pub fn of<S: Element, V: Vectorizer<S>>() -> Self {
        LaneCapabilities {
            width: V::WIDTH,
            specialized: V::SPECIALIZED,
            required_alignment: V::WIDTH * std::mem::size_of::<S>(),
        }
    }
}

/// A register holding `V::WIDTH` elements of type `S`.
pub struct LaneVector<S: Element, V: Vectorizer<S>> {
    raw: V::Vector,
    _marker: PhantomData<S>,
}

impl<S: Element, V: Vectorizer<S>> Clone for LaneVector<S, V> {
    #[inline(always)]
    fn clone(&self) -> Self {
        *self
    }
}

impl<S: Element, V: Vectorizer<S>> Copy for LaneVector<S, V> {}

impl<S: Element, V: Vectorizer<S>> Default for LaneVector<S, V> {
    #[inline(always)]
    fn default() -> Self {
        Self::splat(S::ZERO)
    }
}

impl<S: Element, V: Vectorizer<S>> fmt::Debug for LaneVector<S, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}

impl<S: Element, V: Vectorizer<S>> PartialEq for LaneVector<S, V> {
    fn eq(&self, other: &Self) -> bool {
        (0..V::WIDTH).all(|k| self.lane(k) == other.lane(k))
    }
}

impl<S: Element, V: Vectorizer<S>> LaneVector<S, V> {
    pub const WIDTH: usize = V::WIDTH;

    #[inline(always)]
    pub fn from_raw(raw: V::Vector) -> Self {
        LaneVector { raw, _marker: PhantomData }
    }

    #[inline(always)]
    pub fn raw(self) -> V::Vector {
        self.raw
    }

    #[inline(always)]
    pub fn splat(value: S) -> Self {
        Self::from_raw(V::splat(value))
    }

    /// Builds a lane vector from exactly `WIDTH` values.
    ///
    /// # Panics
    ///
    /// If `values.len() != WIDTH`.
    pub fn from_slice(values: &[S]) -> Self {
        assert_eq!(values.len(), V::WIDTH, "lane count mismatch");
        let mut v = Self::default();
        for (k, &x) in values.iter().enumerate() {
            v = v.with_lane(k, x);
        }
        v
    }

    fn with_lane(self, k: usize, x: S) -> Self {
        // Round trip through an aligned buffer; only used off the hot path.
        let mut buf = LaneBuf::<S>::new();
        let ptr = buf.as_mut_ptr();
        unsafe {
            V::store(ptr, self.raw);
            *ptr.add(k) = x;
            Self::from_raw(V::load(ptr))
        }
    }

    /// Loads lanes `offset..offset + WIDTH` of `region`.
    ///
    /// # Panics
    ///
    /// If the window runs past the end of `region` or its first element is
    /// not aligned to `width * size_of::<S>()` bytes. Misalignment is a
    /// programming error; [`DenseVector`](crate::DenseVector) storage always
    /// satisfies it for lane-multiple offsets.
    #[inline]
    pub fn load_aligned(region: &[S], offset: usize) -> Self {
        assert!(
            offset.checked_add(V::WIDTH).is_some_and(|end| end <= region.len()),
            "lane window {}..{}+{} out of bounds for length {}",
            offset,
            offset,
            V::WIDTH,
            region.len()
        );
        let ptr = region[offset..].as_ptr();
        assert_aligned::<S, V>(ptr as usize);
        unsafe { Self::from_raw(V::load(ptr)) }
    }

    /// Writes the lanes to `region[offset..offset + WIDTH]`.
    ///
    /// # Panics
    ///
    /// Under the same conditions as [`load_aligned`](Self::load_aligned).
    #[inline]
    pub fn store_aligned(self, region: &mut [S], offset: usize) {
        assert!(
            offset.checked_add(V::WIDTH).is_some_and(|end| end <= region.len()),
            "lane window {}..{}+{} out of bounds for length {}",
            offset,
            offset,
            V::WIDTH,
            region.len()
        );
        let ptr = region[offset..].as_mut_ptr();
        assert_aligned::<S, V>(ptr as usize);
        unsafe { V::store(ptr, self.raw) }
    }

    #[inline(always)]
    pub fn lane(self, k: usize) -> S {
        assert!(k < V::WIDTH, "lane index {k} out of range");
        V::extract(self.raw, k)
    }

    pub fn to_vec(self) -> Vec<S> {
        (0..V::WIDTH).map(|k| V::extract(self.raw, k)).collect()
    }

    #[inline(always)]
    pub fn horizontal_sum(self) -> S {
        V::horizontal_sum(self.raw)
    }
}

fn assert_aligned<S: Element, V: Vectorizer<S>>(addr: usize) {
    let align = V::WIDTH * std::mem::size_of::<S>();
    assert!(
        addr % align == 0,
        "address {addr:#x} not aligned to {align} bytes for {} lanes",
        V::NAME
    );
}

impl<S: Element, V: Vectorizer<S>> Add for LaneVector<S, V> {
    type Output = Self;
    #[inline(always)]
    fn add(self, rhs: Self) -> Self {
        Self::from_raw(V::add(self.raw, rhs.raw))
    }
}

impl<S: Element, V: Vectorizer<S>> Sub for LaneVector<S, V> {
    type Output = Self;
    #[inline(always)]
    fn sub(self, rhs: Self) -> Self {
        Self::from_raw(V::sub(self.raw, rhs.raw))
    }
}

impl<S: Element, V: Vectorizer<S>> Mul for LaneVector<S, V> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, rhs: Self) -> Self {
        Self::from_raw(V::mul(self.raw, rhs.raw))
    }
}

/// 64-byte aligned scratch large enough for any backend's register.
#[repr(C, align(64))]
struct LaneBuf<S> {
    data: [S; 16],
}

impl<S: Element> LaneBuf<S> {
    fn new() -> Self {
        LaneBuf { data: [S::ZERO; 16] }
    }

    fn as_mut_ptr(&mut self) -> *mut S {
        self.data.as_mut_ptr()
    }
}
