//! Owned, aligned, fixed-length dense vectors.

use std::alloc::{self, Layout};
use std::fmt;
use std::marker::PhantomData;
use std::ptr::NonNull;

use crate::element::Element;

/// Base address alignment of every [`DenseVector`], in bytes.
///
/// One cache line; covers the register width of every shipped backend.
pub const VECTOR_ALIGN: usize = 64;

/// A heap-allocated vector of `S` whose storage starts on a
/// [`VECTOR_ALIGN`]-byte boundary. The length is fixed at construction.
pub struct DenseVector<S: Element> {
    ptr: NonNull<S>,
    len: usize,
    _owns: PhantomData<S>,
}

unsafe impl<S: Element> Send for DenseVector<S> {}
unsafe impl<S: Element> Sync for DenseVector<S> {}

impl<S: Element> DenseVector<S> {
    fn layout(len: usize) -> Layout {
        let bytes = len
            .checked_mul(std::mem::size_of::<S>())
            .expect("vector size overflows usize");
        Layout::from_size_align(bytes, VECTOR_ALIGN).expect("invalid vector layout")
    }

    /// Allocates `len` elements, all set to zero.
    pub fn zeros(len: usize) -> Self {
        if len == 0 {
            // Never dereferenced; only its address is observable.
            let ptr = std::ptr::without_provenance_mut::<S>(VECTOR_ALIGN);
            return DenseVector { ptr: NonNull::new(ptr).unwrap(), len, _owns: PhantomData };
        }
        let layout = Self::layout(len);
        // All-zero bits is 0.0 for IEEE floats.
        let raw = unsafe { alloc::alloc_zeroed(layout) } as *mut S;
        let Some(ptr) = NonNull::new(raw) else {
            alloc::handle_alloc_error(layout)
        };
        DenseVector { ptr, len, _owns: PhantomData }
    }

    pub fn from_values(values: &[S]) -> Self {
        let mut v = Self::zeros(values.len());
        v.as_mut_slice().copy_from_slice(values);
        v
    }

    /// Vector of length `len` with element `i` set to `f(i)`.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> S) -> Self {
        let mut v = Self::zeros(len);
        for (i, x) in v.as_mut_slice().iter_mut().enumerate() {
            *x = f(i);
        }
        v
    }

    pub fn filled(len: usize, value: S) -> Self {
        Self::from_fn(len, |_| value)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    ///
    /// If `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> S {
        self.as_slice()[i]
    }

    /// # Panics
    ///
    /// If `i >= len`.
    #[inline]
    pub fn set(&mut self, i: usize, value: S) {
        self.as_mut_slice()[i] = value;
    }

    #[inline]
    pub fn as_slice(&self) -> &[S] {
        unsafe { std::slice::from_raw_parts(self.ptr.as_ptr(), self.len) }
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [S] {
        unsafe { std::slice::from_raw_parts_mut(self.ptr.as_ptr(), self.len) }
    }

    #[inline]
    pub fn as_ptr(&self) -> *const S {
        self.ptr.as_ptr()
    }

    #[inline]
    pub fn as_mut_ptr(&mut self) -> *mut S {
        self.ptr.as_ptr()
    }

    pub fn to_values(&self) -> Vec<S> {
        self.as_slice().to_vec()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.as_slice().iter()
    }
}

impl<S: Element> Drop for DenseVector<S> {
    fn drop(&mut self) {
        if self.len > 0 {
            unsafe { alloc::dealloc(self.ptr.as_ptr() as *mut u8, Self::layout(self.len)) }
        }
    }
}

impl<S: Element> Clone for DenseVector<S> {
    fn clone(&self) -> Self {
        Self::from_values(self.as_slice())
    }
}

impl<S: Element> fmt::Debug for DenseVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl<S: Element> PartialEq for DenseVector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl<S: Element> From<Vec<S>> for DenseVector<S> {
    fn from(values: Vec<S>) -> Self {
        Self::from_values(&values)
    }
}

impl<S: Element> From<&[S]> for DenseVector<S> {
    fn from(values: &[S]) -> Self {
        Self::from_values(values)
    }
}

impl<S: Element> FromIterator<S> for DenseVector<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let values: Vec<S> = iter.into_iter().collect();
        Self::from_values(&values)
    }
}

impl<'a, S: Element> IntoIterator for &'a DenseVector<S> {
    type Item = &'a S;
    type IntoIter = std::slice::Iter<'a, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_is_zero_and_aligned() {
        for n in [0usize, 1, 5, 17, 1000] {
            let v = DenseVector::<f32>::zeros(n);
            assert_eq!(v.len(), n);
            assert!(v.iter().all(|&x| x == 0.0));
            assert_eq!(v.as_ptr() as usize % VECTOR_ALIGN, 0);
            let w = DenseVector::<f64>::zeros(n);
            assert_eq!(w.as_ptr() as usize % VECTOR_ALIGN, 0);
        }
    }

    #[test]
    fn zeros_five() {
        assert_eq!(DenseVector::<f64>::zeros(5).to_values(), vec![0.0; 5]);
    }

    #[test]
    fn from_values_round_trip() {
        let v = DenseVector::from_values(&[1.0f32, 2.0, 3.0]);
        assert_eq!(v.get(1), 2.0);
        assert_eq!(v.to_values(), vec![1.0, 2.0, 3.0]);
        let e = DenseVector::<f32>::from_values(&[]);
        assert_eq!(e.len(), 0);
        assert!(e.is_empty());
    }

    #[test]
    fn set_touches_one_element() {
        let mut v = DenseVector::from_values(&[1.0f64, 2.0, 3.0, 4.0]);
        v.set(2, 7.0);
        assert_eq!(v.get(2), 7.0);
        assert_eq!(v.to_values(), vec![1.0, 2.0, 7.0, 4.0]);
    }

    #[test]
    #[should_panic]
    fn get_on_empty_panics() {
        DenseVector::<f32>::zeros(0).get(0);
    }

    #[test]
    #[should_panic]
    fn set_out_of_bounds_panics() {
        DenseVector::<f32>::zeros(3).set(3, 1.0);
    }

    #[test]
    fn clone_is_aligned_copy() {
        let v = DenseVector::from_fn(33, |i| i as f32);
        let w = v.clone();
        assert_eq!(v, w);
        assert_ne!(v.as_ptr(), w.as_ptr());
        assert_eq!(w.as_ptr() as usize % VECTOR_ALIGN, 0);
    }
}
