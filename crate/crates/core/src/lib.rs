//! Exact-arithmetic construction and verification of the universal
//! 3-generated axial algebra of Jordan type one half.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod field;
pub mod linalg;
pub mod algebra;
pub mod universal;
pub mod frobenius;
pub mod jordan;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, F>(n: usize, f: F) -> alloc::vec::Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, F>(n: usize, f: F) -> alloc::vec::Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
