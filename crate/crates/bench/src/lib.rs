//! Shared fixtures for the criterion benches.

use nilab::exact::{rat, Mat};
use nilab::liealg::Family;
use nilab::{AlgebraRealization, Element};

/// Dense integer matrix with small, well-spread entries.
pub fn dense(n: usize) -> Mat {
    Mat::from_fn(n, n, |i, j| rat(((7 * i + 3 * j * j + 1) % 11) as i64 - 5))
}

/// Skew-symmetric companion of [`dense`].
pub fn skew(n: usize) -> Mat {
    let d = dense(n);
    d.sub(&d.transpose())
}

pub fn algebra(family: Family, rank: usize) -> AlgebraRealization {
    AlgebraRealization::build(family, rank).expect("algebra builds")
}

/// A fixed element with no zero coordinate.
pub fn generic_element(alg: &AlgebraRealization) -> Element {
    let coords: Vec<i64> = (0..alg.dim())
        .map(|k| (k as i64 * 5) % 7 - 3)
        .map(|c| if c == 0 { 1 } else { c })
        .collect();
    alg.element_from_i64(&coords).expect("coordinates fit")
}
