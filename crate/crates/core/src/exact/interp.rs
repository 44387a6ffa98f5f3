use num_traits::{One, Zero};

use super::mat::Mat;
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// Recovers the coefficient vectors `c_0..c_degree` of a vector-valued
/// polynomial `t ↦ Σ c_k t^k` from exact samples.
///
/// The first `degree + 1` samples determine the coefficients through the
/// Vandermonde system; any further samples must agree, otherwise the map
/// had a higher degree than declared.
pub fn interpolate_vector_poly(samples: &[(Rat, Vec<Rat>)], degree: usize) -> Result<Vec<Vec<Rat>>> {
    let needed = degree + 1;
    if samples.len() < needed {
        return Err(Error::Contract(format!(
            "{} samples cannot determine a degree-{degree} polynomial",
            samples.len()
        )));
    }
    for (i, (t, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(s, _)| s == t) {
            return Err(Error::Contract(format!("repeated interpolation node {t}")));
        }
    }
    let width = samples[0].1.len();
    if samples.iter().any(|(_, v)| v.len() != width) {
        return Err(Error::Contract("samples have different lengths".into()));
    }

    let vandermonde = Mat::from_fn(needed, needed, |i, k| pow(&samples[i].0, k));
    let inv = vandermonde
        .inverse()
        .ok_or_else(|| Error::Internal("singular Vandermonde matrix".into()))?;
    let coeffs: Vec<Vec<Rat>> = (0..needed)
        .map(|k| {
            (0..width)
                .map(|c| {
                    (0..needed).fold(Rat::zero(), |acc, i| {
                        let w = inv.get(k, i);
                        if w.is_zero() {
                            acc
                        } else {
                            acc + w * &samples[i].1[c]
                        }
                    })
                })
                .collect()
        })
        .collect();

    for (t, value) in &samples[needed..] {
        if &evaluate(&coeffs, t) != value {
            return Err(Error::DegreeMismatch(format!(
                "sample at t = {t} is not reproduced by a degree-{degree} fit"
            )));
        }
    }
    Ok(coeffs)
}

/// Samples `f` at the integer nodes `0..=degree` and interpolates.
pub fn interpolate_with_nodes(degree: usize, mut f: impl FnMut(&Rat) -> Result<Vec<Rat>>) -> Result<Vec<Vec<Rat>>> {
    let samples = (0..=degree)
        .map(|k| {
            let t = rat(k as i64);
            f(&t).map(|v| (t, v))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_vector_poly(&samples, degree)
}

fn pow(t: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= t;
    }
    acc
}

pub(crate) fn evaluate(coeffs: &[Vec<Rat>], t: &Rat) -> Vec<Rat> {
    let width = coeffs.first().map_or(0, Vec::len);
    let mut acc = vec![Rat::zero(); width];
    for c in coeffs.iter().rev() {
        for (a, x) in acc.iter_mut().zip(c) {
            *a = &*a * t + x;
        }
    }
    acc
}
