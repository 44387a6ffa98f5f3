//! Generators of the invariant polynomials, their gradient fields, and exact
//! higher directional derivatives of those fields.
//!
//! Generator `j` (1-based) has degree `m_j + 1`; its gradient `P_j` is
//! defined through the algebra's invariant form `T` by
//! `d/dt p_j(x + ty) |_{t=0} = T(P_j(x), y)`.

mod identities;

pub use identities::{
    default_shift_samples, kostant_independence, mf_shift_rank, sl2_vectors, triangular_decomposition, verify_algebra,
    verify_field_identities, AlgebraVerification, Sl2Vectors, TriangularDecomposition,
};

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, interpolate_vector_poly, rat, Mat, Rat};
use crate::liealg::{AlgebraRealization, Element, GeneratorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantGenerator {
    /// 1-based position in degree order.
    pub index: usize,
    pub degree: usize,
    pub exponent: usize,
    pub kind: GeneratorKind,
}

pub fn generators(alg: &AlgebraRealization) -> Vec<InvariantGenerator> {
    alg.generator_degrees()
        .into_iter()
        .zip(alg.generator_kinds())
        .enumerate()
        .map(|(i, (degree, kind))| InvariantGenerator {
            index: i + 1,
            degree,
            exponent: degree - 1,
            kind,
        })
        .collect()
}

pub fn generator(alg: &AlgebraRealization, j: usize) -> Result<InvariantGenerator> {
    if j == 0 || j > alg.rank() {
        return Err(Error::Contract(format!(
            "generator index {j} outside 1..={} for {}",
            alg.rank(),
            alg.id()
        )));
    }
    Ok(generators(alg)[j - 1])
}

fn same_algebra(alg: &AlgebraRealization, x: &Element) -> Result<()> {
    if x.algebra() != alg.id() {
        return Err(Error::Contract(format!(
            "element of {} used with {}",
            x.algebra(),
            alg.id()
        )));
    }
    Ok(())
}

fn twisted(alg: &AlgebraRealization, x: &Element) -> Result<Mat> {
    let s = alg
        .preserved_form()
        .ok_or_else(|| Error::Internal("pfaffian generator without a preserved form".into()))?;
    Ok(s.mul(&alg.to_matrix(x)))
}

/// `p_j(x)`: `tr(x^d)`, or the Pfaffian of the skew matrix `S·x`.
pub fn eval_generator(alg: &AlgebraRealization, j: usize, x: &Element) -> Result<Rat> {
    same_algebra(alg, x)?;
    let g = generator(alg, j)?;
    match g.kind {
        GeneratorKind::TracePower => Ok(alg.to_matrix(x).pow(g.degree).trace()),
        GeneratorKind::Pfaffian => twisted(alg, x)?.pfaffian(),
    }
}

/// `P_j(x)`, in closed form.
///
/// Trace powers: `(m+1)·π(x^m)/c` with `π` the orthogonal projection onto
/// the algebra and `c` the form scale. Pfaffians: the differential is
/// assembled from the signed complementary Pfaffians of `S·x` and converted
/// through the inverse Gram matrix.
pub fn gradient(alg: &AlgebraRealization, j: usize, x: &Element) -> Result<Element> {
    same_algebra(alg, x)?;
    let g = generator(alg, j)?;
    match g.kind {
        GeneratorKind::TracePower => {
            let n = alg.matrix_size();
            let mut p = alg.to_matrix(x).pow(g.exponent);
            if alg.preserved_form().is_none() {
                let shift = p.trace() / rat(n as i64);
                p = p.sub(&Mat::identity(n).scale(&shift));
            }
            let c = rat(g.degree as i64) / alg.form_scale();
            alg.from_matrix(&p.scale(&c))
                .map_err(|e| Error::Internal(format!("gradient left the algebra: {e}")))
        }
        GeneratorKind::Pfaffian => {
            let a = twisted(alg, x)?;
            let s = alg.preserved_form().expect("checked by twisted");
            let n = a.rows();
            // ∂pf/∂a_{uv} for u < v.
            let mut partial = Mat::zeros(n, n);
            for u in 0..n {
                for v in u + 1..n {
                    let keep: Vec<usize> = (0..n).filter(|&k| k != u && k != v).collect();
                    let minor = Mat::from_fn(n - 2, n - 2, |r, c| a.get(keep[r], keep[c]).clone());
                    let pf = minor.pfaffian()?;
                    partial.set(u, v, if (u + v) % 2 == 1 { pf } else { -pf });
                }
            }
            let differential: Vec<Rat> = (0..alg.dim())
                .map(|k| {
                    let sb = s.mul(&alg.basis_matrix(k));
                    let mut acc = Rat::zero();
                    for u in 0..n {
                        for v in u + 1..n {
                            let d = partial.get(u, v);
                            if !d.is_zero() {
                                acc += d * sb.get(u, v);
                            }
                        }
                    }
                    acc
                })
                .collect();
            alg.element(alg.gram_inverse().mul_vec(&differential))
        }
    }
}

/// Compares `T(P_j(x), y)` with `d/dt p_j(x + ty)` at `t = 0`, the latter
/// read off an exact interpolation of `t ↦ p_j(x + ty)`, for `count`
/// random integer directions `y`.
pub fn check_gradient<R: Rng>(
    alg: &AlgebraRealization,
    j: usize,
    x: &Element,
    count: usize,
    rng: &mut R,
) -> Result<()> {
    let g = generator(alg, j)?;
    let p = gradient(alg, j, x)?;
    for _ in 0..count {
        let y = random_element(alg, rng, 3);
        let samples = (0..=g.degree)
            .map(|k| {
                let t = rat(k as i64);
                eval_generator(alg, j, &x.add_scaled(&t, &y)).map(|v| (t, vec![v]))
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = interpolate_vector_poly(&samples, g.degree)?;
        if coeffs[1][0] != alg.form(&p, &y) {
            return Err(Error::Internal(format!(
                "gradient of generator {j} disagrees with the differential at {x:?}"
            )));
        }
    }
    Ok(())
}

/// An element with independent uniform integer coordinates in
/// `-bound..=bound`.
pub fn random_element<R: Rng>(alg: &AlgebraRealization, rng: &mut R, bound: i64) -> Element {
    let coords = (0..alg.dim()).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
    alg.element(coords).expect("length matches")
}

/// `terms[k] = d^kP_j(x).y^(k) / k!`, `k = 0..=m_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorTerms {
    pub j: usize,
    pub x: Element,
    pub y: Element,
    pub terms: Vec<Element>,
}

fn line_coefficients(
    alg: &AlgebraRealization,
    j: usize,
    x: &Element,
    y: &Element,
    degree: usize,
) -> Result<Vec<Vec<Rat>>> {
    // One node beyond the degree, so a wrong degree cannot go unnoticed.
    let samples = (0..=degree + 1)
        .map(|k| {
            let t = rat(k as i64);
            gradient(alg, j, &x.add_scaled(&t, y)).map(|p| (t, p.into_coords()))
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate_vector_poly(&samples, degree).map_err(|e| match e {
        Error::DegreeMismatch(m) => Error::Internal(format!("gradient degree: {m}")),
        other => other,
    })
}

pub fn taylor_terms(alg: &AlgebraRealization, j: usize, x: &Element, y: &Element) -> Result<TaylorTerms> {
    same_algebra(alg, x)?;
    same_algebra(alg, y)?;
    let m = generator(alg, j)?.exponent;
    let coeffs = line_coefficients(alg, j, x, y, m)?;
    let terms: Vec<Element> = coeffs.into_iter().map(|c| alg.element(c)).collect::<Result<_>>()?;
    if terms[0] != gradient(alg, j, x)? || terms[m] != gradient(alg, j, y)? {
        return Err(Error::Internal("Taylor endpoints disagree with the gradient".into()));
    }
    Ok(TaylorTerms {
        j,
        x: x.clone(),
        y: y.clone(),
        terms,
    })
}

/// `d^{a+b}P_j(x).u^(a).y^(b)`: `a!·b!` times the coefficient of `t^a s^b`
/// in `P_j(x + tu + sy)`. Zero when `a + b > m_j`.
pub fn mixed_term(
    alg: &AlgebraRealization,
    j: usize,
    x: &Element,
    u: &Element,
    a: usize,
    y: &Element,
    b: usize,
) -> Result<Element> {
    same_algebra(alg, x)?;
    same_algebra(alg, u)?;
    same_algebra(alg, y)?;
    let m = generator(alg, j)?.exponent;
    if a + b > m {
        return Ok(alg.zero());
    }
    let weight = factorial(a) * factorial(b);
    let coeff = if b == 0 {
        line_coefficients(alg, j, x, u, m)?.swap_remove(a)
    } else if a == 0 {
        line_coefficients(alg, j, x, y, m)?.swap_remove(b)
    } else {
        // For each s-node, the t^a coefficient along u; then interpolate
        // those in s, a polynomial of degree m − a.
        let samples = (0..=m - a + 1)
            .map(|k| {
                let s = rat(k as i64);
                line_coefficients(alg, j, &x.add_scaled(&s, y), u, m).map(|mut c| (s, c.swap_remove(a)))
            })
            .collect::<Result<Vec<_>>>()?;
        interpolate_vector_poly(&samples, m - a)
            .map_err(|e| Error::Internal(format!("mixed derivative: {e}")))?
            .swap_remove(b)
    };
    alg.element(coeff.into_iter().map(|c| c * &weight).collect())
}
