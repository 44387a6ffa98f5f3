//! Nilpotent elements from partitions and their sl(2)-triplets.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, Mat, Rat};
use crate::liealg::{AlgebraRealization, Element, Family};

/// A partition of the matrix size, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order; rejects empty input
    /// and zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Partition(format!("{parts:?} has empty or zero parts")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(1, 1, …, 1)`, the partition of the zero orbit.
    pub fn is_zero_orbit(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Every even part has even multiplicity.
    fn even_parts_paired(&self) -> bool {
        self.parts
            .iter()
            .all(|&p| p % 2 == 1 || self.multiplicity(p).is_multiple_of(2))
    }

    /// Every odd part has even multiplicity.
    fn odd_parts_paired(&self) -> bool {
        self.parts
            .iter()
            .all(|&p| p % 2 == 0 || self.multiplicity(p).is_multiple_of(2))
    }

    /// All parts even (each then with even multiplicity): such orbits split
    /// into two under the special orthogonal group.
    pub fn is_very_even(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 0) && self.even_parts_paired()
    }

    pub fn is_valid_for(&self, family: Family) -> bool {
        match family {
            Family::A => true,
            Family::B | Family::D => self.even_parts_paired(),
            Family::C => self.odd_parts_paired(),
        }
    }

    /// Every partition of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Partitions labelling nilpotent orbits of the algebra, zero orbit
    /// included, in decreasing lexicographic order.
    pub fn valid_for(alg: &AlgebraRealization) -> Vec<Partition> {
        Partition::all(alg.matrix_size())
            .into_iter()
            .filter(|p| p.is_valid_for(alg.family()))
            .collect()
    }

    /// Eigenvalues of the characteristic `h` on the natural module,
    /// decreasing.
    pub fn characteristic(&self) -> Vec<i64> {
        let mut ev: Vec<i64> = self
            .parts
            .iter()
            .flat_map(|&d| (0..d).map(move |i| d as i64 - 1 - 2 * i as i64))
            .collect();
        ev.sort_unstable_by(|a, b| b.cmp(a));
        ev
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"3,2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Partition(format!("cannot parse part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// An sl(2)-triplet: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triplet {
    pub h: Element,
    pub e: Element,
    pub f: Element,
}

impl Triplet {
    pub fn verify(&self, alg: &AlgebraRealization) -> Result<()> {
        let two = rat(2);
        let ok = alg.bracket(&self.h, &self.e)? == self.e.scale(&two)
            && alg.bracket(&self.h, &self.f)? == self.f.scale(&-two)
            && alg.bracket(&self.e, &self.f)? == self.h;
        if ok {
            Ok(())
        } else {
            Err(Error::Identity("sl(2)-triplet relations fail".into()))
        }
    }
}

/// Jordan type of a nilpotent matrix, or `None` if the matrix is not
/// nilpotent.
pub fn jordan_type(m: &Mat) -> Option<Partition> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut p = Mat::identity(n);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return None;
        }
        p = p.mul(m);
        ranks.push(p.rank());
    }
    // Blocks of size ≥ k: ranks[k-1] − ranks[k].
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k] - next {
            parts.push(k + 1);
        }
    }
    Partition::new(parts).ok()
}

fn diag(d: &[i64]) -> Mat {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| if i == j { rat(d[i]) } else { Rat::zero() })
}

/// The nilpotent element of the orbit labelled by `p`.
///
/// For `sl(n)` this is the block Jordan matrix with blocks in the order of
/// the parts. For `so`/`sp` it is an element of the 2-eigenspace of the
/// characteristic diagonal `h` whose Jordan type is `p`: the all-ones
/// combination is tried first, then seeded random small coefficients.
pub fn nilpotent_from_partition(alg: &AlgebraRealization, p: &Partition) -> Result<Element> {
    let n = alg.matrix_size();
    if p.size() != n {
        return Err(Error::Partition(format!(
            "partition {p} of {} does not match matrix size {n}",
            p.size()
        )));
    }
    if !p.is_valid_for(alg.family()) {
        return Err(Error::Partition(format!(
            "partition {p} does not label a nilpotent orbit of {}",
            alg.id()
        )));
    }
    if p.is_zero_orbit() {
        return Ok(alg.zero());
    }
    if alg.family() == Family::A {
        let mut m = Mat::zeros(n, n);
        let mut start = 0;
        for &d in p.parts() {
            for i in start..start + d - 1 {
                m.set(i, i + 1, Rat::one());
            }
            start += d;
        }
        return alg.from_matrix(&m);
    }

    let h = alg.from_matrix(&diag(&p.characteristic()))?;
    let two = rat(2);
    let weight_two: Vec<usize> = (0..alg.dim())
        .filter(|&k| {
            let b = alg.basis_element(k);
            alg.br(&h, &b) == b.scale(&two)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for attempt in 0..64 {
        let mut e = alg.zero();
        for &k in &weight_two {
            let c = if attempt == 0 { 1 } else { rng.gen_range(1..=7) };
            e = e.add_scaled(&rat(c), &alg.basis_element(k));
        }
        if jordan_type(&alg.to_matrix(&e)).as_ref() == Some(p) {
            return Ok(e);
        }
    }
    Err(Error::Internal(format!(
        "no element of Jordan type {p} found in the 2-eigenspace"
    )))
}

/// Jordan blocks of a matrix that is already in block Jordan form
/// (superdiagonal ones, zeros elsewhere), as `(start, size)` pairs.
fn jordan_blocks(m: &Mat) -> Option<Vec<(usize, usize)>> {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            let allowed = j == i + 1 && (v.is_zero() || v.is_one());
            if !v.is_zero() && !allowed {
                return None;
            }
        }
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 0..n {
        if i + 1 == n || m.get(i, i + 1).is_zero() {
            blocks.push((start, i + 1 - start));
            start = i + 1;
        }
    }
    Some(blocks)
}

/// Solves `[e, f] = h`, `[h, f] = −2f` for `f`; `None` if inconsistent.
fn solve_for_f(alg: &AlgebraRealization, h: &Element, e: &Element) -> Option<Element> {
    let dim = alg.dim();
    let ad_e = alg.ad_matrix(e);
    let ad_h = alg.ad_matrix(h).add(&Mat::identity(dim).scale(&rat(2)));
    let system = ad_e.vstack(&ad_h);
    let mut rhs = h.coords().to_vec();
    rhs.extend(std::iter::repeat_n(Rat::zero(), dim));
    let f = system.solve(&rhs)?;
    alg.element(f).ok()
}

/// Completes a nonzero nilpotent `e` to an sl(2)-triplet.
///
/// Strategies, in order: closed-form block triplets for Jordan-form
/// elements of `sl(n)`; the characteristic diagonal `h` of the Jordan type
/// when `[h, e] = 2e`; otherwise a constructive Jacobson–Morozov solve
/// (`h ∈ [e, 𝔤]` with `[h, e] = 2e`, then `f`). Every step is a rational
/// linear system and the echelon-first solution is taken.
pub fn sl2_complete(alg: &AlgebraRealization, e: &Element) -> Result<Triplet> {
    if e.algebra() != alg.id() {
        return Err(Error::Contract("element of a different algebra".into()));
    }
    if e.is_zero() {
        return Err(Error::Contract("cannot complete e = 0".into()));
    }
    let em = alg.to_matrix(e);
    let Some(jt) = jordan_type(&em) else {
        return Err(Error::Contract("element is not nilpotent".into()));
    };

    if alg.family() == Family::A {
        if let Some(blocks) = jordan_blocks(&em) {
            let n = alg.matrix_size();
            let mut hm = Mat::zeros(n, n);
            let mut fm = Mat::zeros(n, n);
            for (start, d) in blocks {
                for i in 0..d {
                    hm.set(start + i, start + i, rat(d as i64 - 1 - 2 * i as i64));
                }
                for i in 1..d {
                    fm.set(start + i, start + i - 1, rat((i * (d - i)) as i64));
                }
            }
            let t = Triplet {
                h: alg.from_matrix(&hm)?,
                e: e.clone(),
                f: alg.from_matrix(&fm)?,
            };
            t.verify(alg)
                .map_err(|_| Error::Internal("block triplet fails its relations".into()))?;
            return Ok(t);
        }
    }

    if let Ok(h) = alg.from_matrix(&diag(&jt.characteristic())) {
        if alg.br(&h, e) == e.scale(&rat(2)) {
            if let Some(f) = solve_for_f(alg, &h, e) {
                let t = Triplet { h, e: e.clone(), f };
                if t.verify(alg).is_ok() {
                    return Ok(t);
                }
            }
        }
    }

    // [[e, z], e] = 2e, i.e. −ad(e)² z = 2e.
    let ad_e = alg.ad_matrix(e);
    let lhs = ad_e.mul(&ad_e).scale(&rat(-1));
    let rhs: Vec<Rat> = e.coords().iter().map(|c| c * rat(2)).collect();
    let z = lhs
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("no h with [h, e] = 2e in [e, g]".into()))?;
    let h = alg.element(ad_e.mul_vec(&z))?;
    let f = solve_for_f(alg, &h, e).ok_or_else(|| Error::Internal("no f completing the triplet".into()))?;
    let t = Triplet { h, e: e.clone(), f };
    t.verify(alg)
        .map_err(|_| Error::Internal("constructed triplet fails its relations".into()))?;
    Ok(t)
}

/// `(n)` for `sl(n)`, `(2r+1)` for `B_r`, `(2r)` for `C_r`, `(2r−1, 1)` for `D_r`.
pub fn principal_partition(family: Family, rank: usize) -> Partition {
    let parts = match family {
        Family::A => vec![rank + 1],
        Family::B => vec![2 * rank + 1],
        Family::C => vec![2 * rank],
        Family::D => vec![2 * rank - 1, 1],
    };
    Partition { parts }
}

/// The triplet of a regular nilpotent; its centralizer has dimension equal
/// to the rank.
pub fn principal_triplet(alg: &AlgebraRealization) -> Result<Triplet> {
    let p = principal_partition(alg.family(), alg.rank());
    let e = nilpotent_from_partition(alg, &p)?;
    let t = sl2_complete(alg, &e)?;
    let z = alg.centralizer(&t.e).dim();
    if z != alg.rank() {
        return Err(Error::Internal(format!(
            "principal nilpotent has a {z}-dimensional centralizer in {}",
            alg.id()
        )));
    }
    Ok(t)
}
