use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use perm::permutations;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::mat::Mat;
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vectors; the map order is lexicographic, so
/// the last key is the lex-leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn var(vars: Arc<Vec<String>>, i: usize) -> Self {
        let mut p = Poly::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, Rat::one());
        p
    }

    /// `Σ coeffs[i] · vars[i]`.
    pub fn linear(vars: Arc<Vec<String>>, coeffs: &[Rat]) -> Self {
        assert_eq!(vars.len(), coeffs.len(), "one coefficient per variable");
        let mut p = Poly::zero(vars);
        let n = coeffs.len();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Homogeneous of degree one, or zero.
    pub fn is_linear_form(&self) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == 1)
    }

    fn check_vars(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable sets"
        );
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_vars(other);
        let mut out = Poly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.vars.clone(), Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.check_vars(divisor);
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.vars.clone());
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let mut t = Poly::zero(self.vars.clone());
            t.terms.insert(qe.clone(), qc.clone());
            rem = rem.sub(&t.mul(divisor));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            let neg = c < &Rat::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

mod perm {
    /// All permutations of `0..n` together with their signs, in
    /// lexicographic order.
    pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        rec(0, n, &mut perm, &mut used, &mut out);
        out
    }

    fn rec(depth: usize, n: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        if depth == n {
            out.push((perm.clone(), sign(perm)));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                perm[depth] = i;
                rec(depth + 1, n, perm, used, out);
                used[i] = false;
            }
        }
    }

    fn sign(p: &[usize]) -> i64 {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn check_square(m: &[Vec<Poly>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("polynomial matrix is not square".into()));
    }
    Ok(n)
}

/// Determinant over the polynomial ring. Leibniz expansion up to 8×8,
/// fraction-free elimination with exact division beyond that.
pub fn poly_det(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = check_square(m)?;
    let Some(vars) = m.first().and_then(|r| r.first()).map(|p| p.vars.clone()) else {
        return Err(Error::Shape("empty polynomial matrix".into()));
    };
    if n <= 8 {
        let mut acc = Poly::zero(vars.clone());
        for (perm, sign) in permutations(n) {
            let mut term = Poly::constant(vars.clone(), rat(sign));
            for (i, &j) in perm.iter().enumerate() {
                if m[i][j].is_zero() {
                    term = Poly::zero(vars.clone());
                    break;
                }
                term = term.mul(&m[i][j]);
            }
            acc = acc.add(&term);
        }
        return Ok(acc);
    }
    let (rank, last_pivot, sign) = bareiss(m.to_vec())?;
    if rank < n {
        return Ok(Poly::zero(vars));
    }
    Ok(last_pivot.scale(&rat(sign)))
}

/// Fraction-free echelon form over the polynomial ring. Returns the rank,
/// the last pivot, and the row-swap sign.
fn bareiss(mut m: Vec<Vec<Poly>>) -> Result<(usize, Poly, i64)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let vars = m[0][0].vars.clone();
    let mut prev = Poly::constant(vars.clone(), Rat::one());
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("inexact division in fraction-free elimination".into()))?;
            }
            m[i][c] = Poly::zero(vars.clone());
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok((r, prev, sign))
}

/// Rank of a matrix of linear forms over the field of rational functions,
/// with the randomized-evaluation cross-check that backs it up.
#[derive(Clone, Debug)]
pub struct GenericRank {
    pub rank: usize,
    /// Prime points the variables were evaluated at.
    pub samples: Vec<Vec<i64>>,
    pub sample_ranks: Vec<usize>,
}

const CROSS_CHECK_SAMPLES: usize = 3;

fn small_primes(count: usize) -> Vec<i64> {
    let mut primes = Vec::with_capacity(count);
    let mut k = 2i64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= k).all(|&p| k % p != 0) {
            primes.push(k);
        }
        k += 1;
    }
    primes
}

/// Evaluates every entry at `point` and returns the rank of the result.
pub fn evaluated_rank(m: &[Vec<Poly>], point: &[Rat]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    Mat::from_fn(rows, cols, |i, j| m[i][j].eval(point)).rank()
}

/// Generic rank of a matrix whose entries are linear forms.
///
/// The symbolic rank comes from fraction-free elimination over the
/// polynomial ring. It is cross-checked against the maximum rank of the
/// matrix evaluated at distinct primes drawn from a `seed`-determined
/// shuffle; a disagreement is an internal error.
pub fn generic_rank(m: &[Vec<Poly>], seed: u64) -> Result<GenericRank> {
    let Some(vars) = m.first().and_then(|r| r.first()).map(|p| p.vars.clone()) else {
        return Ok(GenericRank {
            rank: 0,
            samples: vec![],
            sample_ranks: vec![],
        });
    };
    let cols = m[0].len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape("ragged polynomial matrix".into()));
    }
    if let Some(bad) = m.iter().flatten().find(|p| !p.is_linear_form()) {
        return Err(Error::Contract(format!("entry {bad} is not a linear form")));
    }
    let (rank, _, _) = bareiss(m.to_vec())?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = small_primes(vars.len().max(1) + 60);
    let mut samples = Vec::with_capacity(CROSS_CHECK_SAMPLES);
    let mut sample_ranks = Vec::with_capacity(CROSS_CHECK_SAMPLES);
    for _ in 0..CROSS_CHECK_SAMPLES {
        let point: Vec<i64> = pool.choose_multiple(&mut rng, vars.len()).copied().collect();
        let rpoint: Vec<Rat> = point.iter().map(|&p| rat(p)).collect();
        sample_ranks.push(evaluated_rank(m, &rpoint));
        samples.push(point);
    }
    let sampled = sample_ranks.iter().copied().max().unwrap_or(0);
    if sampled != rank {
        return Err(Error::Internal(format!(
            "symbolic rank {rank} disagrees with sampled rank {sampled}"
        )));
    }
    Ok(GenericRank {
        rank,
        samples,
        sample_ranks,
    })
}
