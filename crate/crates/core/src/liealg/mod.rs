//! Matrix realizations of the classical simple Lie algebras.
//!
//! Every realization is split: `so` and `sp` preserve an antidiagonal form,
//! so Cartan subalgebras are diagonal and principal sl(2)-triplets have
//! integer matrices.
//!
//! Basis orderings:
//! - `sl(n)`: `E_ij` (i ≠ j) in row-major order, then `H_i = E_ii − E_{i+1,i+1}`.
//! - `so(N)`: for every position `(a, b)` with `a + b < N − 1`, in row-major
//!   order, `E_ab − E_{b'a'}` where `x' = N − 1 − x`.
//! - `sp(2n)`: for every `(a, b)` with `a + b ≤ N − 1`, in row-major order,
//!   `E_ab − σ_a σ_b E_{b'a'}` (just `E_ab` on the antidiagonal), where
//!   `σ_i = +1` for `i < n` and `−1` otherwise.

mod element;
mod subspace;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use element::Element;
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::exact::{factorial, fmt_rat, rat, Mat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Matrix size of the realization of the given rank.
    pub fn matrix_size(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            Family::B => 2 * rank + 1,
            Family::C | Family::D => 2 * rank,
        }
    }

    /// The rank whose realization has matrix size `n`, if any.
    pub fn rank_for_size(self, n: usize) -> Option<usize> {
        match self {
            Family::A if n >= 2 => Some(n - 1),
            Family::B if n >= 3 && n % 2 == 1 => Some((n - 1) / 2),
            Family::C if n >= 2 && n.is_multiple_of(2) => Some(n / 2),
            Family::D if n >= 4 && n.is_multiple_of(2) => Some(n / 2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::D => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "SL" => Ok(Family::A),
            "B" | "SO_ODD" => Ok(Family::B),
            "C" | "SP" => Ok(Family::C),
            "D" | "SO_EVEN" => Ok(Family::D),
            other => Err(Error::Unsupported(format!("unknown family {other:?}"))),
        }
    }
}

/// Identifies a realization; elements remember the algebra they belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraId {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `tr(x^d)`
    TracePower,
    /// `Pf(S·x)` on `so(2r)`
    Pfaffian,
}

type Sparse = Vec<(usize, usize, Rat)>;

/// A classical simple Lie algebra realized as `N × N` rational matrices.
#[derive(Clone, Debug)]
pub struct AlgebraRealization {
    id: AlgebraId,
    n: usize,
    basis: Vec<Sparse>,
    labels: Vec<String>,
    form_scale: Rat,
    gram: Mat,
    gram_inv: Mat,
    extract_positions: Vec<(usize, usize)>,
    extract: Vec<Vec<(usize, Rat)>>,
    structure: Vec<Vec<(usize, Rat)>>,
    generators: Vec<(usize, GeneratorKind)>,
    form: Option<Mat>,
    killing_over_trace: Rat,
    notes: Vec<String>,
}

/// Serializable summary of a realization, for embedding in reports.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationInfo {
    pub family: Family,
    pub rank: usize,
    pub matrix_size: usize,
    pub dim: usize,
    pub generator_degrees: Vec<usize>,
    pub exponents: Vec<usize>,
    pub killing_over_trace: String,
    pub form_scale: String,
    pub duplicate_exponents: bool,
    pub notes: Vec<String>,
    pub basis: Vec<String>,
}

const MAX_MATRIX_SIZE: usize = 16;

impl AlgebraRealization {
    /// `sl(r+1)`, `so(2r+1)`, `sp(2r)` or `so(2r)` with the invariant form
    /// `T(x, y) = tr(xy)`.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Self::build_scaled(family, rank, Rat::one())
    }

    /// As [`build`](Self::build), with the invariant form `scale · tr(xy)`.
    /// Gradients are taken with respect to this form.
    pub fn build_scaled(family: Family, rank: usize, scale: Rat) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::Unsupported(format!("{family}{rank}: rank too small")));
        }
        if scale.is_zero() {
            return Err(Error::Contract("zero form scale".into()));
        }
        let n = family.matrix_size(rank);
        if n > MAX_MATRIX_SIZE {
            return Err(Error::Unsupported(format!(
                "{family}{rank}: matrix size {n} exceeds {MAX_MATRIX_SIZE}"
            )));
        }
        let id = AlgebraId { family, rank };
        let (basis, labels, form) = match family {
            Family::A => sl_basis(n),
            Family::B | Family::D => so_basis(n),
            Family::C => sp_basis(n),
        };
        let dim = basis.len();

        let mut notes = Vec::new();
        let generators = match family {
            Family::A => (2..=n).map(|d| (d, GeneratorKind::TracePower)).collect(),
            Family::B | Family::C => (1..=rank).map(|k| (2 * k, GeneratorKind::TracePower)).collect(),
            Family::D => {
                let mut g: Vec<_> = (1..rank).map(|k| (2 * k, GeneratorKind::TracePower)).collect();
                g.push((rank, GeneratorKind::Pfaffian));
                // Stable: on a degree tie the trace power stays first.
                g.sort_by_key(|&(d, _)| d);
                if rank == 2 {
                    notes.push("D2 = so(4) is not simple".to_string());
                }
                if rank == 3 {
                    notes.push("D3 = so(6) is isomorphic to A3".to_string());
                }
                g
            }
        };
        if generators.windows(2).any(|w| w[0].0 == w[1].0) {
            notes.push("exponents are not pairwise distinct".to_string());
        }
        let killing_over_trace = match family {
            Family::A => rat(2 * n as i64),
            Family::B | Family::D => rat(n as i64 - 2),
            Family::C => rat(n as i64 + 2),
        };

        // Coordinate extraction: pick `dim` matrix positions on which the
        // basis is invertible.
        let vecs: Vec<Vec<Rat>> = basis
            .iter()
            .map(|b| {
                let mut v = vec![Rat::zero(); n * n];
                for (i, j, c) in b {
                    v[i * n + j] = c.clone();
                }
                v
            })
            .collect();
        let rref = Mat::from_rows(vecs.clone())?.rref();
        if rref.pivots.len() != dim {
            return Err(Error::Internal("basis matrices are dependent".into()));
        }
        let positions: Vec<(usize, usize)> = rref.pivots.iter().map(|&p| (p / n, p % n)).collect();
        let sub = Mat::from_fn(dim, dim, |r, k| vecs[k][rref.pivots[r]].clone());
        let inv = sub
            .inverse()
            .ok_or_else(|| Error::Internal("coordinate extraction is singular".into()))?;
        let extract = (0..dim)
            .map(|k| {
                (0..dim)
                    .filter(|&r| !inv.get(k, r).is_zero())
                    .map(|r| (r, inv.get(k, r).clone()))
                    .collect()
            })
            .collect();

        let mut alg = AlgebraRealization {
            id,
            n,
            basis,
            labels,
            form_scale: scale,
            gram: Mat::zeros(dim, dim),
            gram_inv: Mat::zeros(dim, dim),
            extract_positions: positions,
            extract,
            structure: Vec::new(),
            generators,
            form,
            killing_over_trace,
            notes,
        };

        let mats: Vec<Mat> = (0..dim).map(|k| alg.basis_matrix(k)).collect();
        alg.gram = Mat::from_fn(dim, dim, |i, j| mats[i].mul(&mats[j]).trace() * &alg.form_scale);
        alg.gram_inv = alg
            .gram
            .inverse()
            .ok_or_else(|| Error::Internal("trace form is degenerate".into()))?;
        let mut structure = Vec::with_capacity(dim * dim);
        for a in &mats {
            for b in &mats {
                let c = alg.from_matrix(&a.mul(b).sub(&b.mul(a)))?;
                structure.push(c.coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        alg.structure = structure;
        Ok(alg)
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn family(&self) -> Family {
        self.id.family
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form_scale(&self) -> &Rat {
        &self.form_scale
    }

    /// Killing form divided by the trace form `tr(xy)`.
    pub fn killing_over_trace(&self) -> &Rat {
        &self.killing_over_trace
    }

    /// The antidiagonal form preserved by `so`/`sp` realizations.
    pub fn preserved_form(&self) -> Option<&Mat> {
        self.form.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Degrees `m_j + 1` of the invariant generators, ascending.
    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|&(d, _)| d).collect()
    }

    pub fn generator_kinds(&self) -> Vec<GeneratorKind> {
        self.generators.iter().map(|&(_, k)| k).collect()
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.generators.iter().map(|&(d, _)| d - 1).collect()
    }

    pub fn has_duplicate_exponents(&self) -> bool {
        self.generators.windows(2).any(|w| w[0].0 == w[1].0)
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Mat {
        &self.gram_inv
    }

    /// Coefficient of `b_k` in `[b_i, b_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.structure[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn info(&self) -> RealizationInfo {
        RealizationInfo {
            family: self.id.family,
            rank: self.id.rank,
            matrix_size: self.n,
            dim: self.dim(),
            generator_degrees: self.generator_degrees(),
            exponents: self.exponents(),
            killing_over_trace: fmt_rat(&self.killing_over_trace),
            form_scale: fmt_rat(&self.form_scale),
            duplicate_exponents: self.has_duplicate_exponents(),
            notes: self.notes.clone(),
            basis: self.labels.clone(),
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            alg: self.id,
            coords: vec![Rat::zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, k: usize) -> Element {
        let mut x = self.zero();
        x.coords[k] = Rat::one();
        x
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Contract(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(Element { alg: self.id, coords })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn basis_matrix(&self, k: usize) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (i, j, c) in &self.basis[k] {
            m.set(*i, *j, c.clone());
        }
        m
    }

    pub fn to_matrix(&self, x: &Element) -> Mat {
        assert_eq!(x.alg, self.id, "element of a different algebra");
        let mut m = Mat::zeros(self.n, self.n);
        for (c, b) in x.coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, j, v) in b {
                *m.get_mut(*i, *j) += c * v;
            }
        }
        m
    }

    /// Coordinates of a matrix lying in the algebra; a contract error if it
    /// does not.
    pub fn from_matrix(&self, m: &Mat) -> Result<Element> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Shape(format!("expected a {0}x{0} matrix", self.n)));
        }
        let coords: Vec<Rat> = self
            .extract
            .iter()
            .map(|row| {
                row.iter().fold(Rat::zero(), |acc, (r, w)| {
                    let (i, j) = self.extract_positions[*r];
                    acc + w * m.get(i, j)
                })
            })
            .collect();
        let x = Element { alg: self.id, coords };
        if self.to_matrix(&x) != *m {
            return Err(Error::Contract("matrix does not lie in the algebra".into()));
        }
        Ok(x)
    }

    pub fn contains_matrix(&self, m: &Mat) -> bool {
        self.from_matrix(m).is_ok()
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.alg != self.id {
            return Err(Error::Contract(format!("element of {} used with {}", x.alg, self.id)));
        }
        Ok(())
    }

    /// `x` as a combination of basis labels, e.g. `6*E[1,2] - 6*E[2,3]`.
    pub fn describe(&self, x: &Element) -> String {
        let mut out = String::new();
        for (k, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rat::zero();
            let abs = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            let label = &self.labels[k];
            if label[1..].contains(['+', '-']) {
                out.push_str(&format!("({label})"));
            } else {
                out.push_str(label);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `[x, y] = xy − yx`, expressed in basis coordinates.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.br(x, y))
    }

    pub(crate) fn br(&self, x: &Element, y: &Element) -> Element {
        let dim = self.dim();
        let mut out = vec![Rat::zero(); dim];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = &self.structure[i * dim + j];
                if s.is_empty() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in s {
                    out[*k] += &w * c;
                }
            }
        }
        Element {
            alg: self.id,
            coords: out,
        }
    }

    /// The invariant form `scale · tr(xy)`.
    pub fn trace_form(&self, x: &Element, y: &Element) -> Result<Rat> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.form(x, y))
    }

    pub(crate) fn form(&self, x: &Element, y: &Element) -> Rat {
        let gy = self.gram.mul_vec(&y.coords);
        x.coords.iter().zip(&gy).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Matrix of `ad(x)` in the basis: column `k` holds `[x, b_k]`.
    pub fn ad_matrix(&self, x: &Element) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zeros(dim, dim);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for k in 0..dim {
                for (r, c) in &self.structure[i * dim + k] {
                    *m.get_mut(*r, k) += xi * c;
                }
            }
        }
        m
    }

    pub fn apply(&self, m: &Mat, x: &Element) -> Element {
        Element {
            alg: self.id,
            coords: m.mul_vec(&x.coords),
        }
    }

    pub fn full_space(&self) -> Subspace {
        let dim = self.dim();
        Subspace::from_vectors(self.id, dim, (0..dim).map(|k| self.basis_element(k).coords).collect())
    }

    /// `z(x) = ker ad(x)`.
    pub fn centralizer(&self, x: &Element) -> Subspace {
        let k = self.ad_matrix(x).rank_kernel();
        Subspace::from_vectors(self.id, self.dim(), k.basis)
    }

    /// Whether `[u, v] ∈ s` for all `u, v ∈ s`.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains(&self.br(&b[i], &b[j]))))
    }

    /// `{c ∈ s : [c, s] = 0}` for a subalgebra `s`.
    pub fn center_of(&self, s: &Subspace) -> Result<Subspace> {
        if !self.is_subalgebra(s) {
            return Err(Error::Contract("subspace is not closed under the bracket".into()));
        }
        let b = s.basis();
        let k = b.len();
        if k == 0 {
            return Ok(s.clone());
        }
        let dim = self.dim();
        // Unknowns a_m; rows: coordinate r of Σ_m a_m [b_m, b_l], for each l.
        let mut m = Mat::zeros(k * dim, k);
        for l in 0..k {
            for mm in 0..k {
                let c = self.br(&b[mm], &b[l]);
                for (r, v) in c.coords.into_iter().enumerate() {
                    m.set(l * dim + r, mm, v);
                }
            }
        }
        let kernel = m.rank_kernel();
        let elems: Vec<Element> = kernel.basis.iter().map(|a| s.element_from_coords(a)).collect();
        Ok(Subspace::span(self.id, dim, &elems))
    }

    /// `{y : [y, s] ⊆ s}`.
    pub fn normalizer_of(&self, s: &Subspace) -> Subspace {
        let dim = self.dim();
        let b = s.basis();
        let mut is_pivot = vec![false; dim];
        for &p in s.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&q| !is_pivot[q]).collect();
        if free.is_empty() || b.is_empty() {
            return self.full_space();
        }
        let rows = b.len() * free.len();
        let mut m = Mat::zeros(rows, dim);
        for (l, u) in b.iter().enumerate() {
            for col in 0..dim {
                let w = self.br(&self.basis_element(col), u);
                let red = s.reduce(&w.coords);
                for (qi, &q) in free.iter().enumerate() {
                    m.set(l * free.len() + qi, col, red[q].clone());
                }
            }
        }
        Subspace::from_vectors(self.id, dim, m.rank_kernel().basis)
    }

    /// Eigenspace decomposition of `ad(h)` on `s`, eigenvalues ascending.
    ///
    /// Eigenvalues are searched among the integers bounded by the row-sum
    /// norm of the restricted operator; this covers every `h` of an
    /// sl(2)-triplet. Anything else is reported as a graduation error.
    pub fn h_graduation(&self, h: &Element, s: &Subspace) -> Result<Vec<(Rat, Subspace)>> {
        self.check(h)?;
        let b = s.basis();
        let k = b.len();
        let mut cols = Vec::with_capacity(k);
        for u in &b {
            let v = self.br(h, u);
            let c = s
                .coords_of(&v)
                .ok_or_else(|| Error::Graduation("subspace is not ad(h)-stable".into()))?;
            cols.push(c);
        }
        let op = Mat::from_columns(k, &cols);
        let bound = op
            .row_sum_bound()
            .ceil()
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Graduation("eigenvalue bound out of range".into()))?;
        let mut pieces = Vec::new();
        let mut total = 0;
        for lambda in -bound..=bound {
            if total == k {
                break;
            }
            let shifted = op.sub(&Mat::identity(k).scale(&rat(lambda)));
            let ker = shifted.rank_kernel();
            if ker.basis.is_empty() {
                continue;
            }
            total += ker.basis.len();
            let elems: Vec<Element> = ker.basis.iter().map(|c| s.element_from_coords(c)).collect();
            pieces.push((rat(lambda), Subspace::span(self.id, self.dim(), &elems)));
        }
        if total != k {
            return Err(Error::Graduation(format!(
                "ad(h) on a {k}-dimensional subspace has only {total} dimensions of integer eigenvectors"
            )));
        }
        Ok(pieces)
    }

    /// `exp(ad n) = Σ ad(n)^k / k!` for `ad(n)` nilpotent.
    pub fn unipotent_ad(&self, n: &Element) -> Result<Mat> {
        self.check(n)?;
        let dim = self.dim();
        let ad = self.ad_matrix(n);
        let mut acc = Mat::identity(dim);
        let mut power = Mat::identity(dim);
        for k in 1..=dim {
            power = power.mul(&ad);
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power.scale(&factorial(k).recip()));
        }
        Err(Error::Contract("ad(n) is not nilpotent".into()))
    }

    /// Indices of basis elements whose matrices are strictly upper
    /// triangular; any combination of them is nilpotent.
    pub fn upper_nilpotent_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.basis[k].iter().all(|(i, j, _)| i < j))
            .collect()
    }
}

fn e(i: usize, j: usize, c: i64) -> (usize, usize, Rat) {
    (i, j, rat(c))
}

fn sl_basis(n: usize) -> (Vec<Sparse>, Vec<String>, Option<Mat>) {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(vec![e(i, j, 1)]);
                labels.push(format!("E[{},{}]", i + 1, j + 1));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(vec![e(i, i, 1), e(i + 1, i + 1, -1)]);
        labels.push(format!("H[{}]", i + 1));
    }
    (basis, labels, None)
}

fn so_basis(n: usize) -> (Vec<Sparse>, Vec<String>, Option<Mat>) {
    let p = |x: usize| n - 1 - x;
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a + b < n - 1 {
                basis.push(vec![e(a, b, 1), e(p(b), p(a), -1)]);
                labels.push(format!("E[{},{}]-E[{},{}]", a + 1, b + 1, p(b) + 1, p(a) + 1));
            }
        }
    }
    let form = Mat::from_fn(n, n, |i, j| if i + j == n - 1 { rat(1) } else { rat(0) });
    (basis, labels, Some(form))
}

fn sp_basis(n: usize) -> (Vec<Sparse>, Vec<String>, Option<Mat>) {
    let half = n / 2;
    let p = |x: usize| n - 1 - x;
    let sigma = |i: usize| if i < half { 1 } else { -1 };
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a + b == n - 1 {
                basis.push(vec![e(a, b, 1)]);
                labels.push(format!("E[{},{}]", a + 1, b + 1));
            } else if a + b < n - 1 {
                let c = -sigma(a) * sigma(b);
                basis.push(vec![e(a, b, 1), e(p(b), p(a), c)]);
                let sign = if c > 0 { '+' } else { '-' };
                labels.push(format!("E[{},{}]{}E[{},{}]", a + 1, b + 1, sign, p(b) + 1, p(a) + 1));
            }
        }
    }
    let form = Mat::from_fn(n, n, |i, j| if i + j == n - 1 { rat(sigma(i)) } else { rat(0) });
    (basis, labels, Some(form))
}
