//! The index of the normalizer `η` of `z(e)` acting on the centre
//! `δ = δ(e)` of `z(e)`, computed from the gradient fields at `e`.
//!
//! With `Q_1..Q_s` the gradients whose values at `e` form a basis of `δ`
//! (pair exponents `m'_1 ≤ … ≤ m'_s`), set `z_j = Q_j(e)` and
//! `y_j = dQ_j(e).h`. The bracket matrix `A = ([y_i, z_j])` has entries in
//! `δ`, read as linear forms in the coordinates `t1, …` of the echelon
//! basis of `δ`, and `ind(η, δ) = dim δ − rank A` over those forms.

mod sweep;

pub use sweep::{run_orbit, sweep, sweep_algebra, ConvolutionRow, OrbitReport};

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{generic_rank, poly_det, rat, ratio, GenericRank, Mat, Poly, Rat};
use crate::invariants::{generators, gradient, mixed_term};
use crate::liealg::{AlgebraRealization, Element, Subspace};
use crate::report::CheckReport;
use crate::triplets::Triplet;

/// How the gradients entering the basis of `δ` were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Exponents pairwise distinct: every nonzero `P_j(e)`.
    NonzeroGradients,
    /// Repeated exponents: an independent subfamily, greedily in degree
    /// order. The distinct-exponent conclusions are not claimed.
    GreedyByDegree,
}

#[derive(Clone, Debug)]
pub struct PairData {
    pub triplet: Triplet,
    pub selection: Selection,
    /// Generator indices `j_1 < … < j_s`.
    pub selected: Vec<usize>,
    pub pair_exponents: Vec<usize>,
    /// `z_j = Q_j(e)`
    pub z: Vec<Element>,
    /// `y_j = dQ_j(e).h`
    pub y: Vec<Element>,
    /// `P_j(e)` for every generator.
    pub all_values: Vec<Element>,
    pub zcent: Subspace,
    pub delta: Subspace,
    pub eta: Subspace,
    pub hypothesis_ok: bool,
}

impl PairData {
    pub fn s(&self) -> usize {
        self.z.len()
    }

    fn require_hypothesis(&self) -> Result<()> {
        if self.hypothesis_ok {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!(
                "the P_j(e) span a {}-dimensional subspace of the {}-dimensional centre of z(e)",
                self.s(),
                self.delta.dim()
            )))
        }
    }

    /// `Q_i = P_{j_i}`, `i` 0-based.
    fn q(&self, i: usize) -> usize {
        self.selected[i]
    }
}

pub fn build_pair_data(alg: &AlgebraRealization, t: &Triplet) -> Result<PairData> {
    t.verify(alg)?;
    let e = &t.e;
    let zcent = alg.centralizer(e);
    let delta = alg.center_of(&zcent)?;
    let eta = alg.normalizer_of(&zcent);
    let gens = generators(alg);
    let all_values = gens
        .iter()
        .map(|g| gradient(alg, g.index, e))
        .collect::<Result<Vec<_>>>()?;

    let selection = if alg.has_duplicate_exponents() {
        Selection::GreedyByDegree
    } else {
        Selection::NonzeroGradients
    };
    let mut selected = Vec::new();
    let mut z: Vec<Element> = Vec::new();
    let mut span = Subspace::zero(alg.id(), alg.dim());
    for (g, value) in gens.iter().zip(&all_values) {
        if value.is_zero() {
            continue;
        }
        if selection == Selection::GreedyByDegree && span.contains(value) {
            continue;
        }
        span = Subspace::span(alg.id(), alg.dim(), &[span.basis(), vec![value.clone()]].concat());
        selected.push(g.index);
        z.push(value.clone());
    }
    let pair_exponents = selected.iter().map(|&j| gens[j - 1].exponent).collect();
    let hypothesis_ok = span.dim() == z.len() && span == delta;
    let y = selected
        .iter()
        .map(|&j| mixed_term(alg, j, e, &t.h, 1, e, 0))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairData {
        triplet: t.clone(),
        selection,
        selected,
        pair_exponents,
        z,
        y,
        all_values,
        zcent,
        delta,
        eta,
        hypothesis_ok,
    })
}

fn require(report: &CheckReport) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::Identity(format!("{}: {} ({})", c.name, c.identity, c.details))),
    }
}

/// `η = z(e) ⊕ span{y_j}`, with the relations that prove it.
pub fn pair_relations_check(alg: &AlgebraRealization, pd: &PairData) -> Result<CheckReport> {
    pd.require_hypothesis()?;
    let t = &pd.triplet;
    let mut report = CheckReport::new();
    for (i, (y, z)) in pd.y.iter().zip(&pd.z).enumerate() {
        let m = rat(pd.pair_exponents[i] as i64);
        let tag = format!("j={}", i + 1);
        report.record(
            "e_lowers_y",
            "[e, y_j] = -2 m'_j z_j",
            alg.br(&t.e, y) == z.scale(&(&m * rat(-2))),
            tag.clone(),
        );
        report.record("f_raises_z", "[f, z_j] = -y_j", alg.br(&t.f, z) == y.neg(), tag.clone());
        report.record(
            "y_weight",
            "[h, y_j] = 2(m'_j - 1) y_j",
            alg.br(&t.h, y) == y.scale(&((&m - rat(1)) * rat(2))),
            tag.clone(),
        );
        report.record(
            "z_weight",
            "[h, z_j] = 2 m'_j z_j",
            alg.br(&t.h, z) == z.scale(&(&m * rat(2))),
            tag.clone(),
        );
        report.record("y_outside_z", "y_j not in z(e)", !pd.zcent.contains(y), tag);
    }
    let v = Subspace::span(alg.id(), alg.dim(), &pd.y);
    let sum = pd.zcent.sum(&v);
    let (dz, ds, de) = (pd.zcent.dim(), pd.s(), pd.eta.dim());
    report.record(
        "normalizer_decomposition",
        "eta = z(e) + span{y_j}, a direct sum",
        sum == pd.eta && sum.dim() == dz + ds,
        format!("dim z = {dz}, s = {ds}, dim eta = {de}"),
    );
    report.record(
        "normalizer_dimension",
        "dim eta = dim z(e) + dim delta",
        de == dz + pd.delta.dim(),
        format!("{de} = {dz} + {}", pd.delta.dim()),
    );
    require(&report)?;
    Ok(report)
}

/// `A = ([y_i, z_j])` with every entry also in `δ`-coordinates.
#[derive(Clone, Debug)]
pub struct BracketTensor {
    pub entries: Vec<Vec<Element>>,
    pub coords: Vec<Vec<Vec<Rat>>>,
    pub vars: Arc<Vec<String>>,
}

impl BracketTensor {
    pub fn s(&self) -> usize {
        self.entries.len()
    }

    pub fn poly_matrix(&self) -> Vec<Vec<Poly>> {
        self.coords
            .iter()
            .map(|row| row.iter().map(|c| Poly::linear(self.vars.clone(), c)).collect())
            .collect()
    }
}

fn delta_vars(delta: &Subspace) -> Arc<Vec<String>> {
    Arc::new((1..=delta.dim()).map(|k| format!("t{k}")).collect())
}

/// The linear form on `δ*` given by an element of `δ`.
pub fn linear_form(pd: &PairData, vars: &Arc<Vec<String>>, x: &Element) -> Result<Poly> {
    let c = pd
        .delta
        .coords_of(x)
        .ok_or_else(|| Error::Identity("element expected in the centre of z(e)".into()))?;
    Ok(Poly::linear(vars.clone(), &c))
}

pub fn bracket_matrix(alg: &AlgebraRealization, pd: &PairData) -> Result<BracketTensor> {
    pd.require_hypothesis()?;
    let s = pd.s();
    let mut entries = Vec::with_capacity(s);
    let mut coords = Vec::with_capacity(s);
    for i in 0..s {
        let mut row = Vec::with_capacity(s);
        let mut crow = Vec::with_capacity(s);
        for j in 0..s {
            let b = alg.br(&pd.y[i], &pd.z[j]);
            let c = pd
                .delta
                .coords_of(&b)
                .ok_or_else(|| Error::Identity(format!("[y_{}, z_{}] is not in the centre of z(e)", i + 1, j + 1)))?;
            row.push(b);
            crow.push(c);
        }
        entries.push(row);
        coords.push(crow);
    }
    if let Some((i, j)) = (0..s)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .find(|&(i, j)| entries[i][j] != entries[j][i])
    {
        return Err(Error::Identity(format!(
            "[y_{0}, z_{1}] != [y_{1}, z_{0}]",
            i + 1,
            j + 1
        )));
    }
    Ok(BracketTensor {
        entries,
        coords,
        vars: delta_vars(&pd.delta),
    })
}

#[derive(Clone, Debug)]
pub struct StructureChecks {
    /// `[y_i, z_{s+1-i}] = β_i Q_s(e)`
    pub betas: Vec<Rat>,
    pub report: CheckReport,
}

/// Vanishing pattern, pseudo-triangular shape and weights of `A`.
///
/// The shape and the antidiagonal factors `β_i` are only derived for
/// pairwise distinct exponents; under greedy selection only the weight and
/// vanishing checks run and `betas` is empty.
pub fn structure_checks(alg: &AlgebraRealization, pd: &PairData, a: &BracketTensor) -> Result<StructureChecks> {
    pd.require_hypothesis()?;
    let s = a.s();
    let mp = &pd.pair_exponents;
    let h = &pd.triplet.h;
    let mut report = CheckReport::new();
    for i in 0..s {
        for j in 0..s {
            let entry = &a.entries[i][j];
            let tag = format!("(i, j) = ({}, {})", i + 1, j + 1);
            let level = mp[i] + mp[j] - 1;
            if !mp.contains(&level) {
                report.record(
                    "vanishing",
                    "[y_i, z_j] = 0 when m'_i + m'_j - 1 is not a pair exponent",
                    entry.is_zero(),
                    tag.clone(),
                );
            }
            if pd.selection == Selection::NonzeroGradients && i + j + 2 > s + 1 {
                report.record(
                    "pseudo_triangular",
                    "[y_i, z_j] = 0 when i + j > s + 1",
                    entry.is_zero(),
                    tag.clone(),
                );
            }
            let w = rat(2 * level as i64);
            report.record(
                "bracket_weight",
                "[h, [y_i, z_j]] = 2(m'_i + m'_j - 1) [y_i, z_j]",
                alg.br(h, entry) == entry.scale(&w),
                tag,
            );
        }
    }
    let mut betas = Vec::with_capacity(s);
    let top = &pd.z[s - 1];
    let antidiagonal = if pd.selection == Selection::NonzeroGradients {
        s
    } else {
        0
    };
    for i in 0..antidiagonal {
        let entry = &a.entries[i][s - 1 - i];
        let beta = entry.ratio_to(top);
        report.record(
            "antidiagonal",
            "[y_i, z_(s+1-i)] = beta_i Q_s(e)",
            beta.is_some(),
            format!("i = {}", i + 1),
        );
        betas.push(beta.unwrap_or_else(Rat::zero));
    }
    require(&report)?;
    Ok(StructureChecks { betas, report })
}

#[derive(Clone, Debug)]
pub struct IndexResult {
    pub dim_delta: usize,
    pub rank: usize,
    pub ind: usize,
    pub det: Poly,
    pub generic: GenericRank,
    /// `ind = 0` exactly when `det A ≠ 0`.
    pub det_criterion_holds: bool,
}

pub fn index_pair(pd: &PairData, a: &BracketTensor, seed: u64) -> Result<IndexResult> {
    pd.require_hypothesis()?;
    let m = a.poly_matrix();
    let generic = generic_rank(&m, seed)?;
    let det = poly_det(&m)?;
    let dim_delta = pd.delta.dim();
    let ind = dim_delta - generic.rank;
    Ok(IndexResult {
        dim_delta,
        rank: generic.rank,
        ind,
        det_criterion_holds: (ind == 0) == !det.is_zero(),
        det,
        generic,
    })
}

#[derive(Clone, Debug)]
pub struct DetShape {
    pub det: Poly,
    /// `(−1)^{s(s−1)/2}`
    pub epsilon: i64,
    /// `ε · β_1 ⋯ β_s`
    pub gamma: Rat,
    /// `Q_s(e)` as a linear form.
    pub top_form: Poly,
    pub report: CheckReport,
}

/// `det A = ε · β_1 ⋯ β_s · Q_s(e)^s`, the sign `ε` coming from the
/// antidiagonal permutation.
pub fn det_shape_check(alg: &AlgebraRealization, pd: &PairData, a: &BracketTensor, betas: &[Rat]) -> Result<DetShape> {
    pd.require_hypothesis()?;
    if pd.selection != Selection::NonzeroGradients {
        return Err(Error::Contract(
            "the determinant shape is only derived for pairwise distinct exponents".into(),
        ));
    }
    let s = a.s();
    if betas.len() != s {
        return Err(Error::Identity(format!(
            "{} antidiagonal factors for s = {s}",
            betas.len()
        )));
    }
    let det = poly_det(&a.poly_matrix())?;
    let epsilon: i64 = if (s * (s - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let gamma = betas.iter().fold(rat(epsilon), |acc, b| acc * b);
    let top_form = linear_form(pd, &a.vars, &pd.z[s - 1])?;
    let expected = top_form.pow(s as u32).scale(&gamma);
    let mut report = CheckReport::new();
    report.record(
        "determinant_shape",
        "det A = eps * beta_1 ... beta_s * Q_s(e)^s, eps = (-1)^(s(s-1)/2)",
        det == expected,
        format!("det A = {det}, expected {expected}"),
    );
    let regular = pd.zcent.dim() == alg.rank();
    if regular {
        report.record(
            "regular_gamma",
            "gamma != 0 for regular e",
            !gamma.is_zero(),
            format!("gamma = {gamma}"),
        );
    }
    require(&report)?;
    Ok(DetShape {
        det,
        epsilon,
        gamma,
        top_form,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct Convolution {
    pub i: usize,
    pub j: usize,
    /// `dQ_i(e).Q_j(e)`
    pub d_ij: Element,
    pub d_ji: Element,
    /// `∇ω_ij(e) = D_ij + D_ji`
    pub grad: Element,
    pub bracket: Element,
    /// `grad = Σ_k α^k z_k`
    pub alphas: Vec<Rat>,
    /// `[y_i, z_j] = c · grad`, when `grad ≠ 0`.
    pub c_actual: Option<Rat>,
    /// `m'_i m'_j / (m'_i + m'_j)`
    pub c_printed: Rat,
    /// `2 m'_i m'_j / (m'_i + m'_j)`, forced by the two bracket identities.
    pub c_expected: Rat,
    pub report: CheckReport,
}

/// The gradient of `ω_ij = T(Q_i, Q_j)` at `e` against `[y_i, z_j]`, for
/// 1-based `i`, `j`.
pub fn convolution_at(alg: &AlgebraRealization, pd: &PairData, i: usize, j: usize) -> Result<Convolution> {
    pd.require_hypothesis()?;
    let s = pd.s();
    if i == 0 || j == 0 || i > s || j > s {
        return Err(Error::Contract(format!("pair ({i}, {j}) outside 1..={s}")));
    }
    let (i0, j0) = (i - 1, j - 1);
    let e = &pd.triplet.e;
    let d_ij = mixed_term(alg, pd.q(i0), e, &pd.z[j0], 1, e, 0)?;
    let d_ji = mixed_term(alg, pd.q(j0), e, &pd.z[i0], 1, e, 0)?;
    let grad = d_ij.add(&d_ji);
    let bracket = alg.br(&pd.y[i0], &pd.z[j0]);
    let (mi, mj) = (pd.pair_exponents[i0] as i64, pd.pair_exponents[j0] as i64);
    let tag = format!("(i, j) = ({i}, {j})");

    let mut report = CheckReport::new();
    report.record(
        "bracket_derivative",
        "[y_i, z_j] = 2 m'_j dQ_i(e).Q_j(e)",
        bracket == d_ij.scale(&rat(2 * mj)),
        tag.clone(),
    );
    report.record(
        "bracket_symmetry",
        "[y_i, z_j] = [y_j, z_i]",
        bracket == alg.br(&pd.y[j0], &pd.z[i0]),
        tag.clone(),
    );
    let zmat = Mat::from_columns(alg.dim(), &pd.z.iter().map(|z| z.coords().to_vec()).collect::<Vec<_>>());
    let alphas = zmat
        .solve(grad.coords())
        .ok_or_else(|| Error::Identity(format!("grad omega_{i}{j}(e) is not in the centre of z(e)")))?;

    let c_actual = if grad.is_zero() { None } else { bracket.ratio_to(&grad) };
    let c_printed = ratio(mi * mj, mi + mj);
    let c_expected = ratio(2 * mi * mj, mi + mj);
    let proportional = if grad.is_zero() {
        bracket.is_zero()
    } else {
        c_actual.is_some()
    };
    report.record(
        "gradient_proportional",
        "[y_i, z_j] is a multiple of grad omega_ij(e)",
        proportional,
        tag.clone(),
    );
    report.record(
        "convolution_constant",
        "[y_i, z_j] = 2 m'_i m'_j / (m'_i + m'_j) grad omega_ij(e)",
        bracket == grad.scale(&c_expected),
        match &c_actual {
            Some(c) => format!("{tag}, observed {c}, printed constant {c_printed}"),
            None => format!("{tag}, gradient vanishes"),
        },
    );
    require(&report)?;
    Ok(Convolution {
        i,
        j,
        d_ij,
        d_ji,
        grad,
        bracket,
        alphas,
        c_actual,
        c_printed,
        c_expected,
        report,
    })
}

/// `ind(η, δ)` and the bracket matrix of one orbit, checks included.
pub fn orbit_index(alg: &AlgebraRealization, t: &Triplet, seed: u64) -> Result<(PairData, IndexResult)> {
    let pd = build_pair_data(alg, t)?;
    let a = bracket_matrix(alg, &pd)?;
    let r = index_pair(&pd, &a, seed)?;
    Ok((pd, r))
}

#[cfg(test)]
mod tests;
