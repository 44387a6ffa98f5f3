use rayon::prelude::*;
use serde::Serialize;

use super::{
    bracket_matrix, build_pair_data, convolution_at, det_shape_check, index_pair, pair_relations_check,
    structure_checks, Selection,
};
use crate::error::Result;
use crate::exact::{fmt_rat, Rat};
use crate::liealg::{AlgebraRealization, Family};
use crate::report::CheckReport;
use crate::triplets::{nilpotent_from_partition, principal_partition, sl2_complete, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub g: usize,
    pub z: usize,
    pub delta: usize,
    pub eta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionRow {
    pub i: usize,
    pub j: usize,
    pub grad: String,
    pub alphas: Vec<String>,
    pub c_actual: Option<String>,
    pub c_printed: String,
}

/// Everything computed for one nilpotent orbit, with rationals as `p/q`
/// strings. Stage failures are recorded as failed checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub algebra: String,
    pub family: Family,
    pub rank: usize,
    pub n: usize,
    pub partition: String,
    /// `core` for `sl(n)` and principal orbits, `extended` otherwise.
    pub scope: &'static str,
    pub skipped: Option<String>,
    pub notes: Vec<String>,
    pub dims: Option<Dims>,
    pub selection: Option<Selection>,
    pub selected_generators: Vec<usize>,
    pub pair_exponents: Vec<usize>,
    pub hypothesis_ok: Option<bool>,
    pub s: Option<usize>,
    pub rank_a: Option<usize>,
    pub ind: Option<usize>,
    pub det: Option<String>,
    pub epsilon: Option<i64>,
    pub betas: Vec<String>,
    pub gamma: Option<String>,
    pub delta_basis: Vec<String>,
    pub h: Option<String>,
    pub e: Option<String>,
    pub f: Option<String>,
    pub z: Vec<String>,
    pub y: Vec<String>,
    pub bracket_matrix: Vec<Vec<String>>,
    pub convolution: Vec<ConvolutionRow>,
    pub checks: CheckReport,
}

impl OrbitReport {
    fn empty(alg: &AlgebraRealization, p: &Partition) -> Self {
        let principal = principal_partition(alg.family(), alg.rank()) == *p;
        OrbitReport {
            algebra: alg.id().to_string(),
            family: alg.family(),
            rank: alg.rank(),
            n: alg.matrix_size(),
            partition: p.to_string(),
            scope: if alg.family() == Family::A || principal {
                "core"
            } else {
                "extended"
            },
            skipped: None,
            notes: vec![],
            dims: None,
            selection: None,
            selected_generators: vec![],
            pair_exponents: vec![],
            hypothesis_ok: None,
            s: None,
            rank_a: None,
            ind: None,
            det: None,
            epsilon: None,
            betas: vec![],
            gamma: None,
            delta_basis: vec![],
            h: None,
            e: None,
            f: None,
            z: vec![],
            y: vec![],
            bracket_matrix: vec![],
            convolution: vec![],
            checks: CheckReport::new(),
        }
    }

    /// No check failed.
    pub fn all_pass(&self) -> bool {
        self.checks.all_pass()
    }

    pub fn hypothesis_violated(&self) -> bool {
        self.hypothesis_ok == Some(false)
    }

    pub fn gamma_nonzero(&self) -> Option<bool> {
        self.gamma.as_ref().map(|g| g != "0")
    }
}

fn strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

/// Runs the whole pipeline on the orbit of `p`. Never fails: errors become
/// failed checks named after the stage that raised them.
pub fn run_orbit(alg: &AlgebraRealization, p: &Partition, seed: u64) -> OrbitReport {
    let mut out = OrbitReport::empty(alg, p);
    if p.is_zero_orbit() && p.size() == alg.matrix_size() {
        out.skipped = Some("e = 0".into());
        return out;
    }
    if let Err(e) = fill(alg, p, seed, &mut out) {
        let stage = format!("stage_{}", stage_of(&e));
        out.checks
            .record(stage, "pipeline stage completes", false, e.to_string());
    }
    out.checks = out.checks.summarized();
    out
}

fn stage_of(e: &crate::Error) -> &'static str {
    use crate::Error::*;
    match e {
        Partition(_) => "partition",
        Identity(_) => "identity",
        Hypothesis(_) => "hypothesis",
        Contract(_) | Shape(_) | Unsupported(_) => "contract",
        DegreeMismatch(_) | Graduation(_) | Internal(_) => "internal",
    }
}

fn fill(alg: &AlgebraRealization, p: &Partition, seed: u64, out: &mut OrbitReport) -> Result<()> {
    let e = nilpotent_from_partition(alg, p)?;
    let t = sl2_complete(alg, &e)?;
    out.h = Some(alg.describe(&t.h));
    out.e = Some(alg.describe(&t.e));
    out.f = Some(alg.describe(&t.f));
    let pd = build_pair_data(alg, &t)?;
    out.dims = Some(Dims {
        g: alg.dim(),
        z: pd.zcent.dim(),
        delta: pd.delta.dim(),
        eta: pd.eta.dim(),
    });
    out.selection = Some(pd.selection);
    out.selected_generators = pd.selected.clone();
    out.pair_exponents = pd.pair_exponents.clone();
    out.hypothesis_ok = Some(pd.hypothesis_ok);
    out.s = Some(pd.s());
    out.delta_basis = pd.delta.basis().iter().map(|b| alg.describe(b)).collect();
    out.z = pd.z.iter().map(|z| alg.describe(z)).collect();
    out.y = pd.y.iter().map(|y| alg.describe(y)).collect();
    if !pd.hypothesis_ok {
        out.notes.push(format!(
            "the P_j(e) span {} of the {} dimensions of the centre of z(e)",
            pd.s(),
            pd.delta.dim()
        ));
        return Ok(());
    }

    out.checks.extend(pair_relations_check(alg, &pd)?);
    let a = bracket_matrix(alg, &pd)?;
    out.bracket_matrix = a
        .poly_matrix()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let r = index_pair(&pd, &a, seed)?;
    out.rank_a = Some(r.rank);
    out.ind = Some(r.ind);
    out.det = Some(r.det.to_string());
    out.checks.record(
        "determinant_criterion",
        "ind = 0 iff det A != 0",
        r.det_criterion_holds,
        format!("ind = {}, det A = {}", r.ind, r.det),
    );
    let sc = structure_checks(alg, &pd, &a)?;
    out.betas = strings(&sc.betas);
    out.checks.extend(sc.report);
    if pd.selection == Selection::NonzeroGradients {
        let shape = det_shape_check(alg, &pd, &a, &sc.betas)?;
        out.epsilon = Some(shape.epsilon);
        out.gamma = Some(fmt_rat(&shape.gamma));
        out.checks.extend(shape.report);
    } else {
        out.notes.push(
            "exponents repeat: gradients chosen greedily by degree; \
             pseudo-triangular shape and determinant formula not checked"
                .into(),
        );
    }
    for i in 1..=pd.s() {
        for j in 1..=pd.s() {
            let c = convolution_at(alg, &pd, i, j)?;
            out.convolution.push(ConvolutionRow {
                i,
                j,
                grad: alg.describe(&c.grad),
                alphas: strings(&c.alphas),
                c_actual: c.c_actual.as_ref().map(fmt_rat),
                c_printed: fmt_rat(&c.c_printed),
            });
            out.checks.extend(c.report);
        }
    }
    Ok(())
}

/// Every orbit of one algebra, zero orbit included (as a skipped entry),
/// in decreasing lexicographic partition order.
pub fn sweep_algebra(alg: &AlgebraRealization, seed: u64) -> Vec<OrbitReport> {
    Partition::valid_for(alg)
        .par_iter()
        .map(|p| run_orbit(alg, p, seed))
        .collect()
}

/// Every algebra of the family with matrix size at most `max_n`, by
/// increasing size, and all their orbits.
pub fn sweep(family: Family, max_n: usize, seed: u64) -> Result<Vec<OrbitReport>> {
    let algebras = (1..=max_n)
        .filter_map(|n| family.rank_for_size(n))
        .filter(|&r| r >= family.min_rank())
        .map(|r| AlgebraRealization::build(family, r))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, Partition)> = algebras
        .iter()
        .enumerate()
        .flat_map(|(k, a)| Partition::valid_for(a).into_iter().map(move |p| (k, p)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(k, p)| run_orbit(&algebras[*k], p, seed))
        .collect())
}
