use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_gradient, generator, generators, gradient, mixed_term, random_element, taylor_terms};
use crate::error::{Error, Result};
use crate::exact::{factorial, fmt_rat, rat, ratio, Rat};
use crate::liealg::{AlgebraRealization, Element, Subspace};
use crate::report::CheckReport;
use crate::triplets::{principal_triplet, Triplet};

fn rng_for(seed: u64, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(j as u64);
    rng
}

fn random_nilpotent<R: Rng>(alg: &AlgebraRealization, rng: &mut R) -> Element {
    let mut n = alg.zero();
    for k in alg.upper_nilpotent_basis() {
        n = n.add_scaled(&rat(rng.gen_range(-2..=2)), &alg.basis_element(k));
    }
    n
}

/// Random-sample checks of the identities every invariant gradient field
/// satisfies, for generator `j`. Failures are recorded, not raised; errors
/// are reserved for misuse.
pub fn verify_field_identities(alg: &AlgebraRealization, j: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let m = generator(alg, j)?.exponent;
    let mut rng = rng_for(seed, j);
    let mut report = CheckReport::new();
    for i in 0..samples {
        let x = random_element(alg, &mut rng, 3);
        let y = random_element(alg, &mut rng, 3);
        let z = random_element(alg, &mut rng, 3);
        let tag = format!("j={j} sample {i}");

        let ok = check_gradient(alg, j, &x, 5, &mut rng).is_ok();
        report.record("gradient", "<dp(x), y> = T(P(x), y)", ok, tag.clone());

        let px = gradient(alg, j, &x)?;
        let c = ratio(rng.gen_range(-7..=7), rng.gen_range(1..=5));
        let lhs = gradient(alg, j, &x.scale(&c))?;
        let ok = lhs == px.scale(&pow(&c, m));
        report.record(
            "homogeneity",
            "P(cx) = c^m P(x)",
            ok,
            format!("{tag}, c = {}", fmt_rat(&c)),
        );

        let yx = alg.br(&y, &x);
        let ok = mixed_term(alg, j, &x, &yx, 1, &x, 0)? == alg.br(&y, &px);
        report.record("infinitesimal_equivariance", "dP(x).[y,x] = [y,P(x)]", ok, tag.clone());

        let n = random_nilpotent(alg, &mut rng);
        let g = alg.unipotent_ad(&n)?;
        let ok = gradient(alg, j, &alg.apply(&g, &x))? == alg.apply(&g, &px);
        report.record(
            "group_equivariance",
            "P(Ad(g)x) = Ad(g)P(x), g = exp(ad n)",
            ok,
            tag.clone(),
        );

        let fwd = taylor_terms(alg, j, &x, &y)?;
        let back = taylor_terms(alg, j, &y, &x)?;
        let bad: Vec<usize> = (0..=m).filter(|&k| fwd.terms[k] != back.terms[m - k]).collect();
        report.record(
            "exchange",
            "d^kP(x).y^(k)/k! = d^(m-k)P(y).x^(m-k)/(m-k)!",
            bad.is_empty(),
            if bad.is_empty() {
                tag.clone()
            } else {
                format!("{tag}, fails at k = {bad:?}")
            },
        );

        let zx = alg.br(&z, &x);
        let zy = alg.br(&z, &y);
        let mut bad = Vec::new();
        for k in 0..=m {
            let lhs = alg.br(&z, &fwd.terms[k].scale(&factorial(k)));
            let mut rhs = mixed_term(alg, j, &x, &zx, 1, &y, k)?;
            if k > 0 {
                rhs = rhs.add_scaled(&rat(k as i64), &mixed_term(alg, j, &x, &zy, 1, &y, k - 1)?);
            }
            if lhs != rhs {
                bad.push(k);
            }
        }
        report.record(
            "invariance_propagation",
            "[z, d^kP(x).y^(k)] = d^(k+1)P(x).[z,x].y^(k) + k d^kP(x).[z,y].y^(k-1)",
            bad.is_empty(),
            if bad.is_empty() {
                tag.clone()
            } else {
                format!("{tag}, fails at k = {bad:?}")
            },
        );

        let zx_space = alg.centralizer(&x);
        let regular = zx_space.dim() == alg.rank();
        let ok = alg.center_of(&zx_space)?.contains(&px);
        report.record(
            "centre_membership",
            "P(x) in z(z(x))",
            ok,
            format!("{tag}, x {}", if regular { "regular" } else { "not regular" }),
        );
    }
    Ok(report)
}

fn pow(c: &Rat, k: usize) -> Rat {
    (0..k).fold(rat(1), |acc, _| acc * c)
}

/// `v[j-1][k] = d^kP_j(h).e^(k)` and `w[j-1][k] = d^kP_j(h).f^(k)`.
#[derive(Clone, Debug)]
pub struct Sl2Vectors {
    pub v: Vec<Vec<Element>>,
    pub w: Vec<Vec<Element>>,
    pub report: CheckReport,
}

fn derivatives_along(alg: &AlgebraRealization, j: usize, x: &Element, y: &Element) -> Result<Vec<Element>> {
    let t = taylor_terms(alg, j, x, y)?;
    Ok(t.terms
        .iter()
        .enumerate()
        .map(|(k, c)| c.scale(&factorial(k)))
        .collect())
}

fn require(report: &CheckReport) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::Identity(format!("{}: {} ({})", c.name, c.identity, c.details))),
    }
}

/// The vectors `v_{j,k}`, `w_{j,k}` of a triplet and their eigen and
/// raising relations. A failed relation is an identity error.
pub fn sl2_vectors(alg: &AlgebraRealization, t: &Triplet) -> Result<Sl2Vectors> {
    t.verify(alg)?;
    let mut report = CheckReport::new();
    let mut v_all = Vec::new();
    let mut w_all = Vec::new();
    for g in generators(alg) {
        let (j, m) = (g.index, g.exponent);
        let v = derivatives_along(alg, j, &t.h, &t.e)?;
        let w = derivatives_along(alg, j, &t.h, &t.f)?;
        let pe = gradient(alg, j, &t.e)?;
        let zero = alg.zero();
        for k in 0..=m {
            let tag = format!("j={j} k={k}");
            let kk = rat(k as i64);
            let next_v = v.get(k + 1).unwrap_or(&zero);
            let next_w = w.get(k + 1).unwrap_or(&zero);
            report.record(
                "v_weight",
                "[h, v_jk] = 2k v_jk",
                alg.br(&t.h, &v[k]) == v[k].scale(&(&kk * rat(2))),
                tag.clone(),
            );
            report.record(
                "v_raising",
                "[e, v_jk] = -2 v_j(k+1)",
                alg.br(&t.e, &v[k]) == next_v.scale(&rat(-2)),
                tag.clone(),
            );
            report.record(
                "w_weight",
                "[h, w_jk] = -2k w_jk",
                alg.br(&t.h, &w[k]) == w[k].scale(&(&kk * rat(-2))),
                tag.clone(),
            );
            report.record(
                "w_lowering",
                "[f, w_jk] = 2 w_j(k+1)",
                alg.br(&t.f, &w[k]) == next_w.scale(&rat(2)),
                tag.clone(),
            );

            let mut pumped = v[k].clone();
            for _ in k..m {
                pumped = alg.br(&t.e, &pumped);
            }
            let expected = pe.scale(&(pow(&rat(-2), m - k) * factorial(m)));
            report.record(
                "pumping",
                "(ad e)^(m-k) v_jk = (-2)^(m-k) m! P_j(e)",
                pumped == expected,
                tag,
            );
        }
        v_all.push(v);
        w_all.push(w);
    }
    require(&report)?;
    Ok(Sl2Vectors {
        v: v_all,
        w: w_all,
        report,
    })
}

fn require_principal(alg: &AlgebraRealization, t: &Triplet) -> Result<()> {
    t.verify(alg)?;
    let z = alg.centralizer(&t.e).dim();
    if z != alg.rank() {
        return Err(Error::Contract(format!(
            "e is not regular: dim z(e) = {z}, rank {}",
            alg.rank()
        )));
    }
    Ok(())
}

/// For a regular `e`: the `P_j(e)` are independent, and each is a highest
/// weight vector of weight `2m_j`.
pub fn kostant_independence(alg: &AlgebraRealization, t: &Triplet) -> Result<CheckReport> {
    require_principal(alg, t)?;
    let mut report = CheckReport::new();
    let mut values = Vec::new();
    for g in generators(alg) {
        let pe = gradient(alg, g.index, &t.e)?;
        let tag = format!("j={}", g.index);
        report.record("primitive", "[e, P_j(e)] = 0", alg.br(&t.e, &pe).is_zero(), tag.clone());
        let weight = rat(2 * g.exponent as i64);
        report.record(
            "weight",
            "[h, P_j(e)] = 2 m_j P_j(e)",
            alg.br(&t.h, &pe) == pe.scale(&weight),
            tag,
        );
        values.push(pe);
    }
    let dim = Subspace::span(alg.id(), alg.dim(), &values).dim();
    report.record(
        "independence",
        "P_1(e), ..., P_r(e) linearly independent",
        dim == alg.rank(),
        format!("span has dimension {dim}, rank {}", alg.rank()),
    );
    require(&report)?;
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct TriangularDecomposition {
    pub triplet: Triplet,
    /// `span{P_j(h)}`
    pub h_space: Subspace,
    /// `span{v_jk : k ≥ 1}`
    pub n_plus: Subspace,
    /// `span{w_jk : k ≥ 1}`
    pub n_minus: Subspace,
    pub report: CheckReport,
}

impl TriangularDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h_space.dim(), self.n_plus.dim(), self.n_minus.dim())
    }
}

/// `g = n_- + h + n_+` built from the principal triplet, compared against
/// the sign pattern of the `ad(h)` eigenvalues.
pub fn triangular_decomposition(alg: &AlgebraRealization) -> Result<TriangularDecomposition> {
    let t = principal_triplet(alg)?;
    let vw = sl2_vectors(alg, &t)?;
    let (id, dim, r) = (alg.id(), alg.dim(), alg.rank());
    let zeroth: Vec<Element> = vw.v.iter().map(|v| v[0].clone()).collect();
    let plus: Vec<Element> = vw.v.iter().flat_map(|v| v[1..].iter().cloned()).collect();
    let minus: Vec<Element> = vw.w.iter().flat_map(|w| w[1..].iter().cloned()).collect();
    let h_space = Subspace::span(id, dim, &zeroth);
    let n_plus = Subspace::span(id, dim, &plus);
    let n_minus = Subspace::span(id, dim, &minus);

    let mut report = CheckReport::new();
    let half = (dim - r) / 2;
    let dims = (h_space.dim(), n_plus.dim(), n_minus.dim());
    report.record(
        "dimensions",
        "dim h = r, dim n+ = dim n- = (dim g - r)/2",
        dims == (r, half, half),
        format!("{dims:?}, expected ({r}, {half}, {half})"),
    );
    let total = h_space.sum(&n_plus).sum(&n_minus).dim();
    report.record(
        "direct_sum",
        "g = n- + h + n+",
        total == dim && dims.0 + dims.1 + dims.2 == dim,
        format!("sum has dimension {total} of {dim}"),
    );
    let graded = alg.h_graduation(&t.h, &alg.full_space())?;
    let collect = |keep: fn(&Rat) -> bool| {
        graded
            .iter()
            .filter(|(l, _)| keep(l))
            .fold(Subspace::zero(id, dim), |acc, (_, s)| acc.sum(s))
    };
    report.record("zero_weight", "g(0) = h", collect(|l| *l == rat(0)) == h_space, "");
    report.record(
        "positive_weights",
        "sum of g(l), l > 0, is n+",
        collect(|l| *l > rat(0)) == n_plus,
        "",
    );
    report.record(
        "negative_weights",
        "sum of g(l), l < 0, is n-",
        collect(|l| *l < rat(0)) == n_minus,
        "",
    );
    require(&report)?;
    Ok(TriangularDecomposition {
        triplet: t,
        h_space,
        n_plus,
        n_minus,
        report,
    })
}

/// `t = 1..=max m_j + 1`.
pub fn default_shift_samples(alg: &AlgebraRealization) -> Vec<Rat> {
    let top = alg.exponents().into_iter().max().unwrap_or(0);
    (1..=top as i64 + 1).map(rat).collect()
}

/// `dim span{[e, P_j(e + th)] : j, t ∈ t_samples}`.
pub fn mf_shift_rank(alg: &AlgebraRealization, t: &Triplet, t_samples: &[Rat]) -> Result<usize> {
    let mut vectors = Vec::new();
    for g in generators(alg) {
        for s in t_samples {
            let p = gradient(alg, g.index, &t.e.add_scaled(s, &t.h))?;
            vectors.push(alg.br(&t.e, &p));
        }
    }
    Ok(Subspace::span(alg.id(), alg.dim(), &vectors).dim())
}

/// Every suite for one algebra, with relation failures folded into the
/// report instead of raised.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraVerification {
    pub field_identities: CheckReport,
    pub sl2_relations: CheckReport,
    pub kostant: CheckReport,
    pub triangular: CheckReport,
    pub triangular_dims: Option<(usize, usize, usize)>,
    pub shift_rank: Option<usize>,
    pub half_orbit_dim: usize,
}

impl AlgebraVerification {
    pub fn all_pass(&self) -> bool {
        self.field_identities.all_pass()
            && self.sl2_relations.all_pass()
            && self.kostant.all_pass()
            && self.triangular.all_pass()
            && self.shift_rank == Some(self.half_orbit_dim)
    }

    /// All checks in one list, one line per check name.
    pub fn combined(&self) -> CheckReport {
        let mut out = CheckReport::new();
        for part in [
            &self.field_identities,
            &self.sl2_relations,
            &self.kostant,
            &self.triangular,
        ] {
            out.extend(part.summarized());
        }
        out.record(
            "shift_rank",
            "dim span{[e, P_j(e + th)]} = (dim g - dim z(e))/2",
            self.shift_rank == Some(self.half_orbit_dim),
            format!("{:?}, expected {}", self.shift_rank, self.half_orbit_dim),
        );
        out
    }
}

fn as_failure(report: &mut CheckReport, name: &str, e: Error) {
    report.record(name, "suite completed", false, e.to_string());
}

pub fn verify_algebra(alg: &AlgebraRealization, samples: usize, seed: u64) -> Result<AlgebraVerification> {
    let mut field_identities = CheckReport::new();
    for g in generators(alg) {
        field_identities.extend(verify_field_identities(alg, g.index, samples, seed)?);
    }
    let t = principal_triplet(alg)?;
    let half_orbit_dim = (alg.dim() - alg.rank()) / 2;

    let mut sl2_relations = CheckReport::new();
    match sl2_vectors(alg, &t) {
        Ok(vw) => sl2_relations = vw.report,
        Err(e) => as_failure(&mut sl2_relations, "sl2_relations", e),
    }
    let kostant = kostant_independence(alg, &t).unwrap_or_else(|e| {
        let mut r = CheckReport::new();
        as_failure(&mut r, "kostant", e);
        r
    });
    let (triangular, triangular_dims) = match triangular_decomposition(alg) {
        Ok(d) => {
            let dims = d.dims();
            (d.report, Some(dims))
        }
        Err(e) => {
            let mut r = CheckReport::new();
            as_failure(&mut r, "triangular", e);
            (r, None)
        }
    };
    let shift_rank = mf_shift_rank(alg, &t, &default_shift_samples(alg)).ok();
    Ok(AlgebraVerification {
        field_identities,
        sl2_relations,
        kostant,
        triangular,
        triangular_dims,
        shift_rank,
        half_orbit_dim,
    })
}
