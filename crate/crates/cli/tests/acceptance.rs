//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use nilab::exact::{rat, ratio};
use nilab::index::{
    bracket_matrix, build_pair_data, convolution_at, det_shape_check, run_orbit, structure_checks, sweep, Selection,
};
use nilab::invariants::{
    default_shift_samples, generators, kostant_independence, mf_shift_rank, sl2_vectors, triangular_decomposition,
    verify_field_identities,
};
use nilab::triplets::principal_triplet;
use nilab::{AlgebraRealization, CheckReport, Family, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alg(family: Family, rank: usize) -> AlgebraRealization {
    AlgebraRealization::build(family, rank).expect("algebra builds")
}

/// sl(2), sl(3), sl(4), so(5), sp(4)
fn small_algebras() -> Vec<AlgebraRealization> {
    vec![
        alg(Family::A, 1),
        alg(Family::A, 2),
        alg(Family::A, 3),
        alg(Family::B, 2),
        alg(Family::C, 2),
    ]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_failures(what: &str, r: &CheckReport) -> Result<(), String> {
    match r.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} failed ({})", c.name, c.details)),
    }
}

// Dimension and rank of the split forms, written out independently of the library.
fn dim_and_rank(family: Family, n: usize) -> (usize, usize) {
    match family {
        Family::A => (n * n - 1, n - 1),
        Family::B => (n * (n - 1) / 2, (n - 1) / 2),
        Family::C => (n * (n + 1) / 2, n / 2),
        Family::D => (n * (n - 1) / 2, n / 2),
    }
}

fn identity_suites() -> Outcome {
    const SAMPLES: usize = 20;
    const NAMES: [&str; 7] = [
        "gradient",
        "homogeneity",
        "infinitesimal_equivariance",
        "group_equivariance",
        "exchange",
        "invariance_propagation",
        "centre_membership",
    ];
    let start = Instant::now();
    let mut total = 0;
    for a in small_algebras() {
        for g in generators(&a) {
            let r = verify_field_identities(&a, g.index, SAMPLES, 0).map_err(|e| e.to_string())?;
            no_failures(&format!("{} j={}", a.id(), g.index), &r)?;
            for name in NAMES {
                let n = r.checks.iter().filter(|c| c.name == name).count();
                ensure(n >= SAMPLES, || {
                    format!("{} j={}: {n} samples of {name}", a.id(), g.index)
                })?;
            }
            total += r.len();
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{total} exact checks in {secs:.1} s"))
}

fn sl2_relations() -> Outcome {
    let mut total = 0;
    for a in small_algebras() {
        let t = principal_triplet(&a).map_err(|e| e.to_string())?;
        let vw = sl2_vectors(&a, &t).map_err(|e| format!("{}: {e}", a.id()))?;
        no_failures(a.id().to_string().as_str(), &vw.report)?;
        let pumping = vw.report.checks.iter().filter(|c| c.name == "pumping").count();
        let expected: usize = generators(&a).iter().map(|g| g.exponent + 1).sum();
        ensure(pumping == expected, || {
            format!("{}: {pumping} pumping checks, expected {expected}", a.id())
        })?;
        total += vw.report.len();
    }
    Ok(format!("{total} relations"))
}

fn kostant_and_triangular() -> Outcome {
    let cases = [
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::A, 5),
        (Family::B, 5),
        (Family::C, 4),
    ];
    let mut seen = vec![];
    for (family, n) in cases {
        let (dim, r) = dim_and_rank(family, n);
        let a = alg(family, r);
        ensure(a.dim() == dim, || format!("{}: dim {} != {dim}", a.id(), a.dim()))?;
        let t = principal_triplet(&a).map_err(|e| e.to_string())?;
        no_failures("kostant", &kostant_independence(&a, &t).map_err(|e| e.to_string())?)?;
        let d = triangular_decomposition(&a).map_err(|e| e.to_string())?;
        no_failures("triangular", &d.report)?;
        let half = (dim - r) / 2;
        let dims = d.dims();
        ensure(dims == (r, half, half) && dims.0 + dims.1 + dims.2 == dim, || {
            format!("{}: {dims:?}, expected ({r}, {half}, {half})", a.id())
        })?;
        seen.push(format!("{}={dims:?}", a.id()));
    }
    Ok(seen.join(" "))
}

fn shift_rank() -> Outcome {
    let mut got = vec![];
    for (r, expected) in [(1, 1), (2, 3), (3, 6)] {
        let a = alg(Family::A, r);
        let t = principal_triplet(&a).map_err(|e| e.to_string())?;
        let k = mf_shift_rank(&a, &t, &default_shift_samples(&a)).map_err(|e| e.to_string())?;
        ensure(k == expected, || format!("{}: {k}, expected {expected}", a.id()))?;
        got.push(k.to_string());
    }
    Ok(format!("ranks {}", got.join(", ")))
}

fn sl_pipeline() -> Outcome {
    let start = Instant::now();
    let reports = sweep(Family::A, 6, 0).map_err(|e| e.to_string())?;
    let mut orbits = 0;
    for r in reports.iter().filter(|r| r.skipped.is_none()) {
        let tag = format!("{} ({})", r.algebra, r.partition);
        ensure(r.hypothesis_ok == Some(true), || format!("{tag}: hypothesis fails"))?;
        ensure(r.selection == Some(Selection::NonzeroGradients), || {
            format!("{tag}: greedy selection")
        })?;
        no_failures(&tag, &r.checks)?;
        for name in ["e_lowers_y", "f_raises_z", "bracket_symmetry", "determinant_criterion"] {
            ensure(r.checks.checks.iter().any(|c| c.name == name), || {
                format!("{tag}: no {name} check")
            })?;
        }
        // pseudo-triangularity is vacuous when s = 1
        if r.s > Some(1) {
            ensure(r.checks.checks.iter().any(|c| c.name == "pseudo_triangular"), || {
                format!("{tag}: no pseudo_triangular check")
            })?;
        }
        ensure(r.ind == Some(0), || format!("{tag}: ind = {:?}", r.ind))?;
        orbits += 1;
    }
    // p(2) + ... + p(6) minus the zero orbits
    ensure(orbits == (2 + 3 + 5 + 7 + 11) - 5, || format!("{orbits} orbits"))?;
    Ok(format!(
        "{orbits} orbits, ind 0 on all, {:.1} s",
        start.elapsed().as_secs_f64()
    ))
}

fn regular_determinant() -> Outcome {
    let cases = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::B, 2),
        (Family::C, 2),
    ];
    for (family, r) in cases {
        let a = alg(family, r);
        let t = principal_triplet(&a).map_err(|e| e.to_string())?;
        let pd = build_pair_data(&a, &t).map_err(|e| e.to_string())?;
        let bm = bracket_matrix(&a, &pd).map_err(|e| e.to_string())?;
        let sc = structure_checks(&a, &pd, &bm).map_err(|e| e.to_string())?;
        let shape = det_shape_check(&a, &pd, &bm, &sc.betas).map_err(|e| format!("{}: {e}", a.id()))?;
        no_failures(&a.id().to_string(), &shape.report)?;
        let eps = if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
        ensure(shape.epsilon == eps, || {
            format!("{}: epsilon {}", a.id(), shape.epsilon)
        })?;
        ensure(shape.gamma != rat(0), || format!("{}: gamma = 0", a.id()))?;
        let expected = shape.top_form.pow(r as u32).scale(&shape.gamma);
        ensure(shape.det == expected, || format!("{}: det {}", a.id(), shape.det))?;
    }

    // sl(3): A = [[8 t1, 24 t2], [24 t2, 0]] so det A = -576 t2^2 = -64 (3 t2)^2.
    let a = alg(Family::A, 2);
    let t = principal_triplet(&a).map_err(|e| e.to_string())?;
    let pd = build_pair_data(&a, &t).map_err(|e| e.to_string())?;
    let bm = bracket_matrix(&a, &pd).map_err(|e| e.to_string())?;
    let sc = structure_checks(&a, &pd, &bm).map_err(|e| e.to_string())?;
    let shape = det_shape_check(&a, &pd, &bm, &sc.betas).map_err(|e| e.to_string())?;
    let entries: Vec<Vec<String>> = bm
        .poly_matrix()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    ensure(entries == [["8*t1", "24*t2"], ["24*t2", "0"]], || {
        format!("sl3 A = {entries:?}")
    })?;
    ensure(sc.betas == [rat(8), rat(8)], || format!("sl3 betas {:?}", sc.betas))?;
    ensure(shape.gamma == rat(-64), || format!("sl3 gamma {}", shape.gamma))?;
    ensure(shape.det.to_string() == "-576*t2^2", || {
        format!("sl3 det {}", shape.det)
    })?;
    ensure(shape.top_form.to_string() == "3*t2", || {
        format!("sl3 top form {}", shape.top_form)
    })?;
    Ok(format!(
        "sl3: det A = {}, gamma = {}, top form {}",
        shape.det, shape.gamma, shape.top_form
    ))
}

fn convolution_audit() -> Outcome {
    let mut lines = vec![];
    for (r, observed, printed) in [(1, rat(1), ratio(1, 2)), (2, ratio(4, 3), ratio(2, 3))] {
        let a = alg(Family::A, r);
        let t = principal_triplet(&a).map_err(|e| e.to_string())?;
        let pd = build_pair_data(&a, &t).map_err(|e| e.to_string())?;
        for i in 1..=pd.s() {
            for j in 1..=pd.s() {
                let c = convolution_at(&a, &pd, i, j).map_err(|e| format!("{} ({i},{j}): {e}", a.id()))?;
                no_failures(&format!("{} ({i},{j})", a.id()), &c.report)?;
                let (mi, mj) = (pd.pair_exponents[i - 1] as i64, pd.pair_exponents[j - 1] as i64);
                let bracket = a.bracket(&pd.y[i - 1], &pd.z[j - 1]).map_err(|e| e.to_string())?;
                ensure(bracket == c.d_ij.scale(&rat(2 * mj)), || {
                    format!("{} ({i},{j}): derivative", a.id())
                })?;
                ensure(bracket == c.grad.scale(&ratio(2 * mi * mj, mi + mj)), || {
                    format!("{} ({i},{j}): constant", a.id())
                })?;
            }
        }
        // the pair of lowest exponents carries a non-zero gradient
        let (i, j) = if r == 1 { (1, 1) } else { (1, 2) };
        let c = convolution_at(&a, &pd, i, j).map_err(|e| e.to_string())?;
        ensure(c.c_actual.as_ref() == Some(&observed), || {
            format!("{}: c = {:?}", a.id(), c.c_actual)
        })?;
        ensure(c.c_printed == printed, || {
            format!("{}: printed {}", a.id(), c.c_printed)
        })?;
        lines.push(format!(
            "{} ({i},{j}) observed {} printed {}",
            a.id(),
            observed,
            c.c_printed
        ));
    }
    Ok(lines.join("; "))
}

fn scale_robustness() -> Outcome {
    let p: Partition = "3,1".parse().map_err(|e: nilab::Error| e.to_string())?;
    let plain = alg(Family::A, 3);
    let scaled = AlgebraRealization::build_scaled(Family::A, 3, rat(5)).map_err(|e| e.to_string())?;
    let a = run_orbit(&plain, &p, 0);
    let b = run_orbit(&scaled, &p, 0);
    no_failures("unscaled", &a.checks)?;
    no_failures("scaled", &b.checks)?;
    let key = |r: &nilab::index::OrbitReport| (r.hypothesis_ok, r.rank_a, r.ind);
    ensure(key(&a) == key(&b), || format!("{:?} vs {:?}", key(&a), key(&b)))?;
    ensure(a.z != b.z, || "scaling left the gradients unchanged".into())?;
    Ok(format!(
        "sl4 (3,1): hypothesis_ok, rank, ind = {:?} at both scales",
        key(&a)
    ))
}

fn table_json() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nilab"))
        .args(["table", "--family", "A", "--n", "5", "--seed", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let first = table_json()?;
    let second = table_json()?;
    ensure(!first.is_empty() && first == second, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("identity suites", identity_suites),
        ("sl2 relations", sl2_relations),
        (
            "kostant independence and triangular decomposition",
            kostant_and_triangular,
        ),
        ("shift rank", shift_rank),
        ("sl(n) index pipeline", sl_pipeline),
        ("regular determinant", regular_determinant),
        ("convolution audit", convolution_audit),
        ("scale robustness", scale_robustness),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS  {} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
