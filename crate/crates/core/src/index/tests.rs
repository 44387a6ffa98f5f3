use super::*;
use crate::exact::Mat;
use crate::liealg::Family;
use crate::triplets::{principal_triplet, sl2_complete, Partition};

fn build(family: Family, rank: usize) -> AlgebraRealization {
    AlgebraRealization::build(family, rank).unwrap()
}

fn el(alg: &AlgebraRealization, entries: &[(usize, usize, i64)]) -> Element {
    let n = alg.matrix_size();
    let mut m = Mat::zeros(n, n);
    for &(i, j, v) in entries {
        m.set(i - 1, j - 1, rat(v));
    }
    alg.from_matrix(&m).unwrap()
}

fn sl3_regular() -> (AlgebraRealization, PairData) {
    let a2 = build(Family::A, 2);
    let t = principal_triplet(&a2).unwrap();
    let pd = build_pair_data(&a2, &t).unwrap();
    (a2, pd)
}

#[test]
fn pair_data_sl3_regular() {
    let (a2, pd) = sl3_regular();
    let e = &pd.triplet.e;
    let h = &pd.triplet.h;
    assert!(pd.hypothesis_ok);
    assert_eq!(pd.selection, Selection::NonzeroGradients);
    assert_eq!(pd.pair_exponents, vec![1, 2]);
    assert_eq!(pd.z, vec![e.scale(&rat(2)), el(&a2, &[(1, 3, 3)])]);
    assert_eq!(pd.y, vec![h.scale(&rat(2)), el(&a2, &[(1, 2, 6), (2, 3, -6)])]);
    assert_eq!((pd.zcent.dim(), pd.delta.dim(), pd.eta.dim()), (2, 2, 4));
}

#[test]
fn pair_data_sl3_minimal_and_sl2() {
    let a2 = build(Family::A, 2);
    let e = el(&a2, &[(1, 2, 1)]);
    let t = sl2_complete(&a2, &e).unwrap();
    let pd = build_pair_data(&a2, &t).unwrap();
    assert!(pd.hypothesis_ok);
    assert_eq!(pd.pair_exponents, vec![1]);
    assert_eq!(pd.z, vec![e.scale(&rat(2))]);
    assert_eq!(pd.y, vec![el(&a2, &[(1, 1, 2), (2, 2, -2)])]);

    let a1 = build(Family::A, 1);
    let t = principal_triplet(&a1).unwrap();
    let pd = build_pair_data(&a1, &t).unwrap();
    assert_eq!(pd.z, vec![t.e.scale(&rat(2))]);
    assert_eq!(pd.y, vec![t.h.scale(&rat(2))]);
}

#[test]
fn pair_relations() {
    let (a2, pd) = sl3_regular();
    let r = pair_relations_check(&a2, &pd).unwrap();
    assert!(r.all_pass());
    // [e, y_2] = −12 E13
    assert_eq!(a2.br(&pd.triplet.e, &pd.y[1]), el(&a2, &[(1, 3, -12)]));
    assert_eq!(a2.br(&pd.triplet.h, &pd.y[1]), pd.y[1].scale(&rat(2)));
}

#[test]
fn bracket_matrix_examples() {
    let (a2, pd) = sl3_regular();
    let a = bracket_matrix(&a2, &pd).unwrap();
    let e = &pd.triplet.e;
    let e13 = el(&a2, &[(1, 3, 1)]);
    assert_eq!(a.entries[0][0], e.scale(&rat(8)));
    assert_eq!(a.entries[0][1], e13.scale(&rat(24)));
    assert_eq!(a.entries[1][0], e13.scale(&rat(24)));
    assert!(a.entries[1][1].is_zero());

    let a1 = build(Family::A, 1);
    let t = principal_triplet(&a1).unwrap();
    let pd = build_pair_data(&a1, &t).unwrap();
    let a = bracket_matrix(&a1, &pd).unwrap();
    assert_eq!(a.entries[0][0], t.e.scale(&rat(8)));
}

#[test]
fn structure_and_determinant_sl3() {
    let (a2, pd) = sl3_regular();
    let a = bracket_matrix(&a2, &pd).unwrap();
    let sc = structure_checks(&a2, &pd, &a).unwrap();
    assert_eq!(sc.betas, vec![rat(8), rat(8)]);
    let shape = det_shape_check(&a2, &pd, &a, &sc.betas).unwrap();
    assert_eq!(shape.epsilon, -1);
    assert_eq!(shape.gamma, rat(-64));
    assert_eq!(shape.det.to_string(), "-576*t2^2");
    assert_eq!(shape.top_form.to_string(), "3*t2");
    let r = index_pair(&pd, &a, 0).unwrap();
    assert_eq!((r.dim_delta, r.rank, r.ind), (2, 2, 0));
    assert!(r.det_criterion_holds);
}

#[test]
fn determinant_sl2_and_minimal_sl3() {
    let a1 = build(Family::A, 1);
    let t = principal_triplet(&a1).unwrap();
    let pd = build_pair_data(&a1, &t).unwrap();
    let a = bracket_matrix(&a1, &pd).unwrap();
    let sc = structure_checks(&a1, &pd, &a).unwrap();
    assert_eq!(sc.betas, vec![rat(4)]);
    let shape = det_shape_check(&a1, &pd, &a, &sc.betas).unwrap();
    assert_eq!(shape.gamma, rat(4));
    assert_eq!(shape.det, shape.top_form.scale(&rat(4)));

    let a2 = build(Family::A, 2);
    let t = sl2_complete(&a2, &el(&a2, &[(1, 2, 1)])).unwrap();
    let pd = build_pair_data(&a2, &t).unwrap();
    let a = bracket_matrix(&a2, &pd).unwrap();
    assert_eq!(a.entries[0][0], el(&a2, &[(1, 2, 8)]));
    let r = index_pair(&pd, &a, 0).unwrap();
    assert_eq!(r.ind, 0);
    assert_eq!(r.det.to_string(), "8*t1");
}

#[test]
fn convolution_examples() {
    let (a2, pd) = sl3_regular();
    let e13 = el(&a2, &[(1, 3, 1)]);
    let c = convolution_at(&a2, &pd, 1, 2).unwrap();
    assert_eq!(c.d_ij, e13.scale(&rat(6)));
    assert_eq!(c.d_ji, e13.scale(&rat(12)));
    assert_eq!(c.grad, e13.scale(&rat(18)));
    assert_eq!(c.bracket, e13.scale(&rat(24)));
    assert_eq!(c.c_actual, Some(ratio(4, 3)));
    assert_eq!(c.c_printed, ratio(2, 3));
    assert_eq!(c.alphas, vec![rat(0), rat(6)]);

    let c = convolution_at(&a2, &pd, 2, 2).unwrap();
    assert!(c.bracket.is_zero() && c.d_ij.is_zero() && c.grad.is_zero());
    assert_eq!(c.c_actual, None);

    let a1 = build(Family::A, 1);
    let t = principal_triplet(&a1).unwrap();
    let pd = build_pair_data(&a1, &t).unwrap();
    let c = convolution_at(&a1, &pd, 1, 1).unwrap();
    assert_eq!(c.grad, t.e.scale(&rat(8)));
    assert_eq!(c.c_actual, Some(rat(1)));
    assert_eq!(c.c_printed, ratio(1, 2));
    assert!(matches!(convolution_at(&a1, &pd, 1, 2), Err(Error::Contract(_))));
}

#[test]
fn sweep_sl3_and_sl4() {
    let reports = sweep(Family::A, 4, 0).unwrap();
    let rows: Vec<(String, String, Option<usize>)> = reports
        .iter()
        .map(|r| (r.algebra.clone(), r.partition.clone(), r.ind))
        .collect();
    assert_eq!(rows.len(), 2 + 3 + 5);
    assert_eq!(rows[2], ("A2".into(), "3".into(), Some(0)));
    assert_eq!(rows[4], ("A2".into(), "1,1,1".into(), None));
    for r in &reports {
        assert!(r.all_pass(), "{} {}: {:?}", r.algebra, r.partition, r.checks);
        if r.skipped.is_none() {
            assert_eq!(r.hypothesis_ok, Some(true));
            assert_eq!(r.ind, Some(0));
        } else {
            assert_eq!(r.skipped.as_deref(), Some("e = 0"));
        }
    }
    let nontrivial = reports
        .iter()
        .filter(|r| r.algebra == "A3" && r.skipped.is_none())
        .count();
    assert_eq!(nontrivial, 4);
}

#[test]
fn principal_orbits_of_b2_c2() {
    for family in [Family::B, Family::C] {
        let alg = build(family, 2);
        let p = crate::triplets::principal_partition(family, 2);
        let r = run_orbit(&alg, &p, 0);
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.ind, Some(0));
        assert_eq!(r.scope, "core");
        assert_eq!(r.gamma_nonzero(), Some(true));
    }
}

#[test]
fn scale_robustness() {
    let p: Partition = "2,2".parse().unwrap();
    let plain = build(Family::A, 3);
    let scaled = AlgebraRealization::build_scaled(Family::A, 3, rat(5)).unwrap();
    let a = run_orbit(&plain, &p, 0);
    let b = run_orbit(&scaled, &p, 0);
    assert!(a.all_pass() && b.all_pass());
    assert_eq!(a.hypothesis_ok, b.hypothesis_ok);
    assert_eq!(a.rank_a, b.rank_a);
    assert_eq!(a.ind, b.ind);
    assert_ne!(a.z, b.z);
}

#[test]
fn hypothesis_failure_is_refused() {
    let (a2, mut pd) = sl3_regular();
    pd.hypothesis_ok = false;
    assert!(matches!(pair_relations_check(&a2, &pd), Err(Error::Hypothesis(_))));
    assert!(matches!(bracket_matrix(&a2, &pd), Err(Error::Hypothesis(_))));
    assert!(matches!(convolution_at(&a2, &pd, 1, 1), Err(Error::Hypothesis(_))));
}

#[test]
fn sweep_is_deterministic() {
    let a = sweep(Family::C, 4, 3).unwrap();
    let b = sweep(Family::C, 4, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn so7_orbit_331_has_an_extra_central_element() {
    let b3 = build(Family::B, 3);
    let p: Partition = "3,3,1".parse().unwrap();
    let e = crate::triplets::nilpotent_from_partition(&b3, &p).unwrap();
    let t = sl2_complete(&b3, &e).unwrap();
    let pd = build_pair_data(&b3, &t).unwrap();
    assert!(!pd.hypothesis_ok);
    assert_eq!((pd.zcent.dim(), pd.delta.dim(), pd.s()), (7, 2, 1));

    // Oracle with plain matrix products: c commutes with e and with every
    // element commuting with e, yet is not a multiple of e.
    let mut cm = Mat::zeros(7, 7);
    cm.set(0, 5, rat(1));
    cm.set(1, 6, rat(-1));
    let c = b3.from_matrix(&cm).unwrap();
    let comm = |x: &Mat, y: &Mat| x.mul(y).sub(&y.mul(x));
    assert!(comm(&cm, &b3.to_matrix(&e)).is_zero());
    for z in pd.zcent.basis() {
        assert!(comm(&cm, &b3.to_matrix(&z)).is_zero());
    }
    assert!(c.ratio_to(&e).is_none());
    assert!(pd.delta.contains(&c));

    let r = run_orbit(&b3, &p, 0);
    assert!(r.hypothesis_violated() && r.all_pass() && r.ind.is_none());
    assert!(matches!(pair_relations_check(&b3, &pd), Err(Error::Hypothesis(_))));
}

#[test]
fn repeated_exponents_use_greedy_selection() {
    let d4 = build(Family::D, 4);
    let t = principal_triplet(&d4).unwrap();
    let pd = build_pair_data(&d4, &t).unwrap();
    assert_eq!(pd.selection, Selection::GreedyByDegree);
    assert_eq!(pd.pair_exponents, vec![1, 3, 3, 5]);
    assert!(pd.hypothesis_ok);
    let a = bracket_matrix(&d4, &pd).unwrap();
    let sc = structure_checks(&d4, &pd, &a).unwrap();
    assert!(sc.betas.is_empty());
    assert!(matches!(
        det_shape_check(&d4, &pd, &a, &sc.betas),
        Err(Error::Contract(_))
    ));

    let r = run_orbit(&d4, &crate::triplets::principal_partition(Family::D, 4), 0);
    assert!(r.all_pass(), "{:?}", r.checks);
    assert_eq!(r.ind, Some(0));
    assert_eq!(r.gamma, None);
    assert_eq!(r.notes.len(), 1);
}
