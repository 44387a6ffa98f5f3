use nilab::exact::{rat, Mat, Rat};
use nilab::invariants::{eval_generator, generators, gradient};
use nilab::liealg::{Family, GeneratorKind};
use nilab::{AlgebraRealization, Element};
use proptest::prelude::*;

fn algebras() -> Vec<AlgebraRealization> {
    [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 2),
        (Family::D, 3),
    ]
    .into_iter()
    .map(|(f, r)| AlgebraRealization::build(f, r).unwrap())
    .collect()
}

fn element(alg: &AlgebraRealization, seed: &[i64]) -> Element {
    let coords: Vec<i64> = (0..alg.dim()).map(|k| seed[k % seed.len()] - (k as i64 % 3)).collect();
    alg.element_from_i64(&coords).unwrap()
}

fn commutator(x: &Mat, y: &Mat) -> Mat {
    x.mul(y).sub(&y.mul(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_gradients_are_dual_to_the_differential(
        a in prop::collection::vec(-3i64..=3, 1..12),
        b in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        for alg in algebras() {
            let (x, y) = (element(&alg, &a), element(&alg, &b));
            let (mx, my) = (alg.to_matrix(&x), alg.to_matrix(&y));
            for g in generators(&alg).into_iter().filter(|g| g.kind == GeneratorKind::TracePower) {
                let p = gradient(&alg, g.index, &x).unwrap();
                // d/dt tr((x + t y)^d) at t = 0
                let expected = mx.pow(g.degree - 1).mul(&my).trace() * rat(g.degree as i64);
                prop_assert_eq!(alg.trace_form(&p, &y).unwrap(), expected);
                prop_assert!(commutator(&alg.to_matrix(&p), &mx).is_zero());
            }
        }
    }

    #[test]
    fn generators_are_conjugation_invariant(
        a in prop::collection::vec(-3i64..=3, 1..12),
        n in prop::collection::vec(-2i64..=2, 1..8),
    ) {
        for alg in algebras() {
            let x = element(&alg, &a);
            let mut nil = alg.zero();
            for (k, b) in alg.upper_nilpotent_basis().into_iter().enumerate() {
                nil = nil.add_scaled(&rat(n[k % n.len()]), &alg.basis_element(b));
            }
            let g = alg.unipotent_ad(&nil).unwrap();
            let gx = alg.apply(&g, &x);
            for gen in generators(&alg) {
                let before: Rat = eval_generator(&alg, gen.index, &x).unwrap();
                prop_assert_eq!(eval_generator(&alg, gen.index, &gx).unwrap(), before);
                prop_assert_eq!(
                    gradient(&alg, gen.index, &gx).unwrap(),
                    alg.apply(&g, &gradient(&alg, gen.index, &x).unwrap())
                );
            }
        }
    }
}
