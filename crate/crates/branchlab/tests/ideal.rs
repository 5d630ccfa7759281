mod common;

use branchlab::hwmodule::build_irrep;
use branchlab::ideal::{generator_set, q_polynomial, verify_annihilator, GeneratorKind, QPolynomial};
use branchlab::rootsys::DominantWeight;
use branchlab::scalar::Scalar;
use common::real_form;
use proptest::prelude::*;

#[test]
fn q_polynomial_examples() {
    let sl2 = real_form("sl2R");
    let q = q_polynomial(&sl2, &DominantWeight(vec![2]), 0);
    assert_eq!(q.to_string(), "t^3 - 4t");
    assert_eq!(q.coeffs(), vec![Scalar::zero(), Scalar::int(-4), Scalar::zero(), Scalar::one()]);
    assert_eq!(q_polynomial(&sl2, &DominantWeight(vec![0]), 0).to_string(), "t");
    assert_eq!(QPolynomial::from_roots(0, vec![0, 0]).to_string(), "t^2");
}

#[test]
fn generator_kinds_follow_the_classification() {
    let rf = real_form("su21");
    let gens = generator_set(&rf, &DominantWeight(vec![2, 1]));
    let kostant = gens.iter().filter(|g| matches!(g.kind, GeneratorKind::Kostant { .. })).count();
    let shifts: Vec<i64> = gens
        .iter()
        .filter_map(|g| match g.kind {
            GeneratorKind::CartanShift { value, .. } => Some(value),
            _ => None,
        })
        .collect();
    assert_eq!(kostant, rf.i_n.len());
    assert_eq!(shifts, vec![1]);
}

#[test]
fn degree_of_q_is_sharp_on_sl2() {
    let rf = real_form("sl2R");
    for n in 0..6 {
        let v = build_irrep(&rf.g, &DominantWeight(vec![n])).unwrap();
        let report = verify_annihilator(&v, &rf).unwrap();
        assert!(report.probes.iter().all(|c| c.passed), "n = {n}");
        assert_eq!(report.probes.len(), n as usize + 1);
    }
}

proptest! {
    #[test]
    fn roots_of_q_are_a_symmetric_string(n in 0i64..12) {
        let q = q_polynomial(&real_form("sl2R"), &DominantWeight(vec![n]), 0);
        prop_assert_eq!(q.degree(), n as usize + 1);
        for r in -n - 1..=n + 1 {
            let vanishes = q.eval(&Scalar::int(r)).is_zero();
            prop_assert_eq!(vanishes, (n - r) % 2 == 0 && r.abs() <= n);
        }
    }

    #[test]
    fn generators_kill_the_highest_vector(t in 0usize..4, a in 0i64..3, b in 0i64..3) {
        let rf = real_form(["sl3R", "su21", "sp4R", "g2R"][t]);
        let l = DominantWeight(vec![a, b]);
        if rf.g.rs.weyl_dimension(&l.0) <= 60 {
            let v = build_irrep(&rf.g, &l).unwrap();
            let report = verify_annihilator(&v, &rf).unwrap();
            prop_assert!(report.generators.iter().all(|c| c.passed));
        }
    }
}
