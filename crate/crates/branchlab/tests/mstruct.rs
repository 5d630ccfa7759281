mod common;

use branchlab::mstruct::{
    fiber_enumerate, fiber_label, fundamental_weight, is_spherical, lambda_me_membership, m_structure, m_trivial,
    m_trivial_on_module, minimal_fiber_element, precedes, FiberLabel,
};
use branchlab::hwmodule::build_irrep;
use branchlab::rootsys::DominantWeight;
use branchlab::scalar::Rat;
use common::real_form;
use proptest::prelude::*;

fn dw(v: &[i64]) -> DominantWeight {
    DominantWeight(v.to_vec())
}

#[test]
fn structure_summaries() {
    assert_eq!(m_structure(&real_form("sl3R")).summary, "M ≅ Z_2^2 × M_e");
    let su = m_structure(&real_form("su21"));
    assert_eq!(su.summary, "M ≅ M_e");
    assert_eq!(su.center_dim, 1);
}

#[test]
fn spherical_examples() {
    let sl2 = real_form("sl2R");
    assert!(is_spherical(&dw(&[4]), &sl2));
    assert!(!is_spherical(&dw(&[3]), &sl2));
    let su = real_form("su21");
    assert!(!is_spherical(&dw(&[1, 0]), &su));
    assert!(is_spherical(&dw(&[1, 1]), &su));
    assert!(is_spherical(&dw(&[0, 0]), &su));
    let sl3 = real_form("sl3R");
    assert!(is_spherical(&dw(&[2, 2]), &sl3));
    assert!(!is_spherical(&dw(&[1, 2]), &sl3));
}

#[test]
fn labels_and_membership() {
    let sl2 = real_form("sl2R");
    assert_eq!(fiber_label(&dw(&[3]), &sl2), FiberLabel { zeta: vec![-1], nu: vec![] });
    let su = real_form("su21");
    assert_eq!(fiber_label(&dw(&[2, 1]), &su), FiberLabel { zeta: vec![], nu: vec![Rat::int(1)] });
    assert!(lambda_me_membership(&[Rat::zero()], &su));
    assert!(!lambda_me_membership(&[Rat::new(1, 2)], &su));
}

#[test]
fn minimal_elements() {
    let sl2 = real_form("sl2R");
    assert_eq!(minimal_fiber_element(&FiberLabel::trivial(&sl2), &sl2).unwrap(), dw(&[0]));
    assert_eq!(minimal_fiber_element(&FiberLabel { zeta: vec![-1], nu: vec![] }, &sl2).unwrap(), fundamental_weight(1, 0));
    let su = real_form("su21");
    assert_eq!(minimal_fiber_element(&FiberLabel { zeta: vec![], nu: vec![Rat::int(-2)] }, &su).unwrap(), dw(&[0, 2]));
    assert!(minimal_fiber_element(&FiberLabel { zeta: vec![], nu: vec![Rat::new(1, 2)] }, &su).is_err());
}

#[test]
fn sl2_fibers() {
    let sl2 = real_form("sl2R");
    let even = fiber_enumerate(&FiberLabel::trivial(&sl2), 6, &sl2).unwrap();
    assert_eq!(even, vec![dw(&[0]), dw(&[2]), dw(&[4]), dw(&[6])]);
    let odd = fiber_enumerate(&FiberLabel { zeta: vec![-1], nu: vec![] }, 5, &sl2).unwrap();
    assert_eq!(odd, vec![dw(&[1]), dw(&[3]), dw(&[5])]);
}

#[test]
fn m_triviality_two_ways() {
    for name in ["su21", "su31"] {
        let rf = real_form(name);
        for l in DominantWeight::all_up_to(rf.rank(), 2) {
            let v = build_irrep(&rf.g, &l).unwrap();
            assert_eq!(m_trivial(&l, &rf), m_trivial_on_module(&v, &rf), "{name} {:?}", l.0);
        }
    }
}

proptest! {
    #[test]
    fn minimal_element_lies_below_its_fiber(t in 0usize..5, a in 0i64..6, b in 0i64..6, c in 0i64..4) {
        let name = ["sl3R", "su21", "sp4R", "g2R", "su31"][t];
        let rf = real_form(name);
        let mut w = vec![a, b, c];
        w.truncate(rf.rank());
        let l = DominantWeight(w);
        let label = fiber_label(&l, &rf);
        let lmin = minimal_fiber_element(&label, &rf).unwrap();
        prop_assert_eq!(fiber_label(&lmin, &rf), label.clone());
        prop_assert!(precedes(&lmin, &l));
        let diff: Vec<i64> = l.0.iter().zip(&lmin.0).map(|(x, y)| x - y).collect();
        prop_assert!(is_spherical(&DominantWeight(diff), &rf));
        prop_assert_eq!(is_spherical(&l, &rf), label.is_trivial());
    }
}
