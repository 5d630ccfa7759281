mod common;

use branchlab::realform::{
    classify_simple_restricted, h_m_basis, lowest_weights, restricted_root_module, structure_checks, ThetaSpec,
};
use common::real_form;
use proptest::prelude::*;

#[test]
fn split_sl2() {
    let rf = real_form("sl2R");
    assert_eq!(rf.split_rank, 1);
    assert!(rf.m_basis.is_empty());
    assert_eq!(rf.i_s, vec![0]);
    assert!(h_m_basis(&rf).unwrap().is_empty());
    let g1 = restricted_root_module(&rf, &[1]).unwrap();
    assert_eq!(g1.roots.len(), 1);
    assert!(g1.m_action.is_empty());
    assert_eq!(lowest_weights(&rf, &[1]), vec![vec![1]]);
}

#[test]
fn su21_classification() {
    let rf = real_form("su21");
    assert!(rf.i_m.is_empty());
    assert_eq!(rf.i_2, vec![0, 1]);
    assert_eq!(rf.split_rank, 1);
    assert_eq!(rf.center_dim, 1);
    let (j1, j2, pairs) = classify_simple_restricted(&rf);
    assert!(j1.is_empty());
    assert_eq!(j2, vec![0]);
    assert_eq!(pairs, vec![(0, 1)]);
    assert_eq!(h_m_basis(&rf).unwrap(), vec![vec![1, -1]]);
    assert_eq!(restricted_root_module(&rf, &[1]).unwrap().roots.len(), 2);
    assert_eq!(restricted_root_module(&rf, &[2]).unwrap().roots, vec![vec![1, 1]]);
    let mut low = lowest_weights(&rf, &[1]);
    low.sort();
    assert_eq!(low, vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn split_forms_have_no_pairs() {
    for name in ["sl3R", "sp4R", "g2R"] {
        let rf = real_form(name);
        assert!(rf.m_basis.is_empty(), "{name}");
        assert_eq!(rf.i_s.len(), rf.rank(), "{name}");
        assert!(rf.j_2.is_empty(), "{name}");
        assert!(h_m_basis(&rf).unwrap().is_empty(), "{name}");
        assert_eq!(rf.restricted_roots.len(), rf.g.rs.roots().len(), "{name}");
    }
}

#[test]
fn every_preset_passes_the_structure_checks() {
    for name in ThetaSpec::preset_names() {
        let rf = real_form(name);
        for c in structure_checks(&rf) {
            assert!(c.passed, "{name}: {} {}", c.name, c.detail);
        }
        assert_eq!(rf.k_basis.len() + rf.a_basis.len() + rf.n_basis.len(), rf.g.dim(), "{name}");
    }
}

#[test]
fn preset_documents_round_trip() {
    for name in ThetaSpec::preset_names() {
        let spec = ThetaSpec::preset(name).unwrap();
        assert_eq!(ThetaSpec::from_json(&spec.to_json()).unwrap(), spec);
    }
    assert!(ThetaSpec::from_json("{\"preset\": \"nosuch\"}").is_err());
}

proptest! {
    #[test]
    fn theta_is_an_automorphism(t in 0usize..6, a in 0usize..14, b in 0usize..14) {
        let name = ThetaSpec::preset_names()[t];
        let rf = real_form(name);
        let g = &rf.g;
        let (a, b) = (a % g.dim(), b % g.dim());
        let (x, y) = (g.basis(a), g.basis(b));
        let lhs = rf.theta_elem(&g.bracket(&x, &y));
        let rhs = g.bracket(&rf.theta_elem(&x), &rf.theta_elem(&y));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(rf.theta_elem(&rf.theta_elem(&x)), x);
    }
}
