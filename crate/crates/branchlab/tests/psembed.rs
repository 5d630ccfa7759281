mod common;

use branchlab::hwmodule::build_irrep;
use branchlab::psembed::{
    dual_weight, parameter_checks, ps_ktype_bound, ps_params, verify_borel_weil_annihilation,
};
use branchlab::rootsys::DominantWeight;
use branchlab::scalar::Rat;
use common::{real_form, with_k};
use proptest::prelude::*;

#[test]
fn duals() {
    assert_eq!(dual_weight(&real_form("sl2R"), &DominantWeight(vec![3])).0, vec![3]);
    assert_eq!(dual_weight(&real_form("sl3R"), &DominantWeight(vec![2, 0])).0, vec![0, 2]);
    assert_eq!(dual_weight(&real_form("sp4R"), &DominantWeight(vec![1, 2])).0, vec![1, 2]);
}

#[test]
fn trivial_weight_has_trivial_parameters() {
    for name in ["sl2R", "su21", "sp4R"] {
        let rf = real_form(name);
        let p = ps_params(&DominantWeight::zero(rf.rank()), &rf);
        assert!(p.delta.is_trivial(), "{name}");
        assert!(p.xi.iter().all(Rat::is_zero), "{name}");
    }
}

#[test]
fn sl2_xi_is_linear_in_n() {
    let rf = real_form("sl2R");
    let one = ps_params(&DominantWeight(vec![1]), &rf).xi[0].clone();
    assert!(one.is_negative());
    for n in 0..6 {
        let p = ps_params(&DominantWeight(vec![n]), &rf);
        assert_eq!(p.xi[0], &one * &Rat::int(n));
        assert_eq!(p.delta.zeta, vec![if n % 2 == 0 { 1 } else { -1 }]);
    }
}

#[test]
fn su21_dual_restriction() {
    let rf = real_form("su21");
    let p = ps_params(&DominantWeight(vec![1, 0]), &rf);
    assert_eq!(p.lambda_c, vec![0, 1]);
    assert_eq!(p.nu_c, vec![Rat::int(-1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn parameters_and_bounds_hold(t in 0usize..4, a in 0i64..3, b in 0i64..3) {
        let name = ["sl3R", "su21", "sp4R", "su31"][t];
        let (rf, ks) = with_k(name);
        let mut w = vec![a, b, 0];
        w.truncate(rf.rank());
        let l = DominantWeight(w);
        prop_assume!(rf.g.rs.weyl_dimension(&l.0) <= 64);
        let v = build_irrep(&rf.g, &l).unwrap();
        prop_assert!(parameter_checks(&v, &rf).unwrap().iter().all(|c| c.passed));
        prop_assert!(verify_borel_weil_annihilation(&l, &rf).unwrap().iter().all(|c| c.passed));
        for b in ps_ktype_bound(&v, &rf, &ks).unwrap() {
            prop_assert!(b.multiplicity <= b.delta_dim);
        }
    }
}
