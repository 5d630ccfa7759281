mod common;

use branchlab::branching::{
    branch_kostant, branch_oracle, build_k_type, parity_checks, verify_n_invariants, z_lambda_space,
};
use branchlab::hwmodule::build_irrep;
use branchlab::rootsys::DominantWeight;
use branchlab::scalar::Scalar;
use common::with_k;
use proptest::prelude::*;

fn dims(name: &str, l: &[i64]) -> Vec<(u64, u64)> {
    let (rf, ks) = with_k(name);
    let v = build_irrep(&rf.g, &DominantWeight(l.to_vec())).unwrap();
    let r = branch_oracle(&v, &rf, &ks).unwrap();
    assert_eq!(r.checksum, v.dim() as u64);
    let mut out: Vec<(u64, u64)> = r.entries.iter().map(|e| (e.dim, e.multiplicity)).collect();
    out.sort();
    out
}

#[test]
fn oracle_examples() {
    assert_eq!(dims("sl3R", &[1, 1]), vec![(3, 1), (5, 1)]);
    assert_eq!(dims("sl3R", &[2, 0]), vec![(1, 1), (5, 1)]);
    assert_eq!(dims("su21", &[1, 0]).iter().map(|(d, m)| d * m).sum::<u64>(), 3);
    assert_eq!(dims("su21", &[1, 0]).len(), 2);
    assert_eq!(dims("su21", &[1, 1]).iter().map(|(d, m)| d * m).sum::<u64>(), 8);
}

#[test]
fn sl2_characters() {
    let (rf, ks) = with_k("sl2R");
    let v = build_irrep(&rf.g, &DominantWeight(vec![3])).unwrap();
    let r = branch_kostant(&v, &rf, &ks).unwrap();
    let chars: Vec<(Vec<i64>, u64)> = r.entries.iter().map(|e| (e.weight.clone(), e.multiplicity)).collect();
    assert_eq!(chars, vec![(vec![-3], 1), (vec![-1], 1), (vec![1], 1), (vec![3], 1)]);
    let z = build_k_type(&ks, &[Scalar::int(5)]).unwrap();
    assert_eq!(z.dim(), 1);
}

#[test]
fn k_type_dimensions() {
    let (_, ks) = with_k("sl3R");
    let z = build_k_type(&ks, &[Scalar::int(2)]).unwrap();
    assert_eq!(z.dim(), 5);
    assert_eq!(ks.k_type_dim(&[2]), 5);
    let (_, ks) = with_k("su21");
    let mut found = false;
    for c in -2..=2 {
        for a in 0..=1 {
            let mut hw = vec![0i64; ks.rank()];
            hw[ks.rank() - 2] = c;
            hw[ks.rank() - 1] = a;
            if ks.is_dominant(&hw) && ks.k_type_dim(&hw) == 2 {
                found = true;
            }
        }
    }
    assert!(found);
}

#[test]
fn adjoint_of_sl3_has_z_lambda_of_dimension_one() {
    let (rf, ks) = with_k("sl3R");
    let l = DominantWeight(vec![1, 1]);
    for (hw, want) in [(0i64, 0usize), (1, 1), (2, 1), (3, 0)] {
        let z = build_k_type(&ks, &[Scalar::int(hw)]).unwrap();
        assert_eq!(z_lambda_space(&z, &l, &rf, &ks).unwrap().len(), want, "k-type {hw}");
    }
    let trivial = build_k_type(&ks, &[Scalar::int(0)]).unwrap();
    assert_eq!(z_lambda_space(&trivial, &DominantWeight(vec![0, 0]), &rf, &ks).unwrap().len(), 1);
}

#[test]
fn all_presets_agree_at_low_level() {
    for name in ["sl2R", "sl3R", "su21", "sp4R", "g2R", "su31"] {
        let (rf, ks) = with_k(name);
        for l in DominantWeight::all_up_to(rf.rank(), 1) {
            let v = build_irrep(&rf.g, &l).unwrap();
            let k = branch_kostant(&v, &rf, &ks).unwrap();
            let o = branch_oracle(&v, &rf, &ks).unwrap();
            assert!(k.same_decomposition(&o), "{name} {:?}", l.0);
            verify_n_invariants(&v, &rf).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn kostant_equals_oracle(t in 0usize..4, a in 0i64..4, b in 0i64..4) {
        let name = ["sl3R", "su21", "sp4R", "g2R"][t];
        let (rf, ks) = with_k(name);
        let l = DominantWeight(vec![a, b]);
        prop_assume!(rf.g.rs.weyl_dimension(&l.0) <= 80);
        let v = build_irrep(&rf.g, &l).unwrap();
        let k = branch_kostant(&v, &rf, &ks).unwrap();
        let o = branch_oracle(&v, &rf, &ks).unwrap();
        prop_assert!(k.same_decomposition(&o));
        prop_assert_eq!(k.checksum, v.dim() as u64);
        prop_assert!(parity_checks(&v, &rf, &ks).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn sl2_closed_form(n in 0i64..30) {
        let (rf, ks) = with_k("sl2R");
        let v = build_irrep(&rf.g, &DominantWeight(vec![n])).unwrap();
        let r = branch_kostant(&v, &rf, &ks).unwrap();
        let mut want: Vec<Vec<i64>> = (0..=n).map(|j| vec![n - 2 * j]).collect();
        want.sort();
        prop_assert_eq!(r.entries.iter().map(|e| e.weight.clone()).collect::<Vec<_>>(), want);
        prop_assert!(r.entries.iter().all(|e| e.multiplicity == 1));
    }
}
