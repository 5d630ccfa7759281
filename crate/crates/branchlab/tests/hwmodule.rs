use std::collections::BTreeMap;

use branchlab::chevalley::LieAlgebra;
use branchlab::hwmodule::{build_irrep, verify_prv_annihilation, weight_multiplicities};
use branchlab::rootsys::{CartanMatrix, DominantWeight};
use proptest::prelude::*;

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::new(&CartanMatrix::named(name).unwrap()).unwrap()
}

fn constructed_multiplicities(g: &LieAlgebra, l: &DominantWeight) -> BTreeMap<Vec<i64>, u64> {
    let v = build_irrep(g, l).unwrap();
    let mut m = BTreeMap::new();
    for s in &v.raw.spaces {
        m.insert(s.weight.clone(), s.dim as u64);
    }
    m
}

fn check_homomorphism(g: &LieAlgebra, l: &DominantWeight) {
    let v = build_irrep(g, l).unwrap();
    let n = g.dim();
    for a in 0..n {
        for b in 0..n {
            let lhs = v.ops[a].commutator(&v.ops[b]);
            let rhs = v.action(&g.bracket(&g.basis(a), &g.basis(b)));
            assert_eq!(lhs, rhs, "{l:?} basis {a},{b}");
        }
    }
    // highest vector is killed by raising operators and has weight λ
    for a in 0..g.np() {
        assert!(v.ops[a].apply(&v.highest_vector()).is_empty());
    }
    for i in 0..g.rank() {
        let hv = v.ops[g.h_index(i)].apply(&v.highest_vector());
        let expect = branchlab::linalg::scale(&v.highest_vector(), &branchlab::scalar::Scalar::int(l.0[i]));
        assert_eq!(hv, expect);
    }
}

#[test]
fn sl2_string() {
    let g = alg("A1");
    let m = constructed_multiplicities(&g, &DominantWeight(vec![3]));
    assert_eq!(m, BTreeMap::from([(vec![3], 1), (vec![1], 1), (vec![-1], 1), (vec![-3], 1)]));
}

#[test]
fn small_examples() {
    let a2 = alg("A2");
    assert_eq!(build_irrep(&a2, &DominantWeight(vec![1, 0])).unwrap().dim(), 3);
    let adj = constructed_multiplicities(&a2, &DominantWeight(vec![1, 1]));
    assert_eq!(adj.values().sum::<u64>(), 8);
    assert_eq!(adj[&vec![0, 0]], 2);
    let b2 = alg("B2");
    let spin = weight_multiplicities(&b2.rs, &DominantWeight(vec![0, 1]));
    assert_eq!(spin.len(), 4);
    assert!(spin.values().all(|&m| m == 1));
    assert_eq!(b2.rs.weyl_dimension(&[0, 1]), 4);
}

#[test]
fn freudenthal_agrees_with_construction() {
    for name in ["A1", "A2", "A3", "B2", "C2", "G2"] {
        let g = alg(name);
        for l in DominantWeight::all_up_to(g.rank(), 3) {
            if g.rs.weyl_dimension(&l.0) > 400 {
                continue;
            }
            let f = weight_multiplicities(&g.rs, &l);
            let c = constructed_multiplicities(&g, &l);
            assert_eq!(f, c, "{name} {l:?}");
            assert_eq!(f.values().sum::<u64>() as u128, g.rs.weyl_dimension(&l.0), "{name} {l:?}");
        }
    }
}

#[test]
fn weights_are_weyl_invariant() {
    for name in ["A2", "B2", "G2"] {
        let g = alg(name);
        for l in DominantWeight::all_up_to(2, 2) {
            let m = weight_multiplicities(&g.rs, &l);
            for (w, k) in &m {
                for i in 0..2 {
                    assert_eq!(m.get(&g.rs.reflect_weight(i, w)), Some(k), "{name} {l:?}");
                }
            }
        }
    }
}

#[test]
fn lowering_powers() {
    for name in ["A1", "A2", "B2", "G2"] {
        let g = alg(name);
        for l in DominantWeight::all_up_to(g.rank(), 3) {
            verify_prv_annihilation(&g, &build_irrep(&g, &l).unwrap()).unwrap();
        }
    }
}

#[test]
fn adjoint_lowering_example() {
    let g = alg("A2");
    let v = build_irrep(&g, &DominantWeight(vec![1, 1])).unwrap();
    let f1 = &v.ops[g.root_basis_index(&[-1, 0])];
    let f2 = &v.ops[g.root_basis_index(&[0, -1])];
    let hv = v.highest_vector();
    assert!(f1.apply(&f1.apply(&hv)).is_empty());
    assert!(!f1.apply(&f2.apply(&hv)).is_empty());
}

#[test]
fn homomorphism_on_small_modules() {
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let g = alg(name);
        for l in DominantWeight::all_up_to(g.rank(), 1) {
            check_homomorphism(&g, &l);
        }
    }
    check_homomorphism(&alg("A2"), &DominantWeight(vec![2, 1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn homomorphism_random_weights(a in 0i64..3, b in 0i64..3, t in 0usize..3) {
        let name = ["A2", "B2", "C2"][t];
        check_homomorphism(&alg(name), &DominantWeight(vec![a, b]));
    }

    #[test]
    fn dual_is_involutive(a in 0i64..6, b in 0i64..6, t in 0usize..4) {
        let g = alg(["A2", "B2", "G2", "C2"][t]);
        let l = DominantWeight(vec![a, b]);
        prop_assert_eq!(g.rs.dual_weight(&g.rs.dual_weight(&l)), l);
    }
}
