use branchlab::rootsys::{CartanMatrix, DominantWeight, RootSystem};
use proptest::prelude::*;

fn rs(name: &str) -> RootSystem {
    RootSystem::new(&CartanMatrix::named(name).unwrap()).unwrap()
}

/// The dominant element of the Weyl orbit of `−λ`, found by reflecting until dominant.
fn dominant_of_negative(r: &RootSystem, l: &[i64]) -> Vec<i64> {
    let mut w: Vec<i64> = l.iter().map(|x| -x).collect();
    while let Some(i) = w.iter().position(|&x| x < 0) {
        w = r.reflect_weight(i, &w);
    }
    w
}

#[test]
fn root_counts() {
    for (name, total) in [("A1", 2), ("A2", 6), ("A3", 12), ("B2", 8), ("C2", 8), ("G2", 12)] {
        let r = rs(name);
        assert_eq!(r.roots().len(), total, "{name}");
        assert_eq!(r.num_positive(), total / 2, "{name}");
    }
}

#[test]
fn dual_weights_of_small_types() {
    assert_eq!(rs("A1").dual_weight(&DominantWeight(vec![5])).0, vec![5]);
    assert_eq!(rs("A2").dual_weight(&DominantWeight(vec![3, 1])).0, vec![1, 3]);
    assert_eq!(rs("B2").dual_weight(&DominantWeight(vec![2, 3])).0, vec![2, 3]);
    assert_eq!(rs("A1").longest_element_action(&[4]), vec![-4]);
}

#[test]
fn dominance_is_checked() {
    assert!(DominantWeight::new(vec![2, -1]).is_err());
    assert!(DominantWeight::new(vec![0, 0]).is_ok());
}

#[test]
fn dimension_filter_matches_weyl_formula() {
    let r = rs("A2");
    let got: Vec<Vec<i64>> = r.dominant_weights_with_dim_at_most(64).into_iter().map(|l| l.0).collect();
    let mut want: Vec<Vec<i64>> = DominantWeight::all_up_to(2, 20)
        .into_iter()
        .filter(|l| r.weyl_dimension(&l.0) <= 64)
        .map(|l| l.0)
        .collect();
    let mut sorted = got.clone();
    sorted.sort();
    want.sort();
    assert_eq!(sorted, want);
    assert_eq!(r.weyl_dimension(&[1, 1]), 8);
    assert_eq!(rs("B2").weyl_dimension(&[0, 1]), 4);
}

#[test]
fn weyl_group_orders() {
    for (name, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12)] {
        assert_eq!(rs(name).weyl_group().len(), order, "{name}");
    }
}

proptest! {
    #[test]
    fn dual_weight_is_dominant_of_negative_orbit(a in 0i64..6, b in 0i64..6, t in 0usize..3) {
        let name = ["A2", "B2", "G2"][t];
        let r = rs(name);
        let l = DominantWeight(vec![a, b]);
        let d = r.dual_weight(&l);
        prop_assert_eq!(&d.0, &dominant_of_negative(&r, &l.0));
        prop_assert_eq!(r.dual_weight(&d), l.clone());
        prop_assert_eq!(r.weyl_dimension(&d.0), r.weyl_dimension(&l.0));
    }

    #[test]
    fn simple_reflections_are_involutions(a in -5i64..6, b in -5i64..6, i in 0usize..2) {
        let r = rs("G2");
        let w = vec![a, b];
        prop_assert_eq!(r.reflect_weight(i, &r.reflect_weight(i, &w)), w);
    }
}
