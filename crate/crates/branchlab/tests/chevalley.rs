use branchlab::chevalley::LieAlgebra;
use branchlab::rootsys::CartanMatrix;
use branchlab::scalar::Scalar;

fn algebras() -> Vec<(&'static str, CartanMatrix)> {
    vec![
        ("A1", CartanMatrix::type_a(1)),
        ("A2", CartanMatrix::type_a(2)),
        ("A3", CartanMatrix::type_a(3)),
        ("B2", CartanMatrix::type_b2()),
        ("C2", CartanMatrix::type_c2()),
        ("G2", CartanMatrix::type_g2()),
        ("A1xA1", CartanMatrix::type_a(1).direct_sum(&CartanMatrix::type_a(1))),
    ]
}

#[test]
fn dimension_is_roots_plus_rank() {
    for (name, cm) in algebras() {
        let g = LieAlgebra::new(&cm).unwrap();
        assert_eq!(g.dim(), 2 * g.np() + g.rank(), "{name}");
    }
    assert_eq!(LieAlgebra::new(&CartanMatrix::type_a(2)).unwrap().dim(), 8);
    assert_eq!(LieAlgebra::new(&CartanMatrix::type_g2()).unwrap().dim(), 14);
}

#[test]
fn jacobi_and_antisymmetry_on_basis_triples() {
    for (name, cm) in algebras() {
        let g = LieAlgebra::new(&cm).unwrap();
        let n = g.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = g.bracket(&g.basis(a), &g.basis(b));
                let ba = g.bracket(&g.basis(b), &g.basis(a));
                assert!(ab.iter().zip(&ba).all(|(x, y)| (x + y).is_zero()), "{name}");
                for c in 0..n {
                    let x = g.bracket(&g.basis(a), &g.bracket(&g.basis(b), &g.basis(c)));
                    let y = g.bracket(&g.basis(b), &g.bracket(&g.basis(c), &g.basis(a)));
                    let z = g.bracket(&g.basis(c), &g.bracket(&g.basis(a), &g.basis(b)));
                    assert!(x.iter().zip(&y).zip(&z).all(|((p, q), r)| (&(p + q) + r).is_zero()), "{name}");
                }
            }
        }
    }
}

#[test]
fn cartan_acts_by_roots_and_root_vectors_pair_to_coroots() {
    for (name, cm) in algebras() {
        let g = LieAlgebra::new(&cm).unwrap();
        for phi in g.rs.roots() {
            let e = g.e(&phi);
            for i in 0..g.rank() {
                let expect: Vec<Scalar> = e.iter().map(|x| x * &Scalar::int(g.rs.pair(&phi, i))).collect();
                assert_eq!(g.bracket(&g.h(i), &e), expect, "{name}");
            }
            let neg: Vec<i64> = phi.iter().map(|x| -x).collect();
            assert_eq!(g.bracket(&e, &g.e(&neg)), g.coroot_elem(&phi), "{name} {phi:?}");
        }
    }
}

#[test]
fn killing_form_matches_trace_and_is_invariant() {
    for (name, cm) in algebras() {
        let g = LieAlgebra::new(&cm).unwrap();
        let n = g.dim();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(g.killing_form(&g.basis(a), &g.basis(b)), g.killing_by_trace(&g.basis(a), &g.basis(b)));
                for c in 0..n {
                    let l = g.killing_form(&g.bracket(&g.basis(a), &g.basis(b)), &g.basis(c));
                    let r = g.killing_form(&g.basis(a), &g.bracket(&g.basis(b), &g.basis(c)));
                    assert_eq!(l, r, "{name}");
                }
            }
        }
        for phi in g.rs.roots() {
            let neg: Vec<i64> = phi.iter().map(|x| -x).collect();
            assert!(!g.killing_form(&g.e(&phi), &g.e(&neg)).is_zero());
        }
    }
}

#[test]
fn known_killing_values() {
    let a2 = LieAlgebra::new(&CartanMatrix::type_a(2)).unwrap();
    assert_eq!(a2.killing_form(&a2.h(0), &a2.h(1)), Scalar::int(-6));
    assert_eq!(a2.killing_form(&a2.h(0), &a2.h(0)), Scalar::int(12));
}

#[test]
fn induced_form_reproduces_coroot_map() {
    // η(h_i) = 2α_i/(α_i, α_i): B(h_i, h_j) = 2(α_i,α_j)/((α_i,α_i)(α_j,α_j)) · 2
    for (name, cm) in algebras() {
        let g = LieAlgebra::new(&cm).unwrap();
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                let lhs = g.killing_form(&g.h(i), &g.h(j));
                let f = &g.rs.form;
                let rhs = &(&(&f[i][j] * &branchlab::scalar::Rat::int(4)) / &f[i][i]) / &f[j][j];
                assert_eq!(lhs, Scalar::rat(rhs), "{name}");
            }
        }
    }
}
