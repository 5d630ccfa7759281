//! Semisimple Lie algebras in a Chevalley basis.
//!
//! Basis order: `e_φ` for positive roots `φ` (in root-system order), then
//! `e_{−φ}` in the same order, then `h_1, …, h_ℓ`. The algebra is realized
//! inside the faithful module `V_ρ`; each non-simple root vector is defined
//! by `e_φ = [e_{α_i}, e_ψ]/(p+1)` with `i` the smallest index such that
//! `ψ = φ − α_i` is a root and `p` the largest integer with `ψ − pα_i` a root.
//! The negative root vectors follow the same recipe, with the sign fixed so
//! that `[e_φ, e_{−φ}] = h_φ`.

use crate::error::{Error, Result};
use crate::hwmodule::{build_raw, RawModule};
use crate::linalg::{self, SMat, SVec, Span};
use crate::rootsys::{CartanMatrix, RootSystem};
use crate::scalar::{Rat, Scalar};

/// Dense coordinates of an algebra element.
pub type Elem = Vec<Scalar>;

/// How a non-simple root vector is obtained from shorter ones.
#[derive(Clone, Debug)]
pub struct Recipe {
    /// Index of the simple root `α_i`.
    pub simple: usize,
    /// Index (among positive roots) of `ψ = φ − α_i`.
    pub rest: usize,
    pub coeff_pos: Rat,
    pub coeff_neg: Rat,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    /// `brackets[a][b]` lists the nonzero coordinates of `[x_a, x_b]`.
    pub brackets: Vec<Vec<Vec<(usize, i64)>>>,
    /// Gram matrix of the Killing form on the basis.
    pub killing: Vec<Vec<i64>>,
    /// Recipes for positive roots; `None` for simple roots.
    pub recipes: Vec<Option<Recipe>>,
}

impl LieAlgebra {
    pub fn new(cm: &CartanMatrix) -> Result<Self> {
        build_lie_algebra(&RootSystem::new(cm)?)
    }

    pub fn dim(&self) -> usize {
        2 * self.rs.num_positive() + self.rs.rank()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn np(&self) -> usize {
        self.rs.num_positive()
    }

    /// Basis index of `e_φ` for a root `φ`.
    pub fn root_basis_index(&self, phi: &[i64]) -> usize {
        self.rs.root_index(phi).unwrap_or_else(|| panic!("{phi:?} is not a root"))
    }

    pub fn h_index(&self, i: usize) -> usize {
        2 * self.np() + i
    }

    /// Root of a basis element, `None` for Cartan elements.
    pub fn basis_root(&self, a: usize) -> Option<Vec<i64>> {
        let np = self.np();
        if a < np {
            Some(self.rs.positive[a].clone())
        } else if a < 2 * np {
            Some(self.rs.positive[a - np].iter().map(|x| -x).collect())
        } else {
            None
        }
    }

    pub fn zero(&self) -> Elem {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis(&self, a: usize) -> Elem {
        let mut v = self.zero();
        v[a] = Scalar::one();
        v
    }

    /// `e_φ` as an element.
    pub fn e(&self, phi: &[i64]) -> Elem {
        self.basis(self.root_basis_index(phi))
    }

    /// `h_i` as an element.
    pub fn h(&self, i: usize) -> Elem {
        self.basis(self.h_index(i))
    }

    /// Element of the Cartan subalgebra with the given coordinates in `h_1, …, h_ℓ`.
    pub fn cartan_elem(&self, coords: &[Scalar]) -> Elem {
        let mut v = self.zero();
        for (i, c) in coords.iter().enumerate() {
            v[self.h_index(i)] = c.clone();
        }
        v
    }

    /// Coroot `h_φ` as an element.
    pub fn coroot_elem(&self, phi: &[i64]) -> Elem {
        let c: Vec<Scalar> = self.rs.coroot(phi).into_iter().map(Scalar::int).collect();
        self.cartan_elem(&c)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, s) in &self.brackets[a][b] {
                    out[*k] += &(&c * &Scalar::int(*s));
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on coordinates.
    pub fn ad(&self, x: &[Scalar]) -> SMat {
        let n = self.dim();
        let cols: Vec<SVec> = (0..n).map(|b| linalg::from_dense(&self.bracket(x, &self.basis(b)))).collect();
        SMat::from_columns(&cols, n)
    }

    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() && self.killing[a][b] != 0 {
                    acc += &(&(xa * yb) * &Scalar::int(self.killing[a][b]));
                }
            }
        }
        acc
    }

    /// Killing form computed directly as `tr(ad x ∘ ad y)`.
    pub fn killing_by_trace(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.ad(x).mul(&self.ad(y)).trace()
    }

    /// Matrices of all basis elements on a module built from this algebra's
    /// Cartan matrix.
    pub fn represent(&self, raw: &RawModule) -> Vec<SMat> {
        let np = self.np();
        let n = self.rank();
        let mut pos: Vec<SMat> = Vec::with_capacity(np);
        let mut neg: Vec<SMat> = Vec::with_capacity(np);
        for (k, rec) in self.recipes.iter().enumerate() {
            match rec {
                None => {
                    let i = self.rs.positive[k].iter().position(|&x| x == 1).unwrap();
                    pos.push(raw.e[i].clone());
                    neg.push(raw.f[i].clone());
                }
                Some(r) => {
                    let p = raw.e[r.simple].commutator(&pos[r.rest]).scale(&Scalar::rat(r.coeff_pos.clone()));
                    let m = raw.f[r.simple].commutator(&neg[r.rest]).scale(&Scalar::rat(r.coeff_neg.clone()));
                    pos.push(p);
                    neg.push(m);
                }
            }
        }
        let mut ops = pos;
        ops.extend(neg);
        for i in 0..n {
            ops.push(raw.h(i));
        }
        ops
    }

    /// Gram matrix `(α_i, α_j)` induced on the dual of the Cartan subalgebra by
    /// the Killing form.
    pub fn killing_dual_form(&self) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let g: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| Rat::int(self.killing[self.h_index(i)][self.h_index(j)])).collect())
            .collect();
        let ginv = invert(&g);
        let a = |i: usize, k: usize| Rat::int(self.rs.cartan.a(i, k));
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Rat::zero();
                        for k in 0..n {
                            for m in 0..n {
                                acc = &acc + &(&(&a(i, k) * &ginv[k][m]) * &a(j, m));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

/// `x + y` for dense elements.
pub fn elem_add(x: &[Scalar], y: &[Scalar]) -> Elem {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `x − y` for dense elements.
pub fn elem_sub(x: &[Scalar], y: &[Scalar]) -> Elem {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `c·x` for a dense element.
pub fn elem_scale(x: &[Scalar], c: &Scalar) -> Elem {
    x.iter().map(|a| a * c).collect()
}

pub fn elem_is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// Inverse of an invertible rational matrix.
pub fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("matrix is invertible");
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &a[r][k] - &(&f * &a[c][k]);
                    a[r][k] = t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn flatten(m: &SMat) -> SVec {
    let mut out = Vec::with_capacity(m.nnz());
    for (i, r) in m.rows.iter().enumerate() {
        for (j, x) in r {
            out.push((i * m.ncols + j, x.clone()));
        }
    }
    out
}

pub fn build_lie_algebra(rs: &RootSystem) -> Result<LieAlgebra> {
    let n = rs.rank();
    let np = rs.num_positive();
    let raw = build_raw(&rs.cartan, &rs.rho(), u64::MAX)?;
    let mut recipes: Vec<Option<Recipe>> = Vec::with_capacity(np);
    let mut pos: Vec<SMat> = Vec::with_capacity(np);
    let mut neg: Vec<SMat> = Vec::with_capacity(np);
    let h_mat = |coords: &[i64]| -> SMat {
        let mut m = SMat::zero(raw.dim, raw.dim);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                m = m.axpy(&Scalar::int(c), &raw.h(i));
            }
        }
        m
    };
    for (k, phi) in rs.positive.iter().enumerate() {
        if RootSystem::height(phi) == 1 {
            let i = phi.iter().position(|&x| x == 1).unwrap();
            recipes.push(None);
            pos.push(raw.e[i].clone());
            neg.push(raw.f[i].clone());
            continue;
        }
        let (i, psi) = (0..n)
            .find_map(|i| {
                let mut psi = phi.clone();
                psi[i] -= 1;
                rs.root_index(&psi).filter(|&r| r < np).map(|r| (i, r))
            })
            .ok_or_else(|| Error::StructureViolation(format!("root {phi:?} has no simple predecessor")))?;
        let mut p = 0;
        let mut down = rs.positive[psi].clone();
        loop {
            down[i] -= 1;
            if rs.is_root(&down) {
                p += 1;
            } else {
                break;
            }
        }
        let c = Rat::new(1, p + 1);
        let e = raw.e[i].commutator(&pos[psi]).scale(&Scalar::rat(c.clone()));
        let mut f = raw.f[i].commutator(&neg[psi]).scale(&Scalar::rat(c.clone()));
        let h = h_mat(&rs.coroot(phi));
        let ef = e.commutator(&f);
        let cneg = if ef == h {
            c.clone()
        } else if ef == h.scale(&Scalar::int(-1)) {
            f = f.scale(&Scalar::int(-1));
            -c.clone()
        } else {
            return Err(Error::StructureViolation(format!("[e, f] is not ±h for root {phi:?}")));
        };
        debug_assert_eq!(k, pos.len());
        recipes.push(Some(Recipe { simple: i, rest: psi, coeff_pos: c, coeff_neg: cneg }));
        pos.push(e);
        neg.push(f);
    }
    let mut mats = pos;
    mats.extend(neg);
    for i in 0..n {
        mats.push(raw.h(i));
    }
    let dim = mats.len();
    let mut span = Span::new(raw.dim * raw.dim);
    for m in &mats {
        if span.insert(flatten(m)).is_none() {
            return Err(Error::StructureViolation("module of highest weight ρ is not faithful".into()));
        }
    }
    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if b < a {
                brackets[a][b] = brackets[b][a].iter().map(|(k, x): &(usize, i64)| (*k, -x)).collect();
                continue;
            }
            let c = mats[a].commutator(&mats[b]);
            let coords = span
                .coords(&flatten(&c))
                .ok_or_else(|| Error::StructureViolation(format!("bracket of basis {a},{b} leaves the algebra")))?;
            let mut ints = Vec::with_capacity(coords.len());
            for (k, x) in coords {
                let v = x.to_i64().ok_or_else(|| {
                    Error::StructureViolation(format!("structure constant {x} of [{a},{b}] is not an integer"))
                })?;
                ints.push((k, v));
            }
            brackets[a][b] = ints;
        }
    }
    let mut g = LieAlgebra { rs: rs.clone(), brackets, killing: vec![vec![0; dim]; dim], recipes };
    let ads: Vec<Vec<Vec<i64>>> = (0..dim)
        .map(|a| {
            let mut m = vec![vec![0i64; dim]; dim];
            for b in 0..dim {
                for (k, x) in &g.brackets[a][b] {
                    m[*k][b] = *x;
                }
            }
            m
        })
        .collect();
    for a in 0..dim {
        for b in a..dim {
            let mut t = 0i64;
            for i in 0..dim {
                for k in 0..dim {
                    t += ads[a][i][k] * ads[b][k][i];
                }
            }
            g.killing[a][b] = t;
            g.killing[b][a] = t;
        }
    }
    let form = g.killing_dual_form();
    g.rs = g.rs.clone().with_form(form);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let g = LieAlgebra::new(&CartanMatrix::type_a(1)).unwrap();
        let (e, f, h) = (g.basis(0), g.basis(1), g.basis(2));
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.bracket(&h, &e), e.iter().map(|x| x * &Scalar::int(2)).collect::<Vec<_>>());
        assert_eq!(g.killing_form(&h, &h), Scalar::int(8));
        assert_eq!(g.killing_form(&e, &f), Scalar::int(4));
    }
}
