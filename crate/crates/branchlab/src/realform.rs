//! Involutions of a semisimple Lie algebra and the Iwasawa data they determine.
//!
//! An involution `θ` is specified by a linear map `T` of the root lattice (row
//! `i` of `root_map` holds `Tα_i` in simple-root coordinates) together with
//! scalars `c^±_i` such that `θ(e_{±α_i}) = c^±_i e_{±Tα_i}` and
//! `θ(h_i) = h_{Tα_i}`. The images of the remaining basis elements follow from
//! the Chevalley recipes; the result is then checked to be an involutive
//! automorphism.
//!
//! `a` is the `−1` eigenspace of `θ` on `h` and `h_m` the `+1` eigenspace. A
//! root `φ` belongs to `m` when `Tφ = φ`; the remaining positive roots span `n`.
//! Restricted roots are written in the basis `β_1, …, β_{ℓ_o}` of simple
//! restricted roots, numbered by the smallest simple root over each.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::checks::{ensure, Check};
use crate::chevalley::{elem_add, elem_is_zero, elem_scale, elem_sub, invert, Elem, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SMat, SVec};
use crate::rootsys::{CartanMatrix, RootSystem};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Row `i` is `Tα_i` in simple-root coordinates.
    pub root_map: Vec<Vec<i64>>,
    pub signs_plus: Vec<Scalar>,
    pub signs_minus: Vec<Scalar>,
}

const PRESETS: &[(&str, &str)] = &[
    ("sl2R", include_str!("../data/presets/sl2R.json")),
    ("sl3R", include_str!("../data/presets/sl3R.json")),
    ("sp4R", include_str!("../data/presets/sp4R.json")),
    ("g2R", include_str!("../data/presets/g2R.json")),
    ("su21", include_str!("../data/presets/su21.json")),
    ("su31", include_str!("../data/presets/su31.json")),
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetRef {
    preset: String,
}

impl ThetaSpec {
    pub fn preset_names() -> Vec<&'static str> {
        PRESETS.iter().map(|(n, _)| *n).collect()
    }

    /// Looks up a bundled preset; names are matched case-insensitively.
    pub fn preset(name: &str) -> Result<Self> {
        let (_, text) = PRESETS
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Parse(format!("unknown preset {name:?}; known: {}", Self::preset_names().join(", "))))?;
        let spec: ThetaSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("preset {name}: {e}")))?;
        spec.validate_shape()?;
        Ok(spec)
    }

    /// Parses a JSON document holding either a full ThetaSpec or `{"preset": name}`.
    pub fn from_json(text: &str) -> Result<Self> {
        if let Ok(r) = serde_json::from_str::<PresetRef>(text) {
            return Self::preset(&r.preset);
        }
        let spec: ThetaSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate_shape()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ThetaSpec serializes")
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "custom".to_string())
    }

    pub fn cartan(&self) -> Result<CartanMatrix> {
        CartanMatrix::new(self.cartan_matrix.clone())
    }

    fn validate_shape(&self) -> Result<()> {
        let n = self.cartan_matrix.len();
        let square = |m: &Vec<Vec<i64>>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&self.cartan_matrix) || !square(&self.root_map) {
            return Err(Error::Parse(format!("cartan_matrix and root_map must both be {n}×{n}")));
        }
        if self.signs_plus.len() != n || self.signs_minus.len() != n {
            return Err(Error::Parse(format!("signs_plus and signs_minus must have length {n}")));
        }
        let units = [Scalar::one(), Scalar::int(-1), Scalar::i(), -&Scalar::i()];
        for s in self.signs_plus.iter().chain(&self.signs_minus) {
            if !units.contains(s) {
                return Err(Error::Parse(format!("sign {s} is not one of 1, -1, i, -i")));
            }
        }
        Ok(())
    }
}

/// The `m`-module `g(γ)` spanned by root vectors over a restricted root.
#[derive(Clone, Debug)]
pub struct RestrictedRootModule {
    /// `γ` in the basis of simple restricted roots.
    pub gamma: Vec<i64>,
    /// Roots `ψ` with `p(ψ) = γ`, in root-system order.
    pub roots: Vec<Vec<i64>>,
    /// Matrices of the `m` basis elements on the basis `e_ψ`.
    pub m_action: Vec<SMat>,
    /// Value of each `ψ` on the basis of `h_m`.
    pub h_m_weights: Vec<Vec<i64>>,
}

/// Compact description of a real form for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormSummary {
    pub name: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub dim_g: usize,
    pub dim_k: usize,
    pub dim_m: usize,
    pub dim_a: usize,
    pub dim_n: usize,
    pub split_rank: usize,
    pub center_dim: usize,
    pub i_m: Vec<usize>,
    pub i_n: Vec<usize>,
    pub i_s: Vec<usize>,
    pub i_nil: Vec<usize>,
    pub i_1: Vec<usize>,
    pub i_2: Vec<usize>,
    pub j_1: Vec<usize>,
    pub j_2: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub positive_restricted_roots: Vec<Vec<i64>>,
    pub h_m_basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct RealFormData {
    pub spec: ThetaSpec,
    pub g: LieAlgebra,
    /// `θ` of every basis element.
    pub theta: Vec<Elem>,
    pub i_m: Vec<usize>,
    pub i_n: Vec<usize>,
    pub i_s: Vec<usize>,
    pub i_nil: Vec<usize>,
    pub i_1: Vec<usize>,
    pub i_2: Vec<usize>,
    /// Indices `j` of irreducible and reducible simple restricted roots.
    pub j_1: Vec<usize>,
    pub j_2: Vec<usize>,
    /// `(i_j, i_j′)` for each `j` in `j_2`, in the same order.
    pub pairs: Vec<(usize, usize)>,
    /// `β_j` as vectors of `h*` in simple-root coordinates.
    pub simple_restricted: Vec<Vec<Rat>>,
    /// Simple roots lying over each `β_j`.
    pub classes: Vec<Vec<usize>>,
    /// `Δ_low(β_j)`.
    pub lowest: Vec<Vec<Vec<i64>>>,
    /// Restricted roots in `β` coordinates, positive ones first.
    pub restricted_roots: Vec<Vec<i64>>,
    pub positive_m_roots: Vec<Vec<i64>>,
    pub positive_n_roots: Vec<Vec<i64>>,
    /// Basis of `h_m` in the coordinates `h_1, …, h_ℓ`: the `h_i` for
    /// `i ∈ I_m`, then `h_{i_j} − h_{i_j′}` for `j ∈ J_2`.
    pub h_m_basis: Vec<Vec<i64>>,
    /// Basis of `a` in the coordinates `h_1, …, h_ℓ`.
    pub a_basis: Vec<Vec<Rat>>,
    /// Regular element of `a` with `β_j(w) = j`.
    pub w: Vec<Rat>,
    /// Basis of the center of `m`, in the coordinates `h_1, …, h_ℓ`.
    pub center_basis: Vec<Vec<Rat>>,
    pub k_basis: Vec<Elem>,
    pub m_basis: Vec<Elem>,
    pub n_basis: Vec<Elem>,
    pub n_minus_basis: Vec<Elem>,
    pub n_star_basis: Vec<Elem>,
    pub split_rank: usize,
    pub center_dim: usize,
    /// `z_i` for `i ∈ I_n`, normalized for `i ∈ I_s`.
    pub z: BTreeMap<usize, Elem>,
}

fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::int(x)).collect()
}

fn is_negative_root(phi: &[i64]) -> bool {
    phi.iter().all(|&x| x <= 0)
}

fn neg(phi: &[i64]) -> Vec<i64> {
    phi.iter().map(|x| -x).collect()
}

fn to_rats(v: &SVec, n: usize) -> Result<Vec<Rat>> {
    linalg::to_dense(v, n)
        .into_iter()
        .map(|x| x.to_rat().ok_or_else(|| Error::StructureViolation(format!("expected a rational vector, found {x}"))))
        .collect()
}

/// Rational kernel of an integer or rational matrix given by rows.
fn rat_kernel(rows: &[Vec<Rat>], ncols: usize) -> Result<Vec<Vec<Rat>>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(linalg::from_dense(&r.iter().cloned().map(Scalar::rat).collect::<Vec<_>>()));
    }
    e.kernel().iter().map(|v| to_rats(v, ncols)).collect()
}

/// Matrix whose columns are the given elements.
pub fn columns_matrix(cols: &[Elem], nrows: usize) -> SMat {
    SMat::from_columns(&cols.iter().map(|c| linalg::from_dense(c)).collect::<Vec<_>>(), nrows)
}

impl RealFormData {
    pub fn rank(&self) -> usize {
        self.g.rank()
    }

    /// `Tφ` for a vector in simple-root coordinates.
    pub fn t(&self, phi: &[i64]) -> Vec<i64> {
        apply_root_map(&self.spec.root_map, phi)
    }

    pub fn theta_elem(&self, x: &[Scalar]) -> Elem {
        let mut out = self.g.zero();
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                for (k, y) in self.theta[b].iter().enumerate() {
                    if !y.is_zero() {
                        out[k] += &(c * y);
                    }
                }
            }
        }
        out
    }

    pub fn is_m_root(&self, phi: &[i64]) -> bool {
        self.t(phi) == phi
    }

    /// `p(φ)` in the basis of simple restricted roots.
    pub fn restrict(&self, phi: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.split_rank];
        for (j, class) in self.classes.iter().enumerate() {
            for &i in class {
                out[j] += phi[i];
            }
        }
        out
    }

    /// `p(φ) = (φ − Tφ)/2` as a vector of `h*` in simple-root coordinates.
    pub fn restrict_vector(&self, phi: &[i64]) -> Vec<Rat> {
        let t = self.t(phi);
        phi.iter().zip(&t).map(|(a, b)| Rat::new(a - b, 2)).collect()
    }

    /// Element of `h` with the given coordinates in `h_1, …, h_ℓ`.
    pub fn cartan_int(&self, coords: &[i64]) -> Elem {
        self.g.cartan_elem(&coords.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>())
    }

    pub fn cartan_rat(&self, coords: &[Rat]) -> Elem {
        self.g.cartan_elem(&coords.iter().cloned().map(Scalar::rat).collect::<Vec<_>>())
    }

    /// The basis of `h_m` as algebra elements.
    pub fn h_m_elems(&self) -> Vec<Elem> {
        self.h_m_basis.iter().map(|y| self.cartan_int(y)).collect()
    }

    /// Values of a weight (fundamental coordinates) on the basis of `h_m`.
    pub fn weight_on_h_m(&self, lambda: &[i64]) -> Vec<i64> {
        self.h_m_basis.iter().map(|y| y.iter().zip(lambda).map(|(a, b)| a * b).sum()).collect()
    }

    /// Values of a root (simple-root coordinates) on the basis of `h_m`.
    pub fn root_on_h_m(&self, phi: &[i64]) -> Vec<i64> {
        self.weight_on_h_m(&self.g.rs.root_to_weight(phi))
    }

    /// `η^{-1}(γ)` in the coordinates `h_1, …, h_ℓ`, for `γ ∈ h*` in simple-root coordinates.
    pub fn eta_inverse(&self, gamma: &[Rat]) -> Vec<Rat> {
        let form = &self.g.rs.form;
        gamma.iter().enumerate().map(|(i, c)| &(c * &form[i][i]) / &Rat::int(2)).collect()
    }

    /// Positive restricted roots in `β` coordinates.
    pub fn positive_restricted_roots(&self) -> Vec<Vec<i64>> {
        self.restricted_roots.iter().filter(|g| g.iter().all(|&x| x >= 0)).cloned().collect()
    }

    /// Simple roots `α_i` with `i ∈ I_m`, as generators `e_{α_i}` of `m_+`.
    pub fn m_plus_generators(&self) -> Vec<Elem> {
        self.i_m.iter().map(|&i| self.g.e(&self.g.rs.simple_root(i))).collect()
    }

    pub fn summary(&self) -> RealFormSummary {
        RealFormSummary {
            name: self.spec.label(),
            cartan_matrix: self.spec.cartan_matrix.clone(),
            dim_g: self.g.dim(),
            dim_k: self.k_basis.len(),
            dim_m: self.m_basis.len(),
            dim_a: self.a_basis.len(),
            dim_n: self.n_basis.len(),
            split_rank: self.split_rank,
            center_dim: self.center_dim,
            i_m: one_based(&self.i_m),
            i_n: one_based(&self.i_n),
            i_s: one_based(&self.i_s),
            i_nil: one_based(&self.i_nil),
            i_1: one_based(&self.i_1),
            i_2: one_based(&self.i_2),
            j_1: one_based(&self.j_1),
            j_2: one_based(&self.j_2),
            pairs: self.pairs.iter().map(|(a, b)| (a + 1, b + 1)).collect(),
            positive_restricted_roots: self.positive_restricted_roots(),
            h_m_basis: self.h_m_basis.clone(),
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn apply_root_map(t: &[Vec<i64>], phi: &[i64]) -> Vec<i64> {
    let n = phi.len();
    (0..n).map(|j| (0..n).map(|i| phi[i] * t[i][j]).sum()).collect()
}

/// Images of the basis under the extension of the generator data.
fn extend_theta(g: &LieAlgebra, spec: &ThetaSpec) -> Result<Vec<Elem>> {
    let rs = &g.rs;
    let n = rs.rank();
    let np = rs.num_positive();
    let t = &spec.root_map;
    let mut pos: Vec<Elem> = Vec::with_capacity(np);
    let mut negs: Vec<Elem> = Vec::with_capacity(np);
    for (k, phi) in rs.positive.iter().enumerate() {
        match &g.recipes[k] {
            None => {
                let i = phi.iter().position(|&x| x == 1).expect("simple root");
                let ti = apply_root_map(t, phi);
                if !rs.is_root(&ti) {
                    return Err(Error::NotInvolution(format!("T maps α_{} to {ti:?}, which is not a root", i + 1)));
                }
                pos.push(elem_scale(&g.e(&ti), &spec.signs_plus[i]));
                negs.push(elem_scale(&g.e(&neg(&ti)), &spec.signs_minus[i]));
            }
            Some(r) => {
                let i = r.simple;
                let p = elem_scale(&g.bracket(&pos[i], &pos[r.rest]), &Scalar::rat(r.coeff_pos.clone()));
                let m = elem_scale(&g.bracket(&negs[i], &negs[r.rest]), &Scalar::rat(r.coeff_neg.clone()));
                pos.push(p);
                negs.push(m);
            }
        }
    }
    let mut out = pos;
    out.extend(negs);
    for i in 0..n {
        let ti = apply_root_map(t, &rs.simple_root(i));
        let c: Vec<Scalar> = rs.coroot(&ti).into_iter().map(Scalar::int).collect();
        out.push(g.cartan_elem(&c));
    }
    Ok(out)
}

fn check_root_map(rs: &RootSystem, t: &[Vec<i64>]) -> Result<()> {
    let n = rs.rank();
    for i in 0..n {
        let tt = apply_root_map(t, &apply_root_map(t, &rs.simple_root(i)));
        if tt != rs.simple_root(i) {
            return Err(Error::NotInvolution(format!("T² α_{} = {tt:?}", i + 1)));
        }
    }
    for phi in rs.roots() {
        let tp = apply_root_map(t, &phi);
        if !rs.is_root(&tp) {
            return Err(Error::NotInvolution(format!("T maps the root {phi:?} to {tp:?}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let a = rat_vec(&apply_root_map(t, &rs.simple_root(i)));
            let b = rat_vec(&apply_root_map(t, &rs.simple_root(j)));
            if rs.inner_roots(&a, &b) != rs.form[i][j] {
                return Err(Error::NotInvolution(format!("T does not preserve (α_{}, α_{})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn check_automorphism(g: &LieAlgebra, theta: &[Elem]) -> Result<()> {
    let dim = g.dim();
    let apply = |x: &Elem| -> Elem {
        let mut out = g.zero();
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = elem_add(&out, &elem_scale(&theta[b], c));
            }
        }
        out
    };
    for a in 0..dim {
        for b in a + 1..dim {
            let lhs = apply(&g.bracket(&g.basis(a), &g.basis(b)));
            let rhs = g.bracket(&theta[a], &theta[b]);
            if lhs != rhs {
                return Err(Error::InconsistentSigns(format!(
                    "θ does not preserve the bracket of basis elements {a} and {b}"
                )));
            }
        }
    }
    for a in 0..dim {
        if apply(&theta[a]) != g.basis(a) {
            return Err(Error::NotInvolution(format!("θ² differs from the identity on basis element {a}")));
        }
    }
    Ok(())
}

/// Solves `M x = b` for an invertible square rational matrix.
fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Vec<Rat> {
    let inv = invert(m);
    inv.iter().map(|r| r.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| &acc + &(x * y))).collect()
}

/// Span of `{x}` under repeated brackets with the given elements.
pub fn closure_under(g: &LieAlgebra, start: &[Elem], ops: &[Elem]) -> Vec<Elem> {
    let mut ech = Echelon::new(g.dim());
    let mut out = Vec::new();
    let mut queue: Vec<Elem> = start.to_vec();
    while let Some(x) = queue.pop() {
        if elem_is_zero(&x) || !ech.insert(linalg::from_dense(&x)) {
            continue;
        }
        for o in ops {
            queue.push(g.bracket(o, &x));
        }
        out.push(x);
    }
    out
}

/// Normalized `z = c e_{−φ} + θ(c e_{−φ})` for a positive root with `Tφ = −φ`,
/// where `c² d = 1` for `θ(e_{−φ}) = d e_φ`. Certifies `θz = z` and `(z, z) = (h_φ, h_φ)`.
pub fn normalized_z(rf: &RealFormData, phi: &[i64]) -> Result<Elem> {
    let g = &rf.g;
    if rf.t(phi) != neg(phi) {
        return Err(Error::NormalizationFailure(format!("{phi:?} is not a real root")));
    }
    let fneg = g.e(&neg(phi));
    let image = rf.theta_elem(&fneg);
    let d = image[g.root_basis_index(phi)].clone();
    let c = if d == Scalar::one() {
        Scalar::one()
    } else if d == Scalar::int(-1) {
        Scalar::i()
    } else {
        return Err(Error::NormalizationFailure(format!(
            "θ(e_-φ) = ({d}) e_φ for φ = {phi:?}; no Gaussian rational c with c² = 1/d"
        )));
    };
    let scaled = elem_scale(&fneg, &c);
    let z = elem_add(&scaled, &rf.theta_elem(&scaled));
    if rf.theta_elem(&z) != z {
        return Err(Error::NormalizationFailure(format!("z for {phi:?} is not fixed by θ")));
    }
    let h = g.coroot_elem(phi);
    if g.killing_form(&z, &z) != g.killing_form(&h, &h) {
        return Err(Error::NormalizationFailure(format!("(z, z) ≠ (h, h) for {phi:?}")));
    }
    Ok(z)
}

pub fn build_real_form(g: &LieAlgebra, spec: &ThetaSpec) -> Result<RealFormData> {
    spec.validate_shape()?;
    let rs = &g.rs;
    let n = rs.rank();
    if spec.cartan_matrix != rs.cartan.entries {
        return Err(Error::Parse("the ThetaSpec Cartan matrix differs from the algebra's".into()));
    }
    check_root_map(rs, &spec.root_map)?;
    let theta = extend_theta(g, spec)?;
    check_automorphism(g, &theta)?;
    let dim = g.dim();
    let t = |phi: &[i64]| apply_root_map(&spec.root_map, phi);

    // θ on h, in the coordinates h_1, …, h_ℓ (column i is θ(h_i)).
    let theta_h: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..n).map(|i| theta[g.h_index(i)][g.h_index(r)].to_rat().expect("θ is rational on h")).collect())
        .collect();
    let shifted = |s: i64| -> Vec<Vec<Rat>> {
        (0..n)
            .map(|r| (0..n).map(|c| &theta_h[r][c] + &Rat::int(if r == c { s } else { 0 })).collect())
            .collect()
    };
    let a_basis = rat_kernel(&shifted(1), n)?;
    let h_m_dim = rat_kernel(&shifted(-1), n)?.len();
    let split_rank = a_basis.len();
    let a_elems: Vec<Elem> =
        a_basis.iter().map(|v| g.cartan_elem(&v.iter().cloned().map(Scalar::rat).collect::<Vec<_>>())).collect();

    // Maximal splitness: the centralizer of a in p is a.
    let theta_mat = columns_matrix(&theta, dim);
    let mut blocks = vec![theta_mat.add(&SMat::identity(dim))];
    for x in &a_elems {
        blocks.push(g.ad(x));
    }
    let stacked = SMat::vstack(&blocks.iter().collect::<Vec<_>>());
    let cent_p = linalg::kernel(&stacked).len();
    if cent_p != split_rank {
        return Err(Error::NotMaximallySplit(format!(
            "the centralizer of a in p has dimension {cent_p}, but dim a = {split_rank}"
        )));
    }

    let i_m: Vec<usize> = (0..n).filter(|&i| t(&rs.simple_root(i)) == rs.simple_root(i)).collect();
    let i_n: Vec<usize> = (0..n).filter(|i| !i_m.contains(i)).collect();
    let i_s: Vec<usize> = (0..n).filter(|&i| t(&rs.simple_root(i)) == neg(&rs.simple_root(i))).collect();
    let i_nil: Vec<usize> = i_n.iter().copied().filter(|i| !i_s.contains(i)).collect();
    let positive_m_roots: Vec<Vec<i64>> = rs.positive.iter().filter(|p| t(p) == **p).cloned().collect();
    let positive_n_roots: Vec<Vec<i64>> = rs.positive.iter().filter(|p| t(p) != **p).cloned().collect();
    for phi in &positive_n_roots {
        if !is_negative_root(&t(phi)) {
            return Err(Error::IncompatiblePositivity(format!("T maps the positive root {phi:?} outside m to {:?}", t(phi))));
        }
    }
    for phi in &positive_m_roots {
        let x = g.e(phi);
        if !elem_is_zero(&elem_sub(&rf_theta(&theta, g, &x), &x)) {
            return Err(Error::NotMaximallySplit(format!("θ does not fix e_φ for the m-root {phi:?}")));
        }
    }

    // Simple restricted roots.
    let mut simple_restricted: Vec<Vec<Rat>> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &i_n {
        let a = rs.simple_root(i);
        let ta = t(&a);
        let p: Vec<Rat> = a.iter().zip(&ta).map(|(x, y)| Rat::new(x - y, 2)).collect();
        match simple_restricted.iter().position(|b| *b == p) {
            Some(j) => classes[j].push(i),
            None => {
                simple_restricted.push(p);
                classes.push(vec![i]);
            }
        }
    }
    if simple_restricted.len() != split_rank {
        return Err(Error::IncompatiblePositivity(format!(
            "{} distinct restrictions of simple roots, but dim a = {split_rank}",
            simple_restricted.len()
        )));
    }
    // Values β_j(a_k), with α_i(h) = Σ_l h_l a_{il}.
    let beta_on = |b: &[Rat], h: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..n {
            if b[i].is_zero() {
                continue;
            }
            for l in 0..n {
                acc = &acc + &(&(&b[i] * &h[l]) * &Rat::int(rs.cartan.a(i, l)));
            }
        }
        acc
    };
    let mmat: Vec<Vec<Rat>> =
        simple_restricted.iter().map(|b| a_basis.iter().map(|a| beta_on(b, a)).collect()).collect();
    if split_rank > 0 && rat_kernel(&mmat, split_rank)?.len() != 0 {
        return Err(Error::IncompatiblePositivity("restrictions of the simple roots are linearly dependent".into()));
    }
    let targets: Vec<Rat> = (1..=split_rank as i64).map(Rat::int).collect();
    let x = if split_rank > 0 { solve(&mmat, &targets) } else { Vec::new() };
    let mut w = vec![Rat::zero(); n];
    for (xk, a) in x.iter().zip(&a_basis) {
        for l in 0..n {
            w[l] = &w[l] + &(xk * &a[l]);
        }
    }
    for phi in &positive_n_roots {
        if beta_on(&rat_vec(phi), &w) <= Rat::zero() {
            return Err(Error::IncompatiblePositivity(format!("the root {phi:?} is not positive on w")));
        }
    }

    let mut rf = RealFormData {
        spec: spec.clone(),
        g: g.clone(),
        theta,
        i_m,
        i_n,
        i_s,
        i_nil,
        i_1: Vec::new(),
        i_2: Vec::new(),
        j_1: Vec::new(),
        j_2: Vec::new(),
        pairs: Vec::new(),
        simple_restricted,
        classes,
        lowest: Vec::new(),
        restricted_roots: Vec::new(),
        positive_m_roots,
        positive_n_roots,
        h_m_basis: Vec::new(),
        a_basis,
        w,
        center_basis: Vec::new(),
        k_basis: Vec::new(),
        m_basis: Vec::new(),
        n_basis: Vec::new(),
        n_minus_basis: Vec::new(),
        n_star_basis: Vec::new(),
        split_rank,
        center_dim: 0,
        z: BTreeMap::new(),
    };

    let mut res: BTreeSet<Vec<i64>> = BTreeSet::new();
    for phi in &rf.positive_n_roots {
        res.insert(rf.restrict(phi));
    }
    let mut pos: Vec<Vec<i64>> = res.into_iter().collect();
    pos.sort_by_key(|g| (g.iter().sum::<i64>(), g.clone()));
    rf.restricted_roots = pos.iter().cloned().chain(pos.iter().map(|g| neg(g))).collect();

    // Lowest weights and the pairing.
    for j in 0..split_rank {
        let mut gamma = vec![0; split_rank];
        gamma[j] = 1;
        let low = lowest_weights(&rf, &gamma);
        if !(1..=2).contains(&low.len()) {
            return Err(Error::StructureViolation(format!(
                "Δ_low(β_{}) has {} elements; only one or two are possible",
                j + 1,
                low.len()
            )));
        }
        if low.len() == 1 {
            rf.j_1.push(j);
        } else {
            let mut idx = Vec::new();
            for psi in &low {
                let i = (RootSystem::height(psi) == 1)
                    .then(|| psi.iter().position(|&x| x == 1))
                    .flatten()
                    .ok_or_else(|| Error::StructureViolation(format!("Δ_low(β_{}) contains the non-simple root {psi:?}", j + 1)))?;
                idx.push(i);
            }
            idx.sort();
            rf.j_2.push(j);
            rf.pairs.push((idx[0], idx[1]));
        }
        rf.lowest.push(low);
    }
    for &i in &rf.i_n {
        let j = rf.classes.iter().position(|c| c.contains(&i)).expect("every i in I_n has a class");
        if rf.j_1.contains(&j) {
            rf.i_1.push(i);
        } else {
            rf.i_2.push(i);
        }
    }

    let mut h_m_basis: Vec<Vec<i64>> = rf.i_m.iter().map(|&i| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }).collect();
    for &(a, b) in &rf.pairs {
        let mut v = vec![0; n];
        v[a] = 1;
        v[b] = -1;
        h_m_basis.push(v);
    }
    if h_m_basis.len() != h_m_dim {
        return Err(Error::StructureViolation(format!(
            "{} candidate basis vectors for h_m, but dim h_m = {h_m_dim}",
            h_m_basis.len()
        )));
    }
    rf.h_m_basis = h_m_basis;

    let hm = rf.h_m_elems();
    rf.n_basis = rf.positive_n_roots.iter().map(|p| g.e(p)).collect();
    rf.n_minus_basis = rf.positive_n_roots.iter().map(|p| g.e(&neg(p))).collect();
    rf.n_star_basis = rf.n_minus_basis.iter().map(|f| elem_add(f, &rf.theta_elem(f))).collect();
    let mut m_basis = hm.clone();
    for p in &rf.positive_m_roots {
        m_basis.push(g.e(p));
        m_basis.push(g.e(&neg(p)));
    }
    rf.m_basis = m_basis;
    let mut k_basis = rf.m_basis.clone();
    k_basis.extend(rf.n_star_basis.iter().cloned());
    rf.k_basis = k_basis;

    // Center of m.
    let mdim = rf.m_basis.len();
    let mut cols: Vec<SVec> = Vec::with_capacity(mdim);
    for x in &rf.m_basis {
        let mut col: SVec = Vec::new();
        for (l, y) in rf.m_basis.iter().enumerate() {
            for (k, c) in linalg::from_dense(&g.bracket(x, y)) {
                col.push((l * dim + k, c));
            }
        }
        cols.push(col);
    }
    let cmat = SMat::from_columns(&cols, mdim * dim);
    let mut center_basis = Vec::new();
    for v in linalg::kernel(&cmat) {
        let mut x = g.zero();
        for (k, c) in &v {
            x = elem_add(&x, &elem_scale(&rf.m_basis[*k], c));
        }
        let coords: Vec<Scalar> = (0..n).map(|i| x[g.h_index(i)].clone()).collect();
        if g.cartan_elem(&coords) != x {
            return Err(Error::StructureViolation("the center of m is not contained in h".into()));
        }
        center_basis.push(
            coords
                .into_iter()
                .map(|c| c.to_rat().ok_or_else(|| Error::StructureViolation("center of m is not rational".into())))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    rf.center_dim = center_basis.len();
    rf.center_basis = center_basis;

    for &i in &rf.i_s.clone() {
        let z = normalized_z(&rf, &rs.simple_root(i))?;
        rf.z.insert(i, z);
    }
    for &i in &rf.i_nil.clone() {
        let f = g.e(&neg(&rs.simple_root(i)));
        let z = elem_add(&f, &rf.theta_elem(&f));
        rf.z.insert(i, z);
    }
    Ok(rf)
}

fn rf_theta(theta: &[Elem], g: &LieAlgebra, x: &[Scalar]) -> Elem {
    let mut out = g.zero();
    for (b, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = elem_add(&out, &elem_scale(&theta[b], c));
        }
    }
    out
}

/// Roots `ψ` with `p(ψ) = γ`.
pub fn restricted_preimage(rf: &RealFormData, gamma: &[i64]) -> Vec<Vec<i64>> {
    rf.g.rs.roots().into_iter().filter(|p| !rf.is_m_root(p) && rf.restrict(p) == gamma).collect()
}

/// The `m`-module `g(γ)`.
pub fn restricted_root_module(rf: &RealFormData, gamma: &[i64]) -> Result<RestrictedRootModule> {
    let g = &rf.g;
    let roots = restricted_preimage(rf, gamma);
    let idx: Vec<usize> = roots.iter().map(|p| g.root_basis_index(p)).collect();
    let mut m_action = Vec::with_capacity(rf.m_basis.len());
    for x in &rf.m_basis {
        let mut cols = Vec::with_capacity(roots.len());
        for psi in &roots {
            let y = g.bracket(x, &g.e(psi));
            let mut col: SVec = Vec::new();
            for (k, c) in y.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let pos = idx.iter().position(|&b| b == k).ok_or_else(|| {
                    Error::StructureViolation(format!("m does not preserve g(γ) for γ = {gamma:?}"))
                })?;
                col.push((pos, c.clone()));
            }
            col.sort_by_key(|(k, _)| *k);
            cols.push(col);
        }
        m_action.push(SMat::from_columns(&cols, roots.len()));
    }
    let h_m_weights = roots.iter().map(|p| rf.root_on_h_m(p)).collect();
    Ok(RestrictedRootModule { gamma: gamma.to_vec(), roots, m_action, h_m_weights })
}

/// `Δ_low(γ)`: roots over `γ` whose root vectors are killed by `e_{−α}`, `α ∈ Π_m`.
pub fn lowest_weights(rf: &RealFormData, gamma: &[i64]) -> Vec<Vec<i64>> {
    let g = &rf.g;
    let lowering: Vec<Elem> = rf.i_m.iter().map(|&i| g.e(&neg(&g.rs.simple_root(i)))).collect();
    restricted_preimage(rf, gamma)
        .into_iter()
        .filter(|psi| {
            let e = g.e(psi);
            lowering.iter().all(|f| elem_is_zero(&g.bracket(f, &e)))
        })
        .collect()
}

/// Irreducible and reducible simple restricted roots, and the pairs over the latter.
pub fn classify_simple_restricted(rf: &RealFormData) -> (Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
    (rf.j_1.clone(), rf.j_2.clone(), rf.pairs.clone())
}

/// The basis `{h_i : i ∈ I_m} ∪ {h_{i_j} − h_{i_j′} : j ∈ J_2}` of `h_m`,
/// after certifying that it is one.
pub fn h_m_basis(rf: &RealFormData) -> Result<Vec<Vec<i64>>> {
    check_h_m_basis(rf)?;
    Ok(rf.h_m_basis.clone())
}

fn check_h_m_basis(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    let n = rf.rank();
    for y in rf.h_m_elems() {
        ensure(rf.theta_elem(&y) == y, || format!("{y:?} is not fixed by θ"))?;
    }
    let vs: Vec<SVec> = rf.h_m_elems().iter().map(|y| linalg::from_dense(y)).collect();
    ensure(linalg::rank_of(&vs, g.dim()) == rf.h_m_basis.len(), || "h_m basis is dependent".into())?;
    ensure(rf.h_m_basis.len() + rf.split_rank == n, || "h_m basis does not span h_m".into())
}

/// Orthogonal projection of `h` (coordinates `h_1, …, h_ℓ`) onto the center of `m`.
pub fn project_center(rf: &RealFormData, h: &[Rat]) -> Vec<Rat> {
    let n = rf.rank();
    let g = &rf.g;
    let b = |x: &[Rat], y: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                let k = g.killing[g.h_index(i)][g.h_index(j)];
                if k != 0 {
                    acc = &acc + &(&(&x[i] * &y[j]) * &Rat::int(k));
                }
            }
        }
        acc
    };
    let c = &rf.center_basis;
    if c.is_empty() {
        return vec![Rat::zero(); n];
    }
    let gram: Vec<Vec<Rat>> = c.iter().map(|x| c.iter().map(|y| b(x, y)).collect()).collect();
    let rhs: Vec<Rat> = c.iter().map(|x| b(x, h)).collect();
    let coef = solve(&gram, &rhs);
    let mut out = vec![Rat::zero(); n];
    for (k, x) in coef.iter().zip(c) {
        for i in 0..n {
            out[i] = &out[i] + &(k * &x[i]);
        }
    }
    out
}

fn dims_add_up(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    let dim = g.dim();
    let theta_mat = columns_matrix(&rf.theta, dim);
    let k_dim = linalg::kernel(&theta_mat.sub(&SMat::identity(dim))).len();
    ensure(rf.k_basis.len() == k_dim, || format!("k basis has {} vectors, fixed space {}", rf.k_basis.len(), k_dim))?;
    for x in &rf.k_basis {
        ensure(rf.theta_elem(x) == *x, || "a k basis vector is not fixed by θ".into())?;
    }
    let mut all: Vec<SVec> = rf.k_basis.iter().map(|x| linalg::from_dense(x)).collect();
    all.extend(rf.a_basis.iter().map(|a| linalg::from_dense(&rf.cartan_rat(a))));
    all.extend(rf.n_basis.iter().map(|x| linalg::from_dense(x)));
    ensure(all.len() == dim && linalg::rank_of(&all, dim) == dim, || {
        format!("dim k + dim a + dim n = {} and g = k + a + n fails", all.len())
    })
}

fn centralizer_of_a(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    let dim = g.dim();
    let blocks: Vec<SMat> = rf.a_basis.iter().map(|a| g.ad(&rf.cartan_rat(a))).collect();
    let cent = if blocks.is_empty() { dim } else { linalg::kernel(&SMat::vstack(&blocks.iter().collect::<Vec<_>>())).len() };
    let mut ma: Vec<SVec> = rf.m_basis.iter().map(|x| linalg::from_dense(x)).collect();
    ma.extend(rf.a_basis.iter().map(|a| linalg::from_dense(&rf.cartan_rat(a))));
    ensure(linalg::rank_of(&ma, dim) == ma.len() && ma.len() == cent, || {
        format!("m + a has dimension {}, centralizer of a has dimension {cent}", ma.len())
    })?;
    for x in &rf.m_basis {
        for a in &rf.a_basis {
            ensure(elem_is_zero(&g.bracket(&rf.cartan_rat(a), x)), || "m does not commute with a".into())?;
        }
    }
    Ok(())
}

fn in_a(rf: &RealFormData, x: &[Scalar]) -> bool {
    let g = &rf.g;
    let n = rf.rank();
    let coords: Vec<Scalar> = (0..n).map(|i| x[g.h_index(i)].clone()).collect();
    if g.cartan_elem(&coords) != x {
        return false;
    }
    rf.theta_elem(x) == elem_scale(x, &Scalar::int(-1))
}

fn negative_root_brackets(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    let rs = &g.rs;
    for p in &rs.positive {
        let phi = neg(p);
        let e = g.e(&phi);
        let z = g.bracket(&e, &rf.theta_elem(&e));
        ensure(in_a(rf, &z), || format!("[e_φ, θe_φ] is not in a for φ = {phi:?}"))?;
        let real = rf.t(&phi) == neg(&phi);
        ensure(!elem_is_zero(&z) == real, || format!("[e_φ, θe_φ] ≠ 0 does not match Tφ = −φ for φ = {phi:?}"))?;
        if real {
            let h = g.coroot_elem(&phi);
            let k = g.h_index(rs.coroot(p).iter().position(|&c| c != 0).unwrap());
            let ratio = &z[k] * &h[k].inv();
            ensure(elem_scale(&h, &ratio) == z, || format!("[e_φ, θe_φ] is not a multiple of h_φ for φ = {phi:?}"))?;
        }
        let s: Vec<i64> = phi.iter().zip(rf.t(&phi)).map(|(a, b)| a + b).collect();
        ensure(!rs.is_root(&s), || format!("φ + Tφ is a root for φ = {phi:?}"))?;
    }
    Ok(())
}

fn scaled_unit_sphere_identity(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    for gamma in &rf.restricted_roots {
        let roots = restricted_preimage(rf, gamma);
        let wg = rf.cartan_rat(&rf.eta_inverse(&rf.restrict_vector(&roots[0])));
        let mut samples: Vec<Elem> = roots.iter().map(|p| g.e(p)).collect();
        let mut mixed = g.zero();
        for (k, p) in roots.iter().enumerate() {
            mixed = elem_add(&mixed, &elem_scale(&g.e(p), &Scalar::int(k as i64 + 1)));
        }
        samples.push(mixed);
        for e in samples {
            let te = rf.theta_elem(&e);
            let lhs = g.bracket(&te, &e);
            let rhs = elem_scale(&wg, &(-&g.killing_form(&te, &e)));
            ensure(lhs == rhs, || format!("[θe, e] ≠ −B(θe, e) w_γ for γ = {gamma:?}"))?;
        }
    }
    Ok(())
}

fn lowest_weight_decomposition(rf: &RealFormData) -> Result<()> {
    let g = &rf.g;
    let raise = rf.m_plus_generators();
    for gamma in &rf.restricted_roots {
        let module = restricted_root_module(rf, gamma)?;
        let mut seen = BTreeSet::new();
        for w in &module.h_m_weights {
            ensure(seen.insert(w.clone()), || format!("h_m-weight {w:?} repeats in g(γ) for γ = {gamma:?}"))?;
        }
        let low = lowest_weights(rf, gamma);
        ensure((1..=2).contains(&low.len()), || format!("|Δ_low(γ)| = {} for γ = {gamma:?}", low.len()))?;
        let mut comps: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut total = 0;
        let mut all: Vec<SVec> = Vec::new();
        for psi in &low {
            let span = closure_under(g, &[g.e(psi)], &raise);
            total += span.len();
            let mut ech = Echelon::new(g.dim());
            for v in &span {
                ech.insert(linalg::from_dense(v));
                all.push(linalg::from_dense(v));
            }
            comps.push(module.roots.iter().filter(|p| ech.contains(&linalg::from_dense(&g.e(p)))).cloned().collect());
        }
        let d = module.roots.len();
        ensure(total == d && linalg::rank_of(&all, g.dim()) == d, || {
            format!("the U(m_+) spans of lowest vectors do not decompose g(γ) for γ = {gamma:?}")
        })?;
        let weights = |rs: &[Vec<i64>]| -> BTreeSet<Vec<i64>> { rs.iter().map(|p| rf.root_on_h_m(p)).collect() };
        let negate = |s: &BTreeSet<Vec<i64>>| -> BTreeSet<Vec<i64>> { s.iter().map(|w| neg(w)).collect() };
        if comps.len() == 1 {
            let ws = weights(&comps[0]);
            ensure(ws == negate(&ws), || format!("weights of g(γ) are not symmetric for γ = {gamma:?}"))?;
        } else {
            let (a, b) = (weights(&comps[0]), weights(&comps[1]));
            ensure(a == negate(&b), || format!("component weights are not opposite for γ = {gamma:?}"))?;
        }
    }
    Ok(())
}

fn simple_roots_partition(rf: &RealFormData) -> Result<()> {
    let mut covered: Vec<usize> = Vec::new();
    for (j, low) in rf.lowest.iter().enumerate() {
        let mut idx: Vec<usize> = Vec::new();
        for psi in low {
            ensure(RootSystem::height(psi) == 1, || format!("Δ_low(β_{}) contains {psi:?}", j + 1))?;
            idx.push(psi.iter().position(|&x| x == 1).unwrap());
        }
        idx.sort();
        ensure(idx == rf.classes[j], || format!("Δ_low(β_{}) differs from the simple roots over β_{}", j + 1, j + 1))?;
        covered.extend(idx);
    }
    covered.sort();
    let before = covered.len();
    covered.dedup();
    ensure(before == covered.len() && covered == rf.i_n, || "the sets Δ_low(β_j) do not partition Π_n".into())
}

fn center_identities(rf: &RealFormData) -> Result<()> {
    let n = rf.rank();
    ensure(rf.i_n.len() == rf.split_rank + rf.center_dim, || {
        format!("|Π_n| = {} but ℓ_o + dim c = {}", rf.i_n.len(), rf.split_rank + rf.center_dim)
    })?;
    ensure(rf.j_2.len() == rf.center_dim, || format!("|J_2| = {} but dim c = {}", rf.j_2.len(), rf.center_dim))?;
    let unit = |i: usize| -> Vec<Rat> { (0..n).map(|k| Rat::int(i64::from(k == i))).collect() };
    let mut diffs: Vec<SVec> = Vec::new();
    for &(a, b) in &rf.pairs {
        let pa = project_center(rf, &unit(a));
        let pb = project_center(rf, &unit(b));
        let npb: Vec<Rat> = pb.iter().map(|x| -x).collect();
        ensure(pa == npb, || format!("p_c(h_{}) ≠ −p_c(h_{})", a + 1, b + 1))?;
        let d: Vec<Scalar> = pa.iter().zip(&pb).map(|(x, y)| Scalar::rat(x - y)).collect();
        diffs.push(linalg::from_dense(&d));
    }
    ensure(linalg::rank_of(&diffs, n) == rf.center_dim, || "p_c(h_{i_j} − h_{i_j′}) is not a basis of c".into())?;
    for &i in &rf.i_1 {
        ensure(project_center(rf, &unit(i)).iter().all(Rat::is_zero), || format!("p_c(h_{}) ≠ 0", i + 1))?;
    }
    ensure(rf.i_s.iter().all(|i| rf.i_1.contains(i)), || "I_s is not contained in I_1".into())
}

fn classification_partitions(rf: &RealFormData) -> Result<()> {
    let n = rf.rank();
    let mut all: Vec<usize> = rf.i_m.iter().chain(&rf.i_n).copied().collect();
    all.sort();
    ensure(all == (0..n).collect::<Vec<_>>(), || "I ≠ I_m ⊔ I_n".into())?;
    let mut nn: Vec<usize> = rf.i_1.iter().chain(&rf.i_2).copied().collect();
    nn.sort();
    ensure(nn == rf.i_n, || "I_n ≠ I_1 ⊔ I_2".into())?;
    let mut pairs: Vec<usize> = rf.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    pairs.sort();
    ensure(pairs == rf.i_2, || "the pairs do not partition I_2".into())
}

/// Every structural identity of the real form, each as a named check.
pub fn structure_checks(rf: &RealFormData) -> Vec<Check> {
    vec![
        Check::from_result("g = k + a + n", dims_add_up(rf)),
        Check::from_result("m + a is the centralizer of a", centralizer_of_a(rf)),
        Check::from_result("index sets partition", classification_partitions(rf)),
        Check::from_result("simple roots in n partition by lowest weights", simple_roots_partition(rf)),
        Check::from_result("card of simple roots in n and center of m", center_identities(rf)),
        Check::from_result("h_m basis from I_m and pairs", check_h_m_basis(rf)),
        Check::from_result("negative root vectors bracket into a", negative_root_brackets(rf)),
        Check::from_result("scaled unit sphere bracket", scaled_unit_sphere_identity(rf)),
        Check::from_result("lowest weight decomposition and weight negation", lowest_weight_decomposition(rf)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for name in ThetaSpec::preset_names() {
            let s = ThetaSpec::preset(name).unwrap();
            assert_eq!(ThetaSpec::from_json(&s.to_json()).unwrap(), s);
        }
        assert!(ThetaSpec::from_json(r#"{"preset": "SL2R"}"#).is_ok());
        assert!(ThetaSpec::from_json(r#"{"preset": "nope"}"#).is_err());
    }
}
