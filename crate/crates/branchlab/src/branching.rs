//! The structure of `k`, its irreducible modules, and branching `V_λ` to `k`
//! in two independent ways.
//!
//! The Cartan subalgebra `t` of `k` is `h_m` extended by the normalized
//! elements `z_φ` of a strongly orthogonal set `S` of real roots (`Tφ = −φ`).
//! Its basis is the basis of `h_m` followed by the `z_φ`, and weights of `t`
//! are integer vectors of values on that basis. Positive `k`-roots are those
//! whose value on `x_m = Σ_{φ∈Δ_+(m)} h_φ`, followed by their coordinates, is
//! lexicographically positive.
//!
//! The Kostant path computes `dim Z^λ` for each candidate `k`-type `Z`. The
//! oracle computes the vectors of `V_λ` killed by all positive `k`-root
//! vectors and splits them into joint eigenspaces of `t`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::checks::{ensure, Check};
use crate::chevalley::{elem_add, elem_is_zero, elem_scale, Elem, LieAlgebra};
use crate::error::{Error, Result};
use crate::hwmodule::{build_irrep, HWModule};
use crate::ideal::{q_polynomial, z_vector};
use crate::linalg::{self, SMat, SVec, Span};
use crate::realform::{columns_matrix, normalized_z, RealFormData};
use crate::rootsys::{CartanMatrix, DominantWeight};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Debug)]
pub struct KStructure {
    /// Basis of `k` (the vectors of `RealFormData::k_basis`).
    pub k_basis: Vec<Elem>,
    /// Basis of `t`: the basis of `h_m`, then `z_φ` for `φ ∈ S`.
    pub cartan: Vec<Elem>,
    /// The strongly orthogonal real roots `S`.
    pub real_roots: Vec<Vec<i64>>,
    /// All `k`-roots as values on the basis of `t`.
    pub roots: Vec<Vec<i64>>,
    pub positive: Vec<Vec<i64>>,
    pub simple: Vec<Vec<i64>>,
    /// A root vector for every `k`-root.
    pub root_vectors: BTreeMap<Vec<i64>, Elem>,
    /// `H_β` for the simple roots, in `t` coordinates.
    pub coroots_t: Vec<Vec<Rat>>,
    /// Abstract Chevalley algebra isomorphic to `[k, k]`.
    pub semisimple: LieAlgebra,
    /// Image in `g` of every basis element of `semisimple`.
    pub images: Vec<Elem>,
    /// Basis of the center of `k`, in `t` coordinates.
    pub center_t: Vec<Vec<Rat>>,
    pub center: Vec<Elem>,
    decomposer: Span,
    /// `x_m` in `t` coordinates.
    pub x_m: Vec<Rat>,
}

fn to_svec(x: &[Scalar]) -> SVec {
    linalg::from_dense(x)
}

fn lin_comb(vs: &[Elem], coeffs: &[Rat], dim: usize) -> Elem {
    let mut out = vec![Scalar::zero(); dim];
    for (v, c) in vs.iter().zip(coeffs) {
        if !c.is_zero() {
            out = elem_add(&out, &elem_scale(v, &Scalar::rat(c.clone())));
        }
    }
    out
}

/// `Σ_{i,k} A_ik A_ki`, the trace of `A²`.
pub fn trace_of_square(a: &SMat) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, row) in a.rows.iter().enumerate() {
        for (k, x) in row {
            let y = a.get(*k, i);
            if !y.is_zero() {
                acc += &(x * &y);
            }
        }
    }
    acc
}

/// Bound on the absolute value of real integer eigenvalues, from `tr(A²)`.
pub fn eigen_bound(a: &SMat) -> Result<i64> {
    let t = trace_of_square(a);
    let r = t.to_rat().filter(|r| !r.is_negative()).ok_or_else(|| {
        Error::IdentityViolation(format!("tr(A²) = {t} is not a nonnegative rational; spectrum is not real"))
    })?;
    Ok(r.isqrt_floor())
}

type ModularImages = Option<(Vec<linalg::PVec>, Vec<linalg::PVec>)>;

fn images_with_modular(a: &SMat, basis: &[SVec]) -> (Vec<SVec>, ModularImages) {
    let images: Vec<SVec> = basis.iter().map(|b| a.apply(b)).collect();
    let modular = images
        .iter()
        .map(linalg::svec_mod_p)
        .collect::<Option<Vec<_>>>()
        .zip(basis.iter().map(linalg::svec_mod_p).collect::<Option<Vec<_>>>());
    (images, modular)
}

/// `true` when `(A − c)` is injective on the span, decided over `F_p`.
fn injective_mod_p(modular: &ModularImages, c: i64, len: usize) -> bool {
    modular.as_ref().is_some_and(|(ip, bp)| {
        let neg_c = (linalg::MOD_P as i64 - c).rem_euclid(linalg::MOD_P as i64) as u64;
        let cols: Vec<linalg::PVec> = ip.iter().zip(bp).map(|(x, y)| linalg::paxpy(x, neg_c, y)).collect();
        linalg::rank_mod_p(&cols) == len
    })
}

fn shifted(images: &[SVec], basis: &[SVec], c: i64) -> Vec<SVec> {
    images.iter().zip(basis).map(|(ab, b)| linalg::axpy(ab, &Scalar::int(-c), b)).collect()
}

fn shifts(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|c| [c, -c]))
}

/// Splits the span of `basis` into eigenspaces of `a` with integer eigenvalues
/// in `−bound..=bound`. Returns `None` if they do not fill the span. Shifts of
/// full rank mod p are skipped before any exact elimination.
pub fn split_integer_eigen(a: &SMat, basis: &[SVec], bound: i64) -> Option<Vec<(i64, Vec<SVec>)>> {
    let (images, modular) = images_with_modular(a, basis);
    let mut out = Vec::new();
    let mut total = 0;
    for c in shifts(bound) {
        if total == basis.len() {
            break;
        }
        if injective_mod_p(&modular, c, basis.len()) {
            continue;
        }
        let ker = linalg::kernel(&SMat::from_columns(&shifted(&images, basis, c), a.nrows));
        if ker.is_empty() {
            continue;
        }
        let vecs: Vec<SVec> =
            ker.iter().map(|y| linalg::combine(y.iter().map(|(k, c)| (c, &basis[*k])))).collect();
        total += vecs.len();
        out.push((c, vecs));
    }
    out.sort_by_key(|(c, _)| *c);
    (total == basis.len()).then_some(out)
}

/// Dimensions of the eigenspaces of `a` on the span of `basis`, as in
/// `split_integer_eigen` but by rank alone.
pub fn integer_eigen_dims(a: &SMat, basis: &[SVec], bound: i64) -> Option<Vec<(i64, usize)>> {
    let (images, modular) = images_with_modular(a, basis);
    let mut out = Vec::new();
    let mut total = 0;
    for c in shifts(bound) {
        if total == basis.len() {
            break;
        }
        if injective_mod_p(&modular, c, basis.len()) {
            continue;
        }
        let nullity = basis.len() - linalg::rank_of(&shifted(&images, basis, c), a.nrows);
        if nullity > 0 {
            total += nullity;
            out.push((c, nullity));
        }
    }
    out.sort_by_key(|(c, _)| *c);
    (total == basis.len()).then_some(out)
}

/// Joint eigenspaces of commuting operators with integer eigenvalues.
pub fn joint_eigenspaces(ops: &[SMat], basis: Vec<SVec>) -> Result<Vec<(Vec<i64>, Vec<SVec>)>> {
    let mut parts: Vec<(Vec<i64>, Vec<SVec>)> = vec![(Vec::new(), basis)];
    for a in ops {
        let bound = eigen_bound(a)?;
        let mut next = Vec::new();
        for (vals, space) in parts {
            let split = split_integer_eigen(a, &space, bound)
                .ok_or_else(|| Error::IdentityViolation("operator is not diagonalizable with integer spectrum".into()))?;
            for (c, vecs) in split {
                let mut v = vals.clone();
                v.push(c);
                next.push((v, vecs));
            }
        }
        parts = next;
    }
    Ok(parts)
}

/// Dimensions of the joint eigenspaces of commuting operators.
pub fn joint_eigen_dims(ops: &[SMat], basis: Vec<SVec>) -> Result<Vec<(Vec<i64>, usize)>> {
    let Some((last, rest)) = ops.split_last() else {
        return Ok(vec![(Vec::new(), basis.len())]);
    };
    let bound = eigen_bound(last)?;
    let mut out = Vec::new();
    for (vals, space) in joint_eigenspaces(rest, basis)? {
        let dims = integer_eigen_dims(last, &space, bound)
            .ok_or_else(|| Error::IdentityViolation("operator is not diagonalizable with integer spectrum".into()))?;
        for (c, d) in dims {
            let mut v = vals.clone();
            v.push(c);
            out.push((v, d));
        }
    }
    Ok(out)
}

fn strongly_orthogonal(rf: &RealFormData, a: &[i64], b: &[i64]) -> bool {
    let rs = &rf.g.rs;
    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    !rs.is_root(&s) && !rs.is_root(&d)
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b: &Vec<usize>| b.len().cmp(&a.len()).then(a.cmp(b)));
    all
}

/// Dimension of the centralizer in `k` of the given elements.
fn centralizer_dim_in_k(rf: &RealFormData, elems: &[Elem]) -> usize {
    let g = &rf.g;
    let dim = g.dim();
    let theta = columns_matrix(&rf.theta, dim);
    let mut blocks = vec![theta.sub(&SMat::identity(dim))];
    for x in elems {
        blocks.push(g.ad(x));
    }
    linalg::kernel(&SMat::vstack(&blocks.iter().collect::<Vec<_>>())).len()
}

/// A Cartan subalgebra of `k` of the form `h_m + span{z_φ : φ ∈ S}`.
fn find_cartan(rf: &RealFormData) -> Result<(Vec<Vec<i64>>, Vec<Elem>)> {
    let g = &rf.g;
    let real: Vec<Vec<i64>> =
        g.rs.positive.iter().filter(|p| rf.t(p) == p.iter().map(|x| -x).collect::<Vec<_>>()).cloned().collect();
    if real.len() > 16 {
        return Err(Error::CartanSearchFailure(format!("{} real roots exceed the search budget", real.len())));
    }
    let hm = rf.h_m_elems();
    'subsets: for subset in subsets_by_size(real.len()) {
        let s: Vec<Vec<i64>> = subset.iter().map(|&k| real[k].clone()).collect();
        for (a, x) in s.iter().enumerate() {
            for y in &s[a + 1..] {
                if !strongly_orthogonal(rf, x, y) {
                    continue 'subsets;
                }
            }
        }
        let mut zs = Vec::new();
        for phi in &s {
            match normalized_z(rf, phi) {
                Ok(z) => zs.push(z),
                Err(_) => continue 'subsets,
            }
        }
        let mut t = hm.clone();
        t.extend(zs);
        for (a, x) in t.iter().enumerate() {
            for y in &t[a + 1..] {
                if !elem_is_zero(&g.bracket(x, y)) {
                    continue 'subsets;
                }
            }
        }
        if centralizer_dim_in_k(rf, &t) == t.len() {
            return Ok((s, t));
        }
    }
    Err(Error::CartanSearchFailure("no strongly orthogonal set of real roots gives a self-centralizing torus".into()))
}

fn lex_positive(key: &[Rat]) -> bool {
    key.iter().find(|x| !x.is_zero()).is_some_and(|x| !x.is_negative())
}

pub fn build_k_structure(rf: &RealFormData) -> Result<KStructure> {
    let g = &rf.g;
    let dim = g.dim();
    let (real_roots, cartan) = find_cartan(rf)?;
    let r = cartan.len();
    let k_basis = rf.k_basis.clone();
    let ads: Vec<SMat> = cartan.iter().map(|x| g.ad(x)).collect();
    let parts = joint_eigenspaces(&ads, k_basis.iter().map(|x| to_svec(x)).collect())
        .map_err(|e| Error::CartanSearchFailure(format!("ad t is not diagonalizable on k: {e}")))?;
    let mut roots = Vec::new();
    let mut root_vectors = BTreeMap::new();
    for (vals, vecs) in parts {
        if vals.iter().all(|&v| v == 0) {
            if vecs.len() != r {
                return Err(Error::CartanSearchFailure(format!("zero weight space of t in k has dimension {}", vecs.len())));
            }
            continue;
        }
        if vecs.len() != 1 {
            return Err(Error::StructureViolation(format!("k-root {vals:?} has multiplicity {}", vecs.len())));
        }
        root_vectors.insert(vals.clone(), linalg::to_dense(&vecs[0], dim));
        roots.push(vals);
    }

    // x_m in t coordinates.
    let n = g.rank();
    let mut xm_h = vec![0i64; n];
    for p in &rf.positive_m_roots {
        for (k, c) in g.rs.coroot(p).iter().enumerate() {
            xm_h[k] += c;
        }
    }
    let mut span = Span::new(n);
    for y in &rf.h_m_basis {
        span.insert(to_svec(&y.iter().map(|&v| Scalar::int(v)).collect::<Vec<_>>()));
    }
    let xm_coords = span
        .coords(&to_svec(&xm_h.iter().map(|&v| Scalar::int(v)).collect::<Vec<_>>()))
        .ok_or_else(|| Error::StructureViolation("x_m is not in h_m".into()))?;
    let mut x_m = vec![Rat::zero(); r];
    for (k, c) in linalg::to_dense(&xm_coords, rf.h_m_basis.len()).into_iter().enumerate() {
        x_m[k] = c.to_rat().expect("rational");
    }
    let key = |v: &[i64]| -> Vec<Rat> {
        let mut k = vec![v.iter().zip(&x_m).fold(Rat::zero(), |acc, (a, b)| &acc + &(b * &Rat::int(*a)))];
        k.extend(v.iter().map(|&a| Rat::int(a)));
        k
    };
    let mut positive: Vec<Vec<i64>> = roots.iter().filter(|v| lex_positive(&key(v))).cloned().collect();
    positive.sort_by(|a, b| key(a).cmp(&key(b)).then(a.cmp(b)));
    let pos_set: BTreeSet<Vec<i64>> = positive.iter().cloned().collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|b| {
            !positive.iter().any(|x| {
                let d: Vec<i64> = b.iter().zip(x.iter()).map(|(p, q)| p - q).collect();
                pos_set.contains(&d)
            })
        })
        .cloned()
        .collect();

    // t coordinates of an element of t.
    let mut tspan = Span::new(dim);
    for x in &cartan {
        tspan.insert(to_svec(x));
    }
    let t_coords = |x: &Elem| -> Result<Vec<Rat>> {
        let c = tspan.coords(&to_svec(x)).ok_or_else(|| Error::StructureViolation("element is not in t".into()))?;
        linalg::to_dense(&c, r)
            .into_iter()
            .map(|s| s.to_rat().ok_or_else(|| Error::StructureViolation("non-rational t coordinate".into())))
            .collect()
    };
    let eval = |root: &[i64], coords: &[Rat]| -> Rat {
        root.iter().zip(coords).fold(Rat::zero(), |acc, (a, c)| &acc + &(c * &Rat::int(*a)))
    };

    // Simple root triples.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut hs = Vec::new();
    let mut coroots_t = Vec::new();
    for b in &simple {
        let x = root_vectors[b].clone();
        let nb: Vec<i64> = b.iter().map(|v| -v).collect();
        let y0 = root_vectors
            .get(&nb)
            .cloned()
            .ok_or_else(|| Error::StructureViolation(format!("−{b:?} is not a k-root")))?;
        let h0 = g.bracket(&x, &y0);
        let h0t = t_coords(&h0)?;
        let val = eval(b, &h0t);
        if val.is_zero() {
            return Err(Error::StructureViolation(format!("β(H) = 0 for the k-root {b:?}")));
        }
        let s = &Rat::int(2) / &val;
        let y = elem_scale(&y0, &Scalar::rat(s.clone()));
        let h = elem_scale(&h0, &Scalar::rat(s.clone()));
        coroots_t.push(h0t.iter().map(|c| c * &s).collect::<Vec<_>>());
        xs.push(x);
        ys.push(y);
        hs.push(h);
    }
    let l = simple.len();
    let mut cm = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            cm[i][j] = eval(&simple[i], &coroots_t[j])
                .to_i64()
                .ok_or_else(|| Error::StructureViolation("non-integral Cartan matrix of k".into()))?;
        }
    }
    let semisimple = LieAlgebra::new(&CartanMatrix::new(cm)?)?;
    let np = semisimple.np();
    let mut pos_img: Vec<Elem> = Vec::with_capacity(np);
    let mut neg_img: Vec<Elem> = Vec::with_capacity(np);
    for (k, phi) in semisimple.rs.positive.iter().enumerate() {
        match &semisimple.recipes[k] {
            None => {
                let i = phi.iter().position(|&x| x == 1).expect("simple");
                pos_img.push(xs[i].clone());
                neg_img.push(ys[i].clone());
            }
            Some(rec) => {
                let p = elem_scale(&g.bracket(&xs[rec.simple], &pos_img[rec.rest]), &Scalar::rat(rec.coeff_pos.clone()));
                let m = elem_scale(&g.bracket(&ys[rec.simple], &neg_img[rec.rest]), &Scalar::rat(rec.coeff_neg.clone()));
                pos_img.push(p);
                neg_img.push(m);
            }
        }
    }
    let mut images = pos_img;
    images.extend(neg_img);
    images.extend(hs);
    let sdim = semisimple.dim();
    let image_of = |x: &[Scalar]| -> Elem {
        let mut out = vec![Scalar::zero(); dim];
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = elem_add(&out, &elem_scale(&images[a], c));
            }
        }
        out
    };
    for a in 0..sdim {
        for b in a + 1..sdim {
            let lhs = image_of(&semisimple.bracket(&semisimple.basis(a), &semisimple.basis(b)));
            if lhs != g.bracket(&images[a], &images[b]) {
                return Err(Error::StructureViolation(format!("[k, k] is not isomorphic to the algebra of {:?}", semisimple.rs.cartan.entries)));
            }
        }
    }

    // Center of k inside t: common kernel of the k-roots.
    let center_t: Vec<Vec<Rat>> = {
        let mut e = linalg::Echelon::new(r);
        for root in &roots {
            e.insert(to_svec(&root.iter().map(|&v| Scalar::int(v)).collect::<Vec<_>>()));
        }
        e.kernel()
            .iter()
            .map(|v| linalg::to_dense(v, r).into_iter().map(|s| s.to_rat().expect("rational")).collect())
            .collect()
    };
    let center: Vec<Elem> = center_t.iter().map(|c| lin_comb(&cartan, c, dim)).collect();
    let mut decomposer = Span::new(dim);
    for x in images.iter().chain(&center) {
        if decomposer.insert(to_svec(x)).is_none() {
            return Err(Error::StructureViolation("[k, k] and the center of k are not independent".into()));
        }
    }
    if decomposer.dim() != k_basis.len() {
        return Err(Error::StructureViolation(format!(
            "[k, k] + center has dimension {}, k has dimension {}",
            decomposer.dim(),
            k_basis.len()
        )));
    }
    Ok(KStructure {
        k_basis,
        cartan,
        real_roots,
        roots,
        positive,
        simple,
        root_vectors,
        coroots_t,
        semisimple,
        images,
        center_t,
        center,
        decomposer,
        x_m,
    })
}

impl KStructure {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Coordinates of `x ∈ k` in the basis of `[k, k]` images followed by the center.
    pub fn decompose(&self, x: &[Scalar]) -> Result<SVec> {
        self.decomposer.coords(&to_svec(x)).ok_or_else(|| Error::StructureViolation("element is not in k".into()))
    }

    /// `μ(H_β)` for the simple `k`-roots.
    pub fn labels(&self, mu: &[Scalar]) -> Vec<Scalar> {
        self.coroots_t
            .iter()
            .map(|h| h.iter().zip(mu).fold(Scalar::zero(), |acc, (c, m)| &acc + &(m * &Scalar::rat(c.clone()))))
            .collect()
    }

    /// Whether an integral `t`-weight is dominant for `[k, k]`.
    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        let m: Vec<Scalar> = mu.iter().map(|&x| Scalar::int(x)).collect();
        self.labels(&m).iter().all(|l| l.to_i64().is_some_and(|v| v >= 0))
    }

    /// Dimension of the `k`-type with highest weight `μ`.
    pub fn k_type_dim(&self, mu: &[i64]) -> u64 {
        let m: Vec<Scalar> = mu.iter().map(|&x| Scalar::int(x)).collect();
        let labels: Vec<i64> = self.labels(&m).iter().map(|l| l.to_i64().expect("integral")).collect();
        self.semisimple.rs.weyl_dimension(&labels) as u64
    }
}

/// An irreducible `k`-module given by its highest `t`-weight.
#[derive(Clone, Debug)]
pub struct KType {
    pub weight: Vec<Scalar>,
    pub labels: Vec<i64>,
    pub center_values: Vec<Scalar>,
    pub module: HWModule,
}

impl KType {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Matrix of `x ∈ k` on the module.
    pub fn action(&self, ks: &KStructure, x: &[Scalar]) -> Result<SMat> {
        let coords = ks.decompose(x)?;
        let sdim = ks.semisimple.dim();
        let n = self.dim();
        let mut m = SMat::zero(n, n);
        for (k, c) in coords {
            if k < sdim {
                m = m.axpy(&c, &self.module.ops[k]);
            } else {
                m = m.axpy(&(&c * &self.center_values[k - sdim]), &SMat::identity(n));
            }
        }
        Ok(m)
    }
}

pub fn build_k_type(ks: &KStructure, hw: &[Scalar]) -> Result<KType> {
    if hw.len() != ks.rank() {
        return Err(Error::Parse(format!("t-weight has length {}, expected {}", hw.len(), ks.rank())));
    }
    let mut labels = Vec::new();
    for l in ks.labels(hw) {
        match l.to_i64() {
            Some(v) if v >= 0 => labels.push(v),
            _ => return Err(Error::NotDominant(format!("label {l} of the k-weight is not a nonnegative integer"))),
        }
    }
    let center_values: Vec<Scalar> = ks
        .center_t
        .iter()
        .map(|c| c.iter().zip(hw).fold(Scalar::zero(), |acc, (a, m)| &acc + &(m * &Scalar::rat(a.clone()))))
        .collect();
    let module = build_irrep(&ks.semisimple, &DominantWeight(labels.clone()))?;
    Ok(KType { weight: hw.to_vec(), labels, center_values, module })
}

fn int_weight(hw: &[i64]) -> Vec<Scalar> {
    hw.iter().map(|&x| Scalar::int(x)).collect()
}

/// Basis of `Z^λ`: vectors of `h_m`-weight `λ|h_m`, killed by `m_+` and by
/// `q_{λ,i}(z_i)` for `i ∈ I_n`.
pub fn z_lambda_space(z: &KType, lambda: &DominantWeight, rf: &RealFormData, ks: &KStructure) -> Result<Vec<SVec>> {
    let g = &rf.g;
    let n = z.dim();
    let target = rf.weight_on_h_m(&lambda.0);
    let ys: Vec<SMat> = rf.h_m_elems().iter().map(|y| z.action(ks, y)).collect::<Result<_>>()?;
    let cand: Vec<usize> = (0..n)
        .filter(|&b| ys.iter().zip(&target).all(|(y, &t)| y.get(b, b) == Scalar::int(t)))
        .collect();
    if cand.is_empty() {
        return Ok(Vec::new());
    }
    let raising: Vec<SMat> = rf.m_plus_generators().iter().map(|e| z.action(ks, e)).collect::<Result<_>>()?;
    let restrict_kernel = |ops: &dyn Fn(&SVec) -> Vec<SVec>| -> Vec<SVec> {
        let cols: Vec<SVec> = cand
            .iter()
            .map(|&b| {
                let mut col: SVec = Vec::new();
                for (k, img) in ops(&linalg::unit(b)).into_iter().enumerate() {
                    col.extend(img.into_iter().map(|(i, c)| (k * n + i, c)));
                }
                col
            })
            .collect();
        let rows = cols.iter().flat_map(|c| c.iter().map(|(i, _)| *i + 1)).max().unwrap_or(0);
        linalg::kernel(&SMat::from_columns(&cols, rows.max(1)))
            .iter()
            .map(|y| y.iter().map(|(k, c)| (cand[*k], c.clone())).collect())
            .collect()
    };
    let m_part = restrict_kernel(&|v: &SVec| raising.iter().map(|e| e.apply(v)).collect());
    for &i in &rf.i_m {
        let f = z.action(ks, &g.e(&g.rs.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>()))?;
        for v in &m_part {
            let mut w = v.clone();
            for _ in 0..=lambda.0[i] {
                w = f.apply(&w);
            }
            if !w.is_empty() {
                return Err(Error::IdentityViolation(format!(
                    "e_-α{}^{} does not vanish on the m_+-invariants of weight λ|h_m",
                    i + 1,
                    lambda.0[i] + 1
                )));
            }
        }
    }
    let mut qs = Vec::new();
    for &i in &rf.i_n {
        let zm = z.action(ks, &z_vector(rf, i)?)?;
        qs.push((q_polynomial(rf, lambda, i), zm));
    }
    Ok(restrict_kernel(&|v: &SVec| {
        let mut out: Vec<SVec> = raising.iter().map(|e| e.apply(v)).collect();
        out.extend(qs.iter().map(|(q, zm)| q.apply(zm, v)));
        out
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Kostant,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KTypeEntry {
    /// Highest weight as values on the basis of `t`.
    pub weight: Vec<i64>,
    pub dim: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingReport {
    pub lambda: Vec<i64>,
    pub method: Method,
    pub entries: Vec<KTypeEntry>,
    pub dim: u64,
    pub checksum: u64,
}

impl BranchingReport {
    fn new(lambda: &DominantWeight, method: Method, mut entries: Vec<KTypeEntry>, dim: u64) -> Result<Self> {
        entries.retain(|e| e.multiplicity > 0);
        entries.sort();
        let checksum = entries.iter().map(|e| e.dim * e.multiplicity).sum();
        if checksum != dim {
            return Err(Error::IdentityViolation(format!(
                "{method:?} branching of {:?}: Σ mult·dim = {checksum}, dim V = {dim}",
                lambda.0
            )));
        }
        Ok(BranchingReport { lambda: lambda.0.clone(), method, entries, dim, checksum })
    }

    pub fn multiplicity(&self, weight: &[i64]) -> u64 {
        self.entries.iter().find(|e| e.weight == weight).map_or(0, |e| e.multiplicity)
    }

    /// Entries without the method tag, for comparing the two paths.
    pub fn same_decomposition(&self, other: &BranchingReport) -> bool {
        self.entries == other.entries && self.dim == other.dim
    }
}

/// `t`-weights of `V_λ` obtained from its `h`-weights through the Cayley transform
/// along `S`: values on `h_m`, then `μ(h_φ)` for `φ ∈ S`.
pub fn cayley_t_weights(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Vec<Vec<i64>> {
    let rs = &rf.g.rs;
    v.basis_weights()
        .iter()
        .map(|mu| {
            let mut w = rf.weight_on_h_m(mu);
            w.extend(ks.real_roots.iter().map(|phi| rs.pair_coroot(mu, phi)));
            w
        })
        .collect()
}

/// Branching through `dim Z^λ` for every dominant `t`-weight of `V_λ`.
pub fn branch_kostant(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Result<BranchingReport> {
    let cands: BTreeSet<Vec<i64>> = cayley_t_weights(v, rf, ks).into_iter().filter(|w| ks.is_dominant(w)).collect();
    let mut entries = Vec::new();
    for mu in cands {
        let z = build_k_type(ks, &int_weight(&mu))?;
        let mult = z_lambda_space(&z, &v.lambda, rf, ks)?.len() as u64;
        entries.push(KTypeEntry { dim: z.dim() as u64, weight: mu, multiplicity: mult });
    }
    BranchingReport::new(&v.lambda, Method::Kostant, entries, v.dim() as u64)
}

/// Multiplicity of every `t`-weight among the highest weight vectors of `V_λ` for `k`.
pub fn oracle_multiplicities(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Result<Vec<(Vec<i64>, usize)>> {
    let n = v.dim();
    let weights = v.basis_weights();
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (b, mu) in weights.iter().enumerate() {
        groups.entry(rf.weight_on_h_m(mu)).or_default().push(b);
    }
    let raising: Vec<SMat> = ks.simple.iter().map(|b| v.action(&ks.root_vectors[b])).collect();
    let stacked_cols: Vec<SVec> = if raising.is_empty() {
        vec![Vec::new(); n]
    } else {
        SMat::vstack(&raising.iter().collect::<Vec<_>>()).columns()
    };
    let nrows = raising.len() * n;
    let zs: Vec<SMat> = ks.cartan[rf.h_m_basis.len()..].iter().map(|z| v.action(z)).collect();
    let mut out: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (hm, idx) in groups {
        let cols: Vec<SVec> = idx.iter().map(|&b| stacked_cols[b].clone()).collect();
        let ker = linalg::kernel(&SMat::from_columns(&cols, nrows.max(1)));
        if ker.is_empty() {
            continue;
        }
        let hwv: Vec<SVec> = ker.iter().map(|y| y.iter().map(|(k, c)| (idx[*k], c.clone())).collect()).collect();
        for (zvals, d) in joint_eigen_dims(&zs, hwv)? {
            let mut mu = hm.clone();
            mu.extend(zvals);
            *out.entry(mu).or_default() += d;
        }
    }
    Ok(out.into_iter().collect())
}

/// Branching by direct computation of highest weight vectors in `V_λ`.
pub fn branch_oracle(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Result<BranchingReport> {
    let mut entries = Vec::new();
    for (mu, mult) in oracle_multiplicities(v, rf, ks)? {
        if !ks.is_dominant(&mu) {
            return Err(Error::IdentityViolation(format!("highest weight vector of non-dominant t-weight {mu:?}")));
        }
        entries.push(KTypeEntry { dim: ks.k_type_dim(&mu), weight: mu, multiplicity: mult as u64 });
    }
    BranchingReport::new(&v.lambda, Method::Oracle, entries, v.dim() as u64)
}

/// Checks that the `n`-invariants of `V_λ` are exactly `U(m)v_λ`.
pub fn verify_n_invariants(v: &HWModule, rf: &RealFormData) -> Result<()> {
    let n = v.dim();
    let ops: Vec<SMat> = rf.n_basis.iter().map(|x| v.action(x)).collect();
    let inv_dim = if ops.is_empty() { n } else { linalg::kernel(&SMat::vstack(&ops.iter().collect::<Vec<_>>())).len() };
    let m_ops: Vec<SMat> = rf.m_basis.iter().map(|x| v.action(x)).collect();
    let mut ech = linalg::Echelon::new(n);
    let mut queue = vec![v.highest_vector()];
    let mut span = Vec::new();
    while let Some(x) = queue.pop() {
        if x.is_empty() || !ech.insert(x.clone()) {
            continue;
        }
        for m in &m_ops {
            queue.push(m.apply(&x));
        }
        span.push(x);
    }
    for x in &span {
        for o in &ops {
            ensure(o.apply(x).is_empty(), || "U(m)v_λ is not killed by n".into())?;
        }
    }
    ensure(span.len() == inv_dim, || format!("dim U(m)v_λ = {}, dim of n-invariants = {inv_dim}", span.len()))
}

/// Eigenvalues of `z_i` on a `k`-type with their multiplicities.
pub fn z_spectrum(z: &KType, ks: &KStructure, zi: &[Scalar]) -> Result<Vec<(i64, usize)>> {
    let a = z.action(ks, zi)?;
    let bound = eigen_bound(&a)?;
    let basis: Vec<SVec> = (0..z.dim()).map(linalg::unit).collect();
    integer_eigen_dims(&a, &basis, bound)
        .ok_or_else(|| Error::IdentityViolation("z_i has non-integral spectrum on a k-type".into()))
}

/// For `i ∈ I_s`: `z_i` has integral spectrum on every `k`-type of `V_λ`, and
/// each eigenspace of `z_i` in `V_λ` with eigenvalue `m` lies in the
/// `(−1)^m`-eigenspace of `ε_i = exp(πi h_i)`, read off the `h`-weights.
pub fn parity_checks(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Result<Vec<Check>> {
    let weights = v.basis_weights();
    let mut checks = Vec::new();
    for (mu, _) in oracle_multiplicities(v, rf, ks)? {
        let z = build_k_type(ks, &int_weight(&mu))?;
        for &i in &rf.i_s {
            let name = format!("z{} integral on k-type {mu:?} of {:?}", i + 1, v.lambda.0);
            let r = z_vector(rf, i).and_then(|zi| z_spectrum(&z, ks, &zi)).map(|_| ());
            checks.push(Check::from_result(&name, r));
        }
    }
    let basis: Vec<SVec> = (0..v.dim()).map(linalg::unit).collect();
    for &i in &rf.i_s {
        let name = format!("z{} parity matches ε{} on {:?}", i + 1, i + 1, v.lambda.0);
        let r = (|| -> Result<()> {
            let a = v.action(&z_vector(rf, i)?);
            let dims = integer_eigen_dims(&a, &basis, eigen_bound(&a)?)
                .ok_or_else(|| Error::IdentityViolation("z_i has non-integral spectrum on V_λ".into()))?;
            for (m, d) in dims {
                let same_parity: Vec<SVec> =
                    (0..v.dim()).filter(|&b| (weights[b][i] - m).rem_euclid(2) == 0).map(linalg::unit).collect();
                let images: Vec<SVec> = same_parity.iter().map(|b| a.apply(b)).collect();
                let within = same_parity.len() - linalg::rank_of(&shifted(&images, &same_parity, m), v.dim());
                ensure(within == d, || {
                    format!("eigenspace of eigenvalue {m} has dim {d}, only {within} within parity {}", m.rem_euclid(2))
                })?;
            }
            Ok(())
        })();
        checks.push(Check::from_result(&name, r));
    }
    Ok(checks)
}
