//! Finite-dimensional irreducible highest weight modules with exact matrices.
//!
//! The module is built one weight space at a time, descending from the highest
//! weight. A vector of weight `μ ≠ λ` in the irreducible quotient is determined
//! by its images under the simple raising operators, so each weight space is
//! realized as the span of those images for the candidates `f_i·b`, using
//! `e_j f_i b = f_i e_j b + δ_ij h_i b`. This is the quotient of the Verma
//! module by the radical of its contravariant form, computed level by level.

use std::collections::{BTreeMap, HashMap};

use crate::chevalley::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, SMat, SVec, Span};
use crate::rootsys::{CartanMatrix, DominantWeight, RootSystem};
use crate::scalar::{Rat, Scalar};

/// Default cap on module dimensions.
pub const DEFAULT_DIM_CAP: u64 = 5000;

/// The dimension cap, overridable through `BRANCHLAB_DIM_CAP`.
pub fn dim_cap() -> u64 {
    std::env::var("BRANCHLAB_DIM_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_DIM_CAP)
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    /// `λ − μ` in simple-root coordinates.
    pub depth: Vec<i64>,
    /// `μ` in fundamental coordinates.
    pub weight: Vec<i64>,
    pub offset: usize,
    pub dim: usize,
}

/// The irreducible module of a Cartan matrix with matrices for the simple
/// generators only.
#[derive(Clone, Debug)]
pub struct RawModule {
    pub highest: Vec<i64>,
    pub spaces: Vec<WeightSpace>,
    pub e: Vec<SMat>,
    pub f: Vec<SMat>,
    pub dim: usize,
}

impl RawModule {
    /// Weight of every basis vector in fundamental coordinates.
    pub fn basis_weights(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.dim);
        for s in &self.spaces {
            for _ in 0..s.dim {
                out.push(s.weight.clone());
            }
        }
        out
    }

    /// Diagonal matrix of `h_i`.
    pub fn h(&self, i: usize) -> SMat {
        let d: Vec<Scalar> = self.basis_weights().iter().map(|w| Scalar::int(w[i])).collect();
        SMat::diagonal(&d)
    }
}

type Block = Vec<SVec>; // columns, each a sparse vector in the target space

pub(crate) fn build_raw(cm: &CartanMatrix, highest: &[i64], cap: u64) -> Result<RawModule> {
    let n = cm.rank();
    let weight_of = |depth: &[i64]| -> Vec<i64> {
        (0..n).map(|j| highest[j] - (0..n).map(|k| depth[k] * cm.a(k, j)).sum::<i64>()).collect()
    };
    let mut dims: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut order: Vec<Vec<i64>> = Vec::new();
    // e_blocks[(d, j)]: V_d → V_{d − e_j};  f_blocks[(d, i)]: V_d → V_{d + e_i}.
    let mut e_blocks: HashMap<(Vec<i64>, usize), Block> = HashMap::new();
    let mut f_blocks: HashMap<(Vec<i64>, usize), Block> = HashMap::new();
    let zero = vec![0i64; n];
    dims.insert(zero.clone(), 1);
    order.push(zero.clone());
    let mut level = vec![zero];
    let mut total = 1u64;
    let shift = |d: &[i64], k: usize, by: i64| -> Vec<i64> {
        let mut v = d.to_vec();
        v[k] += by;
        v
    };
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = level.iter().flat_map(|d| (0..n).map(move |i| shift(d, i, 1))).collect();
        next.sort();
        next.dedup();
        let mut produced = Vec::new();
        for d in next {
            let targets: Vec<usize> = (0..n).filter(|&j| d[j] > 0 && dims.contains_key(&shift(&d, j, -1))).collect();
            let mut offs = BTreeMap::new();
            let mut width = 0;
            for &j in &targets {
                offs.insert(j, width);
                width += dims[&shift(&d, j, -1)];
            }
            let mut cands: Vec<(usize, usize, SVec)> = Vec::new();
            for &i in &targets {
                let src = shift(&d, i, -1);
                let src_w = weight_of(&src);
                for b in 0..dims[&src] {
                    let mut img: SVec = Vec::new();
                    for &j in &targets {
                        let mut part: SVec = Vec::new();
                        let mid = shift(&src, j, -1);
                        if let (Some(ecol), Some(fblk)) =
                            (e_blocks.get(&(src.clone(), j)), f_blocks.get(&(mid.clone(), i)))
                        {
                            let eb = &ecol[b];
                            part = linalg::combine(eb.iter().map(|(k, x)| (x, &fblk[*k])));
                        }
                        if i == j {
                            part = linalg::axpy(&part, &Scalar::int(src_w[i]), &linalg::unit(b));
                        }
                        let o = offs[&j];
                        img.extend(part.into_iter().map(|(k, x)| (k + o, x)));
                    }
                    cands.push((i, b, img));
                }
            }
            let mut span = Span::new(width);
            let mut basis: Vec<SVec> = Vec::new();
            for (_, _, img) in &cands {
                if span.insert(img.clone()).is_some() {
                    basis.push(img.clone());
                }
            }
            let dim = basis.len();
            if dim == 0 {
                continue;
            }
            total += dim as u64;
            if total > cap {
                return Err(Error::ResourceLimit { dim: total, cap });
            }
            for &j in &targets {
                let o = offs[&j];
                let w = dims[&shift(&d, j, -1)];
                let cols: Block = basis
                    .iter()
                    .map(|v| v.iter().filter(|(k, _)| *k >= o && *k < o + w).map(|(k, x)| (k - o, x.clone())).collect())
                    .collect();
                e_blocks.insert((d.clone(), j), cols);
            }
            let mut fcols: BTreeMap<usize, Block> = BTreeMap::new();
            for (i, b, img) in &cands {
                let c = span.coords(img).expect("candidate lies in the span");
                let src_dim = dims[&shift(&d, *i, -1)];
                let e = fcols.entry(*i).or_insert_with(|| vec![Vec::new(); src_dim]);
                e[*b] = c;
            }
            for (i, cols) in fcols {
                f_blocks.insert((shift(&d, i, -1), i), cols);
            }
            dims.insert(d.clone(), dim);
            order.push(d.clone());
            produced.push(d);
        }
        level = produced;
    }
    let mut spaces = Vec::with_capacity(order.len());
    let mut offset_of: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut offset = 0;
    for d in &order {
        let dim = dims[d];
        offset_of.insert(d.clone(), offset);
        spaces.push(WeightSpace { depth: d.clone(), weight: weight_of(d), offset, dim });
        offset += dim;
    }
    let total = offset;
    let mut e = vec![SMat::zero(total, total); n];
    let mut f = vec![SMat::zero(total, total); n];
    for ((d, j), cols) in &e_blocks {
        let (so, to) = (offset_of[d], offset_of[&shift(d, *j, -1)]);
        for (b, col) in cols.iter().enumerate() {
            for (k, x) in col {
                e[*j].rows[to + k].push((so + b, x.clone()));
            }
        }
    }
    for ((d, i), cols) in &f_blocks {
        let (so, to) = (offset_of[d], offset_of[&shift(d, *i, 1)]);
        for (b, col) in cols.iter().enumerate() {
            for (k, x) in col {
                f[*i].rows[to + k].push((so + b, x.clone()));
            }
        }
    }
    for m in e.iter_mut().chain(f.iter_mut()) {
        for r in m.rows.iter_mut() {
            r.sort_by_key(|(k, _)| *k);
        }
    }
    Ok(RawModule { highest: highest.to_vec(), spaces, e, f, dim: total })
}

/// An irreducible module of a Lie algebra with a matrix for every basis element.
#[derive(Clone, Debug)]
pub struct HWModule {
    pub lambda: DominantWeight,
    pub raw: RawModule,
    /// Matrices indexed like the basis of the algebra.
    pub ops: Vec<SMat>,
}

impl HWModule {
    pub fn dim(&self) -> usize {
        self.raw.dim
    }

    /// Index of the highest weight vector.
    pub fn highest_vector(&self) -> SVec {
        linalg::unit(0)
    }

    /// Action of an algebra element given by its coordinates.
    pub fn action(&self, x: &[Scalar]) -> SMat {
        let mut m = SMat::zero(self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.axpy(c, &self.ops[b]);
            }
        }
        m
    }

    pub fn basis_weights(&self) -> Vec<Vec<i64>> {
        self.raw.basis_weights()
    }
}

/// Builds `V_λ` with the configured dimension cap.
pub fn build_irrep(g: &LieAlgebra, lambda: &DominantWeight) -> Result<HWModule> {
    build_irrep_capped(g, lambda, dim_cap())
}

pub fn build_irrep_capped(g: &LieAlgebra, lambda: &DominantWeight, cap: u64) -> Result<HWModule> {
    let rs = &g.rs;
    if lambda.0.len() != rs.rank() {
        return Err(Error::Parse(format!("weight {:?} has length {}, expected {}", lambda.0, lambda.0.len(), rs.rank())));
    }
    DominantWeight::new(lambda.0.clone())?;
    let expected = rs.weyl_dimension(&lambda.0);
    if expected as u64 > cap {
        return Err(Error::ResourceLimit { dim: expected as u64, cap });
    }
    let raw = build_raw(&rs.cartan, &lambda.0, cap)?;
    let ops = g.represent(&raw);
    Ok(HWModule { lambda: lambda.clone(), raw, ops })
}

/// Weight multiplicities by Freudenthal's recursion, keyed by fundamental coordinates.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &DominantWeight) -> BTreeMap<Vec<i64>, u64> {
    let n = rs.rank();
    let l = &lambda.0;
    let to_rat = |v: &[i64]| v.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>();
    let lr: Vec<i64> = l.iter().map(|x| x + 1).collect();
    let top = rs.inner_weights(&to_rat(&lr), &to_rat(&lr));
    let pos_w: Vec<Vec<i64>> = rs.positive.iter().map(|p| rs.root_to_weight(p)).collect();
    let pos_r: Vec<Vec<Rat>> = pos_w.iter().map(|p| to_rat(p)).collect();
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(l.clone(), 1);
    let alpha: Vec<Vec<i64>> = (0..n).map(|i| rs.root_to_weight(&rs.simple_root(i))).collect();
    let mut level = vec![l.clone()];
    while !level.is_empty() {
        let mut cands: Vec<Vec<i64>> = level
            .iter()
            .flat_map(|w| alpha.iter().map(move |a| w.iter().zip(a).map(|(x, y)| x - y).collect::<Vec<_>>()))
            .collect();
        cands.sort();
        cands.dedup();
        let mut next = Vec::new();
        for mu in cands {
            let mr: Vec<i64> = mu.iter().map(|x| x + 1).collect();
            let denom = &top - &rs.inner_weights(&to_rat(&mr), &to_rat(&mr));
            if denom.is_zero() {
                continue;
            }
            let mut num = Rat::zero();
            for (pw, pr) in pos_w.iter().zip(&pos_r) {
                let mut k = 1;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(pw).map(|(x, y)| x + k * y).collect();
                    let Some(&m) = mult.get(&nu) else { break };
                    let ip = rs.inner_weights(&to_rat(&nu), pr);
                    num = &num + &(&Rat::int(m as i64) * &ip);
                    k += 1;
                }
            }
            let m = &(&Rat::int(2) * &num) / &denom;
            let m = m.to_i64().expect("multiplicity is an integer");
            if m > 0 {
                mult.insert(mu.clone(), m as u64);
                next.push(mu);
            }
        }
        level = next;
    }
    mult.into_iter().collect()
}

/// Result of checking `e_{−α_i}^{n_i+1}·v_λ = 0` and `e_{−α_i}^{n_i}·v_λ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrvReport {
    pub checked: usize,
}

pub fn verify_prv_annihilation(g: &LieAlgebra, v: &HWModule) -> Result<PrvReport> {
    let rs = &g.rs;
    for i in 0..rs.rank() {
        let f = &v.ops[g.root_basis_index(&rs.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>())];
        let mut w = v.highest_vector();
        let n = v.lambda.0[i];
        for _ in 0..n {
            w = f.apply(&w);
        }
        if w.is_empty() {
            return Err(Error::IdentityViolation(format!("f_{}^{} kills the highest weight vector", i + 1, n)));
        }
        if !f.apply(&w).is_empty() {
            return Err(Error::IdentityViolation(format!(
                "f_{}^{} does not kill the highest weight vector",
                i + 1,
                n + 1
            )));
        }
    }
    Ok(PrvReport { checked: rs.rank() })
}
