//! Principal series parameters `(δ, ξ)` of `V_λ` and the identities behind its
//! embedding into a principal series: annihilation of the dual highest vector,
//! the coinvariants `V_λ / nV_λ`, and the bound `mult(Z) ≤ dim Z[δ]`.
//!
//! `V_λ*` is modeled as `V_{λ^c}` with `λ^c = −κλ`.

use serde::{Deserialize, Serialize};

use crate::branching::{branch_kostant, build_k_type, split_integer_eigen, eigen_bound, KStructure, KType};
use crate::checks::{ensure, Check};
use crate::chevalley::Elem;
use crate::error::{Error, Result};
use crate::hwmodule::{build_irrep, HWModule};
use crate::ideal::{q_polynomial, z_vector};
use crate::linalg::{self, Echelon, SMat, SVec};
use crate::mstruct::{epsilon_signs, FiberLabel};
use crate::realform::RealFormData;
use crate::rootsys::DominantWeight;
use crate::scalar::{Rat, Scalar};

/// `λ^c = −κλ`.
pub fn dual_weight(rf: &RealFormData, lambda: &DominantWeight) -> DominantWeight {
    rf.g.rs.dual_weight(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalSeriesParams {
    pub lambda: Vec<i64>,
    pub lambda_c: Vec<i64>,
    pub delta: FiberLabel,
    /// `λ^c` on the basis of `h_m`.
    pub nu_c: Vec<Rat>,
    /// Values of `ξ` on the basis of `a`.
    pub xi: Vec<Rat>,
}

fn weight_on(lambda: &[i64], h: &[Rat]) -> Rat {
    lambda.iter().zip(h).fold(Rat::zero(), |acc, (l, c)| &acc + &(c * &Rat::int(*l)))
}

fn reflect_coroot(rf: &RealFormData, i: usize, h: &[i64]) -> Vec<i64> {
    let cm = &rf.g.rs.cartan;
    let a: i64 = h.iter().enumerate().map(|(j, c)| cm.a(i, j) * c).sum();
    let mut out = h.to_vec();
    out[i] -= a;
    out
}

/// Reduced word for the longest element of the Weyl group of `m`.
pub fn m_longest_word(rf: &RealFormData) -> Vec<usize> {
    let n = rf.rank();
    let mut x = vec![0i64; n];
    for p in &rf.positive_m_roots {
        for (k, c) in rf.g.rs.coroot(p).iter().enumerate() {
            x[k] += c;
        }
    }
    let cm = &rf.g.rs.cartan;
    let mut word = Vec::new();
    while let Some(&i) = rf.i_m.iter().find(|&&i| (0..n).map(|j| cm.a(i, j) * x[j]).sum::<i64>() > 0) {
        x = reflect_coroot(rf, i, &x);
        word.push(i);
    }
    word
}

/// `ν = −κ_m ν^c` on the basis of `h_m`, with `κ_m` the longest element of the Weyl group of `m`.
pub fn dualize_in_m(rf: &RealFormData, lambda_c: &[i64]) -> Vec<Rat> {
    let word = m_longest_word(rf);
    rf.h_m_basis
        .iter()
        .map(|y| {
            let mut w = y.clone();
            for &i in &word {
                w = reflect_coroot(rf, i, &w);
            }
            Rat::int(-w.iter().zip(lambda_c).map(|(a, b)| a * b).sum::<i64>())
        })
        .collect()
}

pub fn ps_params(lambda: &DominantWeight, rf: &RealFormData) -> PrincipalSeriesParams {
    let lc = dual_weight(rf, lambda);
    let kl = rf.g.rs.longest_element_action(&lambda.0);
    PrincipalSeriesParams {
        lambda: lambda.0.clone(),
        lambda_c: lc.0.clone(),
        delta: FiberLabel { zeta: epsilon_signs(&lc, rf), nu: dualize_in_m(rf, &lc.0) },
        nu_c: rf.weight_on_h_m(&lc.0).into_iter().map(Rat::int).collect(),
        xi: rf.a_basis.iter().map(|h| weight_on(&kl, h)).collect(),
    }
}

/// The scalar by which `x` acts on `V / nV`, or an error if it is not scalar.
fn scalar_on_coinvariants(v: &HWModule, nv: &Echelon, x: &SMat) -> Result<Option<Scalar>> {
    let mut c: Option<Scalar> = None;
    for b in 0..v.dim() {
        let e = linalg::unit(b);
        let r = nv.reduce(e.clone());
        let image = nv.reduce(x.apply(&e));
        if r.is_empty() {
            if !image.is_empty() {
                return Err(Error::IdentityViolation("a does not preserve nV".into()));
            }
            continue;
        }
        let (k, lead) = &r[0];
        let cand = &linalg::get(&image, *k) * &lead.inv();
        if image != linalg::scale(&r, &cand) {
            return Err(Error::IdentityViolation("a does not act by a scalar on V/nV".into()));
        }
        match &c {
            Some(c0) if *c0 != cand => return Err(Error::IdentityViolation("a has two eigenvalues on V/nV".into())),
            _ => c = Some(cand),
        }
    }
    Ok(c)
}

fn image_span(v: &HWModule, elems: &[Elem]) -> Echelon {
    let mut e = Echelon::new(v.dim());
    for x in elems {
        for col in v.action(x).columns() {
            if !col.is_empty() {
                e.insert(col);
            }
        }
    }
    e
}

fn m_orbit_dim(v: &HWModule, rf: &RealFormData) -> usize {
    let ops: Vec<SMat> = rf.m_basis.iter().map(|x| v.action(x)).collect();
    let mut ech = Echelon::new(v.dim());
    let mut queue = vec![v.highest_vector()];
    while let Some(x) = queue.pop() {
        if ech.insert(x.clone()) {
            queue.extend(ops.iter().map(|o| o.apply(&x)));
        }
    }
    ech.rank()
}

/// `ξ` three ways, `−ξ = λ^c|a`, and `dim V_λ/nV_λ = dim U(m)v_{λ^c}`.
pub fn parameter_checks(v: &HWModule, rf: &RealFormData) -> Result<Vec<Check>> {
    let params = ps_params(&v.lambda, rf);
    let lc = DominantWeight(params.lambda_c.clone());
    let vc = build_irrep(&rf.g, &lc)?;
    let nv = image_span(v, &rf.n_basis);
    let mut checks = Vec::new();
    let direct = rf
        .a_basis
        .iter()
        .map(|h| scalar_on_coinvariants(v, &nv, &v.action(&rf.cartan_rat(h))))
        .collect::<Result<Vec<_>>>();
    checks.push(Check::from_result(
        "ξ equals the eigenvalue of a on V/nV",
        direct.and_then(|d| {
            let want: Vec<Option<Scalar>> = params.xi.iter().map(|x| Some(Scalar::rat(x.clone()))).collect();
            ensure(d == want, || format!("a acts by {d:?} on V/nV"))
        }),
    ));
    let from_dual: Vec<Rat> = rf.a_basis.iter().map(|h| -&weight_on(&lc.0, h)).collect();
    checks.push(Check::from_result(
        "ξ equals −λ^c on a",
        ensure(from_dual == params.xi, || "κλ|a differs from −λ^c|a".into()),
    ));
    let coinv = v.dim() - nv.rank();
    let orbit = m_orbit_dim(&vc, rf);
    checks.push(Check::from_result(
        "dim V/nV equals dim U(m)v_λc",
        ensure(coinv == orbit, || format!("dim V/nV = {coinv}, dim U(m)v_λc = {orbit}")),
    ));
    checks.push(Check::from_result(
        "λ^c is dual to λ",
        ensure(dual_weight(rf, &lc) == v.lambda, || "dual weight is not involutive".into()),
    ));
    Ok(checks)
}

/// `q_{λ^c,i}(z_i) v_{λ^c} = 0` for `i ∈ I_n` and `e_{−α_i}^{n_i(λ^c)+1} v_{λ^c} = 0` for `i ∈ I_m`.
pub fn verify_borel_weil_annihilation(lambda: &DominantWeight, rf: &RealFormData) -> Result<Vec<Check>> {
    let g = &rf.g;
    let lc = dual_weight(rf, lambda);
    let vc = build_irrep(g, &lc)?;
    let hv = vc.highest_vector();
    let mut checks = Vec::new();
    for &i in &rf.i_n {
        let q = q_polynomial(rf, &lc, i);
        let r = z_vector(rf, i).and_then(|z| {
            let image = q.apply(&vc.action(&z), &hv);
            ensure(image.is_empty(), || "does not annihilate the dual highest vector".into())
        });
        checks.push(Check::from_result(&format!("q(z{}) v* = 0 with q = {q}", i + 1), r));
    }
    for &i in &rf.i_m {
        let f = vc.action(&g.e(&g.rs.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>()));
        let mut w = hv.clone();
        for _ in 0..=lc.0[i] {
            w = f.apply(&w);
        }
        checks.push(Check::from_result(
            &format!("e_-a{}^{} v* = 0", i + 1, lc.0[i] + 1),
            ensure(w.is_empty(), || "does not annihilate the dual highest vector".into()),
        ));
    }
    Ok(checks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeBound {
    pub weight: Vec<i64>,
    pub dim: u64,
    pub multiplicity: u64,
    pub delta_dim: u64,
}

/// `dim Y_ν` by the Weyl dimension formula for `m`.
pub fn m_type_dim(rf: &RealFormData, nu: &[Rat]) -> Result<u64> {
    let rs = &rf.g.rs;
    let mut span = linalg::Span::new(rf.rank());
    for y in &rf.h_m_basis {
        span.insert(linalg::from_dense(&y.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>()));
    }
    let on = |h: &[i64]| -> Result<Rat> {
        let c = span
            .coords(&linalg::from_dense(&h.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>()))
            .ok_or_else(|| Error::StructureViolation("coroot of m is not in h_m".into()))?;
        Ok(c.iter().fold(Rat::zero(), |acc, (k, x)| &acc + &(&x.to_rat().expect("rational") * &nu[*k])))
    };
    let mut num = Rat::one();
    let mut den = Rat::one();
    for p in &rf.positive_m_roots {
        let hp = rs.coroot(p);
        let rho: i64 = rf.positive_m_roots.iter().map(|q| rs.pair_coroot(&rs.root_to_weight(q), p)).sum();
        let rho = &Rat::int(rho) / &Rat::int(2);
        num = &num * &(&on(&hp)? + &rho);
        den = &den * &rho;
    }
    (&num / &den).to_i64().map(|d| d as u64).ok_or_else(|| Error::IdentityViolation("non-integral m-type dimension".into()))
}

/// Basis of the intersection of two subspaces.
fn intersect(a: &[SVec], b: &[SVec], n: usize) -> Vec<SVec> {
    let cols: Vec<SVec> = a.iter().cloned().chain(b.iter().map(|v| linalg::scale(v, &Scalar::int(-1)))).collect();
    linalg::kernel(&SMat::from_columns(&cols, n))
        .iter()
        .map(|y| linalg::combine(y.iter().filter(|(k, _)| *k < a.len()).map(|(k, c)| (c, &a[*k]))))
        .filter(|v| !v.is_empty())
        .collect()
}

/// `dim Z[δ]`: `m`-highest vectors of weight `ν` in `Z` inside the joint
/// `ζ`-parity eigenspace of `z_i`, `i ∈ I_s`, times `dim Y_ν`.
pub fn delta_isotypic_dim(z: &KType, ks: &KStructure, rf: &RealFormData, delta: &FiberLabel) -> Result<u64> {
    let n = z.dim();
    let nu: Vec<Scalar> = delta.nu.iter().map(|r| Scalar::rat(r.clone())).collect();
    let mut blocks: Vec<SMat> = Vec::new();
    for (y, c) in rf.h_m_elems().iter().zip(&nu) {
        blocks.push(z.action(ks, y)?.sub(&SMat::scalar(n, c)));
    }
    for e in rf.m_plus_generators() {
        blocks.push(z.action(ks, &e)?);
    }
    let highest = if blocks.is_empty() {
        (0..n).map(linalg::unit).collect()
    } else {
        linalg::kernel(&SMat::vstack(&blocks.iter().collect::<Vec<_>>()))
    };
    let mut space = highest;
    for (k, &i) in rf.i_s.iter().enumerate() {
        let a = z.action(ks, &z_vector(rf, i)?)?;
        let want = if delta.zeta[k] == 1 { 0 } else { 1 };
        let basis: Vec<SVec> = (0..n).map(linalg::unit).collect();
        let split = split_integer_eigen(&a, &basis, eigen_bound(&a)?)
            .ok_or_else(|| Error::IdentityViolation("z_i has non-integral spectrum".into()))?;
        let parity: Vec<SVec> = split.into_iter().filter(|(c, _)| c.rem_euclid(2) == want).flat_map(|(_, v)| v).collect();
        space = intersect(&space, &parity, n);
    }
    let count = space.len() as u64;
    Ok(count * m_type_dim(rf, &delta.nu)?)
}

/// For every `k`-type `Z` of `V_λ`, `mult(Z) ≤ dim Z[δ]`.
pub fn ps_ktype_bound(v: &HWModule, rf: &RealFormData, ks: &KStructure) -> Result<Vec<KTypeBound>> {
    let params = ps_params(&v.lambda, rf);
    let report = branch_kostant(v, rf, ks)?;
    let mut out = Vec::new();
    for e in &report.entries {
        let z = build_k_type(ks, &e.weight.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>())?;
        let delta_dim = delta_isotypic_dim(&z, ks, rf, &params.delta)?;
        if e.multiplicity > delta_dim {
            return Err(Error::IdentityViolation(format!(
                "k-type {:?} has multiplicity {} in V{:?} but dim Z[δ] = {delta_dim}",
                e.weight, e.multiplicity, v.lambda.0
            )));
        }
        out.push(KTypeBound { weight: e.weight.clone(), dim: e.dim, multiplicity: e.multiplicity, delta_dim });
    }
    Ok(out)
}
