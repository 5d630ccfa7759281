//! The group `M` through its lattice shadows: the signs `ε_i` (`i ∈ I_s`), the
//! lattice `Λ_{M_e}` of highest weights of `M_e`, fibers of
//! `λ ↦ (λ|F_s, λ|h_m)`, spherical weights and the minimal element of a fiber.
//!
//! A functional `ν` on `h_m` is stored as its values on the basis of `h_m`
//! (`h_i` for `i ∈ I_m`, then `h_{i_j} − h_{i_j'}` for the pairs).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::branching::{branch_kostant, BranchingReport, KStructure};
use crate::error::{Error, Result};
use crate::hwmodule::{build_irrep, HWModule};
use crate::realform::RealFormData;
use crate::rootsys::DominantWeight;
use crate::scalar::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonParity {
    /// 1-based simple root index `i ∈ I_s`.
    pub index: usize,
    /// Sign of `ε_i` on `v_λ`.
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MStructureData {
    pub ell_s: usize,
    pub epsilon_parity: Vec<EpsilonParity>,
    pub center_dim: usize,
    pub split_rank: usize,
    pub dim_m: usize,
    pub summary: String,
}

pub fn m_structure(rf: &RealFormData) -> MStructureData {
    let ell_s = rf.i_s.len();
    let epsilon_parity = rf
        .i_s
        .iter()
        .map(|&i| EpsilonParity { index: i + 1, rule: format!("(-1)^n{}(λ)", i + 1) })
        .collect();
    let summary = if ell_s == 0 { "M ≅ M_e".to_string() } else { format!("M ≅ Z_2^{ell_s} × M_e") };
    MStructureData {
        ell_s,
        epsilon_parity,
        center_dim: rf.center_dim,
        split_rank: rf.split_rank,
        dim_m: rf.m_basis.len(),
        summary,
    }
}

/// Signs `(−1)^{n_i(λ)}` for `i ∈ I_s`.
pub fn epsilon_signs(lambda: &DominantWeight, rf: &RealFormData) -> Vec<i8> {
    rf.i_s.iter().map(|&i| if lambda.0[i] % 2 == 0 { 1 } else { -1 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiberLabel {
    /// Character of `F_s` as signs indexed by `I_s` in increasing order.
    pub zeta: Vec<i8>,
    /// Values on the basis of `h_m`.
    pub nu: Vec<Rat>,
}

impl FiberLabel {
    pub fn trivial(rf: &RealFormData) -> Self {
        FiberLabel { zeta: vec![1; rf.i_s.len()], nu: vec![Rat::zero(); rf.h_m_basis.len()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.zeta.iter().all(|&z| z == 1) && self.nu.iter().all(Rat::is_zero)
    }
}

/// Position in the basis of `h_m` of `h_i` for `i ∈ I_m`.
fn position_of_coroot(rf: &RealFormData, i: usize) -> usize {
    rf.h_m_basis
        .iter()
        .position(|y| y.iter().enumerate().all(|(k, &c)| c == i64::from(k == i)))
        .expect("h_i is in the basis of h_m")
}

/// Position in the basis of `h_m` of `h_{i_j} − h_{i_j'}`.
fn position_of_pair(rf: &RealFormData, (a, b): (usize, usize)) -> usize {
    rf.h_m_basis
        .iter()
        .position(|y| y.iter().enumerate().all(|(k, &c)| c == i64::from(k == a) - i64::from(k == b)))
        .expect("pair difference is in the basis of h_m")
}

/// `λ|h_m = 0`, from `n_i(λ) = 0` on `I_m` and `n_{i_j}(λ) = n_{i_j'}(λ)` on the pairs.
pub fn m_trivial(lambda: &DominantWeight, rf: &RealFormData) -> bool {
    rf.i_m.iter().all(|&i| lambda.0[i] == 0) && rf.pairs.iter().all(|&(a, b)| lambda.0[a] == lambda.0[b])
}

/// `m` kills `v_λ`, evaluated on the module.
pub fn m_trivial_on_module(v: &HWModule, rf: &RealFormData) -> bool {
    let hv = v.highest_vector();
    rf.m_basis.iter().all(|x| v.action(x).apply(&hv).is_empty())
}

/// `ν ∈ Λ_{M_e}`: `ν(h_i) ∈ Z_+` for `i ∈ I_m`, `ν(h_{i_j} − h_{i_j'}) ∈ Z` for the pairs.
pub fn lambda_me_membership(nu: &[Rat], rf: &RealFormData) -> bool {
    if nu.len() != rf.h_m_basis.len() {
        return false;
    }
    rf.i_m.iter().all(|&i| {
        let v = &nu[position_of_coroot(rf, i)];
        v.is_integer() && !v.is_negative()
    }) && rf.pairs.iter().all(|&p| nu[position_of_pair(rf, p)].is_integer())
}

pub fn fiber_label(lambda: &DominantWeight, rf: &RealFormData) -> FiberLabel {
    FiberLabel {
        zeta: epsilon_signs(lambda, rf),
        nu: rf.weight_on_h_m(&lambda.0).into_iter().map(Rat::int).collect(),
    }
}

/// `n_i(λ)` even on `I_s`, zero on `I_m`, equal on each pair.
pub fn is_spherical(lambda: &DominantWeight, rf: &RealFormData) -> bool {
    rf.i_s.iter().all(|&i| lambda.0[i] % 2 == 0) && m_trivial(lambda, rf)
}

fn validate_label(label: &FiberLabel, rf: &RealFormData) -> Result<()> {
    if label.zeta.len() != rf.i_s.len() || label.zeta.iter().any(|&z| z != 1 && z != -1) {
        return Err(Error::InvalidLabel(format!(
            "ζ must be {} signs ±1, got {:?}",
            rf.i_s.len(),
            label.zeta
        )));
    }
    if !lambda_me_membership(&label.nu, rf) {
        return Err(Error::InvalidLabel(format!(
            "ν = {:?} is not in Λ_Me",
            label.nu.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// The unique minimal element of the fiber over `(ζ, ν)`.
pub fn minimal_fiber_element(label: &FiberLabel, rf: &RealFormData) -> Result<DominantWeight> {
    validate_label(label, rf)?;
    let mut n = vec![0i64; rf.rank()];
    for (k, &i) in rf.i_s.iter().enumerate() {
        n[i] = i64::from(label.zeta[k] == -1);
    }
    for &i in &rf.i_m {
        n[i] = label.nu[position_of_coroot(rf, i)].to_i64().expect("integral");
    }
    for &(a, b) in &rf.pairs {
        let d = label.nu[position_of_pair(rf, (a, b))].to_i64().expect("integral");
        if d >= 0 {
            n[a] = d;
        } else {
            n[b] = -d;
        }
    }
    let lambda = DominantWeight(n);
    if fiber_label(&lambda, rf) != *label {
        return Err(Error::IdentityViolation(format!("minimal element {:?} is not in its fiber", lambda.0)));
    }
    Ok(lambda)
}

/// `λ^a ≤ λ^b` when `λ^b − λ^a` is dominant.
pub fn precedes(a: &DominantWeight, b: &DominantWeight) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| y >= x)
}

/// Every dominant `λ` with `Σ n_i ≤ bound` in the fiber over `label`, checked
/// against the translate of the spherical weights by the minimal element.
pub fn fiber_enumerate(label: &FiberLabel, bound: i64, rf: &RealFormData) -> Result<Vec<DominantWeight>> {
    let lmin = minimal_fiber_element(label, rf)?;
    let all = DominantWeight::all_up_to(rf.rank(), bound);
    let fiber: Vec<DominantWeight> = all.iter().filter(|l| fiber_label(l, rf) == *label).cloned().collect();
    let translate: BTreeSet<Vec<i64>> = all
        .iter()
        .filter(|l| is_spherical(l, rf))
        .map(|s| s.0.iter().zip(&lmin.0).map(|(a, b)| a + b).collect::<Vec<_>>())
        .filter(|l: &Vec<i64>| l.iter().sum::<i64>() <= bound)
        .collect();
    let got: BTreeSet<Vec<i64>> = fiber.iter().map(|l| l.0.clone()).collect();
    if got != translate {
        return Err(Error::IdentityViolation(format!(
            "fiber {got:?} differs from λ_min + spherical {translate:?}"
        )));
    }
    if let Some(bad) = fiber.iter().find(|l| !precedes(&lmin, l)) {
        return Err(Error::IdentityViolation(format!("{:?} does not dominate the minimal element {:?}", bad.0, lmin.0)));
    }
    Ok(fiber)
}

/// Multiplicities in `branch(V_λ)` dominate those of the minimal element of its fiber.
pub fn verify_spectrum_domination(
    lambda: &DominantWeight,
    rf: &RealFormData,
    ks: &KStructure,
) -> Result<(BranchingReport, BranchingReport)> {
    let lmin = minimal_fiber_element(&fiber_label(lambda, rf), rf)?;
    let big = branch_kostant(&build_irrep(&rf.g, lambda)?, rf, ks)?;
    let small = branch_kostant(&build_irrep(&rf.g, &lmin)?, rf, ks)?;
    for e in &small.entries {
        let m = big.multiplicity(&e.weight);
        if m < e.multiplicity {
            return Err(Error::IdentityViolation(format!(
                "k-type {:?} has multiplicity {m} in V{:?} but {} in V{:?}",
                e.weight, lambda.0, e.multiplicity, lmin.0
            )));
        }
    }
    Ok((big, small))
}

/// The fundamental weight `λ_i`.
pub fn fundamental_weight(rank: usize, i: usize) -> DominantWeight {
    DominantWeight((0..rank).map(|k| i64::from(k == i)).collect())
}
