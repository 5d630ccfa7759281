//! The polynomials `q_{λ,i}`, the elements `z_i ∈ k`, and the generators of the
//! annihilator of `v_λ` in `U(k)`, checked by exact evaluation on `V_λ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::checks::Check;
use crate::chevalley::{elem_add, elem_is_zero, Elem};
use crate::error::{Error, Result};
use crate::hwmodule::HWModule;
use crate::linalg::{self, SMat, SVec};
use crate::realform::RealFormData;
use crate::rootsys::DominantWeight;
use crate::scalar::{Rat, Scalar};

/// A monic polynomial in one variable with integer roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomial {
    pub owner: usize,
    /// Roots with multiplicity.
    pub roots: Vec<i64>,
}

impl QPolynomial {
    pub fn from_roots(owner: usize, roots: Vec<i64>) -> Self {
        QPolynomial { owner, roots }
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> Vec<Scalar> {
        let mut coeffs = vec![Scalar::one()];
        for &r in &self.roots {
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * &Scalar::int(r));
            }
            coeffs = next;
        }
        coeffs
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.roots.iter().fold(Scalar::one(), |acc, &r| &acc * &(t - &Scalar::int(r)))
    }

    /// `q(A) v`, evaluated as a product of linear factors. The factors commute,
    /// so they are applied in an order chosen over `F_p` to reach zero early.
    pub fn apply(&self, a: &SMat, v: &SVec) -> SVec {
        let order = self.factor_order(a, v);
        if let Some(w) = apply_integral(a, v, &order) {
            return w;
        }
        let mut w = v.clone();
        for r in order {
            if w.is_empty() {
                break;
            }
            let aw = a.apply(&w);
            w = if r == 0 { aw } else { linalg::axpy(&aw, &Scalar::int(-r), &w) };
        }
        w
    }

    /// Roots ordered greedily by the support of the image over `F_p`.
    fn factor_order(&self, a: &SMat, v: &SVec) -> Vec<i64> {
        let (Some(rows), Some(mut cur)) = (linalg::smat_mod_p(a), linalg::svec_mod_p(v)) else {
            return self.roots.clone();
        };
        let mut remaining = self.roots.clone();
        let mut order = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() && !cur.is_empty() {
            let av = linalg::papply(&rows, &cur);
            let mut distinct = remaining.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let (best, image) = distinct
                .into_iter()
                .map(|r| {
                    let neg = (linalg::MOD_P as i64 - r).rem_euclid(linalg::MOD_P as i64) as u64;
                    (r, linalg::paxpy(&av, neg, &cur))
                })
                .min_by_key(|(_, img)| img.len())
                .expect("nonempty");
            let k = remaining.iter().position(|&x| x == best).expect("present");
            remaining.remove(k);
            order.push(best);
            cur = image;
        }
        order.extend(remaining);
        order
    }

    /// The quotient by `t − r` for a root `r`.
    pub fn without_root(&self, r: i64) -> Option<QPolynomial> {
        let k = self.roots.iter().position(|&x| x == r)?;
        let mut roots = self.roots.clone();
        roots.remove(k);
        Some(QPolynomial::from_roots(self.owner, roots))
    }
}

/// Expanded form up to degree 8, factored form above.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() > 8 {
            let zeros = self.roots.iter().filter(|&&r| r == 0).count();
            let mut s = match zeros {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            for &r in self.roots.iter().filter(|&&r| r != 0) {
                if r > 0 {
                    s.push_str(&format!("(t - {r})"));
                } else {
                    s.push_str(&format!("(t + {})", -r));
                }
            }
            return write!(f, "{s}");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let coef = if k > 0 && c.is_one() {
                String::new()
            } else if k > 0 && *c == Scalar::int(-1) {
                "-".to_string()
            } else {
                c.to_string()
            };
            terms.push(format!("{coef}{mono}"));
        }
        let s = terms.join(" + ").replace("+ -", "- ");
        write!(f, "{s}")
    }
}

/// `q_{λ,i}`: roots `n, n−2, …, −n` for `i ∈ I_s` and `t^{n+1}` otherwise, with `n = n_i(λ)`.
type GaussInt = (BigInt, BigInt);

fn small_gauss(x: &Scalar) -> Option<(i64, i64)> {
    Some((x.re.is_integer().then(|| x.re.to_i64())??, x.im.is_integer().then(|| x.im.to_i64())??))
}

fn big_gauss(x: &Scalar) -> Option<GaussInt> {
    (x.re.is_integer() && x.im.is_integer()).then(|| (x.re.numer_big(), x.im.numer_big()))
}

/// `Π (A − r) v` in Gaussian integer arithmetic, when `A` has small Gaussian
/// integer entries and `v` has Gaussian integer entries.
fn apply_integral(a: &SMat, v: &SVec, order: &[i64]) -> Option<SVec> {
    let rows: Vec<Vec<(usize, i64, i64)>> = a
        .rows
        .iter()
        .map(|row| row.iter().map(|(k, x)| small_gauss(x).map(|(re, im)| (*k, re, im))).collect())
        .collect::<Option<_>>()?;
    let mut w: Vec<GaussInt> = vec![(BigInt::zero(), BigInt::zero()); a.ncols];
    for (k, x) in v {
        w[*k] = big_gauss(x)?;
    }
    for &r in order {
        if w.iter().all(|(re, im)| re.is_zero() && im.is_zero()) {
            break;
        }
        w = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
                for &(k, are, aim) in row {
                    let (wre, wim) = &w[k];
                    if are != 0 {
                        re += wre * are;
                        im += wim * are;
                    }
                    if aim != 0 {
                        re -= wim * aim;
                        im += wre * aim;
                    }
                }
                if r != 0 && i < w.len() {
                    re -= &w[i].0 * r;
                    im -= &w[i].1 * r;
                }
                (re, im)
            })
            .collect();
    }
    let to_rat = |x: BigInt| Rat::from_big(BigRational::from_integer(x));
    Some(
        w.into_iter()
            .enumerate()
            .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
            .map(|(k, (re, im))| (k, Scalar::complex(to_rat(re), to_rat(im))))
            .collect(),
    )
}

pub fn q_polynomial(rf: &RealFormData, lambda: &DominantWeight, i: usize) -> QPolynomial {
    let n = lambda.0[i];
    let roots = if rf.i_s.contains(&i) { (0..=n).map(|j| n - 2 * j).collect() } else { vec![0; n as usize + 1] };
    QPolynomial::from_roots(i, roots)
}

/// `z_i = e_{−α_i} + θ(e_{−α_i})` for `i ∈ I_n`, certified: fixed by `θ`,
/// `(z_i, z_i) = (h_i, h_i)` for `i ∈ I_s`, nilpotent otherwise.
pub fn z_vector(rf: &RealFormData, i: usize) -> Result<Elem> {
    let g = &rf.g;
    let z = rf
        .z
        .get(&i)
        .cloned()
        .ok_or_else(|| Error::InvalidLabel(format!("index {} is in I_m; z_i is defined for I_n only", i + 1)))?;
    if rf.theta_elem(&z) != z {
        return Err(Error::NormalizationFailure(format!("z_{} is not fixed by θ", i + 1)));
    }
    if rf.i_s.contains(&i) {
        let h = g.h(i);
        if g.killing_form(&z, &z) != g.killing_form(&h, &h) {
            return Err(Error::NormalizationFailure(format!("(z_{0}, z_{0}) ≠ (h_{0}, h_{0})", i + 1)));
        }
    } else {
        let f = g.e(&g.rs.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>());
        if !elem_is_zero(&g.bracket(&f, &rf.theta_elem(&f))) {
            return Err(Error::NormalizationFailure(format!("e_-α{0} and θ(e_-α{0}) do not commute", i + 1)));
        }
        let ad = g.ad(&z);
        let mut p = ad.clone();
        for _ in 0..g.dim() {
            p = p.mul(&ad);
        }
        if !p.is_zero() {
            return Err(Error::NormalizationFailure(format!("z_{} is not nilpotent", i + 1)));
        }
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// `e_{−α_i}^{n_i(λ)+1}` for `i ∈ I_m`.
    MLowering { i: usize, power: u32 },
    /// `y_j − λ(y_j)` for the basis of `h_m`.
    CartanShift { j: usize, value: i64 },
    /// `e_{α_i}` for `i ∈ I_m`.
    MRaising { i: usize },
    /// `q_{λ,i}(z_i)` for `i ∈ I_n`.
    Kostant { q: QPolynomial },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub label: String,
}

/// The generator set of the annihilator of `v_λ` in `U(k)`.
pub fn generator_set(rf: &RealFormData, lambda: &DominantWeight) -> Vec<Generator> {
    let mut out = Vec::new();
    for &i in &rf.i_m {
        let power = lambda.0[i] as u32 + 1;
        out.push(Generator { kind: GeneratorKind::MLowering { i, power }, label: format!("e_-a{}^{power}", i + 1) });
    }
    let values = rf.weight_on_h_m(&lambda.0);
    for (j, &value) in values.iter().enumerate() {
        out.push(Generator { kind: GeneratorKind::CartanShift { j, value }, label: format!("y{} - ({value})", j + 1) });
    }
    for &i in &rf.i_m {
        out.push(Generator { kind: GeneratorKind::MRaising { i }, label: format!("e_a{}", i + 1) });
    }
    for &i in &rf.i_n {
        let q = q_polynomial(rf, lambda, i);
        let label = format!("q(z{}) with q = {q}", i + 1);
        out.push(Generator { kind: GeneratorKind::Kostant { q }, label });
    }
    out
}

/// Applies a generator to a vector of `V`.
pub fn apply_generator(rf: &RealFormData, v: &HWModule, gen: &Generator, x: &SVec) -> Result<SVec> {
    let g = &rf.g;
    Ok(match &gen.kind {
        GeneratorKind::MLowering { i, power } => {
            let f = v.action(&g.e(&g.rs.simple_root(*i).iter().map(|x| -x).collect::<Vec<_>>()));
            let mut w = x.clone();
            for _ in 0..*power {
                w = f.apply(&w);
            }
            w
        }
        GeneratorKind::CartanShift { j, value } => {
            let y = v.action(&rf.h_m_elems()[*j]);
            linalg::axpy(&y.apply(x), &Scalar::int(-value), x)
        }
        GeneratorKind::MRaising { i } => v.action(&g.e(&g.rs.simple_root(*i))).apply(x),
        GeneratorKind::Kostant { q } => {
            let z = v.action(&z_vector(rf, q.owner)?);
            q.apply(&z, x)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorReport {
    pub generators: Vec<Check>,
    /// Degree-minimality diagnostics; informative only.
    pub probes: Vec<Check>,
}

/// Certifies that every generator annihilates `v_λ`, and records whether
/// lowering the degree of each `q_{λ,i}` loses the annihilation.
pub fn verify_annihilator(v: &HWModule, rf: &RealFormData) -> Result<AnnihilatorReport> {
    let lambda = &v.lambda;
    let hv = v.highest_vector();
    let mut generators = Vec::new();
    for gen in generator_set(rf, lambda) {
        let image = apply_generator(rf, v, &gen, &hv)?;
        generators.push(Check {
            name: gen.label.clone(),
            passed: image.is_empty(),
            detail: if image.is_empty() { String::new() } else { "does not annihilate v_λ".into() },
        });
    }
    let mut probes = Vec::new();
    for &i in &rf.i_n {
        let q = q_polynomial(rf, lambda, i);
        let z = v.action(&z_vector(rf, i)?);
        let full = krylov_rank_mod_p(&z, &hv, q.degree()) == Some(q.degree());
        if rf.i_s.contains(&i) {
            let mut distinct = q.roots.clone();
            distinct.dedup();
            for r in distinct {
                let survives = full || !q.without_root(r).expect("root present").apply(&z, &hv).is_empty();
                probes.push(Check { name: format!("q(z{})/(t - ({r})) keeps v_λ", i + 1), passed: survives, detail: String::new() });
            }
        } else if lambda.0[i] >= 1 {
            let lower = QPolynomial::from_roots(i, vec![0; lambda.0[i] as usize]);
            let survives = full || !lower.apply(&z, &hv).is_empty();
            probes.push(Check { name: format!("z{}^{} keeps v_λ", i + 1, lambda.0[i]), passed: survives, detail: String::new() });
        }
    }
    if let Some(bad) = generators.iter().find(|c| !c.passed) {
        return Err(Error::IdentityViolation(format!("generator {} does not annihilate v_λ for λ = {:?}", bad.name, lambda.0)));
    }
    Ok(AnnihilatorReport { generators, probes })
}

/// Rank over `F_p` of `v, Av, …, A^{d−1}v`. When it equals `d` and `q(A)v = 0`
/// with `deg q = d`, `q` is the minimal polynomial of `v`, so no proper
/// divisor of `q` kills `v`.
fn krylov_rank_mod_p(a: &SMat, v: &SVec, d: usize) -> Option<usize> {
    let rows = linalg::smat_mod_p(a)?;
    let mut w = linalg::svec_mod_p(v)?;
    let mut ws = Vec::with_capacity(d);
    for _ in 0..d {
        let next = linalg::papply(&rows, &w);
        ws.push(w);
        w = next;
    }
    Some(linalg::rank_mod_p(&ws))
}

/// `e_{−α} + θ(e_{−α})` for any positive root; for simple `α` in `I_nil` this is `z_i`.
pub fn z_of_root(rf: &RealFormData, phi: &[i64]) -> Elem {
    let f = rf.g.e(&phi.iter().map(|x| -x).collect::<Vec<_>>());
    elem_add(&f, &rf.theta_elem(&f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_expansion() {
        let q = QPolynomial::from_roots(0, vec![2, 0, -2]);
        assert_eq!(q.coeffs(), vec![Scalar::zero(), Scalar::int(-4), Scalar::zero(), Scalar::one()]);
        assert_eq!(q.to_string(), "t^3 - 4t");
        assert_eq!(QPolynomial::from_roots(0, vec![0, 0]).to_string(), "t^2");
        assert_eq!(q.eval(&Scalar::int(3)), Scalar::int(15));
    }
}
