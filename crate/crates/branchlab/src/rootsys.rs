//! Root systems given by a Cartan matrix.
//!
//! Conventions: `cartan[i][j] = ⟨α_i, α_j^∨⟩ = α_i(h_j)`. Roots are integer
//! vectors in the simple-root basis, weights are vectors in the fundamental
//! weight basis, so the `j`-th weight coordinate is the value on `h_j`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let cm = CartanMatrix { entries };
        cm.validate()?;
        Ok(cm)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn type_a(n: usize) -> Self {
        let mut e = vec![vec![0; n]; n];
        for i in 0..n {
            e[i][i] = 2;
            if i + 1 < n {
                e[i][i + 1] = -1;
                e[i + 1][i] = -1;
            }
        }
        CartanMatrix { entries: e }
    }

    /// `α_1` long, `α_2` short.
    pub fn type_b2() -> Self {
        CartanMatrix { entries: vec![vec![2, -2], vec![-1, 2]] }
    }

    /// `α_1` short, `α_2` long.
    pub fn type_c2() -> Self {
        CartanMatrix { entries: vec![vec![2, -1], vec![-2, 2]] }
    }

    /// `α_1` short, `α_2` long.
    pub fn type_g2() -> Self {
        CartanMatrix { entries: vec![vec![2, -1], vec![-3, 2]] }
    }

    /// Looks up a named type such as `A2`, `B2`, `C2`, `G2`.
    pub fn named(name: &str) -> Result<Self> {
        let t = name.trim().to_ascii_uppercase();
        let (letter, n) = t.split_at(1);
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("unknown algebra {name:?}")))?;
        match (letter, n) {
            ("A", n) if n >= 1 => Ok(Self::type_a(n)),
            ("B", 2) => Ok(Self::type_b2()),
            ("C", 2) => Ok(Self::type_c2()),
            ("G", 2) => Ok(Self::type_g2()),
            _ => Err(Error::Parse(format!("unsupported algebra {name:?}"))),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let (a, b) = (self.rank(), other.rank());
        let mut e = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                e[i][j] = self.entries[i][j];
            }
        }
        for i in 0..b {
            for j in 0..b {
                e[a + i][a + j] = other.entries[i][j];
            }
        }
        CartanMatrix { entries: e }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotFiniteType("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::NotFiniteType(format!("diagonal entry ({i},{j}) is {x}")));
                }
                if i != j && x > 0 {
                    return Err(Error::NotFiniteType(format!("off-diagonal entry ({i},{j}) is positive")));
                }
                if i != j && (x == 0) != (self.entries[j][i] == 0) {
                    return Err(Error::NotFiniteType(format!("zero pattern is not symmetric at ({i},{j})")));
                }
            }
        }
        for mask in 1u32..(1u32 << n) {
            let idx: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            let sub: Vec<Vec<Rat>> =
                idx.iter().map(|&i| idx.iter().map(|&j| Rat::int(self.entries[i][j])).collect()).collect();
            if determinant(sub) <= Rat::zero() {
                return Err(Error::NotFiniteType(format!("principal minor on {idx:?} is not positive")));
            }
        }
        Ok(())
    }
}

/// Exact determinant by elimination.
pub fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det = &det * &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = t;
            }
        }
    }
    det
}

/// Dominant integral weight in fundamental coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight(pub Vec<i64>);

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|&x| x < 0) {
            return Err(Error::NotDominant(format!("coefficient {} of {coeffs:?} is negative", k + 1)));
        }
        Ok(DominantWeight(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All dominant weights of the given rank with coefficient sum at most `bound`.
    pub fn all_up_to(rank: usize, bound: i64) -> Vec<DominantWeight> {
        let mut out = vec![Vec::new()];
        for _ in 0..rank {
            let mut next = Vec::new();
            for v in &out {
                let used: i64 = v.iter().sum();
                for x in 0..=(bound - used) {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        let mut out: Vec<DominantWeight> = out.into_iter().map(DominantWeight).collect();
        out.sort_by_key(|w| (w.level(), std::cmp::Reverse(w.0.clone())));
        out
    }
}

/// Fundamental coordinates of a weight together with a dominance flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub coeffs: Vec<i64>,
    pub dominant: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanMatrix,
    /// Positive roots, sorted by height; the simple roots come first.
    pub positive: Vec<Vec<i64>>,
    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub form: Vec<Vec<Rat>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(cartan: &CartanMatrix) -> Result<Self> {
        cartan.validate()?;
        let n = cartan.rank();
        let mut positive: Vec<Vec<i64>> = Vec::new();
        let mut known: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        while !frontier.is_empty() {
            frontier.sort_by(|a, b| b.cmp(a));
            frontier.dedup();
            for r in &frontier {
                known.insert(r.clone());
                positive.push(r.clone());
            }
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..n).map(|k| beta[k] * cartan.a(k, i)).sum();
                    if p - pair > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.push(up);
                    }
                }
            }
            frontier = next;
        }
        let form = symmetrized_form(cartan);
        let mut rs = RootSystem { cartan: cartan.clone(), positive, form, index: HashMap::new() };
        rs.reindex();
        Ok(rs)
    }

    fn reindex(&mut self) {
        let np = self.positive.len();
        self.index.clear();
        for (k, r) in self.positive.iter().enumerate() {
            self.index.insert(r.clone(), k);
            self.index.insert(r.iter().map(|x| -x).collect(), np + k);
        }
    }

    /// Replaces the inner product on the root space, keeping the roots.
    pub fn with_form(mut self, form: Vec<Vec<Rat>>) -> Self {
        self.form = form;
        self
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// All roots: positive roots followed by their negatives in the same order.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        out
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `φ(h_j)` for a vector in root coordinates.
    pub fn pair(&self, phi: &[i64], j: usize) -> i64 {
        phi.iter().enumerate().map(|(k, x)| x * self.cartan.a(k, j)).sum()
    }

    /// Fundamental coordinates of a vector given in root coordinates.
    pub fn root_to_weight(&self, phi: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|j| self.pair(phi, j)).collect()
    }

    /// Fundamental coordinates of a rational vector in root coordinates.
    pub fn root_to_weight_rat(&self, phi: &[Rat]) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                phi.iter()
                    .enumerate()
                    .fold(Rat::zero(), |acc, (k, x)| &acc + &(x * &Rat::int(self.cartan.a(k, j))))
            })
            .collect()
    }

    /// Root coordinates of a weight given in fundamental coordinates.
    pub fn weight_to_root(&self, w: &[Rat]) -> Vec<Rat> {
        let n = self.rank();
        // Solve x·A = w.
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rat> = (0..n).map(|k| Rat::int(self.cartan.a(k, j))).collect();
                row.push(w[j].clone());
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("Cartan matrix is invertible");
            m.swap(p, c);
            let piv = m[c][c].clone();
            for k in c..=n {
                m[c][k] = &m[c][k] / &piv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = &m[r][k] - &(&f * &m[c][k]);
                        m[r][k] = t;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n].clone()).collect()
    }

    /// `(x, y)` for vectors in root coordinates.
    pub fn inner_roots(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() {
                    acc = &acc + &(&(&x[i] * &self.form[i][j]) * &y[j]);
                }
            }
        }
        acc
    }

    /// `(λ, μ)` for weights in fundamental coordinates.
    pub fn inner_weights(&self, l: &[Rat], m: &[Rat]) -> Rat {
        self.inner_roots(&self.weight_to_root(l), &self.weight_to_root(m))
    }

    pub fn root_norm(&self, phi: &[i64]) -> Rat {
        let v: Vec<Rat> = phi.iter().map(|&x| Rat::int(x)).collect();
        self.inner_roots(&v, &v)
    }

    /// Coordinates of the coroot `h_φ` in the basis `h_1, …, h_ℓ`.
    pub fn coroot(&self, phi: &[i64]) -> Vec<i64> {
        let n = self.root_norm(phi);
        (0..self.rank())
            .map(|i| {
                let c = &(&Rat::int(phi[i]) * &self.form[i][i]) / &n;
                c.to_i64().expect("coroot coordinates are integers")
            })
            .collect()
    }

    /// `⟨λ, h_φ⟩` for a weight in fundamental coordinates.
    pub fn pair_coroot(&self, lambda: &[i64], phi: &[i64]) -> i64 {
        self.coroot(phi).iter().zip(lambda).map(|(c, l)| c * l).sum()
    }

    /// Simple reflection of a weight in fundamental coordinates.
    pub fn reflect_weight(&self, i: usize, w: &[i64]) -> Vec<i64> {
        let a = self.cartan.entries[i].clone();
        w.iter().zip(&a).map(|(x, ai)| x - w[i] * ai).collect()
    }

    /// Simple reflection of a vector in root coordinates.
    pub fn reflect_root(&self, i: usize, r: &[i64]) -> Vec<i64> {
        let mut out = r.to_vec();
        out[i] -= self.pair(r, i);
        out
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    /// A reduced word `[i_1, …, i_k]` for the longest Weyl group element,
    /// meaning `κ = s_{i_k} ⋯ s_{i_1}` (apply `i_1` first).
    pub fn longest_word(&self) -> Vec<usize> {
        let mut w = self.rho();
        let mut word = Vec::new();
        while let Some(i) = w.iter().position(|&x| x > 0) {
            w = self.reflect_weight(i, &w);
            word.push(i);
        }
        word
    }

    /// `κλ` for the longest element `κ` of the Weyl group.
    pub fn longest_element_action(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        for i in self.longest_word() {
            v = self.reflect_weight(i, &v);
        }
        v
    }

    /// Highest weight of the dual module, `−κλ`.
    pub fn dual_weight(&self, l: &DominantWeight) -> DominantWeight {
        DominantWeight(self.longest_element_action(&l.0).into_iter().map(|x| -x).collect())
    }

    /// Expresses a weight, given in root coordinates, in fundamental coordinates.
    pub fn decompose_dominant(&self, root_coords: &[Rat]) -> Result<Decomposition> {
        let w = self.root_to_weight_rat(root_coords);
        let mut coeffs = Vec::with_capacity(w.len());
        for x in &w {
            match x.to_i64() {
                Some(k) => coeffs.push(k),
                None => return Err(Error::NotIntegral(format!("coefficient {x} is not an integer"))),
            }
        }
        let dominant = coeffs.iter().all(|&x| x >= 0);
        Ok(Decomposition { coeffs, dominant })
    }

    /// Weyl group elements as integer matrices acting on fundamental coordinates,
    /// each with its length. Enumerated exhaustively; intended for rank at most four.
    pub fn weyl_group(&self) -> Vec<(Vec<Vec<i64>>, usize)> {
        let n = self.rank();
        let ident: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let rho = self.rho();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(rho.clone());
        let mut out = vec![(ident.clone(), 0)];
        let mut queue = VecDeque::from([(ident, 0usize)]);
        while let Some((m, len)) = queue.pop_front() {
            for i in 0..n {
                // s_i ∘ m, applied to columns.
                let cols: Vec<Vec<i64>> =
                    (0..n).map(|c| self.reflect_weight(i, &(0..n).map(|r| m[r][c]).collect::<Vec<_>>())).collect();
                let nm: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect();
                let image: Vec<i64> = (0..n).map(|r| (0..n).map(|c| nm[r][c] * rho[c]).sum()).collect();
                if seen.insert(image) {
                    out.push((nm.clone(), len + 1));
                    queue.push_back((nm, len + 1));
                }
            }
        }
        out
    }

    /// Dimension of the irreducible module of highest weight `λ`.
    pub fn weyl_dimension(&self, l: &[i64]) -> u128 {
        let mut num = Rat::one();
        for phi in &self.positive {
            let c = self.coroot(phi);
            let a: i64 = c.iter().zip(l).map(|(x, y)| x * (y + 1)).sum();
            let b: i64 = c.iter().sum();
            num = &num * &Rat::new(a, b);
        }
        num.to_i64().expect("Weyl dimension is an integer") as u128
    }

    /// All dominant weights whose module has dimension at most `cap`, sorted by level.
    pub fn dominant_weights_with_dim_at_most(&self, cap: u128) -> Vec<DominantWeight> {
        let n = self.rank();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([vec![0i64; n]]);
        seen.insert(vec![0i64; n]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                let mut next = w.clone();
                next[i] += 1;
                if !seen.contains(&next) && self.weyl_dimension(&next) <= cap {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<DominantWeight> = seen.into_iter().map(DominantWeight).collect();
        out.sort_by_key(|w| (w.level(), std::cmp::Reverse(w.0.clone())));
        out
    }
}

/// `(α_i, α_j) = A_{ij}·d_j` with `d_j = (α_j, α_j)/2`, normalized so the
/// shortest root in each component has square length 2.
fn symmetrized_form(cm: &CartanMatrix) -> Vec<Vec<Rat>> {
    let n = cm.rank();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && cm.a(i, j) != 0 && d[j].is_none() {
                    // A_ij d_j = A_ji d_i
                    let dj = &(d[i].as_ref().unwrap() * &Rat::int(cm.a(j, i))) / &Rat::int(cm.a(i, j));
                    d[j] = Some(dj);
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        let min = comp.iter().map(|&k| d[k].clone().unwrap()).min().unwrap();
        for &k in &comp {
            d[k] = Some(&d[k].clone().unwrap() / &min);
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| &Rat::int(cm.a(i, j)) * d[j].as_ref().unwrap()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let cases = [
            (CartanMatrix::type_a(1), 1),
            (CartanMatrix::type_a(2), 3),
            (CartanMatrix::type_a(3), 6),
            (CartanMatrix::type_b2(), 4),
            (CartanMatrix::type_c2(), 4),
            (CartanMatrix::type_g2(), 6),
        ];
        for (cm, np) in cases {
            assert_eq!(RootSystem::new(&cm).unwrap().num_positive(), np);
        }
    }

    #[test]
    fn rank_zero() {
        let rs = RootSystem::new(&CartanMatrix { entries: vec![] }).unwrap();
        assert_eq!(rs.num_positive(), 0);
        assert_eq!(rs.weyl_dimension(&[]), 1);
        assert!(rs.longest_word().is_empty());
    }

    #[test]
    fn rejects_affine() {
        let cm = CartanMatrix { entries: vec![vec![2, -2], vec![-2, 2]] };
        assert!(matches!(cm.validate(), Err(Error::NotFiniteType(_))));
    }
}
