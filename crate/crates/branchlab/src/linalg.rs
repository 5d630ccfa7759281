//! Exact sparse linear algebra over Gaussian rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::scalar::{Rat, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SVec = Vec<(usize, Scalar)>;

pub fn unit(k: usize) -> SVec {
    vec![(k, Scalar::one())]
}

pub fn from_dense(v: &[Scalar]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn get(v: &SVec, k: usize) -> Scalar {
    match v.binary_search_by_key(&k, |(j, _)| *j) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Scalar::zero(),
    }
}

/// `a + c·b`.
pub fn axpy(a: &SVec, c: &Scalar, b: &SVec) -> SVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + &(c * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add(a: &SVec, b: &SVec) -> SVec {
    axpy(a, &Scalar::one(), b)
}

pub fn sub(a: &SVec, b: &SVec) -> SVec {
    axpy(a, &Scalar::int(-1), b)
}

pub fn scale(v: &SVec, c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

pub fn dot(a: &SVec, b: &SVec) -> Scalar {
    let mut acc = Scalar::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Linear combination `Σ c_k v_k`.
pub fn combine<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a SVec)>) -> SVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (k, x) in v {
            let e = acc.entry(*k).or_insert_with(Scalar::zero);
            *e += &(c * x);
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SMat {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SVec>,
}

impl SMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SMat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        SMat { nrows: n, ncols: n, rows: (0..n).map(unit).collect() }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        if c.is_zero() {
            return SMat::zero(n, n);
        }
        SMat { nrows: n, ncols: n, rows: (0..n).map(|k| vec![(k, c.clone())]).collect() }
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let rows = d
            .iter()
            .enumerate()
            .map(|(k, x)| if x.is_zero() { Vec::new() } else { vec![(k, x.clone())] })
            .collect();
        SMat { nrows: n, ncols: n, rows }
    }

    pub fn from_dense(m: &[Vec<Scalar>], ncols: usize) -> Self {
        SMat { nrows: m.len(), ncols, rows: m.iter().map(|r| from_dense(r)).collect() }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(cols: &[SVec], nrows: usize) -> Self {
        let mut rows = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                rows[*i].push((j, x.clone()));
            }
        }
        SMat { nrows, ncols: cols.len(), rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| to_dense(r, self.ncols)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        get(&self.rows[i], j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SMat {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                rows[*j].push((i, x.clone()));
            }
        }
        SMat { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn columns(&self) -> Vec<SVec> {
        self.transpose().rows
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        assert!(v.last().map_or(true, |(k, _)| *k < self.ncols), "dimension mismatch");
        let mut lookup: Vec<Option<&Scalar>> = vec![None; self.ncols];
        for (k, x) in v {
            lookup[*k] = Some(x);
        }
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (j, a) in r {
                if let Some(x) = lookup[*j] {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    pub fn mul(&self, other: &SMat) -> SMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| combine(r.iter().map(|(k, a)| (a, &other.rows[*k]))))
            .collect();
        SMat { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn axpy(&self, c: &Scalar, other: &SMat) -> SMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "dimension mismatch");
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, c, b)).collect();
        SMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, other: &SMat) -> SMat {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SMat) -> SMat {
        self.axpy(&Scalar::int(-1), other)
    }

    pub fn scale(&self, c: &Scalar) -> SMat {
        SMat { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| scale(r, c)).collect() }
    }

    pub fn commutator(&self, other: &SMat) -> SMat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, r) in self.rows.iter().enumerate() {
            acc += &get(r, i);
        }
        acc
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(mats: &[&SMat]) -> SMat {
        let ncols = mats.first().map_or(0, |m| m.ncols);
        let mut rows = Vec::new();
        for m in mats {
            assert_eq!(m.ncols, ncols, "dimension mismatch");
            rows.extend(m.rows.iter().cloned());
        }
        SMat { nrows: rows.len(), ncols, rows }
    }
}

/// Incremental row echelon form. Every stored row has leading coefficient one
/// and no entries in the pivot columns of rows stored before it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub ncols: usize,
    rows: Vec<SVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SVec) -> SVec {
        let mut pos = 0;
        while pos < v.len() {
            let (col, coef) = (v[pos].0, v[pos].1.clone());
            if let Some(&r) = self.pivot_row.get(&col) {
                v = axpy(&v, &(-&coef), &self.rows[r]);
            } else {
                pos += 1;
            }
        }
        v
    }

    /// Adds a row; returns false when it is dependent on the stored rows.
    pub fn insert(&mut self, v: SVec) -> bool {
        let v = self.reduce(v);
        let Some((col, lead)) = v.first().cloned() else {
            return false;
        };
        let v = scale(&v, &lead.inv());
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn rref(&self) -> Vec<SVec> {
        let order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        let mut done: BTreeMap<usize, SVec> = BTreeMap::new();
        for &(col, r) in order.iter().rev() {
            let mut v = self.rows[r].clone();
            let mut pos = 1;
            while pos < v.len() {
                let (c, coef) = (v[pos].0, v[pos].1.clone());
                if let Some(w) = done.get(&c) {
                    v = axpy(&v, &(-&coef), w);
                } else {
                    pos += 1;
                }
            }
            done.insert(col, v);
        }
        done.into_values().collect()
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows, by
    /// back substitution, one vector per free column.
    pub fn kernel(&self) -> Vec<SVec> {
        let order: Vec<(usize, usize)> = self.pivot_row.iter().rev().map(|(c, r)| (*c, *r)).collect();
        (0..self.ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|f| {
                let mut x: BTreeMap<usize, Scalar> = BTreeMap::from([(f, Scalar::one())]);
                for &(p, r) in &order {
                    if p > f {
                        continue;
                    }
                    let mut acc = Scalar::zero();
                    for (c, a) in &self.rows[r][1..] {
                        if let Some(v) = x.get(c) {
                            acc -= &(a * v);
                        }
                    }
                    if !acc.is_zero() {
                        x.insert(p, acc);
                    }
                }
                x.into_iter().collect()
            })
            .collect()
    }
}

/// Null space of a matrix.
pub fn kernel(m: &SMat) -> Vec<SVec> {
    let mut e = Echelon::new(m.ncols);
    for r in &m.rows {
        e.insert(r.clone());
    }
    e.kernel()
}

pub fn rank(m: &SMat) -> usize {
    let mut e = Echelon::new(m.ncols);
    for r in &m.rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Rank of a family of vectors.
pub fn rank_of(vs: &[SVec], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vs {
        e.insert(v.clone());
    }
    e.rank()
}

/// Prime used for modular rank bounds; `p ≡ 1 (mod 4)` so `i` has an image.
pub const MOD_P: u64 = 998_244_353;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= MOD_P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % MOD_P;
        }
        b = b * b % MOD_P;
        e >>= 1;
    }
    r
}

fn inv_mod(x: u64) -> u64 {
    pow_mod(x, MOD_P - 2)
}

fn rat_mod_p(r: &Rat) -> Option<u64> {
    let p = BigInt::from(MOD_P);
    let reduce = |b: BigInt| -> u64 { (((b % &p) + &p) % &p).try_into().expect("residue fits") };
    let d = reduce(r.denom_big());
    (d != 0).then(|| reduce(r.numer_big()) * inv_mod(d) % MOD_P)
}

/// Image of a Gaussian rational in `F_p`, sending `i` to a square root of −1.
/// `None` when a denominator vanishes mod p.
pub fn scalar_mod_p(s: &Scalar) -> Option<u64> {
    let i = pow_mod(3, (MOD_P - 1) / 4);
    Some((rat_mod_p(&s.re)? + rat_mod_p(&s.im)? * i) % MOD_P)
}

pub type PVec = Vec<(usize, u64)>;

pub fn svec_mod_p(v: &SVec) -> Option<PVec> {
    let mut out = Vec::with_capacity(v.len());
    for (k, c) in v {
        let x = scalar_mod_p(c)?;
        if x != 0 {
            out.push((*k, x));
        }
    }
    Some(out)
}

/// `a + c·b` over `F_p`.
pub fn paxpy(a: &PVec, c: u64, b: &PVec) -> PVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (k, x) = match (a.get(i), b.get(j)) {
            (Some(&(ka, xa)), Some(&(kb, xb))) if ka == kb => {
                i += 1;
                j += 1;
                (ka, (xa + c * xb) % MOD_P)
            }
            (Some(&(ka, xa)), Some(&(kb, _))) if ka < kb => {
                i += 1;
                (ka, xa)
            }
            (Some(&(ka, xa)), None) => {
                i += 1;
                (ka, xa)
            }
            (_, Some(&(kb, xb))) => {
                j += 1;
                (kb, c * xb % MOD_P)
            }
            (None, None) => unreachable!(),
        };
        if x != 0 {
            out.push((k, x));
        }
    }
    out
}

/// Rows of a matrix over `F_p`.
pub fn smat_mod_p(m: &SMat) -> Option<Vec<PVec>> {
    m.rows.iter().map(svec_mod_p).collect()
}

/// Product of a matrix over `F_p`, given by rows, with a vector.
pub fn papply(rows: &[PVec], v: &PVec) -> PVec {
    let dense: BTreeMap<usize, u64> = v.iter().copied().collect();
    rows.iter()
        .enumerate()
        .filter_map(|(i, row)| {
            let x = row.iter().fold(0u64, |acc, (k, a)| dense.get(k).map_or(acc, |b| (acc + a * b) % MOD_P));
            (x != 0).then_some((i, x))
        })
        .collect()
}

/// Rank over `F_p` of a family of vectors. It never exceeds the rank over `Q(i)`.
pub fn rank_mod_p(vs: &[PVec]) -> usize {
    let mut rows: Vec<PVec> = Vec::new();
    let mut pivot_row: BTreeMap<usize, usize> = BTreeMap::new();
    for v in vs {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.len() {
            let (col, coef) = v[pos];
            if let Some(&r) = pivot_row.get(&col) {
                v = paxpy(&v, MOD_P - coef, &rows[r]);
            } else {
                pos += 1;
            }
        }
        if let Some(&(col, lead)) = v.first() {
            let inv = inv_mod(lead);
            pivot_row.insert(col, rows.len());
            rows.push(v.into_iter().map(|(k, x)| (k, x * inv % MOD_P)).collect());
        }
    }
    rows.len()
}

/// A spanning set under construction that can express vectors in terms of
/// the independent vectors inserted so far.
#[derive(Clone, Debug, Default)]
pub struct Span {
    pub ncols: usize,
    rows: Vec<(SVec, SVec)>,
    pivot_row: BTreeMap<usize, usize>,
    count: usize,
}

impl Span {
    pub fn new(ncols: usize) -> Self {
        Span { ncols, rows: Vec::new(), pivot_row: BTreeMap::new(), count: 0 }
    }

    pub fn dim(&self) -> usize {
        self.count
    }

    fn reduce(&self, mut v: SVec) -> (SVec, SVec) {
        let mut combo: SVec = Vec::new();
        let mut pos = 0;
        while pos < v.len() {
            let (col, coef) = (v[pos].0, v[pos].1.clone());
            if let Some(&r) = self.pivot_row.get(&col) {
                let (row, c) = &self.rows[r];
                v = axpy(&v, &(-&coef), row);
                combo = axpy(&combo, &coef, c);
            } else {
                pos += 1;
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns its index among the independent vectors, or
    /// `None` if it already lies in the span.
    pub fn insert(&mut self, v: SVec) -> Option<usize> {
        let (res, combo) = self.reduce(v);
        let (col, lead) = res.first().cloned()?;
        let k = self.count;
        let inv = lead.inv();
        // res = v - combo, with v the k-th independent vector.
        let c = scale(&axpy(&unit(k), &Scalar::int(-1), &combo), &inv);
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push((scale(&res, &inv), c));
        self.count += 1;
        Some(k)
    }

    /// Coordinates of `v` in terms of the independent vectors, if `v` is in the span.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        let (res, combo) = self.reduce(v.clone());
        if res.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(d: &[i64]) -> SVec {
        from_dense(&d.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = SMat { nrows: 2, ncols: 3, rows: vec![sv(&[1, 2, 3]), sv(&[2, 4, 6])] };
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn span_coordinates() {
        let mut s = Span::new(3);
        assert_eq!(s.insert(sv(&[1, 1, 0])), Some(0));
        assert_eq!(s.insert(sv(&[0, 1, 1])), Some(1));
        assert_eq!(s.insert(sv(&[1, 2, 1])), None);
        let c = s.coords(&sv(&[2, 5, 3])).unwrap();
        assert_eq!(to_dense(&c, 2), vec![Scalar::int(2), Scalar::int(3)]);
        assert!(s.coords(&sv(&[0, 0, 1])).is_none());
    }
}
