//! Dense brute-force algebra for the oracle. Nothing here calls back into the engine except
//! the conversions that read engine data.

use std::collections::{BTreeMap, BTreeSet};

use msplect_core::{Form, MultiVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Exps = Vec<u32>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn parity(n: usize) -> Q {
    if n % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// `−(−1)^{k(k+1)/2}`.
pub fn zeta(k: usize) -> Q {
    -parity(k * (k + 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub dim: usize,
    pub terms: BTreeMap<Exps, Q>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn monomial(dim: usize, exps: Exps) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(exps, q(1));
        p
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Poly::monomial(dim, e)
    }

    pub fn add_term(&mut self, e: Exps, c: Q) {
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * q(e[i] as i64));
            }
        }
        out
    }
}

/// A form of one fixed degree: sorted index lists to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DForm {
    pub dim: usize,
    pub comps: BTreeMap<Vec<usize>, Poly>,
}

/// Sort `idx` and return the permutation sign, or `None` on a repeated index.
pub fn sort_signed(idx: &[usize]) -> Option<(Q, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return None;
            }
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    v.sort_unstable();
    Some((parity(inversions), v))
}

impl DForm {
    pub fn zero(dim: usize) -> Self {
        DForm { dim, comps: BTreeMap::new() }
    }

    pub fn scalar(p: Poly) -> Self {
        let mut f = DForm::zero(p.dim);
        f.add_comp(vec![], p);
        f
    }

    /// `c·dx_{idx}` with `idx` in any order.
    pub fn basis(dim: usize, idx: &[usize], c: Q) -> Self {
        let mut f = DForm::zero(dim);
        f.add_comp(idx.to_vec(), Poly::constant(dim, c));
        f
    }

    pub fn add_comp(&mut self, idx: Vec<usize>, p: Poly) {
        let Some((s, idx)) = sort_signed(&idx) else { return };
        let cur = self.comps.remove(&idx).unwrap_or_else(|| Poly::zero(self.dim));
        let next = cur.add(&p.scale(&s));
        if !next.is_zero() {
            self.comps.insert(idx, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coeff_degree(&self) -> u32 {
        self.comps.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn add(&self, o: &DForm) -> DForm {
        let mut out = self.clone();
        for (i, p) in &o.comps {
            out.add_comp(i.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, o: &DForm) -> DForm {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> DForm {
        let mut out = DForm::zero(self.dim);
        for (i, p) in &self.comps {
            out.add_comp(i.clone(), p.scale(c));
        }
        out
    }

    pub fn d(&self) -> DForm {
        let mut out = DForm::zero(self.dim);
        for (idx, p) in &self.comps {
            for j in 0..self.dim {
                let dp = p.diff(j);
                if dp.is_zero() {
                    continue;
                }
                let mut new = vec![j];
                new.extend_from_slice(idx);
                out.add_comp(new, dp);
            }
        }
        out
    }

    pub fn wedge(&self, o: &DForm) -> DForm {
        let mut out = DForm::zero(self.dim);
        for (i, p) in &self.comps {
            for (j, r) in &o.comps {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_comp(idx, p.mul(r));
            }
        }
        out
    }

    /// `v⌟τ` for a vector field `v`.
    pub fn interior(&self, v: &VField) -> DForm {
        let mut out = DForm::zero(self.dim);
        for (idx, p) in &self.comps {
            for (a, &i) in idx.iter().enumerate() {
                if v.0[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(a);
                out.add_comp(rest, v.0[i].mul(p).scale(&parity(a)));
            }
        }
        out
    }

    /// `V_k⌟…⌟V_1⌟τ` for `V_1∧…∧V_k`.
    pub fn interior_wedge(&self, fields: &[VField]) -> DForm {
        fields.iter().fold(self.clone(), |acc, v| acc.interior(v))
    }

    /// Coefficients keyed by `(index list, exponents)`.
    pub fn flat(&self) -> BTreeMap<(Vec<usize>, Exps), Q> {
        let mut out = BTreeMap::new();
        for (i, p) in &self.comps {
            for (e, c) in &p.terms {
                out.insert((i.clone(), e.clone()), c.clone());
            }
        }
        out
    }
}

/// A vector field by components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VField(pub Vec<Poly>);

impl VField {
    pub fn zero(dim: usize) -> Self {
        VField(vec![Poly::zero(dim); dim])
    }

    pub fn partial(dim: usize, i: usize) -> Self {
        let mut v = VField::zero(dim);
        v.0[i] = Poly::constant(dim, q(1));
        v
    }

    pub fn add(&self, o: &VField) -> VField {
        VField(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &Q) -> VField {
        VField(self.0.iter().map(|a| a.scale(c)).collect())
    }

    /// `L_v τ = d(v⌟τ) + v⌟dτ`.
    pub fn lie(&self, tau: &DForm) -> DForm {
        tau.interior(self).d().add(&tau.d().interior(self))
    }
}

fn poly_from(dim: usize, p: &msplect_core::Polynomial) -> Poly {
    let mut out = Poly::zero(dim);
    for (m, c) in p.terms() {
        out.add_term(m.exponents(dim), c.clone());
    }
    out
}

pub fn form_from(f: &Form) -> DForm {
    let dim = f.dim();
    let mut out = DForm::zero(dim);
    for (b, p) in f.comps() {
        out.add_comp(b.indices(), poly_from(dim, p));
    }
    out
}

pub fn field_from(v: &MultiVec) -> VField {
    let dim = v.dim();
    let mut out = VField::zero(dim);
    if v.is_zero() {
        return out;
    }
    assert_eq!(v.degree(), 1, "oracle fields are vector fields");
    for (b, p) in v.comps() {
        out.0[b.indices()[0]] = poly_from(dim, p);
    }
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials(dim: usize, d: u32) -> Vec<Exps> {
    fn rec(dim: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, d, &mut Vec::new(), &mut out);
    out
}

/// All increasing index lists of length `k` in `0..dim`.
pub fn index_sets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

/// Dense Gauss–Jordan elimination for `Σ_c x_c·columns[c] = rhs`; free variables are set to 0.
pub fn solve<K: Ord + Clone>(columns: &[BTreeMap<K, Q>], rhs: &BTreeMap<K, Q>) -> Option<Vec<Q>> {
    let keys: BTreeSet<K> = columns.iter().flat_map(|c| c.keys().cloned()).chain(rhs.keys().cloned()).collect();
    let ncols = columns.len();
    let mut m: Vec<Vec<Q>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<Q> = columns.iter().map(|c| c.get(k).cloned().unwrap_or_else(Q::zero)).collect();
            row.push(rhs.get(k).cloned().unwrap_or_else(Q::zero));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

/// A primitive `f` of `target` with coefficients of degree at most `d`, by brute force over
/// every monomial and index set.
pub fn primitive(target: &DForm, degree: usize, d: u32) -> Option<DForm> {
    assert!(degree >= 1);
    let dim = target.dim;
    let mut basis = Vec::new();
    for idx in index_sets(dim, degree - 1) {
        for e in monomials(dim, d) {
            let mut f = DForm::zero(dim);
            f.add_comp(idx.clone(), Poly::monomial(dim, e));
            basis.push(f);
        }
    }
    let columns: Vec<_> = basis.iter().map(|f| f.d().flat()).collect();
    let x = solve(&columns, &target.flat())?;
    let mut out = DForm::zero(dim);
    for (c, f) in x.iter().zip(&basis) {
        if !c.is_zero() {
            out = out.add(&f.scale(c));
        }
    }
    Some(out)
}

/// A vector field `X` with `X⌟ω = rhs` and coefficients of degree at most `d`.
pub fn field_for(omega: &DForm, rhs: &DForm, d: u32) -> Option<VField> {
    let dim = omega.dim;
    let mut basis = Vec::new();
    for i in 0..dim {
        for e in monomials(dim, d) {
            let mut v = VField::zero(dim);
            v.0[i] = Poly::monomial(dim, e);
            basis.push(v);
        }
    }
    let columns: Vec<_> = basis.iter().map(|v| omega.interior(v).flat()).collect();
    let x = solve(&columns, &rhs.flat())?;
    let mut out = VField::zero(dim);
    for (c, v) in x.iter().zip(&basis) {
        if !c.is_zero() {
            out = out.add(&v.scale(c));
        }
    }
    Some(out)
}
