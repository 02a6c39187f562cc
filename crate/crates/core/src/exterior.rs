//! Graded exterior elements: differential forms and multivector fields with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// Coordinate chart: an ordered list of distinct coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidInput("chart needs at least one coordinate".into()));
        }
        if names.len() > MAX_DIM {
            return Err(Error::InvalidInput(format!(
                "chart dimension {} exceeds {MAX_DIM}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate coordinate {n}")));
            }
        }
        Ok(Chart { names })
    }

    /// Chart with coordinates `prefix1..prefixN`.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        let names: Vec<String> = (1..=dim).map(|i| format!("{prefix}{i}")).collect();
        Chart::new(&names).expect("numbered chart")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub const MAX_DIM: usize = 24;

/// A strictly increasing index tuple stored as a bit set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(pub u32);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out.push(i);
            bits &= bits - 1;
        }
        out
    }

    /// Sort an index list, returning the permutation sign, or `None` on a repeated index.
    pub fn from_list(list: &[usize]) -> Option<(i32, Blade)> {
        let mut bits = 0u32;
        let mut sign = 1;
        for &i in list {
            let bit = 1u32 << i;
            if bits & bit != 0 {
                return None;
            }
            if (bits & !(bit | (bit - 1))).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= bit;
        }
        Some((sign, Blade(bits)))
    }

    /// Sign of the concatenation `self, other` after sorting, or `None` if they overlap.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        let mut bits = other.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            bits &= bits - 1;
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, Blade(self.0 | other.0)))
    }

    /// Contract `∂_J` into `dx^I` as `∂_{j_k}⌟…⌟∂_{j_1}⌟dx^I`.
    pub fn interior(j: Blade, i: Blade) -> Option<(i32, Blade)> {
        if j.0 & !i.0 != 0 {
            return None;
        }
        let mut cur = i.0;
        let mut sign = 1;
        let mut bits = j.0;
        while bits != 0 {
            let b = bits.trailing_zeros();
            if (cur & ((1u32 << b) - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            cur &= !(1u32 << b);
            bits &= bits - 1;
        }
        Some((sign, Blade(cur)))
    }

    /// All blades of length `k` in `dim` slots, in lexicographic index order.
    pub fn all(dim: usize, k: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if k > dim {
            return out;
        }
        loop {
            out.push(Blade(idx.iter().fold(0, |acc, &i| acc | (1 << i))));
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if idx[pos] < dim - k + pos {
                    idx[pos] += 1;
                    for q in pos + 1..k {
                        idx[q] = idx[q - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn lex_key(self) -> Vec<usize> {
        self.indices()
    }
}

pub trait Kind: Clone + Copy + fmt::Debug + PartialEq + Eq + std::hash::Hash + Default {
    const NAME: &'static str;
    fn basis_symbol(name: &str) -> String;
    const JOIN: &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct VecKind;

impl Kind for FormKind {
    const NAME: &'static str = "form";
    const JOIN: &'static str = "^";
    fn basis_symbol(name: &str) -> String {
        format!("d({name})")
    }
}

impl Kind for VecKind {
    const NAME: &'static str = "multivector";
    const JOIN: &'static str = "^";
    fn basis_symbol(name: &str) -> String {
        format!("@{name}")
    }
}

/// Homogeneous element of degree `degree`: a map from blades to nonzero polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded<K: Kind> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Blade, Polynomial>,
    kind: PhantomData<K>,
}

pub type Form = Graded<FormKind>;
pub type MultiVec = Graded<VecKind>;

impl<K: Kind> Graded<K> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Graded {
            dim,
            degree,
            comps: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn scalar(dim: usize, f: Polynomial) -> Self {
        let mut out = Self::zero(dim, 0);
        out.add_comp(Blade::empty(), f);
        out
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::scalar(dim, Polynomial::constant(c))
    }

    /// Basis element for an index list in any order; sign-normalized.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(dim, indices, Polynomial::one())
    }

    pub fn monomial(dim: usize, indices: &[usize], coeff: Polynomial) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        let mut out = Self::zero(dim, indices.len());
        if let Some((s, b)) = Blade::from_list(indices) {
            out.add_comp(b, if s < 0 { -coeff } else { coeff });
        }
        out
    }

    pub fn from_comps(dim: usize, degree: usize, comps: impl IntoIterator<Item = (Blade, Polynomial)>) -> Self {
        let mut out = Self::zero(dim, degree);
        for (b, p) in comps {
            assert_eq!(b.len(), degree, "blade length must equal degree");
            out.add_comp(b, p);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> impl Iterator<Item = (Blade, &Polynomial)> {
        self.comps.iter().map(|(b, p)| (*b, p))
    }

    pub fn comp(&self, b: Blade) -> Polynomial {
        self.comps.get(&b).cloned().unwrap_or_default()
    }

    pub fn num_comps(&self) -> usize {
        self.comps.len()
    }

    pub fn add_comp(&mut self, b: Blade, p: Polynomial) {
        debug_assert_eq!(b.len(), self.degree);
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.comps.entry(b) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_signed(&mut self, sign: i32, b: Blade, p: Polynomial) {
        self.add_comp(b, if sign < 0 { -p } else { p });
    }

    /// The polynomial of a degree-0 element.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.comp(Blade::empty()))
    }

    pub fn coeff_degree(&self) -> u32 {
        self.comps.values().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn has_constant_coeffs(&self) -> bool {
        self.comps.values().all(Polynomial::is_constant)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&crate::poly::int(c))
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        self.map_coeffs(|p| p * f)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, p) in &self.comps {
            out.add_comp(*b, f(p));
        }
        out
    }

    pub fn with_sign(self, sign: i32) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }

    pub fn eval_at(&self, point: &[Rational]) -> Self {
        self.map_coeffs(|p| Polynomial::constant(p.eval(point)))
    }

    pub fn translate(&self, shift: &[Rational]) -> Self {
        self.map_coeffs(|p| p.translate(shift))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ChartMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self + other)
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.wedge(other))
    }

    /// Exterior product. Panics if the dimensions differ; see [`Graded::try_wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "chart mismatch in wedge");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, p) in &self.comps {
            for (b, q) in &other.comps {
                if let Some((s, c)) = a.wedge(*b) {
                    out.add_signed(s, c, p * q);
                }
            }
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut items: Vec<_> = self.comps.iter().collect();
        items.sort_by_key(|(b, _)| b.lex_key());
        let mut parts = Vec::new();
        for (b, p) in items {
            let basis = b
                .indices()
                .into_iter()
                .map(|i| {
                    K::basis_symbol(&names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1)))
                })
                .collect::<Vec<_>>()
                .join(K::JOIN);
            let coeff = p.fmt_with(names);
            parts.push(if basis.is_empty() {
                format!("({coeff})")
            } else if coeff == "1" {
                basis
            } else {
                format!("({coeff})*{basis}")
            });
        }
        parts.join(" + ")
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl<K: Kind> Add for &Graded<K> {
    type Output = Graded<K>;
    fn add(self, rhs: &Graded<K>) -> Graded<K> {
        assert_eq!(self.dim, rhs.dim, "chart mismatch");
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.degree, rhs.degree, "degree mismatch in sum");
        let mut out = self.clone();
        for (b, p) in &rhs.comps {
            out.add_comp(*b, p.clone());
        }
        out
    }
}

impl<K: Kind> Sub for &Graded<K> {
    type Output = Graded<K>;
    fn sub(self, rhs: &Graded<K>) -> Graded<K> {
        self + &(-rhs)
    }
}

impl<K: Kind> Neg for &Graded<K> {
    type Output = Graded<K>;
    fn neg(self) -> Graded<K> {
        self.map_coeffs(|p| -p)
    }
}

impl<K: Kind> Neg for Graded<K> {
    type Output = Graded<K>;
    fn neg(mut self) -> Graded<K> {
        for p in self.comps.values_mut() {
            *p = -std::mem::take(p);
        }
        self
    }
}

impl<K: Kind> Add for Graded<K> {
    type Output = Graded<K>;
    fn add(self, rhs: Graded<K>) -> Graded<K> {
        &self + &rhs
    }
}

impl<K: Kind> Sub for Graded<K> {
    type Output = Graded<K>;
    fn sub(self, rhs: Graded<K>) -> Graded<K> {
        &self - &rhs
    }
}

/// `(-1)^n` as an integer sign.
pub fn sign(n: i64) -> i32 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Form {
    /// `dx^i` for coordinate index `i`.
    pub fn dx(dim: usize, i: usize) -> Form {
        Form::basis(dim, &[i])
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.dim, self.degree + 1);
        for (b, p) in &self.comps {
            for v in 0..self.dim {
                if b.contains(v) {
                    continue;
                }
                let dp = p.diff(v);
                if dp.is_zero() {
                    continue;
                }
                let (s, c) = Blade::single(v).wedge(*b).expect("disjoint");
                out.add_signed(s, c, dp);
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Checked contraction `X⌟τ`; errors when `deg X > deg τ`.
    pub fn hook(x: &MultiVec, tau: &Form) -> Result<Form> {
        x.check_kinds(tau)?;
        if x.degree > tau.degree {
            return Err(Error::DegreeTooHigh {
                op: "hook",
                k: x.degree,
                m: tau.degree,
            });
        }
        Ok(x.interior(tau))
    }
}

impl MultiVec {
    /// `∂/∂x^i` for coordinate index `i`.
    pub fn partial(dim: usize, i: usize) -> MultiVec {
        MultiVec::basis(dim, &[i])
    }

    /// Vector field from its component polynomials.
    pub fn vector(components: &[Polynomial]) -> MultiVec {
        let dim = components.len();
        let mut out = MultiVec::zero(dim, 1);
        for (i, p) in components.iter().enumerate() {
            out.add_comp(Blade::single(i), p.clone());
        }
        out
    }

    /// Component `i` of a vector field.
    pub fn component(&self, i: usize) -> Polynomial {
        debug_assert_eq!(self.degree, 1);
        self.comp(Blade::single(i))
    }

    fn check_kinds(&self, tau: &Form) -> Result<()> {
        if self.dim != tau.dim {
            return Err(Error::ChartMismatch(self.dim, tau.dim));
        }
        Ok(())
    }

    /// Total contraction `X⌟τ`, zero when `deg X > deg τ`.
    pub fn interior(&self, tau: &Form) -> Form {
        assert_eq!(self.dim, tau.dim, "chart mismatch in contraction");
        if self.degree > tau.degree {
            return Form::zero(self.dim, 0);
        }
        let mut out = Form::zero(self.dim, tau.degree - self.degree);
        for (j, f) in &self.comps {
            for (i, g) in &tau.comps {
                if let Some((s, r)) = Blade::interior(*j, *i) {
                    out.add_signed(s, r, f * g);
                }
            }
        }
        out
    }

    /// Lie derivative `L_X τ = d(X⌟τ) − (−1)^k X⌟dτ`.
    pub fn lie(&self, tau: &Form) -> Form {
        let a = self.interior(tau).d();
        let b = self.interior(&tau.d());
        let out = if self.degree % 2 == 0 { &a - &b } else { &a + &b };
        if out.is_zero() {
            return Form::zero(self.dim, (tau.degree + 1).saturating_sub(self.degree));
        }
        out
    }

    /// Contraction of a 1-form into the first slot of a multivector:
    /// `i(β)(∂_{j_1}∧…∧∂_{j_k}) = Σ_b (−1)^{b−1} β_{j_b} ∂_{J∖j_b}`.
    pub fn contract_one_form(&self, beta: &Form) -> MultiVec {
        assert_eq!(beta.degree, 1, "expected a 1-form");
        if self.degree == 0 {
            return MultiVec::zero(self.dim, 0);
        }
        let mut out = MultiVec::zero(self.dim, self.degree - 1);
        for (j, f) in &self.comps {
            for (pos, jb) in j.indices().into_iter().enumerate() {
                let bj = beta.comp(Blade::single(jb));
                if bj.is_zero() {
                    continue;
                }
                let rest = Blade(j.0 & !(1 << jb));
                out.add_signed(sign(pos as i64), rest, f * &bj);
            }
        }
        out
    }

    /// Schouten–Nijenhuis bracket, via the decomposable-factor formula on each pair of terms.
    pub fn schouten(&self, other: &MultiVec) -> MultiVec {
        assert_eq!(self.dim, other.dim, "chart mismatch in Schouten bracket");
        let (k, l) = (self.degree, other.degree);
        if k + l == 0 {
            return MultiVec::zero(self.dim, 0);
        }
        let mut out = MultiVec::zero(self.dim, k + l - 1);
        if k == 0 {
            // [f, Y] = −i(df)Y
            let f = self.comp(Blade::empty());
            return -other.contract_one_form(&Form::scalar(self.dim, f).d());
        }
        if l == 0 {
            // [X, g] = (−1)^{k−1} i(dg)X
            let g = other.comp(Blade::empty());
            return self
                .contract_one_form(&Form::scalar(self.dim, g).d())
                .with_sign(sign(k as i64 - 1));
        }
        for (bi, f) in &self.comps {
            let is = bi.indices();
            for (bj, g) in &other.comps {
                let js = bj.indices();
                schouten_terms(&mut out, &is, f, &js, g);
            }
        }
        out
    }

    /// Vector-field Lie bracket; agrees with `schouten` in degree one.
    pub fn lie_bracket(&self, other: &MultiVec) -> MultiVec {
        assert!(self.degree == 1 && other.degree == 1);
        let dim = self.dim;
        let mut comps = vec![Polynomial::zero(); dim];
        for (m, c) in comps.iter_mut().enumerate() {
            for a in 0..dim {
                let xa = self.component(a);
                let ya = other.component(a);
                if !xa.is_zero() {
                    *c += &(&xa * &other.component(m).diff(a));
                }
                if !ya.is_zero() {
                    *c -= &(&ya * &self.component(m).diff(a));
                }
            }
        }
        MultiVec::vector(&comps)
    }

    /// Musical flat for the Euclidean metric on vector fields.
    pub fn flat(&self) -> Form {
        assert_eq!(self.degree, 1);
        Form::from_comps(self.dim, 1, self.comps().map(|(b, p)| (b, p.clone())))
    }
}

impl Form {
    /// Musical sharp for the Euclidean metric on 1-forms.
    pub fn sharp(&self) -> MultiVec {
        assert_eq!(self.degree, 1);
        MultiVec::from_comps(self.dim, 1, self.comps().map(|(b, p)| (b, p.clone())))
    }
}

fn schouten_terms(out: &mut MultiVec, is: &[usize], f: &Polynomial, js: &[usize], g: &Polynomial) {
    let mut push = |list: &[usize], coeff: Polynomial, extra: i32| {
        if coeff.is_zero() {
            return;
        }
        if let Some((s, b)) = Blade::from_list(list) {
            out.add_signed(s * extra, b, coeff);
        }
    };
    let (k, l) = (is.len(), js.len());
    let rest = |v: &[usize], skip: usize| -> Vec<usize> {
        v.iter()
            .enumerate()
            .filter(|&(p, _)| p != skip)
            .map(|(_, &x)| x)
            .collect()
    };
    // a = 1, b = 1: [f∂_{i1}, g∂_{j1}] ∧ ∂_{i2..} ∧ ∂_{j2..}
    {
        let mut l1 = vec![js[0]];
        l1.extend_from_slice(&is[1..]);
        l1.extend_from_slice(&js[1..]);
        push(&l1, f * &g.diff(is[0]), 1);
        let mut l2 = vec![is[0]];
        l2.extend_from_slice(&is[1..]);
        l2.extend_from_slice(&js[1..]);
        push(&l2, -(g * &f.diff(js[0])), 1);
    }
    // a = 1, b ≥ 2: (−1)^{1+b} (−∂_{j_b} f) ∂_{i1} ∧ ∂_{i2..} ∧ g ∂_{J∖j_b}
    for b in 1..l {
        let mut list = is.to_vec();
        list.extend(rest(js, b));
        let coeff = -(g * &f.diff(js[b]));
        push(&list, coeff, sign(b as i64 + 2));
    }
    // a ≥ 2, b = 1: (−1)^{a+1} (∂_{i_a} g) ∂_{j1} ∧ f ∂_{I∖i_a} ∧ ∂_{j2..}
    for a in 1..k {
        let mut list = vec![js[0]];
        list.extend(rest(is, a));
        list.extend_from_slice(&js[1..]);
        let coeff = f * &g.diff(is[a]);
        push(&list, coeff, sign(a as i64 + 2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn blade_signs() {
        assert_eq!(Blade::from_list(&[1, 0]), Some((-1, Blade(0b11))));
        assert_eq!(Blade::from_list(&[2, 0, 1]), Some((1, Blade(0b111))));
        assert_eq!(Blade::from_list(&[1, 1]), None);
        assert_eq!(Blade(0b10).wedge(Blade(0b01)), Some((-1, Blade(0b11))));
        assert_eq!(Blade::all(4, 2).len(), 6);
        assert_eq!(Blade::all(3, 0), vec![Blade(0)]);
    }

    #[test]
    fn wedge_basics() {
        let dx = Form::dx(3, 0);
        let dy = Form::dx(3, 1);
        let dz = Form::dx(3, 2);
        assert_eq!(dx.wedge(&dy), Form::basis(3, &[0, 1]));
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(dy.wedge(&dx), -Form::basis(3, &[0, 1]));
        let xdy = dy.mul_poly(&x(0));
        assert_eq!(xdy.wedge(&dz), Form::monomial(3, &[1, 2], x(0)));
    }

    #[test]
    fn hook_examples() {
        let vol = Form::basis(3, &[0, 1, 2]);
        let dz = MultiVec::partial(3, 2);
        assert_eq!(Form::hook(&dz, &vol).unwrap(), Form::basis(3, &[0, 1]));
        let dydz = MultiVec::basis(3, &[1, 2]);
        assert_eq!(Form::hook(&dydz, &vol).unwrap(), Form::dx(3, 0));
        let f = Form::scalar(3, x(0));
        assert!(Form::hook(&MultiVec::partial(3, 0), &f).is_err());
    }

    #[test]
    fn d_examples() {
        let xdy = Form::monomial(2, &[1], x(0));
        assert_eq!(xdy.d(), Form::basis(2, &[0, 1]));
        let tau = Form::monomial(3, &[2], &x(0) * &x(1));
        assert!(tau.d().d().is_zero());
        // d(½(q2 dq3 − q3 dq2) ∧ dp1dp2dp3) on (q1,q2,q3,p1,p2,p3)
        let half = rat(1, 2);
        let f1 = &Form::monomial(6, &[2, 3, 4, 5], x(1).scale(&half))
            - &Form::monomial(6, &[1, 3, 4, 5], x(2).scale(&half));
        assert_eq!(f1.d(), Form::basis(6, &[1, 2, 3, 4, 5]));
    }

    #[test]
    fn lie_examples() {
        let xdy = Form::monomial(2, &[1], x(0));
        assert_eq!(MultiVec::partial(2, 0).lie(&xdy), Form::dx(2, 1));
        let vol = Form::basis(3, &[0, 1, 2]);
        assert!(MultiVec::basis(3, &[1, 2]).lie(&vol).is_zero());
    }

    #[test]
    fn schouten_examples() {
        let dx = MultiVec::partial(3, 0);
        let xdy = MultiVec::monomial(3, &[1], x(0));
        assert_eq!(dx.schouten(&xdy), MultiVec::partial(3, 1));
        assert!(MultiVec::basis(3, &[0, 1]).schouten(&MultiVec::partial(3, 2)).is_zero());
        let u = MultiVec::vector(&[x(1), &x(0) * &x(2), Polynomial::constant(int(2))]);
        let v = MultiVec::vector(&[x(2).pow(2), x(0), x(1)]);
        assert_eq!(u.schouten(&v), u.lie_bracket(&v));
    }

    #[test]
    fn scalar_brackets() {
        let f = MultiVec::scalar(2, &x(0) * &x(1));
        let v = MultiVec::vector(&[Polynomial::one(), x(0)]);
        // [V, f] = V(f)
        assert_eq!(v.schouten(&f), MultiVec::scalar(2, &x(1) + &x(0).pow(2)));
        assert_eq!(f.schouten(&v), -MultiVec::scalar(2, &x(1) + &x(0).pow(2)));
    }
}
