//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A monomial as a sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(u8, u16); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: usize) -> Self {
        Self::from_pairs(&[(v, 1)])
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut exps: BTreeMap<u8, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            *exps.entry(v as u8).or_insert(0) += e;
        }
        Monomial(
            exps.into_iter()
                .filter(|&(_, e)| e > 0)
                .map(|(v, e)| (v, e as u16))
                .collect(),
        )
    }

    /// Dense exponent vector of length `dim`.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u8, e as u16))
                .collect(),
        )
    }

    pub fn exponents(&self, dim: usize) -> Vec<u32> {
        let mut out = vec![0; dim];
        for &(v, e) in &self.0 {
            out[v as usize] = e as u32;
        }
        out
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e as u32))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w as usize == v)
            .map_or(0, |&(_, e)| e as u32)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Derivative with respect to `v`: returns the multiplicity and the lowered monomial.
    pub fn diff(&self, v: usize) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(w, _)| w as usize == v)?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 = e - 1;
        }
        Some((e as u32, Monomial(out)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Graded-lex key used for display ordering.
    pub fn display_key(&self, dim: usize) -> (u32, Vec<std::cmp::Reverse<u32>>) {
        (
            self.degree(),
            self.exponents(dim).into_iter().map(std::cmp::Reverse).collect(),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn diff(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.diff(v) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.pairs() {
                for _ in 0..e {
                    v *= &point[var];
                }
            }
            total += v;
        }
        total
    }

    /// Substitute `x_v -> x_v + shift[v]` for every variable.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        if shift.iter().all(Zero::is_zero) {
            return self.clone();
        }
        let lin: Vec<Polynomial> = shift
            .iter()
            .enumerate()
            .map(|(v, s)| &Polynomial::var(v) + &Polynomial::constant(s.clone()))
            .collect();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (var, e) in m.pairs() {
                t = &t * &lin[var].pow(e);
            }
            out += &t;
        }
        out
    }

    /// Substitute each variable by a polynomial.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (var, e) in m.pairs() {
                t = &t * &images[var].pow(e);
            }
            out += &t;
        }
        out
    }

    /// Apply a coefficient map term by term, keeping monomials.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Rational) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let dim = names.len().max(self.max_var().map_or(0, |v| v + 1));
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| m.display_key(dim));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    m.pairs()
        .map(|(v, e)| {
            let name = names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1));
            if e == 1 {
                name
            } else {
                format!("{name}**{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
