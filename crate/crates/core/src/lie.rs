//! Finite-dimensional Lie algebras, the Chevalley–Eilenberg differential on Λg, and actions on charts.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{sign, Blade, MultiVec};
use crate::linalg::{self, Echelon};
use crate::poly::{fmt_rational, int, Rational};

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if dim == 0 || dim > crate::exterior::MAX_DIM {
            return Err(Error::InvalidInput(format!("bad Lie algebra dimension {dim}")));
        }
        let shape_ok = c.len() == dim && c.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(Error::InvalidInput("structure constants must be dim x dim x dim".into()));
        }
        let g = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.c[i][j][k] != -g.c[j][i][k].clone() {
                        return Err(Error::Structure(format!("bracket not antisymmetric at ({i},{j})")));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = g.bracket_vec(&g.basis_vec(i), &g.bracket_vec(&g.basis_vec(j), &g.basis_vec(k)));
                    let b = g.bracket_vec(&g.basis_vec(j), &g.bracket_vec(&g.basis_vec(k), &g.basis_vec(i)));
                    let c = g.bracket_vec(&g.basis_vec(k), &g.bracket_vec(&g.basis_vec(i), &g.basis_vec(j)));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Err(Error::Structure(format!("Jacobi identity fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Build from a list of nonzero brackets `[e_i, e_j] = Σ coeff e_k` with `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, rhs) in brackets {
            if *i >= dim || *j >= dim || rhs.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::InvalidInput("bracket index out of range".into()));
            }
            if i == j {
                return Err(Error::Structure(format!("[e{0}, e{0}] must vanish", i + 1)));
            }
            for (k, v) in rhs {
                c[*i][*j][*k] += v;
                c[*j][*i][*k] -= v;
            }
        }
        LieAlgebra::new(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, vec![vec![vec![Rational::zero(); dim]; dim]; dim]).expect("abelian")
    }

    /// so(3) with `[e1,e2]=e3`, `[e2,e3]=e1`, `[e3,e1]=e2`.
    pub fn so3() -> Self {
        LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![(2, int(1))]),
                (1, 2, vec![(0, int(1))]),
                (0, 2, vec![(1, int(-1))]),
            ],
        )
        .expect("so(3)")
    }

    /// The two-dimensional non-abelian algebra `[e1,e2]=e2`.
    pub fn affine_line() -> Self {
        LieAlgebra::from_brackets(2, &[(0, 1, vec![(1, int(1))])]).expect("aff(1)")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    pub fn bracket_vec(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &ab * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` as a degree-1 wedge element.
    pub fn bracket_basis(&self, i: usize, j: usize) -> WedgePower {
        let mut out = WedgePower::zero(self.dim, 1);
        for k in 0..self.dim {
            out.add(Blade::single(k), self.c[i][j][k].clone());
        }
        out
    }

    /// Chevalley–Eilenberg boundary `∂(ξ_1∧…∧ξ_k) = Σ_{i<j} (−1)^{i+j} [ξ_i,ξ_j]∧ξ_1…ξ̂_i…ξ̂_j…ξ_k`.
    pub fn ce_differential(&self, p: &WedgePower) -> WedgePower {
        let k = p.degree;
        if k < 2 {
            return WedgePower::zero(self.dim, k.saturating_sub(1));
        }
        let mut out = WedgePower::zero(self.dim, k - 1);
        for (b, coeff) in &p.coeffs {
            let idx = b.indices();
            for a in 0..k {
                for c in a + 1..k {
                    let rest: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .filter(|&(pos, _)| pos != a && pos != c)
                        .map(|(_, &v)| v)
                        .collect();
                    let s = sign((a + c + 2) as i64);
                    for m in 0..self.dim {
                        let sc = &self.c[idx[a]][idx[c]][m];
                        if sc.is_zero() {
                            continue;
                        }
                        let mut list = vec![m];
                        list.extend_from_slice(&rest);
                        if let Some((t, blade)) = Blade::from_list(&list) {
                            out.add(blade, coeff * sc * int((s * t) as i64));
                        }
                    }
                }
            }
        }
        out
    }

    /// Schouten-type bracket on Λg: `[e_I, e_J] = Σ_{a,b} (−1)^{a+b} [e_{i_a}, e_{j_b}] ∧ e_{I∖i_a} ∧ e_{J∖j_b}`.
    pub fn wedge_bracket(&self, p: &WedgePower, q: &WedgePower) -> WedgePower {
        let (k, l) = (p.degree, q.degree);
        if k == 0 || l == 0 {
            return WedgePower::zero(self.dim, (k + l).saturating_sub(1));
        }
        let mut out = WedgePower::zero(self.dim, k + l - 1);
        for (bi, ci) in &p.coeffs {
            let is = bi.indices();
            for (bj, cj) in &q.coeffs {
                let js = bj.indices();
                let cc = ci * cj;
                for a in 0..k {
                    for b in 0..l {
                        let s = sign((a + b + 2) as i64);
                        for m in 0..self.dim {
                            let sc = &self.c[is[a]][js[b]][m];
                            if sc.is_zero() {
                                continue;
                            }
                            let mut list = vec![m];
                            list.extend(is.iter().enumerate().filter(|&(x, _)| x != a).map(|(_, &v)| v));
                            list.extend(js.iter().enumerate().filter(|&(x, _)| x != b).map(|(_, &v)| v));
                            if let Some((t, blade)) = Blade::from_list(&list) {
                                out.add(blade, &cc * sc * int((s * t) as i64));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of `∂_k` with columns indexed by `Blade::all(dim, k)` and rows by `Blade::all(dim, k-1)`.
    pub fn ce_matrix(&self, k: usize) -> Vec<Vec<Rational>> {
        let cols = Blade::all(self.dim, k);
        let rows = if k == 0 { vec![] } else { Blade::all(self.dim, k - 1) };
        let mut m = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (c, b) in cols.iter().enumerate() {
            let img = self.ce_differential(&WedgePower::basis_blade(self.dim, *b));
            for (r, rb) in rows.iter().enumerate() {
                m[r][c] = img.coeff(*rb);
            }
        }
        m
    }

    /// Exact basis of `ker ∂_k`.
    pub fn lie_kernel(&self, k: usize) -> Vec<WedgePower> {
        let cols = Blade::all(self.dim, k);
        if k == 0 {
            return vec![WedgePower::one(self.dim)];
        }
        let m = self.ce_matrix(k);
        let mut ech = Echelon::new(cols.len());
        for row in &m {
            ech.push(linalg::dense_to_sparse(row), Rational::zero());
        }
        ech.nullspace()
            .into_iter()
            .map(|v| {
                let mut w = WedgePower::zero(self.dim, k);
                for (c, x) in v.into_iter().enumerate() {
                    w.add(cols[c], x);
                }
                w
            })
            .collect()
    }
}

/// Element of `Λ^k g` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgePower {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Blade, Rational>,
}

impl WedgePower {
    pub fn zero(dim: usize, degree: usize) -> Self {
        WedgePower {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut w = WedgePower::zero(dim, 0);
        w.add(Blade::empty(), Rational::one());
        w
    }

    /// `e_{i1} ∧ … ∧ e_{ik}` with 0-based indices in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut w = WedgePower::zero(dim, indices.len());
        if let Some((s, b)) = Blade::from_list(indices) {
            w.add(b, int(s as i64));
        }
        w
    }

    pub fn basis_blade(dim: usize, b: Blade) -> Self {
        let mut w = WedgePower::zero(dim, b.len());
        w.add(b, Rational::one());
        w
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: impl IntoIterator<Item = (Blade, Rational)>) -> Self {
        let mut w = WedgePower::zero(dim, degree);
        for (b, c) in coeffs {
            w.add(b, c);
        }
        w
    }

    pub fn add(&mut self, b: Blade, c: Rational) {
        debug_assert_eq!(b.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(b).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> Rational {
        self.coeffs.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WedgePower::from_coeffs(self.dim, self.degree, self.coeffs.iter().map(|(b, v)| (*b, v * c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add(*b, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&int(-1)))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = WedgePower::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some((s, c)) = a.wedge(*b) {
                    out.add(c, x * y * int(s as i64));
                }
            }
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut items: Vec<_> = self.coeffs.iter().collect();
        items.sort_by_key(|(b, _)| b.lex_key());
        items
            .into_iter()
            .map(|(b, c)| {
                let basis = if b.is_empty() {
                    "1".to_string()
                } else {
                    b.indices()
                        .into_iter()
                        .map(|i| names.get(i).cloned().unwrap_or_else(|| format!("e{}", i + 1)))
                        .collect::<Vec<_>>()
                        .join("^")
                };
                if c.is_one() {
                    basis
                } else {
                    format!("({})*{basis}", fmt_rational(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for WedgePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

/// ℝ-linear combination of wedges of vector fields. The CE boundary of multivector
/// fields is not function-linear, so it is computed on factor lists rather than on components.
#[derive(Clone, Debug, Default)]
pub struct FieldWedge {
    pub terms: Vec<(Rational, Vec<MultiVec>)>,
}

impl FieldWedge {
    pub fn single(fields: Vec<MultiVec>) -> Self {
        FieldWedge {
            terms: vec![(Rational::one(), fields)],
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(_, f)| f.len())
    }

    /// Collapse to components; needs the chart dimension for the empty case.
    pub fn to_multivec(&self, dim: usize) -> MultiVec {
        let mut out = MultiVec::zero(dim, self.degree().unwrap_or(0));
        for (c, fields) in &self.terms {
            let mut acc = MultiVec::constant(dim, Rational::one());
            for f in fields {
                acc = acc.wedge(f);
            }
            out = &out + &acc.scale(c);
        }
        out
    }

    /// `∂(Y_1∧…∧Y_k) = Σ_{i<j} (−1)^{i+j} [Y_i,Y_j] ∧ Y_1…Ŷ_i…Ŷ_j…Y_k`.
    pub fn ce_differential(&self, dim: usize) -> MultiVec {
        let k = self.degree().unwrap_or(0);
        let mut out = MultiVec::zero(dim, k.saturating_sub(1));
        for (c, fields) in &self.terms {
            for a in 0..fields.len() {
                for b in a + 1..fields.len() {
                    let mut acc = fields[a].lie_bracket(&fields[b]);
                    for (pos, f) in fields.iter().enumerate() {
                        if pos != a && pos != b {
                            acc = acc.wedge(f);
                        }
                    }
                    out = &out + &acc.scale(c).with_sign(sign((a + b + 2) as i64));
                }
            }
        }
        out
    }
}

/// A Lie algebra acting on a chart through generator vector fields.
#[derive(Clone, Debug)]
pub struct Action {
    algebra: LieAlgebra,
    dim: usize,
    generators: Vec<MultiVec>,
}

impl Action {
    /// Checks `[V_ξ, V_η] = −V_{[ξ,η]}` on all basis pairs.
    pub fn new(algebra: LieAlgebra, dim: usize, generators: Vec<MultiVec>) -> Result<Self> {
        if generators.len() != algebra.dim() {
            return Err(Error::InvalidInput(format!(
                "{} generators for a {}-dimensional algebra",
                generators.len(),
                algebra.dim()
            )));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::ChartMismatch(g.dim(), dim));
            }
            if g.degree() != 1 && !g.is_zero() {
                return Err(Error::InvalidInput("generators must be vector fields".into()));
            }
        }
        let generators: Vec<MultiVec> = generators
            .into_iter()
            .map(|g| if g.is_zero() { MultiVec::zero(dim, 1) } else { g })
            .collect();
        let action = Action {
            algebra,
            dim,
            generators,
        };
        for i in 0..action.algebra.dim() {
            for j in i + 1..action.algebra.dim() {
                let lhs = action.generators[i].lie_bracket(&action.generators[j]);
                let rhs = action.generator(&action.algebra.bracket_basis(i, j));
                if !(&lhs + &rhs).is_zero() {
                    return Err(Error::Structure(format!(
                        "[V_{0}, V_{1}] != -V_[e{0},e{1}]",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(action)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[MultiVec] {
        &self.generators
    }

    /// `V_p = Σ c_I V_{i1}∧…∧V_{ik}`.
    pub fn generator(&self, p: &WedgePower) -> MultiVec {
        let v = self.factors(p).to_multivec(self.dim);
        if v.is_zero() {
            MultiVec::zero(self.dim, p.degree())
        } else {
            v
        }
    }

    pub fn factors(&self, p: &WedgePower) -> FieldWedge {
        FieldWedge {
            terms: p
                .terms()
                .map(|(b, c)| (c.clone(), b.indices().into_iter().map(|i| self.generators[i].clone()).collect()))
                .collect(),
        }
    }
}
