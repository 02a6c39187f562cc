//! n-plectic systems: Hamiltonian pairs, generalized Poisson brackets, the observables
//! brackets `l_k`, and conserved-quantity / symmetry classification.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{sign, Blade, Chart};
use crate::homotopy::{exact_primitive, origin, poincare_homotopy};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::random;
use crate::{Form, MultiVec};

/// Which side a sign convention puts the contraction on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    /// The formal definitions: `dα = −X⌟ω` and `df_k(p) = −ζ(k)V_p⌟ω` on kernels.
    #[default]
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Minus => "minus",
            Sign::Plus => "plus",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "minus" | "-" => Some(Sign::Minus),
            "plus" | "+" => Some(Sign::Plus),
            _ => None,
        }
    }
}

/// Sign-convention record carried by every system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Conventions {
    pub hamiltonian: Sign,
    pub comomentum: Sign,
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hamiltonian_sign={} comomentum_sign={}",
            self.hamiltonian.name(),
            self.comomentum.name()
        )
    }
}

/// `ζ(k) = −(−1)^{k(k+1)/2}`.
pub fn zeta(k: usize) -> Result<i32> {
    if k == 0 {
        return Err(Error::InvalidInput("zeta is defined for k >= 1".into()));
    }
    Ok(-sign((k * (k + 1) / 2) as i64))
}

fn zeta1(k: usize) -> i32 {
    zeta(k).expect("k >= 1")
}

/// Kernel of `V ↦ V⌟ω` on vector fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelInfo {
    /// Constant-coefficient ω: the kernel is a fixed subspace.
    Constant(Vec<MultiVec>),
    /// Kernel bases at sample points.
    Sampled(Vec<(Vec<Rational>, Vec<MultiVec>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NplecticStatus {
    pub nondegenerate: bool,
    pub kernel: KernelInfo,
}

/// A Hamiltonian form together with a Hamiltonian multivector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPair {
    pub alpha: Form,
    pub field: MultiVec,
}

impl HamiltonianPair {
    pub fn field_degree(&self) -> usize {
        self.field.degree()
    }
}

/// Bracket grading `|α| = k + 1` for `α` of degree `n − k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    pub form_degree: usize,
    pub bracket: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    None,
    Local,
    Global,
    Strict,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::None => "none",
            Level::Local => "local",
            Level::Global => "global",
            Level::Strict => "strict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Zero,
    Primitive(Form),
    Closed,
    NotClosed(Form),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub level: Level,
    /// The classified form: `L_{X_H}α` or `L_X H`.
    pub derivative: Form,
    pub witness: Witness,
    pub note: Option<&'static str>,
}

pub const STAR_SHAPED_NOTE: &str = "local and global coincide on a star-shaped chart";

/// Classify a form as zero / exact / closed / neither.
pub fn classify_form(beta: &Form) -> Classification {
    if beta.is_zero() {
        return Classification {
            level: Level::Strict,
            derivative: beta.clone(),
            witness: Witness::Zero,
            note: None,
        };
    }
    if let Some(p) = exact_primitive(beta) {
        return Classification {
            level: Level::Global,
            derivative: beta.clone(),
            witness: Witness::Primitive(p),
            note: (beta.degree() >= 1).then_some(STAR_SHAPED_NOTE),
        };
    }
    let d = beta.d();
    if d.is_zero() {
        Classification {
            level: Level::Local,
            derivative: beta.clone(),
            witness: Witness::Closed,
            note: None,
        }
    } else {
        Classification {
            level: Level::None,
            derivative: beta.clone(),
            witness: Witness::NotClosed(d),
            note: None,
        }
    }
}

/// An element of the observables complex: a form, with its Hamiltonian field when it has
/// complex degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observable {
    pub form: Form,
    pub field: Option<MultiVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherReport {
    pub conserved: Classification,
    pub symmetry: Classification,
    /// `L_{X_α}H − d(X_α⌟H) + L_{X_H}α − d(X_H⌟α)`.
    pub residual: Form,
    /// The same combination with the sign of the last two terms reversed.
    pub printed_residual: Form,
    pub transfer_ok: bool,
}

/// `(M, ω, H)` with sign conventions and the nondegeneracy status of ω.
#[derive(Clone, Debug)]
pub struct PlecticSystem {
    chart: Chart,
    omega: Form,
    hamiltonian: Option<HamiltonianPair>,
    conventions: Conventions,
    slack: u32,
    status: NplecticStatus,
}

impl PlecticSystem {
    pub fn new(chart: Chart, omega: Form) -> Result<Self> {
        Self::with_conventions(chart, omega, Conventions::default())
    }

    pub fn with_conventions(chart: Chart, omega: Form, conventions: Conventions) -> Result<Self> {
        if omega.dim() != chart.dim() {
            return Err(Error::ChartMismatch(omega.dim(), chart.dim()));
        }
        if omega.degree() < 2 {
            return Err(Error::InvalidInput("omega must have degree n+1 >= 2".into()));
        }
        if !omega.is_closed() {
            return Err(Error::NotClosed);
        }
        let status = nplectic_status(&omega);
        Ok(PlecticSystem {
            chart,
            omega,
            hamiltonian: None,
            conventions,
            slack: 2,
            status,
        })
    }

    pub fn set_hamiltonian(&mut self, h: Form) -> Result<()> {
        if h.degree() + 2 != self.omega.degree() && !h.is_zero() {
            return Err(Error::DegreeMismatch(h.degree(), self.n() - 1));
        }
        let pair = self.pair(&h)?;
        self.hamiltonian = Some(pair);
        Ok(())
    }

    pub fn with_hamiltonian(mut self, h: Form) -> Result<Self> {
        self.set_hamiltonian(h)?;
        Ok(self)
    }

    pub fn set_slack(&mut self, slack: u32) {
        self.slack = slack;
    }

    pub fn set_conventions(&mut self, c: Conventions) {
        self.conventions = c;
        if let Some(h) = self.hamiltonian.take() {
            self.hamiltonian = self.pair(&h.alpha).ok();
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `n` for an `(n+1)`-form ω.
    pub fn n(&self) -> usize {
        self.omega.degree() - 1
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn hamiltonian(&self) -> Option<&HamiltonianPair> {
        self.hamiltonian.as_ref()
    }

    pub fn status(&self) -> &NplecticStatus {
        &self.status
    }

    fn require_hamiltonian(&self) -> Result<&HamiltonianPair> {
        self.hamiltonian
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("system has no Hamiltonian form".into()))
    }

    pub fn grading(&self, alpha: &Form) -> Grading {
        Grading {
            form_degree: alpha.degree(),
            bracket: self.n() - alpha.degree() + 1,
        }
    }

    /// The contraction the Hamiltonian field must reproduce: `s·dα` with `s` from the convention.
    fn target(&self, alpha: &Form) -> Form {
        alpha.d().with_sign(self.conventions.hamiltonian.value())
    }

    /// `dα ∓ X⌟ω`, zero exactly when `(α, X)` is a Hamiltonian pair.
    pub fn pair_residual(&self, alpha: &Form, x: &MultiVec) -> Form {
        &x.interior(&self.omega) - &self.target(alpha)
    }

    /// Solve `X⌟ω = ∓dα` for a polynomial multivector field `X`.
    pub fn hamiltonian_field(&self, alpha: &Form) -> Result<MultiVec> {
        if alpha.dim() != self.dim() {
            return Err(Error::ChartMismatch(alpha.dim(), self.dim()));
        }
        if alpha.degree() > self.n() {
            return Err(Error::DegreeTooHigh {
                op: "hamiltonian_field",
                k: alpha.degree(),
                m: self.n(),
            });
        }
        let k = self.n() - alpha.degree();
        let rhs = self.target(alpha);
        if rhs.is_zero() {
            return Ok(MultiVec::zero(self.dim(), k));
        }
        if self.omega.has_constant_coeffs() {
            return solve_constant(&self.omega, k, &rhs);
        }
        let base = rhs.coeff_degree();
        let mut last = None;
        for d in base..=base + self.omega.coeff_degree() + self.slack {
            match solve_ansatz(&self.omega, k, &rhs, d) {
                Ok(x) => return Ok(x),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::NoSolution("empty ansatz".into())))
    }

    pub fn pair(&self, alpha: &Form) -> Result<HamiltonianPair> {
        let field = self.hamiltonian_field(alpha)?;
        Ok(HamiltonianPair {
            alpha: alpha.clone(),
            field,
        })
    }

    /// A Hamiltonian form for `X`: the homotopy primitive of `X⌟ω` with the convention sign.
    pub fn hamiltonian_form(&self, x: &MultiVec) -> Result<Form> {
        if x.degree() > self.n() {
            return Err(Error::DegreeTooHigh {
                op: "hamiltonian_form",
                k: x.degree(),
                m: self.n(),
            });
        }
        let c = x.interior(&self.omega);
        if c.is_zero() {
            return Ok(Form::zero(self.dim(), self.n() - x.degree()));
        }
        if !c.is_closed() {
            return Err(Error::NotClosed);
        }
        let k = poincare_homotopy(&c, &origin(self.dim()))?;
        Ok(k.with_sign(self.conventions.hamiltonian.value()))
    }

    pub fn pair_from_field(&self, x: &MultiVec) -> Result<HamiltonianPair> {
        Ok(HamiltonianPair {
            alpha: self.hamiltonian_form(x)?,
            field: x.clone(),
        })
    }

    /// Kernel basis of `V ↦ V⌟ω` in multivector degree `k` for constant-coefficient ω.
    pub fn constant_kernel(&self, k: usize) -> Option<Vec<MultiVec>> {
        if !self.omega.has_constant_coeffs() {
            return None;
        }
        Some(constant_kernel(&self.omega, k))
    }

    /// `{α,β} = (−1)^{|β|} X_β⌟X_α⌟ω`, with Hamiltonian field `±[X_α, X_β]`.
    pub fn poisson(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> HamiltonianPair {
        let l = b.field.degree();
        let alpha = b.field.interior(&a.field.interior(&self.omega)).with_sign(sign(l as i64 + 1));
        let field = a.field.schouten(&b.field).with_sign(-self.conventions.hamiltonian.value());
        let alpha = if alpha.is_zero() {
            Form::zero(self.dim(), (self.n() + 1).saturating_sub(a.field.degree() + l))
        } else {
            alpha
        };
        HamiltonianPair { alpha, field }
    }

    /// `{α,β} + (−1)^{|α||β|}{β,α}`.
    pub fn skew_residual(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> Form {
        let (ga, gb) = (a.field.degree() + 1, b.field.degree() + 1);
        &self.poisson(a, b).alpha + &self.poisson(b, a).alpha.with_sign(sign((ga * gb) as i64))
    }

    /// `[X_α,X_β]⌟ω + d{α,β}`.
    pub fn schouten_residual(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> Form {
        &a.field.schouten(&b.field).interior(&self.omega) + &self.poisson(a, b).alpha.d()
    }

    /// `Σ_cyclic (−1)^{|α||γ|}{α,{β,γ}} − (−1)^{|β||γ|+|β||α|+|β|} d(X_α⌟X_β⌟X_γ⌟ω)` with the
    /// formal fields; the defect term flips sign under the plus convention.
    pub fn jacobi_residual(&self, a: &HamiltonianPair, b: &HamiltonianPair, c: &HamiltonianPair) -> Form {
        let g = |p: &HamiltonianPair| (p.field.degree() + 1) as i64;
        let (ga, gb, gc) = (g(a), g(b), g(c));
        let t1 = self.poisson(a, &self.poisson(b, c)).alpha.with_sign(sign(ga * gc));
        let t2 = self.poisson(b, &self.poisson(c, a)).alpha.with_sign(sign(gb * ga));
        let t3 = self.poisson(c, &self.poisson(a, b)).alpha.with_sign(sign(gc * gb));
        let defect = a
            .field
            .interior(&b.field.interior(&c.field.interior(&self.omega)))
            .d()
            .with_sign(-self.conventions.hamiltonian.value() * sign(gb * gc + gb * ga + gb));
        &(&(&t1 + &t2) + &t3) - &defect
    }

    /// The cyclic sum alone, for comparison with the defect term.
    pub fn jacobiator(&self, a: &HamiltonianPair, b: &HamiltonianPair, c: &HamiltonianPair) -> Form {
        let g = |p: &HamiltonianPair| (p.field.degree() + 1) as i64;
        let (ga, gb, gc) = (g(a), g(b), g(c));
        let t1 = self.poisson(a, &self.poisson(b, c)).alpha.with_sign(sign(ga * gc));
        let t2 = self.poisson(b, &self.poisson(c, a)).alpha.with_sign(sign(gb * ga));
        let t3 = self.poisson(c, &self.poisson(a, b)).alpha.with_sign(sign(gc * gb));
        &(&t1 + &t2) + &t3
    }

    /// Complex degree of a form in the observables complex: `n − 1 − deg`.
    pub fn complex_degree(&self, f: &Form) -> Option<usize> {
        (self.n() - 1).checked_sub(f.degree())
    }

    pub fn observable(&self, f: &Form) -> Result<Observable> {
        let deg = self
            .complex_degree(f)
            .ok_or_else(|| Error::InvalidInput("observables have degree at most n-1".into()))?;
        let field = if deg == 0 { Some(self.hamiltonian_field(f)?) } else { None };
        Ok(Observable { form: f.clone(), field })
    }

    /// `l_k(x_1..x_k)`: `l_1 = d` on positive degree and `0` on degree 0; for `k ≥ 2`,
    /// `ζ(k) X_{x_k}⌟…⌟X_{x_1}⌟ω` when all inputs have degree 0, else `0`.
    pub fn l_bracket(&self, xs: &[Observable]) -> Result<Form> {
        let k = xs.len();
        if k == 0 {
            return Err(Error::InvalidInput("l_k needs k >= 1".into()));
        }
        if k == 1 {
            let x = &xs[0];
            return Ok(match self.complex_degree(&x.form) {
                Some(0) => Form::zero(self.dim(), self.n()),
                _ => x.form.d(),
            });
        }
        let out_degree = (self.n() + 1).saturating_sub(k);
        if xs.iter().any(|x| self.complex_degree(&x.form) != Some(0)) {
            return Ok(Form::zero(self.dim(), out_degree));
        }
        let mut acc = self.omega.clone();
        for x in xs {
            let field = match &x.field {
                Some(f) => f.clone(),
                None => self.hamiltonian_field(&x.form)?,
            };
            acc = field.interior(&acc);
        }
        let out = acc.with_sign(zeta1(k));
        Ok(if out.is_zero() { Form::zero(self.dim(), out_degree) } else { out })
    }

    /// Left side of the `m`-th L∞ relation (`m ≤ 3`) on the given elements.
    pub fn linfty_residual(&self, xs: &[Observable]) -> Result<Form> {
        let m = xs.len();
        if m == 0 || m > 3 {
            return Err(Error::InvalidInput(format!("L-infinity check supports 1 <= m <= 3, got {m}")));
        }
        let degs: Vec<i64> = xs
            .iter()
            .map(|x| self.complex_degree(&x.form).map(|d| d as i64))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidInput("observable degree out of range".into()))?;
        let mut total: Option<Form> = None;
        for i in 1..=m {
            let j = m + 1 - i;
            for sigma in unshuffles(i, m) {
                let s = permutation_sign(&sigma) * koszul_sign(&sigma, &degs) * sign((i * (j - 1)) as i64);
                let inner_args: Vec<Observable> = sigma[..i].iter().map(|&a| xs[a].clone()).collect();
                let inner = self.l_bracket(&inner_args)?;
                let inner_obs = self.observable_of(&inner)?;
                let mut outer_args = vec![inner_obs];
                outer_args.extend(sigma[i..].iter().map(|&a| xs[a].clone()));
                let term = self.l_bracket(&outer_args)?.with_sign(s);
                total = Some(match total {
                    None => term,
                    Some(t) => &t + &term,
                });
            }
        }
        Ok(total.expect("at least one term"))
    }

    fn observable_of(&self, f: &Form) -> Result<Observable> {
        match self.complex_degree(f) {
            Some(0) => self.observable(f),
            Some(_) => Ok(Observable {
                form: f.clone(),
                field: None,
            }),
            None => Ok(Observable {
                form: f.clone(),
                field: None,
            }),
        }
    }

    /// `d(X_m⌟…⌟X_1⌟ω) − (−1)^m Σ_{i<j} (−1)^{i+j} X_m⌟…X̂_j…X̂_i…⌟X_1⌟[X_i,X_j]⌟ω`.
    pub fn rogers_residual(&self, fields: &[MultiVec]) -> Form {
        let m = fields.len();
        let mut lhs = self.omega.clone();
        for x in fields {
            lhs = x.interior(&lhs);
        }
        let lhs = lhs.d();
        let mut rhs = Form::zero(self.dim(), lhs.degree());
        for i in 0..m {
            for j in i + 1..m {
                let mut acc = fields[i].lie_bracket(&fields[j]).interior(&self.omega);
                for (pos, x) in fields.iter().enumerate() {
                    if pos != i && pos != j {
                        acc = x.interior(&acc);
                    }
                }
                rhs = &rhs + &acc.with_sign(sign((i + j + 2) as i64));
            }
        }
        &lhs - &rhs.with_sign(sign(m as i64))
    }

    /// Level of `L_{X_H}α`.
    pub fn classify_conserved(&self, a: &HamiltonianPair) -> Result<Classification> {
        let h = self.require_hamiltonian()?;
        Ok(classify_form(&h.field.lie(&a.alpha)))
    }

    /// Level of `L_X H`; requires `X` Hamiltonian, or only `L_Xω = 0` when `weak`.
    pub fn classify_symmetry(&self, x: &MultiVec, weak: bool) -> Result<Classification> {
        let h = self.require_hamiltonian()?;
        if weak {
            if !x.lie(&self.omega).is_zero() {
                return Err(Error::InvalidInput("field does not preserve omega".into()));
            }
        } else if !x.interior(&self.omega).is_closed() {
            return Err(Error::InvalidInput("field is not Hamiltonian".into()));
        }
        Ok(classify_form(&x.lie(&h.alpha)))
    }

    /// Both classifications for a Hamiltonian pair and the Noether identity residual.
    pub fn noether(&self, a: &HamiltonianPair) -> Result<NoetherReport> {
        let h = self.require_hamiltonian()?;
        let conserved = self.classify_conserved(a)?;
        let symmetry = self.classify_symmetry(&a.field, false)?;
        let sym_part = &a.field.lie(&h.alpha) - &a.field.interior(&h.alpha).d();
        let cons_part = &h.field.lie(&a.alpha) - &h.field.interior(&a.alpha).d();
        let residual = &sym_part + &cons_part;
        let printed_residual = &sym_part - &cons_part;
        let cap = |l: Level| l.min(Level::Global);
        let transfer_ok = symmetry.level >= cap(conserved.level) && conserved.level >= cap(symmetry.level);
        Ok(NoetherReport {
            conserved,
            symmetry,
            residual,
            printed_residual,
            transfer_ok,
        })
    }

    /// `[X_α,X_H]⌟ω − d L_{X_H}α`; the sign of the second term flips under the plus convention.
    pub fn conserved_interior_residual(&self, a: &HamiltonianPair) -> Result<Form> {
        let h = self.require_hamiltonian()?;
        let lhs = a.field.schouten(&h.field).interior(&self.omega);
        let rhs = h.field.lie(&a.alpha).d().with_sign(-self.conventions.hamiltonian.value());
        Ok(&lhs - &rhs)
    }

    /// `[Y,X_H]⌟ω + d L_Y H` for an ω-preserving `Y`; the sign of the second term flips under
    /// the plus convention.
    pub fn symmetry_interior_residual(&self, y: &MultiVec) -> Result<Form> {
        let h = self.require_hamiltonian()?;
        let lhs = y.schouten(&h.field).interior(&self.omega);
        let rhs = y.lie(&h.alpha).d().with_sign(-self.conventions.hamiltonian.value());
        Ok(&lhs + &rhs)
    }

    /// `L_{X_H}{α,β}`.
    pub fn bracket_conservation(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
        let h = self.require_hamiltonian()?;
        Ok(h.field.lie(&self.poisson(a, b).alpha))
    }
}

fn nplectic_status(omega: &Form) -> NplecticStatus {
    if omega.has_constant_coeffs() {
        let kernel = constant_kernel(omega, 1);
        return NplecticStatus {
            nondegenerate: kernel.is_empty(),
            kernel: KernelInfo::Constant(kernel),
        };
    }
    let mut r = random::rng(0x6d73_706c);
    let mut samples = Vec::new();
    let mut nondegenerate = true;
    for _ in 0..5 {
        let pt = random::point(&mut r, omega.dim());
        let k = constant_kernel(&omega.eval_at(&pt), 1);
        nondegenerate &= k.is_empty();
        samples.push((pt, k));
    }
    NplecticStatus {
        nondegenerate,
        kernel: KernelInfo::Sampled(samples),
    }
}

/// Matrix of `X ↦ X⌟ω` on constant multivectors of degree `k`, with row and column blades.
fn contraction_matrix(omega: &Form, k: usize) -> (Vec<Blade>, Vec<Blade>, Vec<SparseRow>) {
    let dim = omega.dim();
    let cols = Blade::all(dim, k);
    let rows = Blade::all(dim, omega.degree().saturating_sub(k));
    let row_index: BTreeMap<Blade, usize> = rows.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut m = vec![SparseRow::new(); rows.len()];
    for (c, j) in cols.iter().enumerate() {
        for (i, p) in omega.comps() {
            if let Some((s, r)) = Blade::interior(*j, i) {
                let v = p.constant_term() * crate::poly::int(s as i64);
                let e = m[row_index[&r]].entry(c).or_insert_with(Rational::zero);
                *e += v;
            }
        }
    }
    for row in &mut m {
        row.retain(|_, v| !v.is_zero());
    }
    (cols, rows, m)
}

fn constant_kernel(omega: &Form, k: usize) -> Vec<MultiVec> {
    if k > omega.degree() {
        return vec![];
    }
    let (cols, _, m) = contraction_matrix(omega, k);
    let mut ech = Echelon::new(cols.len());
    for row in m {
        ech.push(row, Rational::zero());
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            MultiVec::from_comps(
                omega.dim(),
                k,
                v.into_iter()
                    .enumerate()
                    .map(|(c, x)| (cols[c], Polynomial::constant(x))),
            )
        })
        .collect()
}

/// Constant ω: `X⌟ω` acts monomial by monomial, so each monomial of the right side is a
/// separate small system.
fn solve_constant(omega: &Form, k: usize, rhs: &Form) -> Result<MultiVec> {
    let (cols, rows, m) = contraction_matrix(omega, k);
    let mut by_mono: BTreeMap<Monomial, BTreeMap<Blade, Rational>> = BTreeMap::new();
    for (b, p) in rhs.comps() {
        for (mono, c) in p.terms() {
            by_mono.entry(mono.clone()).or_default().insert(b, c.clone());
        }
    }
    let mut out = MultiVec::zero(omega.dim(), k);
    for (mono, target) in by_mono {
        let mut ech = Echelon::new(cols.len());
        for (r, row) in m.iter().enumerate() {
            let t = target.get(&rows[r]).cloned().unwrap_or_else(Rational::zero);
            ech.push(row.clone(), t);
        }
        if rows.is_empty() && !target.is_empty() {
            return Err(Error::NoSolution("right side outside the image of omega".into()));
        }
        let x = ech
            .solve()
            .ok_or_else(|| Error::NoSolution("form is not Hamiltonian".into()))?;
        for (c, v) in x.into_iter().enumerate() {
            if !v.is_zero() {
                out.add_comp(cols[c], Polynomial::term(v, mono.clone()));
            }
        }
    }
    Ok(out)
}

/// All monomials in `dim` variables of total degree at most `d`.
pub fn monomials_up_to(dim: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; dim];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// General ω: unknown coefficients of `X` range over monomials of degree `≤ d`.
fn solve_ansatz(omega: &Form, k: usize, rhs: &Form, d: u32) -> Result<MultiVec> {
    let dim = omega.dim();
    let cols = Blade::all(dim, k);
    let monos = monomials_up_to(dim, d);
    let nunk = cols.len() * monos.len();
    let mut eqs: BTreeMap<(Blade, Monomial), SparseRow> = BTreeMap::new();
    for (ci, j) in cols.iter().enumerate() {
        for (mi, nu) in monos.iter().enumerate() {
            let unknown = ci * monos.len() + mi;
            for (i, p) in omega.comps() {
                let Some((s, r)) = Blade::interior(*j, i) else { continue };
                for (lambda, c) in p.terms() {
                    let key = (r, nu.mul(lambda));
                    let e = eqs.entry(key).or_default().entry(unknown).or_insert_with(Rational::zero);
                    *e += c * crate::poly::int(s as i64);
                }
            }
        }
    }
    let mut targets: BTreeMap<(Blade, Monomial), Rational> = BTreeMap::new();
    for (b, p) in rhs.comps() {
        for (mono, c) in p.terms() {
            targets.insert((b, mono.clone()), c.clone());
        }
    }
    let mut ech = Echelon::new(nunk);
    for (key, t) in &targets {
        if !eqs.contains_key(key) {
            return Err(Error::NoSolution("right side outside the ansatz image".into()));
        }
        let _ = t;
    }
    for (key, row) in eqs {
        let t = targets.get(&key).cloned().unwrap_or_else(Rational::zero);
        ech.push(row, t);
    }
    let x = ech
        .solve()
        .ok_or_else(|| Error::NoSolution(format!("no polynomial solution of degree <= {d}")))?;
    let mut out = MultiVec::zero(dim, k);
    for (u, v) in x.into_iter().enumerate() {
        if !v.is_zero() {
            let (ci, mi) = (u / monos.len(), u % monos.len());
            out.add_comp(cols[ci], Polynomial::term(v, monos[mi].clone()));
        }
    }
    Ok(out)
}

/// `(i, m−i)`-unshuffles of `0..m` as permutations listing the image order.
pub fn unshuffles(i: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let mut perm: Vec<usize> = (0..m).filter(|a| mask & (1 << a) != 0).collect();
        perm.extend((0..m).filter(|a| mask & (1 << a) == 0));
        out.push(perm);
    }
    out
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    sign(inv)
}

/// Koszul sign of moving graded letters into the order `perm`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> i32 {
    let mut s = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                s *= sign(degrees[perm[a]] * degrees[perm[b]]);
            }
        }
    }
    s
}

/// Random Hamiltonian pairs drawn from the polynomial solutions of `d(X⌟ω) = 0`.
#[derive(Clone, Debug)]
pub struct HamiltonianSampler {
    max_degree: u32,
    excluded: Option<usize>,
    bases: BTreeMap<usize, Vec<MultiVec>>,
}

impl HamiltonianSampler {
    pub fn new(max_degree: u32) -> Self {
        HamiltonianSampler {
            max_degree,
            excluded: None,
            bases: BTreeMap::new(),
        }
    }

    /// Restrict coefficients to polynomials not involving coordinate `i`, so that every
    /// sampled field commutes with `∂_i`.
    pub fn excluding(mut self, i: usize) -> Self {
        self.excluded = Some(i);
        self
    }

    /// Basis of the Hamiltonian `k`-vector fields with coefficients of degree `≤ max_degree`.
    pub fn field_basis(&mut self, sys: &PlecticSystem, k: usize) -> &[MultiVec] {
        let (max_degree, excluded) = (self.max_degree, self.excluded);
        self.bases
            .entry(k)
            .or_insert_with(|| hamiltonian_field_basis(sys.omega(), k, max_degree, excluded))
    }

    pub fn field(&mut self, sys: &PlecticSystem, r: &mut random::Rng8, k: usize) -> MultiVec {
        use rand::Rng;
        let dim = sys.dim();
        let basis = self.field_basis(sys, k);
        let mut out = MultiVec::zero(dim, k);
        if basis.is_empty() {
            return out;
        }
        for _ in 0..r.gen_range(1..=3) {
            let v = &basis[r.gen_range(0..basis.len())];
            out = &out + &v.scale(&random::small_rational(r));
        }
        out
    }

    /// A Hamiltonian pair with field degree `k`; the form is the homotopy primitive plus a
    /// random exact form.
    pub fn pair(&mut self, sys: &PlecticSystem, r: &mut random::Rng8, k: usize) -> HamiltonianPair {
        let field = self.field(sys, r, k);
        let mut alpha = sys.hamiltonian_form(&field).expect("sampled field is Hamiltonian");
        let deg = sys.n() - k;
        if deg >= 1 {
            let shape = random::Shape {
                max_coeff_degree: 2,
                max_terms: 2,
                max_comps: 2,
            };
            alpha = &alpha + &random::form(r, sys.dim(), deg - 1, shape).d();
        }
        HamiltonianPair { alpha, field }
    }
}

/// Nullspace of `X ↦ d(X⌟ω)` on `k`-vector fields with coefficients of degree `≤ d`.
pub fn hamiltonian_field_basis(omega: &Form, k: usize, d: u32, excluded: Option<usize>) -> Vec<MultiVec> {
    let dim = omega.dim();
    let cols = Blade::all(dim, k);
    let monos: Vec<Monomial> = monomials_up_to(dim, d)
        .into_iter()
        .filter(|m| excluded.map_or(true, |i| m.exponent(i) == 0))
        .collect();
    let mut eqs: BTreeMap<(Blade, Monomial), SparseRow> = BTreeMap::new();
    for (ci, j) in cols.iter().enumerate() {
        for (mi, nu) in monos.iter().enumerate() {
            let unknown = ci * monos.len() + mi;
            let x = MultiVec::from_comps(dim, k, [(*j, Polynomial::term(crate::poly::int(1), nu.clone()))]);
            let image = x.interior(omega).d();
            for (b, p) in image.comps() {
                for (mono, c) in p.terms() {
                    eqs.entry((b, mono.clone())).or_default().insert(unknown, c.clone());
                }
            }
        }
    }
    let mut ech = Echelon::new(cols.len() * monos.len());
    for (_, row) in eqs {
        ech.push(row, Rational::zero());
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut out = MultiVec::zero(dim, k);
            for (u, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    let (ci, mi) = (u / monos.len(), u % monos.len());
                    out.add_comp(cols[ci], Polynomial::term(c, monos[mi].clone()));
                }
            }
            out
        })
        .collect()
}


#[cfg(test)]
mod property_tests {
    use super::*;
    use rand::Rng;

    fn systems() -> Vec<PlecticSystem> {
        let vol5 = Form::basis(5, &[0, 1, 2, 3, 4]);
        let two = &Form::basis(6, &[0, 1, 2]) + &Form::basis(6, &[3, 4, 5]);
        let sigma = &(&Form::basis(6, &[0, 3]) + &Form::basis(6, &[1, 4])) + &Form::basis(6, &[2, 5]);
        let four = sigma.wedge(&sigma);
        [vol5, two, four]
            .into_iter()
            .map(|w| PlecticSystem::new(Chart::numbered("x", w.dim()), w).unwrap())
            .collect()
    }

    #[test]
    fn poisson_algebra_on_random_pairs() {
        let mut r = random::rng(11);
        let mut nontrivial = 0;
        for sys in systems() {
            let mut sampler = HamiltonianSampler::new(2);
            let n = sys.n();
            for _ in 0..4 {
                let ks: Vec<usize> = (0..3).map(|_| r.gen_range(1..=n)).collect();
                let a = sampler.pair(&sys, &mut r, ks[0]);
                let b = sampler.pair(&sys, &mut r, ks[1]);
                let c = sampler.pair(&sys, &mut r, ks[2]);
                assert!(sys.pair_residual(&a.alpha, &a.field).is_zero());
                assert!(sys.skew_residual(&a, &b).is_zero());
                assert!(sys.schouten_residual(&a, &b).is_zero());
                let p = sys.poisson(&a, &b);
                assert!(sys.pair_residual(&p.alpha, &p.field).is_zero());
                assert!(sys.jacobi_residual(&a, &b, &c).is_zero(), "jacobi on {ks:?}");
                nontrivial += usize::from(!sys.jacobiator(&a, &b, &c).is_zero());
            }
        }
        assert!(nontrivial > 0);
    }

    #[test]
    fn rogers_and_linfty() {
        let mut r = random::rng(5);
        for sys in systems() {
            let mut sampler = HamiltonianSampler::new(2);
            let fields: Vec<MultiVec> = (0..3).map(|_| sampler.field(&sys, &mut r, 1)).collect();
            for m in 1..=3 {
                assert!(sys.rogers_residual(&fields[..m]).is_zero());
            }
            let obs: Vec<Observable> = (0..3)
                .map(|_| {
                    let p = sampler.pair(&sys, &mut r, 1);
                    Observable { form: p.alpha, field: Some(p.field) }
                })
                .collect();
            for m in 1..=3 {
                assert!(sys.linfty_residual(&obs[..m]).unwrap().is_zero(), "m = {m}");
            }
        }
    }

    #[test]
    fn noether_and_interior_lemmas() {
        let mut r = random::rng(3);
        for conv in [Sign::Minus, Sign::Plus] {
            for mut sys in systems() {
                sys.set_conventions(Conventions { hamiltonian: conv, comomentum: conv });
                let mut sampler = HamiltonianSampler::new(2);
                let h = sampler.pair(&sys, &mut r, 1);
                let h = sys.pair(&h.alpha).unwrap();
                let sys = sys.with_hamiltonian(h.alpha.clone()).unwrap();
                for _ in 0..3 {
                    let k = r.gen_range(1..=sys.n());
                    let a = sampler.pair(&sys, &mut r, k);
                    let a = sys.pair(&a.alpha).unwrap();
                    let rep = sys.noether(&a).unwrap();
                    assert!(rep.residual.is_zero());
                    assert!(rep.transfer_ok);
                    assert!(sys.conserved_interior_residual(&a).unwrap().is_zero());
                    assert!(sys.symmetry_interior_residual(&a.field).unwrap().is_zero());
                }
            }
        }
    }
}
