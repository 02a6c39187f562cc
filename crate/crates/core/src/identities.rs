//! Residuals of the exterior-calculus identities; each is identically zero when the identity holds.

use std::fmt;

use rand::Rng;

use crate::exterior::{sign, Graded, Kind};
use crate::homotopy::{origin, poincare_homotopy};
use crate::lie::{Action, WedgePower};
use crate::random::{self, Rng8, Shape};
use crate::{Form, MultiVec};

/// A residual form or multivector together with the chart names used for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Form(Form),
    Vec(MultiVec),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Form(f) => f.is_zero(),
            Residual::Vec(v) => v.is_zero(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        match self {
            Residual::Form(f) => f.fmt_with(names),
            Residual::Vec(v) => v.fmt_with(names),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

fn signed<K: Kind>(x: Graded<K>, exponent: usize) -> Graded<K> {
    x.with_sign(sign(exponent as i64))
}

/// `d L_X τ − (−1)^{k+1} L_X dτ`.
pub fn d_lie(x: &MultiVec, tau: &Form) -> Form {
    let k = x.degree();
    &x.lie(tau).d() - &signed(x.lie(&tau.d()), k + 1)
}

/// `[X,Y]⌟τ − (−1)^{(k+1)l} L_X(Y⌟τ) + Y⌟L_Xτ`.
pub fn bracket_hook(x: &MultiVec, y: &MultiVec, tau: &Form) -> Form {
    let (k, l) = (x.degree(), y.degree());
    let lhs = x.schouten(y).interior(tau);
    let a = signed(x.lie(&y.interior(tau)), (k + 1) * l);
    let b = y.interior(&x.lie(tau));
    &(&lhs - &a) + &b
}

/// `L_{[X,Y]}τ − (−1)^{(k+1)(l+1)} L_X L_Y τ + L_Y L_X τ`.
pub fn lie_bracket(x: &MultiVec, y: &MultiVec, tau: &Form) -> Form {
    let (k, l) = (x.degree(), y.degree());
    let lhs = x.schouten(y).lie(tau);
    let a = signed(x.lie(&y.lie(tau)), (k + 1) * (l + 1));
    let b = y.lie(&x.lie(tau));
    &(&lhs - &a) + &b
}

/// `L_{X∧Y}τ − (−1)^l Y⌟L_Xτ − L_Y(X⌟τ)`.
pub fn wedge_rule(x: &MultiVec, y: &MultiVec, tau: &Form) -> Form {
    let l = y.degree();
    let lhs = x.wedge(y).lie(tau);
    let a = signed(y.interior(&x.lie(tau)), l);
    let b = y.lie(&x.interior(tau));
    &(&lhs - &a) - &b
}

/// `[X,Y]⌟τ` minus the four-term interior expansion.
pub fn interior_equation(x: &MultiVec, y: &MultiVec, tau: &Form) -> Form {
    let (k, l) = (x.degree(), y.degree());
    let lhs = x.schouten(y).interior(tau);
    let t1 = -y.interior(&x.interior(tau).d());
    let t2 = signed(y.interior(&x.interior(tau)).d(), l);
    let t3 = signed(x.interior(&y.interior(&tau.d())), k * l + k);
    let t4 = -signed(x.interior(&y.interior(tau).d()), k * l + k + l);
    let rhs = &(&(&t1 + &t2) + &t3) + &t4;
    &lhs - &rhs
}

/// `[X,Y] + (−1)^{(k+1)(l+1)} [Y,X]`.
pub fn schouten_antisymmetry(x: &MultiVec, y: &MultiVec) -> MultiVec {
    let (k, l) = (x.degree(), y.degree());
    &x.schouten(y) + &signed(y.schouten(x), (k + 1) * (l + 1))
}

/// Cyclic sum `(−1)^{(k−1)(m−1)}[X,[Y,Z]] + (−1)^{(l−1)(k−1)}[Y,[Z,X]] + (−1)^{(m−1)(l−1)}[Z,[X,Y]]`.
pub fn schouten_jacobi(x: &MultiVec, y: &MultiVec, z: &MultiVec) -> MultiVec {
    let (k, l, m) = (x.degree() as i64, y.degree() as i64, z.degree() as i64);
    let a = x.schouten(&y.schouten(z)).with_sign(sign((k - 1) * (m - 1)));
    let b = y.schouten(&z.schouten(x)).with_sign(sign((l - 1) * (k - 1)));
    let c = z.schouten(&x.schouten(y)).with_sign(sign((m - 1) * (l - 1)));
    &(&a + &b) + &c
}

/// `[X, Y∧Z] − [X,Y]∧Z − (−1)^{(k−1)l} Y∧[X,Z]`.
pub fn schouten_leibniz(x: &MultiVec, y: &MultiVec, z: &MultiVec) -> MultiVec {
    let (k, l) = (x.degree() as i64, y.degree() as i64);
    let lhs = x.schouten(&y.wedge(z));
    let a = x.schouten(y).wedge(z);
    let b = y.wedge(&x.schouten(z)).with_sign(sign((k - 1) * l));
    &(&lhs - &a) - &b
}

/// `d K τ + K dτ − τ` for `deg τ ≥ 1`.
pub fn homotopy(tau: &Form) -> Form {
    let base = origin(tau.dim());
    let a = poincare_homotopy(tau, &base).expect("degree >= 1").d();
    let b = poincare_homotopy(&tau.d(), &base).expect("degree >= 1");
    &(&a + &b) - tau
}

/// Extended Cartan lemma for a basis wedge `p = ξ_1∧…∧ξ_k`:
/// `(−1)^k d(V_p⌟τ) + V_{∂p}⌟τ − Σ_i (−1)^i (V_{ξ_1}…V̂_{ξ_i}…V_{ξ_k})⌟L_{V_{ξ_i}}τ − V_p⌟dτ`.
pub fn extended_cartan(action: &Action, p: &WedgePower, tau: &Form) -> Form {
    let k = p.degree();
    let dim = action.dim();
    let mut out = signed(action.generator(p).interior(tau).d(), k);
    let dp = action.algebra().ce_differential(p);
    out = &out + &action.generator(&dp).interior(tau);
    out = &out - &action.generator(p).interior(&tau.d());
    for (b, c) in p.terms() {
        let idx = b.indices();
        for i in 0..k {
            let mut rest = MultiVec::constant(dim, c.clone());
            for (pos, &j) in idx.iter().enumerate() {
                if pos != i {
                    rest = rest.wedge(&action.generators()[j]);
                }
            }
            let term = rest.interior(&action.generators()[idx[i]].lie(tau));
            out = &out - &signed(term, i + 1);
        }
    }
    out
}

/// The identities exposed to the randomized checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    DLie,
    BracketHook,
    LieBracket,
    WedgeRule,
    InteriorEquation,
    SchoutenAntisymmetry,
    SchoutenJacobi,
    SchoutenLeibniz,
    Homotopy,
    ExtendedCartan,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::DLie,
        Identity::BracketHook,
        Identity::LieBracket,
        Identity::WedgeRule,
        Identity::InteriorEquation,
        Identity::SchoutenAntisymmetry,
        Identity::SchoutenJacobi,
        Identity::SchoutenLeibniz,
        Identity::Homotopy,
        Identity::ExtendedCartan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DLie => "d-lie",
            Identity::BracketHook => "bracket-hook",
            Identity::LieBracket => "lie-bracket",
            Identity::WedgeRule => "wedge-rule",
            Identity::InteriorEquation => "interior-equation",
            Identity::SchoutenAntisymmetry => "schouten-antisymmetry",
            Identity::SchoutenJacobi => "schouten-jacobi",
            Identity::SchoutenLeibniz => "schouten-leibniz",
            Identity::Homotopy => "homotopy",
            Identity::ExtendedCartan => "extended-cartan",
        }
    }

    /// Draw one random case on a `dim`-dimensional chart with multivector degrees up to
    /// `max_degree` and return its residual.
    pub fn random_case(self, r: &mut Rng8, dim: usize, max_degree: usize, shape: Shape) -> Residual {
        let deg = |r: &mut Rng8, lo: usize| r.gen_range(lo..=max_degree.min(dim).max(lo));
        let form_deg = |r: &mut Rng8| r.gen_range(0..=dim);
        match self {
            Identity::DLie => {
                let x = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                let tau = { let d = form_deg(r); random::form(r, dim, d, shape) };
                Residual::Form(d_lie(&x, &tau))
            }
            Identity::BracketHook | Identity::LieBracket | Identity::WedgeRule | Identity::InteriorEquation => {
                let x = { let d = deg(r, 1); random::multivec(r, dim, d, shape) };
                let y = { let d = deg(r, 1); random::multivec(r, dim, d, shape) };
                let tau = { let d = form_deg(r); random::form(r, dim, d, shape) };
                Residual::Form(match self {
                    Identity::BracketHook => bracket_hook(&x, &y, &tau),
                    Identity::LieBracket => lie_bracket(&x, &y, &tau),
                    Identity::WedgeRule => wedge_rule(&x, &y, &tau),
                    _ => interior_equation(&x, &y, &tau),
                })
            }
            Identity::SchoutenAntisymmetry => {
                let x = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                let y = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                Residual::Vec(schouten_antisymmetry(&x, &y))
            }
            Identity::SchoutenJacobi | Identity::SchoutenLeibniz => {
                let x = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                let y = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                let z = { let d = deg(r, 0); random::multivec(r, dim, d, shape) };
                Residual::Vec(if self == Identity::SchoutenJacobi {
                    schouten_jacobi(&x, &y, &z)
                } else {
                    schouten_leibniz(&x, &y, &z)
                })
            }
            Identity::Homotopy => {
                let tau = { let d = r.gen_range(1..=dim); random::form(r, dim, d, shape) };
                Residual::Form(homotopy(&tau))
            }
            Identity::ExtendedCartan => {
                let action = random::action(r, dim);
                let gdim = action.algebra().dim();
                let k = r.gen_range(1..=gdim.min(max_degree.max(1)));
                let p = random::basis_wedge(r, action.algebra(), k);
                let tau = { let d = form_deg(r); random::form(r, dim, d, shape) };
                Residual::Form(extended_cartan(&action, &p, &tau))
            }
        }
    }
}
