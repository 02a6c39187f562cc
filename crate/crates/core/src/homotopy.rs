//! Radial homotopy operator and exactness decisions on star-shaped charts.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{sign, Blade, Form};
use crate::poly::{int, Polynomial, Rational};

/// `K τ` for the straight-line homotopy contracting onto `base`.
///
/// For `τ = f dx^I` of degree `m`, each monomial `c x^α` of degree `d` contributes
/// `c x^α / (d + m) · Σ_a (−1)^{a} x^{i_a} dx^{I∖i_a}` in coordinates centred at `base`.
pub fn poincare_homotopy(tau: &Form, base: &[Rational]) -> Result<Form> {
    let m = tau.degree();
    if m == 0 {
        return Err(Error::InvalidInput("homotopy operator needs degree >= 1".into()));
    }
    if base.len() != tau.dim() {
        return Err(Error::ChartMismatch(base.len(), tau.dim()));
    }
    let centred = tau.translate(base);
    let mut out = Form::zero(tau.dim(), m - 1);
    for (b, f) in centred.comps() {
        let radial = f.map_terms(|mono, c| c / int(mono.degree() as i64 + m as i64));
        for (a, i) in b.indices().into_iter().enumerate() {
            let rest = Blade(b.0 & !(1 << i));
            let coeff = &radial * &Polynomial::var(i);
            let piece = Form::from_comps(tau.dim(), m - 1, [(rest, coeff)]);
            out = &out + &piece.with_sign(sign(a as i64));
        }
    }
    let back: Vec<Rational> = base.iter().map(|b| -b).collect();
    Ok(out.translate(&back))
}

pub fn origin(dim: usize) -> Vec<Rational> {
    vec![Rational::zero(); dim]
}

/// Exactness with a primitive when one exists. Degree-0 forms are exact only when zero.
pub fn exact_primitive(tau: &Form) -> Option<Form> {
    if tau.degree() == 0 {
        return tau.is_zero().then(|| Form::zero(tau.dim(), 0));
    }
    if !tau.is_closed() {
        return None;
    }
    Some(poincare_homotopy(tau, &origin(tau.dim())).expect("degree >= 1"))
}

pub fn is_exact(tau: &Form) -> bool {
    exact_primitive(tau).is_some()
}

/// Closedness; a 0-form is closed exactly when it is constant.
pub fn is_closed(tau: &Form) -> bool {
    tau.is_closed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn area_form_primitive() {
        let area = Form::basis(2, &[0, 1]);
        let k = poincare_homotopy(&area, &origin(2)).unwrap();
        let expected = &Form::monomial(2, &[1], Polynomial::var(0).scale(&rat(1, 2)))
            - &Form::monomial(2, &[0], Polynomial::var(1).scale(&rat(1, 2)));
        assert_eq!(k, expected);
        assert_eq!(k.d(), area);
    }

    #[test]
    fn one_form_primitive() {
        let dx = Form::dx(1, 0);
        assert_eq!(poincare_homotopy(&dx, &origin(1)).unwrap(), Form::scalar(1, Polynomial::var(0)));
        let xdx = Form::monomial(1, &[0], Polynomial::var(0));
        let p = exact_primitive(&xdx).unwrap();
        assert_eq!(p, Form::scalar(1, Polynomial::var(0).pow(2).scale(&rat(1, 2))));
    }

    #[test]
    fn degree_zero_rules() {
        let c = Form::constant(2, int(3));
        assert!(is_closed(&c));
        assert!(!is_exact(&c));
        assert!(is_exact(&Form::zero(2, 0)));
        assert!(poincare_homotopy(&c, &origin(2)).is_err());
    }

    #[test]
    fn homotopy_identity_with_shifted_base() {
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let tau = Form::monomial(3, &[0, 2], &(&x * &y) + &Polynomial::var(2).pow(2));
        let base = vec![int(1), rat(-1, 2), int(2)];
        let lhs = &poincare_homotopy(&tau, &base).unwrap().d() + &poincare_homotopy(&tau.d(), &base).unwrap();
        assert_eq!(lhs, tau);
    }
}
