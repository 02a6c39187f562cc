//! Complex coordinates over the Gaussian rationals, expanded into real charts.
//!
//! A complex coordinate `z_j = x_j + i y_j` is a pair of real chart indices. Complex-valued
//! forms and multivectors are stored as a real and an imaginary part.

use std::ops::{Add, Mul, Neg, Sub};

use crate::exterior::{Graded, Kind};
use crate::poly::{rat, Polynomial, Rational};
use crate::{Form, MultiVec};

/// A complex Gaussian-rational scalar `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian { re, im: rat(0, 1) }
    }

    pub fn i() -> Self {
        Gaussian {
            re: rat(0, 1),
            im: rat(1, 1),
        }
    }
}

/// A complex-valued graded element `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<K: Kind> {
    pub re: Graded<K>,
    pub im: Graded<K>,
}

pub type CForm = Complex<crate::exterior::FormKind>;
pub type CVec = Complex<crate::exterior::VecKind>;

impl<K: Kind> Complex<K> {
    pub fn real(re: Graded<K>) -> Self {
        let im = Graded::zero(re.dim(), re.degree());
        Complex { re, im }
    }

    pub fn new(re: Graded<K>, im: Graded<K>) -> Self {
        Complex { re, im }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        Complex::real(Graded::zero(dim, degree))
    }

    pub fn scalar(dim: usize, re: Polynomial, im: Polynomial) -> Self {
        Complex {
            re: Graded::scalar(dim, re),
            im: Graded::scalar(dim, im),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn degree(&self) -> usize {
        if self.re.is_zero() {
            self.im.degree()
        } else {
            self.re.degree()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        Complex {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        let re = &self.re.scale(&c.re) - &self.im.scale(&c.im);
        let im = &self.re.scale(&c.im) + &self.im.scale(&c.re);
        Complex { re, im }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let re = &self.re.wedge(&other.re) - &self.im.wedge(&other.im);
        let im = &self.re.wedge(&other.im) + &self.im.wedge(&other.re);
        Complex { re, im }
    }

    pub fn re_part(&self) -> Self {
        Complex::real(self.re.clone())
    }

    pub fn im_part(&self) -> Self {
        Complex::real(self.im.clone())
    }
}

impl CForm {
    pub fn d(&self) -> CForm {
        Complex {
            re: self.re.d(),
            im: self.im.d(),
        }
    }
}

impl CVec {
    pub fn interior(&self, tau: &CForm) -> CForm {
        let re = &self.re.interior(&tau.re) - &self.im.interior(&tau.im);
        let im = &self.re.interior(&tau.im) + &self.im.interior(&tau.re);
        Complex { re, im }
    }
}

impl<K: Kind> Add for &Complex<K> {
    type Output = Complex<K>;
    fn add(self, o: &Complex<K>) -> Complex<K> {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<K: Kind> Sub for &Complex<K> {
    type Output = Complex<K>;
    fn sub(self, o: &Complex<K>) -> Complex<K> {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<K: Kind> Neg for Complex<K> {
    type Output = Complex<K>;
    fn neg(self) -> Complex<K> {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<K: Kind> Mul for &Complex<K> {
    type Output = Complex<K>;
    fn mul(self, o: &Complex<K>) -> Complex<K> {
        self.wedge(o)
    }
}

/// A complex coordinate `z = x + i y` on a real chart of dimension `dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexCoord {
    pub dim: usize,
    pub x: usize,
    pub y: usize,
}

impl ComplexCoord {
    pub fn new(dim: usize, x: usize, y: usize) -> Self {
        ComplexCoord { dim, x, y }
    }

    pub fn z(&self) -> CForm {
        Complex::scalar(self.dim, Polynomial::var(self.x), Polynomial::var(self.y))
    }

    pub fn zbar(&self) -> CForm {
        self.z().conj()
    }

    /// `|z|² = x² + y²`.
    pub fn abs2(&self) -> Polynomial {
        &Polynomial::var(self.x).pow(2) + &Polynomial::var(self.y).pow(2)
    }

    pub fn dz(&self) -> CForm {
        Complex::new(Form::dx(self.dim, self.x), Form::dx(self.dim, self.y))
    }

    pub fn dzbar(&self) -> CForm {
        self.dz().conj()
    }

    /// `∂/∂z = ½(∂_x − i∂_y)`.
    pub fn del(&self) -> CVec {
        let half = rat(1, 2);
        Complex::new(
            MultiVec::partial(self.dim, self.x).scale(&half),
            MultiVec::partial(self.dim, self.y).scale(&-half),
        )
    }

    /// `∂/∂z̄ = ½(∂_x + i∂_y)`.
    pub fn del_bar(&self) -> CVec {
        self.del().conj()
    }
}

/// Multiply a complex multivector by a complex scalar function.
pub fn mul_scalar<K: Kind>(f: &CForm, v: &Complex<K>) -> Complex<K> {
    let fr = f.re.as_scalar().unwrap_or_else(Polynomial::zero);
    let fi = f.im.as_scalar().unwrap_or_else(Polynomial::zero);
    let re = &v.re.mul_poly(&fr) - &v.im.mul_poly(&fi);
    let im = &v.re.mul_poly(&fi) + &v.im.mul_poly(&fr);
    Complex { re, im }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wirtinger_pairing() {
        let z = ComplexCoord::new(2, 0, 1);
        let one = CForm::scalar(2, Polynomial::one(), Polynomial::zero());
        assert_eq!(z.del().interior(&z.dz()), one);
        assert!(z.del_bar().interior(&z.dz()).is_zero());
        assert_eq!(z.del_bar().interior(&z.dzbar()), one);
    }

    #[test]
    fn rotation_generator_in_real_coordinates() {
        // (i/2)(z∂_z − z̄∂_z̄) = ½(−y∂_x + x∂_y)
        let z = ComplexCoord::new(2, 0, 1);
        let v = &mul_scalar(&z.z(), &z.del()) - &mul_scalar(&z.zbar(), &z.del_bar());
        let a = v.scale(&Gaussian::new(rat(0, 1), rat(1, 2)));
        let half = rat(1, 2);
        let expected = &MultiVec::monomial(2, &[1], Polynomial::var(0).scale(&half))
            - &MultiVec::monomial(2, &[0], Polynomial::var(1).scale(&half));
        assert_eq!(a, CVec::real(expected));
    }

    #[test]
    fn kahler_form_is_real() {
        let z = ComplexCoord::new(2, 0, 1);
        let w = z.dz().wedge(&z.dzbar()).scale(&Gaussian::new(rat(0, 1), rat(1, 2)));
        assert_eq!(w, CForm::real(Form::basis(2, &[0, 1])));
    }
}
