use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::field::Field;
use crate::rat::Rat;

/// Element `re + i·im` of the Gaussian rationals Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn i() -> Self {
        GaussRat { re: Rational::new(), im: Rational::from(1) }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rational::new() }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: Rational::from(-&self.im) }
    }

    /// |z|² as a rational.
    pub fn norm(&self) -> Rat {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn is_real(&self) -> bool {
        Field::is_zero(&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if Field::is_zero(&self.re) {
            return write!(f, "{}*i", self.im);
        }
        if self.im.cmp0() == std::cmp::Ordering::Less {
            write!(f, "({}-{}*i)", self.re, Rational::from(-&self.im))
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

impl Field for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn one() -> Self {
        GaussRat::real(Rational::from(1))
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat { re: Rational::from(&self.re + &o.re), im: Rational::from(&self.im + &o.im) }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRat { re: Rational::from(&self.re - &o.re), im: Rational::from(&self.im - &o.im) }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return GaussRat::real(Rational::from(&self.re * &o.re));
        }
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        GaussRat { re, im }
    }
    fn neg(&self) -> Self {
        GaussRat { re: Rational::from(-&self.re), im: Rational::from(-&self.im) }
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        let n = self.norm();
        GaussRat { re: Rational::from(&self.re / &n), im: Rational::from(-&self.im) / &n }
    }
    fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
    fn sub_assign(&mut self, o: &Self) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
    fn from_rat(r: &Rat) -> Self {
        GaussRat::real(r.clone())
    }
    fn to_gauss_parts(&self) -> (Rat, Rat) {
        (self.re.clone(), self.im.clone())
    }
    fn from_gauss_parts(re: &Rat, im: &Rat) -> Option<Self> {
        Some(GaussRat::new(re.clone(), im.clone()))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        Field::add(self, o)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        Field::sub(self, o)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        Field::mul(self, o)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        Field::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn i_squared() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::real(rat(-1, 1)));
    }

    #[test]
    fn inverse() {
        let z = GaussRat::new(rat(3, 2), rat(-5, 7));
        assert!(Field::mul(&z, &z.inv()).is_one());
    }
}
