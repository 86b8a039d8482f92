use std::fmt::{Debug, Display};

use crate::rat::Rat;

/// Exact field used as a polynomial coefficient ring.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn add_assign(&mut self, o: &Self) {
        *self = Field::add(self, o);
    }
    fn sub_assign(&mut self, o: &Self) {
        *self = Field::sub(self, o);
    }
    fn mul_assign(&mut self, o: &Self) {
        *self = Field::mul(self, o);
    }
    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from(n))
    }
    /// Scalar bringing a gcd with these coefficients into canonical form.
    /// The default makes it monic.
    fn gcd_normalizer(_coeffs: &[Self], lc: &Self) -> Self {
        lc.inv()
    }
    /// Real and imaginary parts as rationals.
    fn to_gauss_parts(&self) -> (Rat, Rat);
    /// Inverse of `to_gauss_parts`, when the field contains the value.
    fn from_gauss_parts(_re: &Rat, _im: &Rat) -> Option<Self> {
        None
    }
}
