use std::cmp::Ordering;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::field::Field;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rat = Rational;

/// `n / d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rational::from((Integer::from(n), Integer::from(d)))
}

/// Parse `"p/q"`, `"p"` or a plain decimal such as `"-1.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse(s.to_string()));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if t.contains('/') {
            return Err(Error::Parse(s.to_string()));
        }
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(s.to_string()));
        }
        let num = Integer::from_str(&digits).map_err(|_| Error::Parse(s.to_string()))?;
        let den = Integer::from(Integer::u_pow_u(10, fp.len() as u32));
        let r = Rational::from((num, den));
        return Ok(if neg { -r } else { r });
    }
    let r = Rational::from_str(t).map_err(|_| Error::Parse(s.to_string()))?;
    Ok(r)
}

/// Canonical string form `"p/q"` (or `"p"` for integers).
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == Ordering::Equal
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        self.clone().recip()
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!Field::is_zero(o), "division by zero");
        Rational::from(self / o)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_assign(&mut self, o: &Self) {
        *self *= o;
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    /// Coprime integer coefficients with a positive leading coefficient.
    fn gcd_normalizer(coeffs: &[Self], lc: &Self) -> Self {
        let mut l = Integer::from(1);
        let mut g = Integer::new();
        for c in coeffs {
            l.lcm_mut(c.denom());
            g.gcd_mut(c.numer());
        }
        let s = Rational::from((l, g));
        if lc.cmp0() == Ordering::Less {
            -s
        } else {
            s
        }
    }
    fn to_gauss_parts(&self) -> (Rat, Rat) {
        (self.clone(), Rational::new())
    }
    fn from_gauss_parts(re: &Rat, im: &Rat) -> Option<Self> {
        im.is_zero().then(|| re.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rat("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rat("0.5").unwrap(), rat(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn reduced_and_printed() {
        let r = rat(6, -4);
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(*r.denom(), 2);
    }
}
