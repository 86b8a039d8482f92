use rug::{Float, Integer, Rational};

use crate::bigcomplex::BigComplex;
use crate::gauss::GaussRat;
use crate::rat::Rat;

/// Simplest continued-fraction convergent `p/q` with `q <= den_bound` and
/// `|x - p/q| <= tol`.
pub fn rational_reconstruct_tol(x: &Float, den_bound: &Integer, tol: &Float) -> Option<Rat> {
    let mut r = x.to_rational()?;
    let target = r.clone();
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    for _ in 0..10_000 {
        let a = r.clone().floor().into_numer_denom().0;
        let h2 = Integer::from(&a * &h1) + &h0;
        let k2 = Integer::from(&a * &k1) + &k0;
        if &k2 > den_bound {
            return None;
        }
        let cand = Rational::from((h2.clone(), k2.clone()));
        let err = Float::with_val(x.prec(), Rational::from(&target - &cand).abs());
        if &err <= tol {
            return Some(cand);
        }
        let frac = Rational::from(&r - &a);
        if frac == 0 {
            return None;
        }
        r = frac.recip();
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    None
}

/// Reconstruction with tolerance `2^(8 - prec) · max(1, |x|)`.
pub fn rational_reconstruct(x: &Float, den_bound: &Integer) -> Option<Rat> {
    let prec = x.prec();
    let mut tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    let ax = x.clone().abs();
    if ax > 1 {
        tol *= ax;
    }
    rational_reconstruct_tol(x, den_bound, &tol)
}

/// Both parts reconstructed; a part below `tol` in size becomes zero.
pub fn rational_reconstruct_complex(z: &BigComplex, den_bound: &Integer, tol: &Float) -> Option<GaussRat> {
    let part = |x: &Float| {
        if x.clone().abs() <= *tol {
            Some(Rat::new())
        } else {
            rational_reconstruct_tol(x, den_bound, tol)
        }
    };
    Some(GaussRat::new(part(&z.re)?, part(&z.im)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn recovers_fraction() {
        let q = rat(-535801, 676062);
        let x = Float::with_val(256, &q);
        assert_eq!(rational_reconstruct(&x, &Integer::from(10u64.pow(12))).unwrap(), q);
        assert!(rational_reconstruct(&x, &Integer::from(1000)).is_none());
    }

    #[test]
    fn rejects_irrational() {
        let x = Float::with_val(256, 2).sqrt();
        assert!(rational_reconstruct(&x, &Integer::from(10u64.pow(12))).is_none());
    }
}
