use rug::Float;

use crate::bigcomplex::{eval_cpoly, BigComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::UPoly;

/// Distinct complex roots with their multiplicities, sorted by real then
/// imaginary part.
#[derive(Clone, Debug)]
pub struct RootsResult {
    pub roots: Vec<(BigComplex, u32)>,
    /// Largest relative residual `|p(z)| / Σ|c_k||z|^k` over the roots.
    pub residual: Float,
}

impl RootsResult {
    /// Roots repeated according to multiplicity.
    pub fn flat(&self) -> Vec<BigComplex> {
        self.roots.iter().flat_map(|(z, m)| std::iter::repeat(z.clone()).take(*m as usize)).collect()
    }

    /// Roots whose imaginary part is below `tol` in absolute value.
    pub fn real(&self, tol: f64) -> Vec<Float> {
        self.roots.iter().filter(|(z, _)| z.im.clone().abs() < tol).map(|(z, _)| z.re.clone()).collect()
    }
}

/// Roots of an exact polynomial at `prec` bits, via squarefree
/// decomposition followed by simultaneous iteration on each factor.
pub fn roots_complex<K: Field>(p: &UPoly<K>, prec: u32) -> Result<RootsResult> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut residual = Float::new(prec);
    for (f, m) in p.squarefree() {
        let c: Vec<BigComplex> = f.coeffs().iter().map(|x| BigComplex::from_field(prec, x)).collect();
        for z in roots_numeric(&c, prec)? {
            let r = rel_residual(&c, &z);
            if r > residual {
                residual = r;
            }
            roots.push((z, m));
        }
    }
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)));
    if residual > tol {
        return Err(Error::NoConvergence { prec });
    }
    roots.sort_by(|a, b| a.0.lex_cmp(&b.0));
    Ok(RootsResult { roots, residual })
}

fn rel_residual(c: &[BigComplex], z: &BigComplex) -> Float {
    let prec = z.prec();
    let v = eval_cpoly(c, z).abs();
    let az = z.abs();
    let mut s = Float::new(prec);
    for x in c.iter().rev() {
        s *= &az;
        s += x.abs();
    }
    if s.is_zero() {
        v
    } else {
        v / s
    }
}

/// Roots of a polynomial with complex coefficients (ascending order), all
/// assumed simple. Leading zeros are stripped.
pub fn roots_numeric(c: &[BigComplex], prec: u32) -> Result<Vec<BigComplex>> {
    let (z, ok) = aberth(c, prec, 2000)?;
    if !ok {
        return Err(Error::NoConvergence { prec });
    }
    Ok(z)
}

/// Simultaneous Aberth iteration followed by two Newton steps. The flag
/// reports whether the corrections fell below `2^(16 - prec)`; the
/// approximations are returned either way.
pub fn aberth(c: &[BigComplex], prec: u32, max_iter: usize) -> Result<(Vec<BigComplex>, bool)> {
    let mut c: Vec<BigComplex> = c.iter().map(|x| x.with_prec(prec)).collect();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok((Vec::new(), true));
    }
    let lc = c[n].clone();
    let c: Vec<BigComplex> = c.iter().map(|x| x / &lc).collect();
    if n == 1 {
        return Ok((vec![-&c[0]], true));
    }
    let dc: Vec<BigComplex> = (1..=n).map(|k| c[k].scale(&Float::with_val(prec, k))).collect();

    // Cauchy-type radius for the initial circle.
    let mut rad = Float::with_val(prec, 0);
    for x in &c[..n] {
        let a = x.abs();
        if a > rad {
            rad = a;
        }
    }
    rad += 1;
    let rad = rad.min(&Float::with_val(prec, 1e6));
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            BigComplex::from_f64(prec, th.cos(), th.sin()).scale(&rad)
        })
        .collect();

    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16));
    let mut done = false;
    for _ in 0..max_iter {
        let mut maxstep = Float::new(prec);
        for k in 0..n {
            let pv = eval_cpoly(&c, &z[k]);
            if pv.is_zero() {
                continue;
            }
            let dv = eval_cpoly(&dc, &z[k]);
            let w = &pv / &dv;
            let mut s = BigComplex::zero(prec);
            for j in 0..n {
                if j != k {
                    s = &s + &(&z[k] - &z[j]).inv();
                }
            }
            let den = &BigComplex::one(prec) - &(&w * &s);
            let step = &w / &den;
            let rel = Float::with_val(prec, step.abs() / (z[k].abs() + 1u32));
            if rel > maxstep {
                maxstep = rel;
            }
            z[k] = &z[k] - &step;
        }
        if maxstep < eps {
            done = true;
            break;
        }
    }
    if z.iter().any(|x| x.re.is_nan() || x.im.is_nan()) {
        return Err(Error::NoConvergence { prec });
    }
    for _ in 0..2 {
        for x in z.iter_mut() {
            let dv = eval_cpoly(&dc, x);
            if !dv.is_zero() {
                *x = &*x - &(&eval_cpoly(&c, x) / &dv);
            }
        }
    }
    z.sort_by(|a, b| a.lex_cmp(b));
    Ok((z, done))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    #[test]
    fn cyclotomic_and_multiple() {
        // (t^2 + 1)(t - 2)^2
        let p = UPoly::<Rat>::new(vec![rat(1, 1), rat(0, 1), rat(1, 1)])
            .mul(&UPoly::new(vec![rat(-2, 1), rat(1, 1)]).pow(2));
        let r = roots_complex(&p, 256).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.roots[2].1, 2);
        assert!(r.roots[2].0.dist(&BigComplex::from_f64(256, 2.0, 0.0)) < 1e-60);
        assert!(r.roots[0].0.dist(&BigComplex::from_f64(256, 0.0, -1.0)) < 1e-60);
        assert_eq!(r.real(1e-30).len(), 1);
    }
}
