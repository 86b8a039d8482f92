use std::collections::BTreeMap;

use crate::field::Field;
use crate::mono::Mono;
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::upoly::UPoly;

pub fn upoly_gcd<K: Field>(a: &UPoly<K>, b: &UPoly<K>) -> UPoly<K> {
    a.gcd(b)
}

/// Scale by the inverse of the graded-lex leading coefficient.
pub fn monic<K: Field>(p: &MPoly<K>) -> MPoly<K> {
    if p.is_zero() {
        return p.clone();
    }
    p.scale(&p.leading_coeff().inv())
}

/// Canonical associate: coprime integer coefficients with positive leading
/// coefficient over the rationals, monic otherwise.
pub fn normalize<K: Field>(p: &MPoly<K>) -> MPoly<K> {
    if p.is_zero() {
        return p.clone();
    }
    let cs: Vec<K> = p.terms().map(|(_, c)| c.clone()).collect();
    p.scale(&K::gcd_normalizer(&cs, &p.leading_coeff()))
}

/// Rational multiple with coprime integer coefficients and a positive
/// leading coefficient.
pub fn primitive_part(p: &MPoly<Rat>) -> MPoly<Rat> {
    normalize(p)
}

/// Gcd in canonical form (see `normalize`). Zero only when both inputs are
/// zero.
pub fn mpoly_gcd<K: Field>(a: &MPoly<K>, b: &MPoly<K>) -> MPoly<K> {
    normalize(&gcd_any(a, b))
}

fn gcd_any<K: Field>(a: &MPoly<K>, b: &MPoly<K>) -> MPoly<K> {
    assert_eq!(a.nvars(), b.nvars(), "polynomials live in different rings");
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let n = a.nvars();
    let mut vars: Vec<usize> = a.support_vars();
    for v in b.support_vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    if vars.is_empty() {
        return MPoly::one(n);
    }
    if vars.len() == 1 {
        let v = vars[0];
        let g = a.to_upoly(v).unwrap().gcd(&b.to_upoly(v).unwrap());
        return MPoly::from_upoly(n, v, &g);
    }
    let y = *vars.last().unwrap();
    if a.is_homogeneous() && b.is_homogeneous() {
        return homogeneous_gcd(a, b, y);
    }
    monic(&brown(a, b, y))
}

/// Gcd of a list; the empty list gives zero.
pub fn mpoly_gcd_many<K: Field>(ps: &[MPoly<K>]) -> Option<MPoly<K>> {
    let mut it = ps.iter();
    let mut g = it.next()?.clone();
    for p in it {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd_any(&g, p);
    }
    Some(normalize(&g))
}

fn homogeneous_gcd<K: Field>(a: &MPoly<K>, b: &MPoly<K>, y: usize) -> MPoly<K> {
    let k = a.valuation_in(y).min(b.valuation_in(y));
    let g = gcd_any(&a.dehomogenize(y), &b.dehomogenize(y));
    let d = g.total_degree();
    let h = g.homogenize(y, d);
    monic(&h.mul_term(&Mono::var(y, k), &K::one()))
}

/// Split into univariate coefficients in `y`, keyed by the monomial in the other variables.
fn split_y<K: Field>(p: &MPoly<K>, y: usize) -> BTreeMap<Mono, Vec<K>> {
    let mut out: BTreeMap<Mono, Vec<K>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let v = out.entry(m.without(y)).or_default();
        let k = m.exp(y) as usize;
        if v.len() <= k {
            v.resize(k + 1, K::zero());
        }
        v[k] = c.clone();
    }
    out
}

fn content_y<K: Field>(p: &MPoly<K>, y: usize) -> UPoly<K> {
    let mut g = UPoly::zero();
    for (_, c) in split_y(p, y) {
        g = g.gcd(&UPoly::new(c));
        if g.degree() == 0 {
            break;
        }
    }
    g
}

fn lc_y<K: Field>(p: &MPoly<K>, y: usize) -> UPoly<K> {
    UPoly::new(split_y(p, y).into_iter().next_back().map(|(_, c)| c).unwrap_or_default())
}

/// Leading monomial ignoring `y`.
fn lm_x<K: Field>(p: &MPoly<K>, y: usize) -> Mono {
    p.terms().map(|(m, _)| m.without(y)).max().unwrap_or_else(Mono::one)
}

/// Dense interpolation on the variable `y`, with the gcd of the images
/// computed recursively.
fn brown<K: Field>(a: &MPoly<K>, b: &MPoly<K>, y: usize) -> MPoly<K> {
    let n = a.nvars();
    let ca = content_y(a, y);
    let cb = content_y(b, y);
    let c = MPoly::from_upoly(n, y, &ca.gcd(&cb));
    let pa = a.div_exact(&MPoly::from_upoly(n, y, &ca)).unwrap();
    let pb = b.div_exact(&MPoly::from_upoly(n, y, &cb)).unwrap();
    let la = lc_y(&pa, y);
    let lb = lc_y(&pb, y);
    let gamma = la.gcd(&lb);
    let bound = pa.degree_in(y).min(pb.degree_in(y)) as usize + gamma.degree();

    let mut h = MPoly::zero(n);
    let mut modulus = MPoly::one(n);
    let mut lm = None::<Mono>;
    let mut npts = 0usize;
    let mut k = 0i64;
    loop {
        k += 1;
        let kv = K::from_i64(k);
        let gk = gamma.eval(&kv);
        if la.eval(&kv).is_zero() || lb.eval(&kv).is_zero() || gk.is_zero() {
            continue;
        }
        let img = monic(&gcd_any(&pa.subst(y, &kv), &pb.subst(y, &kv)));
        let m = img.leading_term().map(|(m, _)| *m).unwrap();
        if m.degree() == 0 {
            return c;
        }
        let img = img.scale(&gk);
        match lm {
            Some(cur) if m > cur => continue,
            Some(cur) if m == cur => {}
            _ => {
                lm = Some(m);
                h = MPoly::zero(n);
                modulus = MPoly::one(n);
                npts = 0;
            }
        }
        let at = h.subst(y, &kv);
        let diff = img.sub(&at);
        let unchanged = diff.is_zero();
        if !unchanged {
            let mk = modulus.subst(y, &kv).constant_term();
            h = h.add(&diff.mul(&modulus).scale(&mk.inv()));
        }
        let root = MPoly::var(n, y).sub(&MPoly::constant(n, kv));
        modulus = modulus.mul(&root);
        npts += 1;
        if npts > bound || (unchanged && npts >= 2) {
            let cand = h.div_exact(&MPoly::from_upoly(n, y, &content_y(&h, y))).unwrap();
            if lm_x(&cand, y) == lm.unwrap()
                && pa.div_exact(&cand).is_some()
                && pb.div_exact(&cand).is_some()
            {
                return cand.mul(&c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn v(i: usize) -> MPoly<Rat> {
        MPoly::var(3, i)
    }

    fn c(x: i64) -> MPoly<Rat> {
        MPoly::constant(3, rat(x, 1))
    }

    #[test]
    fn trivariate_common_factor() {
        let g = &(&(&v(0) * &v(1)) + &v(2)) + &c(3);
        let a = &g * &(&v(0) - &(&v(2) * &v(2)));
        let b = &g * &(&(&v(1) * &v(1)) + &c(1));
        assert_eq!(mpoly_gcd(&a, &b), g);
    }

    #[test]
    fn content_in_last_variable() {
        let a = &(&v(2) + &c(1)) * &(&v(0) + &v(2));
        let b = &(&v(2) + &c(1)) * &(&v(1) - &v(2));
        assert_eq!(mpoly_gcd(&a, &b), &v(2) + &c(1));
    }

    #[test]
    fn homogeneous_with_power() {
        let g = &(&v(0) * &v(0)) - &(&v(1) * &v(2));
        let a = &(&g * &v(2)) * &(&v(0) + &v(1));
        let b = &(&g * &(&v(2) * &v(2))) * &(&v(0) - &v(1));
        assert_eq!(mpoly_gcd(&a, &b), &g * &v(2));
    }

    #[test]
    fn primitive_normalization() {
        let p = &v(0).scale(&rat(-2, 3)) + &c(4);
        assert_eq!(primitive_part(&p), &v(0) - &c(6));
    }
}
