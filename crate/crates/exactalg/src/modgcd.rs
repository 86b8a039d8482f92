//! Univariate gcd over Q or Q(i) by reduction modulo primes `p ≡ 1 (mod 4)`,
//! Chinese remaindering and rational reconstruction.

use rug::{Integer, Rational};

use crate::field::Field;
use crate::rat::Rat;
use crate::upoly::UPoly;

const MAX_PRIMES: usize = 4000;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Primes `p ≡ 1 (mod 4)` below `2^62`, descending, with a square root of -1.
struct Primes {
    next: u64,
}

impl Iterator for Primes {
    type Item = (u64, u64);
    fn next(&mut self) -> Option<(u64, u64)> {
        loop {
            self.next -= 4;
            let p = self.next;
            if Integer::from(p).is_probably_prime(30) == rug::integer::IsPrime::No {
                continue;
            }
            for n in 2..200u64 {
                let r = powmod(n, (p - 1) / 4, p);
                if mulmod(r, r, p) == p - 1 {
                    return Some((p, r));
                }
            }
        }
    }
}

fn primes() -> Primes {
    // 2^62 + 1 ≡ 1 (mod 4); the iterator steps down by 4 before testing.
    Primes { next: (1u64 << 62) + 1 }
}

fn reduce(x: &Rat, p: u64) -> Option<u64> {
    let pi = Integer::from(p);
    let dm = x.denom().clone().div_rem_euc(pi.clone()).1.to_u64().unwrap();
    if dm == 0 {
        return None;
    }
    let nm = x.numer().clone().div_rem_euc(pi.clone()).1.to_u64().unwrap();
    Some(mulmod(nm, invmod(dm, p), p))
}

/// Image of `re + im·i` with `i ↦ r`.
fn image(parts: &[(Rat, Rat)], p: u64, r: u64) -> Option<Vec<u64>> {
    parts
        .iter()
        .map(|(a, b)| {
            let a = reduce(a, p)?;
            let b = reduce(b, p)?;
            Some((a + mulmod(b, r, p)) % p)
        })
        .collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while a.len() > db {
        let k = a.len() - 1;
        let f = mulmod(a[k], inv, p);
        if f != 0 {
            for j in 0..=db {
                let s = mulmod(f, b[j], p);
                a[k - db + j] = (a[k - db + j] + p - s) % p;
            }
        }
        a.pop();
    }
    trim(&mut a);
    a
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    let inv = invmod(*a.last().unwrap(), p);
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

/// Update `x mod M` to the residue mod `M·p` that is `v` mod `p`.
fn crt_step(x: &mut Integer, v: u64, modulus: &Integer, minv: &Integer, p: &Integer) {
    let diff = Integer::from(v) - &*x;
    let t = Integer::from(diff * minv).div_rem_euc(p.clone()).1;
    *x += t * modulus;
}

fn ratrec(u: &Integer, m: &Integer) -> Option<Rat> {
    let bound = Integer::from(m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (Integer::from(0), Integer::from(1));
    while r1 > bound {
        let q = Integer::from(&r0 / &r1);
        let r2 = Integer::from(&r0 - &q * &r1);
        let t2 = Integer::from(&t0 - &q * &t1);
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1 == 0 || Integer::from(t1.abs_ref()) > bound || Integer::from(r1.gcd_ref(&t1)) != 1 {
        return None;
    }
    Some(Rational::from((r1, t1)))
}

/// Monic gcd, or `None` when `K` cannot be rebuilt from rational parts or
/// the prime budget is exhausted.
pub(crate) fn modular_gcd<K: Field>(a: &UPoly<K>, b: &UPoly<K>) -> Option<UPoly<K>> {
    K::from_gauss_parts(&Rat::new(), &Rat::new())?;
    let pa: Vec<(Rat, Rat)> = a.coeffs().iter().map(|x| x.to_gauss_parts()).collect();
    let pb: Vec<(Rat, Rat)> = b.coeffs().iter().map(|x| x.to_gauss_parts()).collect();
    let mut best: Option<usize> = None;
    let mut modulus = Integer::from(1);
    let mut acc: Vec<(Integer, Integer)> = Vec::new();
    let mut last: Option<Vec<(Rat, Rat)>> = None;
    for (p, r) in primes().take(MAX_PRIMES) {
        let mut imgs = Vec::with_capacity(2);
        for s in [r, p - r] {
            let (Some(ia), Some(ib)) = (image(&pa, p, s), image(&pb, p, s)) else { break };
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                break;
            }
            imgs.push(gcd_mod(&ia, &ib, p));
        }
        if imgs.len() < 2 || imgs[0].len() != imgs[1].len() {
            continue;
        }
        let deg = imgs[0].len() - 1;
        if deg == 0 {
            return Some(UPoly::one());
        }
        match best {
            Some(d) if deg > d => continue,
            Some(d) if deg == d => {}
            _ => {
                best = Some(deg);
                modulus = Integer::from(1);
                acc = vec![(Integer::new(), Integer::new()); deg + 1];
                last = None;
            }
        }
        // Split the two embeddings back into real and imaginary parts.
        let inv2 = invmod(2, p);
        let inv2r = invmod(mulmod(2, r, p), p);
        let pi = Integer::from(p);
        let minv = Integer::from(modulus.invert_ref(&pi).unwrap_or_else(|| unreachable!()));
        for k in 0..=deg {
            let (v1, v2) = (imgs[0][k], imgs[1][k]);
            let re = mulmod((v1 + v2) % p, inv2, p);
            let im = mulmod((v1 + p - v2) % p, inv2r, p);
            let (x, y) = &mut acc[k];
            crt_step(x, re, &modulus, &minv, &pi);
            crt_step(y, im, &modulus, &minv, &pi);
        }
        modulus *= &pi;

        let cand: Option<Vec<(Rat, Rat)>> =
            acc.iter().map(|(x, y)| Some((ratrec(x, &modulus)?, ratrec(y, &modulus)?))).collect();
        let Some(cand) = cand else { continue };
        if last.as_ref() == Some(&cand) {
            let g = UPoly::new(cand.iter().map(|(x, y)| K::from_gauss_parts(x, y)).collect::<Option<Vec<K>>>()?);
            if a.divrem(&g).1.is_zero() && b.divrem(&g).1.is_zero() {
                return Some(g);
            }
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRat;
    use crate::rat::rat;

    #[test]
    fn gaussian_common_factor() {
        let g = |a: i64, b: i64| GaussRat::new(rat(a, 7), rat(b, 3));
        let f = UPoly::new(vec![g(1, 2), g(-3, 1), g(5, 0), g(0, 0), g(2, -9)]);
        let u = UPoly::new(vec![g(4, 4), g(1, 0), g(0, 1)]);
        let v = UPoly::new(vec![g(-2, 0), g(0, 0), g(0, 0), g(3, 3)]);
        let got = modular_gcd(&f.mul(&u), &f.mul(&v)).unwrap();
        assert_eq!(got, f.monic());
    }
}
