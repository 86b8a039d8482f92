use std::fmt;

use crate::field::Field;

/// Degree from which `gcd` switches to the modular algorithm.
const MODULAR_GCD_DEGREE: usize = 12;

/// Dense univariate polynomial, coefficients in ascending order with no
/// trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UPoly<K: Field> {
    c: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(k: K) -> Self {
        Self::new(vec![k])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        UPoly { c: vec![K::zero(), K::one()] }
    }

    /// `t - a`.
    pub fn linear_root(a: &K) -> Self {
        UPoly { c: vec![a.neg(), K::one()] }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> K {
        self.c.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder. Panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let dinv = d.lc().inv();
        let dd = d.degree();
        let mut r = self.c.clone();
        let mut q = vec![K::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].mul(&dinv);
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j].sub_assign(&b.mul(&t));
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic greatest common divisor; zero only when both inputs are.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.degree().min(o.degree()) >= MODULAR_GCD_DEGREE && !self.is_zero() && !o.is_zero() {
            if let Some(g) = crate::modgcd::modular_gcd(self, o) {
                return g;
            }
        }
        self.euclid_gcd(o)
    }

    fn euclid_gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(k, x)| x.mul(&K::from_i64(k as i64))).collect())
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = K::zero();
        for x in self.c.iter().rev() {
            acc = acc.mul(t).add(x);
        }
        acc
    }

    /// `self(q(t))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for x in self.c.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(x.clone()));
        }
        acc
    }

    /// Coefficients reversed within formal degree `d`: `t^d · p(1/t)`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.c.len() <= d + 1, "formal degree below actual degree");
        let mut c = vec![K::zero(); d + 1];
        for (k, x) in self.c.iter().enumerate() {
            c[d - k] = x.clone();
        }
        Self::new(c)
    }

    /// Yun decomposition into monic squarefree factors with multiplicities.
    /// Requires characteristic zero.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut d = fp.div_exact(&a).unwrap().sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap();
            d = d.div_exact(&g).unwrap().sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Newton interpolation through `(xs[k], ys[k])` with distinct nodes.
    pub fn interpolate(xs: &[K], ys: &[K]) -> Self {
        assert_eq!(xs.len(), ys.len(), "node and value counts differ");
        let n = xs.len();
        if n == 0 {
            return Self::zero();
        }
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = dd[i].sub(&dd[i - 1]).div(&xs[i].sub(&xs[i - j]));
            }
        }
        let mut p = Self::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            p = p.mul(&Self::linear_root(&xs[i])).add(&Self::constant(dd[i].clone()));
        }
        p
    }

    pub fn map<L: Field, F: Fn(&K) -> L>(&self, f: F) -> UPoly<L> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => format!("{x}"),
                1 => format!("{x}*t"),
                _ => format!("{x}*t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<K: Field> fmt::Debug for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    fn p(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 1]);
        let (q, r) = a.divrem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn yun() {
        // (t-1)^3 (t+2)
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1])).scale(&rat(5, 1));
        let sf = f.squarefree();
        assert_eq!(sf, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = p(&[3, -1, 0, 2]);
        let xs: Vec<Rat> = (0..5).map(|k| rat(k - 2, 1)).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), f);
    }
}
