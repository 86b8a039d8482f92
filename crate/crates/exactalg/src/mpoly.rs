use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::mono::{Mono, MAX_VARS};
use crate::upoly::UPoly;

/// Sparse polynomial in `nvars` variables. Terms are kept in graded-lex
/// order; the leading term is the largest key.
#[derive(Clone, PartialEq)]
pub struct MPoly<K: Field> {
    nvars: usize,
    terms: BTreeMap<Mono, K>,
}

impl<K: Field> MPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(nvars, Mono::var(i, 1), K::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: K) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, K)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert!(e.len() <= nvars, "exponent vector longer than variable count");
            p.add_term(Mono::from_exps(&e), &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> K {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(K::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn leading_term(&self) -> Option<(&Mono, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> K {
        self.leading_term().map_or_else(K::zero, |(_, c)| c.clone())
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add_term(&mut self, m: Mono, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "polynomials live in different rings");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, &c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect() }
    }

    pub fn mul_term(&self, mono: &Mono, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.mul(k))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        if small.terms.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Mono, K> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let p = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => v.add_assign(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        MPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let dinv = dc.inv();
        if d.terms.len() == 1 {
            let mut q = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                q.terms.insert(m.div(&dm)?, c.mul(&dinv));
            }
            return Some(q);
        }
        let mut r = self.terms.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            if qm.degree() + dm.degree() != rm.degree() {
                return None;
            }
            let qc = rc.mul(&dinv);
            for (m, c) in &d.terms {
                let mm = m.mul(&qm);
                let t = c.mul(&qc);
                match r.get_mut(&mm) {
                    Some(v) => {
                        v.sub_assign(&t);
                        if v.is_zero() {
                            r.remove(&mm);
                        }
                    }
                    None => {
                        r.insert(mm, t.neg());
                    }
                }
            }
            q.terms.insert(qm, qc);
        }
        Some(q)
    }

    /// Coefficients with respect to `var`, indexed by power; each is free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(var) as usize].terms.insert(m.without(var), c.clone());
        }
        out
    }

    /// Inverse of `coeffs_in`.
    pub fn from_coeffs_in(nvars: usize, var: usize, cs: &[Self]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in cs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut mm = *m;
                mm.set(var, m.exp(var) + k as u32);
                p.add_term(mm, v);
            }
        }
        p
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc_in(&self, var: usize) -> Self {
        self.coeffs_in(var).pop().unwrap_or_else(|| Self::zero(self.nvars))
    }

    /// Substitute `var = v`.
    pub fn subst(&self, var: usize, v: &K) -> Self {
        let d = self.degree_in(var) as usize;
        let mut pw = vec![K::one()];
        for k in 1..=d {
            let next = pw[k - 1].mul(v);
            pw.push(next);
        }
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.without(var), &c.mul(&pw[m.exp(var) as usize]));
        }
        p
    }

    /// Substitute `var = q` for a polynomial `q`.
    pub fn subst_poly(&self, var: usize, q: &Self) -> Self {
        let cs = self.coeffs_in(var);
        let mut r = Self::zero(self.nvars);
        for c in cs.iter().rev() {
            r = r.mul(q).add(c);
        }
        r
    }

    pub fn eval(&self, pt: &[K]) -> K {
        assert!(pt.len() >= self.nvars, "point has too few coordinates");
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in pt.iter().enumerate().take(self.nvars) {
                for _ in 0..m.exp(i) {
                    t.mul_assign(x);
                }
            }
            acc.add_assign(&t);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.exp(var);
            if k > 0 {
                let mut mm = *m;
                mm.set(var, k - 1);
                p.add_term(mm, &c.mul(&K::from_i64(k as i64)));
            }
        }
        p
    }

    /// Univariate view when only `var` occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly<K>> {
        let mut cs = vec![K::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.exp(var) {
                return None;
            }
            cs[m.exp(var) as usize] = c.clone();
        }
        Some(UPoly::new(cs))
    }

    pub fn from_upoly(nvars: usize, var: usize, p: &UPoly<K>) -> Self {
        let mut r = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            r.add_term(Mono::var(var, k as u32), c);
        }
        r
    }

    pub fn map_coeffs<L: Field, F: Fn(&K) -> L>(&self, f: F) -> MPoly<L> {
        let mut r = MPoly::<L>::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(*m, &f(c));
        }
        r
    }

    /// Same polynomial viewed in a ring with `n` variables; extra variables are unused.
    pub fn with_nvars(&self, n: usize) -> Self {
        assert!(self.support_vars().iter().all(|&v| v < n), "variable would be dropped");
        MPoly { nvars: n, terms: self.terms.clone() }
    }

    /// Substitute `var = 1`.
    pub fn dehomogenize(&self, var: usize) -> Self {
        self.subst(var, &K::one())
    }

    /// Multiply each term by the power of `var` bringing it to degree `d`.
    pub fn homogenize(&self, var: usize, d: u32) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            assert!(m.degree() <= d, "degree exceeds homogenization degree");
            let mut mm = *m;
            mm.set(var, m.exp(var) + d - m.degree());
            p.add_term(mm, c);
        }
        p
    }

    /// Largest `k` with `var^k` dividing the polynomial.
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).min().unwrap_or(0)
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => mono.push(names[i].to_string()),
                    k => mono.push(format!("{}^{}", names[i], k)),
                }
            }
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(b) if !b.contains(['+', '-']) => (true, b.to_string()),
                _ => (false, cs.clone()),
            };
            if !s.is_empty() {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if mono.is_empty() {
                s.push_str(&body);
            } else if c.is_one() || (neg && body == "1") {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&body);
                s.push('*');
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}

impl<K: Field> fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

impl<K: Field> Add for &MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::add(self, o)
    }
}

impl<K: Field> Sub for &MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::sub(self, o)
    }
}

impl<K: Field> Mul for &MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::mul(self, o)
    }
}

impl<K: Field> Neg for &MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        MPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    fn x(i: usize) -> MPoly<Rat> {
        MPoly::var(3, i)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = &(&x(0) + &x(1)) * &(&x(0) - &x(2));
        let b = &x(0) + &x(1);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, &x(0) - &x(2));
        assert!(a.div_exact(&(&x(0) + &MPoly::one(3))).is_none());
    }

    #[test]
    fn coefficients_round_trip() {
        let p = &(&x(0) * &x(0)).scale(&rat(3, 2)) + &(&x(1) * &x(0));
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_coeffs_in(3, 0, &cs), p);
        assert_eq!(p.subst(0, &rat(2, 1)), &MPoly::constant(3, rat(6, 1)) + &x(1).scale(&rat(2, 1)));
    }

    #[test]
    fn display() {
        let p = &x(0).scale(&rat(-2, 1)) + &MPoly::one(3);
        assert_eq!(p.to_string_with(&["a", "b", "c"]), "-2*a + 1");
    }
}
