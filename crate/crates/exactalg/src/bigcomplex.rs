use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Assign, Float};

use crate::field::Field;
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::upoly::UPoly;

/// Complex number backed by two MPFR floats of equal precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rat(prec: u32, r: &Rat) -> Self {
        BigComplex { re: Float::with_val(prec, r), im: Float::new(prec) }
    }

    pub fn from_field<K: Field>(prec: u32, k: &K) -> Self {
        let (a, b) = k.to_gauss_parts();
        BigComplex { re: Float::with_val(prec, &a), im: Float::with_val(prec, &b) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.re * &self.re) + Float::with_val(p, &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex { re: Float::with_val(self.prec(), &self.re / &n), im: -Float::with_val(self.prec(), &self.im / &n) }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs();
        let mut a = Float::with_val(p, &r + &self.re);
        a /= 2;
        let a = a.sqrt();
        if a.is_zero() {
            let mut b = Float::with_val(p, &r - &self.re);
            b /= 2;
            return BigComplex { re: Float::new(p), im: b.sqrt() };
        }
        let mut b = Float::with_val(p, &self.im / &a);
        b /= 2;
        BigComplex { re: a, im: b }
    }

    pub fn powu(&self, k: u32) -> Self {
        let mut r = Self::one(self.prec());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Compare by real part, then imaginary part.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.re.partial_cmp(&o.re).unwrap_or(Ordering::Equal).then(self.im.partial_cmp(&o.im).unwrap_or(Ordering::Equal))
    }

    pub fn dist(&self, o: &Self) -> Float {
        (self - o).abs()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        if self.im.is_zero() {
            return re;
        }
        let im = self.im.to_string_radix(10, Some(digits));
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(12))
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= Float::with_val(p, &self.im * &o.im);
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        self * &o.inv()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

pub fn eval_upoly<K: Field>(p: &UPoly<K>, t: &BigComplex) -> BigComplex {
    let prec = t.prec();
    let mut acc = BigComplex::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * t) + &BigComplex::from_field(prec, c);
    }
    acc
}

pub fn eval_cpoly(c: &[BigComplex], t: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(t.prec());
    for x in c.iter().rev() {
        acc = &(&acc * t) + x;
    }
    acc
}

pub fn eval_mpoly<K: Field>(p: &MPoly<K>, pt: &[BigComplex]) -> BigComplex {
    assert!(pt.len() >= p.nvars(), "point has too few coordinates");
    let prec = pt.first().map_or(64, |x| x.prec());
    let mut acc = BigComplex::zero(prec);
    for (m, c) in p.terms() {
        let mut t = BigComplex::from_field(prec, c);
        for (i, x) in pt.iter().enumerate().take(p.nvars()) {
            let k = m.exp(i);
            if k > 0 {
                t = &t * &x.powu(k);
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Outcome of a numerical rank computation.
#[derive(Clone, Debug)]
pub struct CRank {
    pub rank: usize,
    /// Pivot magnitudes in elimination order.
    pub pivots: Vec<Float>,
    /// Largest entry left after the last accepted pivot, zero when full rank.
    pub residual: Float,
}

/// Dense complex matrix.
#[derive(Clone)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    prec: u32,
    a: Vec<BigComplex>,
}

struct Elim {
    m: CMatrix,
    colperm: Vec<usize>,
    rank: CRank,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize, prec: u32) -> Self {
        CMatrix { rows, cols, prec, a: vec![BigComplex::zero(prec); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigComplex>>, prec: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, prec, a: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn get(&self, i: usize, j: usize) -> &BigComplex {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigComplex) {
        self.a[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.prec);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigComplex]) -> Vec<BigComplex> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = BigComplex::zero(self.prec);
                for (j, x) in v.iter().enumerate() {
                    s = &s + &(self.get(i, j) * x);
                }
                s
            })
            .collect()
    }

    pub fn max_abs(&self) -> Float {
        let mut m = Float::new(self.prec);
        for x in &self.a {
            let v = x.abs();
            if v > m {
                m = v;
            }
        }
        m
    }

    /// Default relative tolerance `2^(-prec/2)`.
    pub fn default_tol(&self) -> Float {
        Float::with_val(self.prec, Float::i_exp(1, -((self.prec / 2) as i32)))
    }

    /// Gauss-Jordan with full pivoting over the first `pcols` columns.
    fn eliminate(&self, pcols: usize, tol: &Float) -> Elim {
        let mut m = self.clone();
        let mut colperm: Vec<usize> = (0..self.cols).collect();
        let scale = self.max_abs();
        let thresh = Float::with_val(self.prec, &scale * tol);
        let mut pivots = Vec::new();
        let mut residual = Float::new(self.prec);
        let kmax = self.rows.min(pcols);
        let mut k = 0;
        while k < kmax {
            let mut best = Float::new(self.prec);
            let mut at = (k, k);
            for i in k..m.rows {
                for j in k..pcols {
                    let v = m.get(i, j).abs();
                    if v > best {
                        best = v;
                        at = (i, j);
                    }
                }
            }
            if best <= thresh || best.is_zero() {
                residual = best;
                break;
            }
            m.swap_rows(k, at.0);
            m.swap_cols(k, at.1);
            colperm.swap(k, at.1);
            let inv = m.get(k, k).inv();
            for j in 0..m.cols {
                let v = m.get(k, j) * &inv;
                m.set(k, j, v);
            }
            for i in 0..m.rows {
                if i == k {
                    continue;
                }
                let f = m.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(m.get(k, j) * &f);
                    m.set(i, j, v);
                }
            }
            pivots.push(best);
            k += 1;
        }
        let rank = CRank { rank: pivots.len(), pivots, residual };
        Elim { m, colperm, rank }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    pub fn rank_tol(&self, tol: &Float) -> CRank {
        self.eliminate(self.cols, tol).rank
    }

    pub fn rank(&self) -> CRank {
        self.rank_tol(&self.default_tol())
    }

    /// Basis of the numerical right null space.
    pub fn kernel_tol(&self, tol: &Float) -> Vec<Vec<BigComplex>> {
        let e = self.eliminate(self.cols, tol);
        let r = e.rank.rank;
        let mut out = Vec::new();
        for f in r..self.cols {
            let mut v = vec![BigComplex::zero(self.prec); self.cols];
            v[e.colperm[f]] = BigComplex::one(self.prec);
            for k in 0..r {
                v[e.colperm[k]] = -e.m.get(k, f);
            }
            out.push(v);
        }
        out
    }

    pub fn kernel(&self) -> Vec<Vec<BigComplex>> {
        self.kernel_tol(&self.default_tol())
    }

    /// A solution of `self · x = b` with free variables zero, and the
    /// relative residual of the rows that could not be pivoted.
    pub fn solve(&self, b: &[BigComplex]) -> (Vec<BigComplex>, Float) {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.prec);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let e = aug.eliminate(self.cols, &self.default_tol());
        let r = e.rank.rank;
        let mut x = vec![BigComplex::zero(self.prec); self.cols];
        for k in 0..r {
            x[e.colperm[k]] = e.m.get(k, self.cols).clone();
        }
        let mut res = Float::new(self.prec);
        for i in r..self.rows {
            let v = e.m.get(i, self.cols).abs();
            if v > res {
                res = v;
            }
        }
        let mut scale = self.max_abs();
        for v in b {
            let a = v.abs();
            if a > scale {
                scale.assign(&a);
            }
        }
        if !scale.is_zero() {
            res /= &scale;
        }
        (x, res)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string_digits(6)).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(P, re, im)
    }

    #[test]
    fn arithmetic() {
        let z = c(3.0, -4.0);
        assert_eq!(z.abs(), 5);
        let w = &z / &z;
        assert!(w.dist(&BigComplex::one(P)) < 1e-50);
        let s = c(-4.0, 0.0).sqrt();
        assert!(s.dist(&c(0.0, 2.0)) < 1e-50);
    }

    #[test]
    fn rank_and_kernel() {
        let m = CMatrix::from_rows(
            vec![vec![c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)], vec![c(0.0, 1.0), c(-1.0, 0.0), c(-1.0, 1.0)]],
            P,
        );
        assert_eq!(m.rank().rank, 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for x in m.mul_vec(v) {
                assert!(x.abs() < 1e-50);
            }
        }
    }
}
