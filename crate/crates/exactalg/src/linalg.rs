use std::fmt;

use crate::field::Field;

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    a: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, a: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.a[idx].add_assign(&x.mul(o.get(k, j)));
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = K::zero();
                for (x, y) in self.row(i).iter().zip(v) {
                    s.add_assign(&x.mul(y));
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form with pivot columns. `order` lists columns to
    /// pivot on first, in order; remaining columns follow left to right.
    pub fn rref_with_order(&self, order: &[usize]) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut cols: Vec<usize> = order.to_vec();
        cols.extend((0..self.cols).filter(|c| !order.contains(c)));
        for c in cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j).mul(&f);
                    m.a[i * m.cols + j].sub_assign(&v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let (m, piv) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = m.get(r, free).neg();
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (m, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut d = K::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return K::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                d = d.neg();
            }
            let piv = m.get(c, c).clone();
            d.mul_assign(&piv);
            let inv = piv.inv();
            for i in c + 1..m.rows {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(c, j).mul(&f);
                    m.a[i * m.cols + j].sub_assign(&v);
                }
            }
        }
        d
    }

    pub fn map<L: Field, F: Fn(&K) -> L>(&self, f: F) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, a: self.a.iter().map(f).collect() }
    }
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}
