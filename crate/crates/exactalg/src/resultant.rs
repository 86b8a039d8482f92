use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::MPoly;

/// Fraction-free determinant. Every intermediate division is exact.
pub fn det_bareiss<K: Field>(m: &[Vec<MPoly<K>>]) -> MPoly<K> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return MPoly::one(0);
    }
    let nv = m[0][0].nvars();
    let mut a: Vec<Vec<MPoly<K>>> = m.to_vec();
    let mut prev = MPoly::one(nv);
    let mut neg = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    neg = !neg;
                }
                None => return MPoly::zero(nv),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            a[i][k] = MPoly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix with the given formal degrees, ascending layout:
/// row `r < db` holds `a_j` at column `r + j`, row `db + r` holds `b_j`.
pub fn sylvester_matrix<K: Field>(a: &MPoly<K>, b: &MPoly<K>, var: usize, da: usize, db: usize) -> Vec<Vec<MPoly<K>>> {
    let nv = a.nvars();
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    let n = da + db;
    let mut m = vec![vec![MPoly::zero(nv); n]; n];
    for r in 0..db {
        for (j, c) in ca.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in cb.iter().enumerate() {
            m[db + r][r + j] = c.clone();
        }
    }
    m
}

/// Resultant with respect to `var` using formal degrees `da`, `db`. With
/// this layout `Res(t - a, t - b) = b - a`.
pub fn sylvester_resultant_formal<K: Field>(
    a: &MPoly<K>,
    b: &MPoly<K>,
    var: usize,
    da: usize,
    db: usize,
) -> Result<MPoly<K>> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableMismatch(a.nvars(), b.nvars()));
    }
    if a.degree_in(var) as usize > da || b.degree_in(var) as usize > db {
        return Err(Error::NotEliminable(var));
    }
    if da + db == 0 {
        return Ok(MPoly::one(a.nvars()));
    }
    Ok(det_bareiss(&sylvester_matrix(a, b, var, da, db)))
}

/// Resultant with respect to `var` using actual degrees.
pub fn sylvester_resultant<K: Field>(a: &MPoly<K>, b: &MPoly<K>, var: usize) -> Result<MPoly<K>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let da = a.degree_in(var) as usize;
    let db = b.degree_in(var) as usize;
    if da + db == 0 {
        return Err(Error::NotEliminable(var));
    }
    sylvester_resultant_formal(a, b, var, da, db)
}

/// Resultant of two dense univariate coefficient vectors (ascending) with
/// formal degrees, in the same layout as `sylvester_matrix`.
pub fn resultant_dense<K: Field>(a: &[K], b: &[K], da: usize, db: usize) -> K {
    let n = da + db;
    if n == 0 {
        return K::one();
    }
    let mut m = Matrix::zeros(n, n);
    for r in 0..db {
        for (j, c) in a.iter().enumerate().take(da + 1) {
            m.set(r, r + j, c.clone());
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().enumerate().take(db + 1) {
            m.set(db + r, r + j, c.clone());
        }
    }
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_matches_linear_sign() {
        use crate::rat::{rat, Rat};
        let a: Vec<Rat> = vec![rat(-3, 1), rat(1, 1)];
        let b: Vec<Rat> = vec![rat(-5, 1), rat(1, 1)];
        assert_eq!(resultant_dense(&a, &b, 1, 1), rat(2, 1));
    }
    use crate::rat::{rat, Rat};

    #[test]
    fn linear_sign() {
        let t = MPoly::<Rat>::var(3, 0);
        let a = MPoly::var(3, 1);
        let b = MPoly::var(3, 2);
        let r = sylvester_resultant(&t.sub(&a), &t.sub(&b), 0).unwrap();
        assert_eq!(r, b.sub(&a));
    }

    #[test]
    fn quadratics() {
        let t = MPoly::<Rat>::var(1, 0);
        let one = MPoly::one(1);
        let t2 = t.mul(&t);
        let r = sylvester_resultant(&t2.add(&one), &t2.sub(&one), 0).unwrap();
        assert_eq!(r, MPoly::constant(1, rat(4, 1)));
    }
}
