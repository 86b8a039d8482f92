use std::fmt;

use exactalg::{parse_rat, Field, Matrix, Rat};

use crate::error::{Error, Result};

pub type Point = [Rat; 3];

pub fn point(x: i64, y: i64, z: i64) -> Point {
    [Rat::from(x), Rat::from(y), Rat::from(z)]
}

pub fn sub(a: &Point, b: &Point) -> Point {
    [Rat::from(&a[0] - &b[0]), Rat::from(&a[1] - &b[1]), Rat::from(&a[2] - &b[2])]
}

pub fn dot(a: &Point, b: &Point) -> Rat {
    Rat::from(&a[0] * &b[0]) + Rat::from(&a[1] * &b[1]) + Rat::from(&a[2] * &b[2])
}

pub fn cross(a: &Point, b: &Point) -> Point {
    [
        Rat::from(&a[1] * &b[2]) - Rat::from(&a[2] * &b[1]),
        Rat::from(&a[2] * &b[0]) - Rat::from(&a[0] * &b[2]),
        Rat::from(&a[0] * &b[1]) - Rat::from(&a[1] * &b[0]),
    ]
}

pub fn scale(a: &Point, k: &Rat) -> Point {
    [Rat::from(&a[0] * k), Rat::from(&a[1] * k), Rat::from(&a[2] * k)]
}

fn is_zero(a: &Point) -> bool {
    a.iter().all(|x| x.cmp0().is_eq())
}

/// Six pairwise distinct points of R³.
#[derive(Clone, PartialEq)]
pub struct SixTuple {
    pts: [Point; 6],
}

impl SixTuple {
    pub fn new(pts: Vec<Point>) -> Result<Self> {
        let pts: [Point; 6] = pts.try_into().map_err(|v: Vec<Point>| Error::Input(format!("expected 6 points, got {}", v.len())))?;
        for i in 0..6 {
            for j in i + 1..6 {
                if pts[i] == pts[j] {
                    return Err(Error::Input(format!("points {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
        Ok(SixTuple { pts })
    }

    pub fn from_ints(p: [[i64; 3]; 6]) -> Result<Self> {
        Self::new(p.iter().map(|q| point(q[0], q[1], q[2])).collect())
    }

    /// Parse coordinates written as `"p/q"`, integers or decimals.
    pub fn parse(p: &[[&str; 3]]) -> Result<Self> {
        let mut pts = Vec::new();
        for q in p {
            let mut c: Vec<Rat> = Vec::new();
            for s in q {
                c.push(parse_rat(s)?);
            }
            pts.push([c[0].clone(), c[1].clone(), c[2].clone()]);
        }
        Self::new(pts)
    }

    pub fn points(&self) -> &[Point; 6] {
        &self.pts
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.pts[i]
    }

    pub fn scaled(&self, k: &Rat) -> Result<Self> {
        if k.cmp0().is_eq() {
            return Err(Error::Input("zero scaling".into()));
        }
        Self::new(self.pts.iter().map(|p| scale(p, k)).collect())
    }

    pub fn permuted(&self, perm: [usize; 6]) -> Result<Self> {
        Self::new(perm.iter().map(|&i| self.pts[i].clone()).collect())
    }

    /// Image under `p ↦ R p + t` with an exact 3×3 matrix.
    pub fn transformed(&self, r: &[[Rat; 3]; 3], t: &Point) -> Result<Self> {
        Self::new(
            self.pts
                .iter()
                .map(|p| {
                    let mut q = t.clone();
                    for (i, qi) in q.iter_mut().enumerate() {
                        for (j, pj) in p.iter().enumerate() {
                            *qi += Rat::from(&r[i][j] * pj);
                        }
                    }
                    q
                })
                .collect(),
        )
    }

    fn diff_rank(&self, idx: &[usize]) -> usize {
        let base = &self.pts[idx[0]];
        let rows: Vec<Vec<Rat>> = idx[1..].iter().map(|&i| sub(&self.pts[i], base).to_vec()).collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(rows).rank()
    }

    pub fn is_planar(&self) -> bool {
        self.diff_rank(&[0, 1, 2, 3, 4, 5]) <= 2
    }

    pub fn has_collinear_triple(&self) -> bool {
        (0..6).any(|i| (i + 1..6).any(|j| (j + 1..6).any(|k| self.diff_rank(&[i, j, k]) <= 1)))
    }

    pub fn has_four_collinear(&self) -> bool {
        let idx: Vec<usize> = (0..6).collect();
        combos(&idx, 4).iter().any(|c| self.diff_rank(c) <= 1)
    }

    /// No two disjoint index pairs span parallel lines.
    pub fn is_non_parallel(&self) -> bool {
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a + 1..] {
                if i == k || i == l || j == k || j == l {
                    continue;
                }
                if is_zero(&cross(&sub(&self.pts[i], &self.pts[j]), &sub(&self.pts[k], &self.pts[l]))) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn combos(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combos(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

impl fmt::Debug for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.pts.iter().map(|p| format!("({}, {}, {})", p[0], p[1], p[2])).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

/// Base points, candidate platform points, platform scaling and squared legs.
/// The physical platform is `gamma · platform`.
#[derive(Clone, Debug)]
pub struct Hexapod {
    pub base: SixTuple,
    pub platform: SixTuple,
    pub gamma: Rat,
    pub legs2: [Rat; 6],
}

impl Hexapod {
    pub fn new(base: SixTuple, platform: SixTuple, gamma: Rat, legs2: [Rat; 6]) -> Result<Self> {
        if gamma.cmp0().is_eq() {
            return Err(Error::Input("gamma must be nonzero".into()));
        }
        Ok(Hexapod { base, platform, gamma, legs2 })
    }

    pub fn scaled_platform(&self) -> [Point; 6] {
        std::array::from_fn(|i| scale(self.platform.get(i), &self.gamma))
    }

    /// Indices of legs with nonpositive square.
    pub fn nonrealizable_legs(&self) -> Vec<usize> {
        (0..6).filter(|&i| self.legs2[i].cmp0().is_le()).collect()
    }

    pub fn with_legs(&self, legs2: [Rat; 6]) -> Self {
        Hexapod { legs2, ..self.clone() }
    }
}

/// Exact rotation matrix `R(e)/N` of a nonzero quaternion in column form:
/// points move as `p ↦ R p`.
pub fn rotation_from_quaternion(e: &[Rat; 4]) -> [[Rat; 3]; 3] {
    let [a, b, c, d] = e;
    let n = Rat::from(a * a) + Rat::from(b * b) + Rat::from(c * c) + Rat::from(d * d);
    let m = |x: Rat| x.div(&n);
    let two = Rat::from(2);
    let p = |x: &Rat, y: &Rat| Rat::from(x * y);
    [
        [
            m(p(a, a) + p(b, b) - p(c, c) - p(d, d)),
            m((p(b, c) - p(a, d)) * &two),
            m((p(b, d) + p(a, c)) * &two),
        ],
        [
            m((p(b, c) + p(a, d)) * &two),
            m(p(a, a) - p(b, b) + p(c, c) - p(d, d)),
            m((p(c, d) - p(a, b)) * &two),
        ],
        [
            m((p(b, d) - p(a, c)) * &two),
            m((p(c, d) + p(a, b)) * &two),
            m(p(a, a) - p(b, b) - p(c, c) + p(d, d)),
        ],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let planar = SixTuple::from_ints([[0, 0, 0], [1, 0, 0], [0, 1, 0], [2, 3, 0], [5, 1, 0], [1, 4, 0]]).unwrap();
        assert!(planar.is_planar());
        let col = SixTuple::from_ints([[0, 0, 0], [1, 1, 1], [2, 2, 2], [3, 3, 3], [5, 1, 0], [1, 4, 2]]).unwrap();
        assert!(col.has_four_collinear());
        assert!(col.has_collinear_triple());
        assert!(!col.is_planar());
        assert!(SixTuple::from_ints([[0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).is_err());
    }

    #[test]
    fn quaternion_rotation_is_orthogonal() {
        let r = rotation_from_quaternion(&[Rat::from(1), Rat::from(2), Rat::from(-1), Rat::from(3)]);
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&r[i].clone(), &r[j].clone());
                assert_eq!(d, Rat::from((i == j) as i64));
            }
        }
    }
}
