//! The compactification X ⊂ P¹⁶ of the direct isometries: coordinates
//! `(h : M : x : y : r)`, defining quadrics, spherical forms, bonds on the
//! boundary `h = 0` and tangent spaces there.

use std::sync::OnceLock;

use exactalg::{eval_mpoly, BigComplex, CMatrix, Field, Float, MPoly, Rat};

use crate::error::{Error, Result};
use crate::moebius::ParamPt;
use crate::tuple::{dot, Hexapod, Point, SixTuple};

pub const DIM: usize = 17;
pub const H: usize = 0;
pub const X0: usize = 10;
pub const Y0: usize = 13;
pub const R: usize = 16;

/// Index of `M_ij` among the 17 coordinates.
pub const fn m_idx(i: usize, j: usize) -> usize {
    1 + 3 * i + j
}

/// A point `(h : M : x : y : r)` of P¹⁶.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalPoint<T> {
    pub h: T,
    pub m: [[T; 3]; 3],
    pub x: [T; 3],
    pub y: [T; 3],
    pub r: T,
}

impl<T: Clone> ConformalPoint<T> {
    pub fn coords(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(DIM);
        v.push(self.h.clone());
        for row in &self.m {
            v.extend(row.iter().cloned());
        }
        v.extend(self.x.iter().cloned());
        v.extend(self.y.iter().cloned());
        v.push(self.r.clone());
        v
    }

    pub fn from_coords(c: &[T]) -> Self {
        assert_eq!(c.len(), DIM, "expected 17 coordinates");
        ConformalPoint {
            h: c[H].clone(),
            m: std::array::from_fn(|i| std::array::from_fn(|j| c[m_idx(i, j)].clone())),
            x: std::array::from_fn(|k| c[X0 + k].clone()),
            y: std::array::from_fn(|k| c[Y0 + k].clone()),
            r: c[R].clone(),
        }
    }
}

/// A defining quadric of X with a short description.
#[derive(Clone, Debug)]
pub struct XQuadric {
    pub label: String,
    pub poly: MPoly<Rat>,
    grad: Vec<MPoly<Rat>>,
}

impl XQuadric {
    fn new(label: String, poly: MPoly<Rat>) -> Self {
        let grad = (0..DIM).map(|v| poly.derivative(v)).collect();
        XQuadric { label, poly, grad }
    }

    pub fn eval<K: Field>(&self, z: &[K]) -> K {
        self.poly.map_coeffs(K::from_rat).eval(z)
    }

    pub fn eval_c(&self, z: &[BigComplex]) -> BigComplex {
        eval_mpoly(&self.poly, z)
    }

    pub fn gradient_c(&self, z: &[BigComplex]) -> Vec<BigComplex> {
        self.grad.iter().map(|g| eval_mpoly(g, z)).collect()
    }

    pub fn gradient<K: Field>(&self, z: &[K]) -> Vec<K> {
        self.grad.iter().map(|g| g.map_coeffs(K::from_rat).eval(z)).collect()
    }
}

fn var(k: usize) -> MPoly<Rat> {
    MPoly::var(DIM, k)
}

fn mv(i: usize, j: usize) -> MPoly<Rat> {
    var(m_idx(i, j))
}

fn levi(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn build_quadrics() -> Vec<XQuadric> {
    let h = var(H);
    let h2 = h.mul(&h);
    let mut out = Vec::new();
    let mut push = |label: String, p: MPoly<Rat>| out.push(XQuadric::new(label, p));
    for i in 0..3 {
        for j in i..3 {
            let mut a = MPoly::zero(DIM);
            let mut b = MPoly::zero(DIM);
            for k in 0..3 {
                a = a.add(&mv(i, k).mul(&mv(j, k)));
                b = b.add(&mv(k, i).mul(&mv(k, j)));
            }
            if i == j {
                a = a.sub(&h2);
                b = b.sub(&h2);
            }
            push(format!("(M M^T - h^2 I)_{i}{j}"), a);
            push(format!("(M^T M - h^2 I)_{i}{j}"), b);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let rs: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let cs: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let mut c = mv(rs[0], cs[0]).mul(&mv(rs[1], cs[1])).sub(&mv(rs[0], cs[1]).mul(&mv(rs[1], cs[0])));
            if (i + j) % 2 == 1 {
                c = c.neg();
            }
            push(format!("cof(M)_{i}{j} - h M_{i}{j}"), c.sub(&h.mul(&mv(i, j))));
        }
    }
    for i in 0..3 {
        let mut a = h.mul(&var(X0 + i));
        let mut b = h.mul(&var(Y0 + i));
        for k in 0..3 {
            a = a.add(&mv(k, i).mul(&var(Y0 + k)));
            b = b.add(&mv(i, k).mul(&var(X0 + k)));
        }
        push(format!("(h x + M^T y)_{i}"), a);
        push(format!("(M x + h y)_{i}"), b);
    }
    let mut xx = h.mul(&var(R));
    let mut yy = h.mul(&var(R));
    for k in 0..3 {
        xx = xx.sub(&var(X0 + k).pow(2));
        yy = yy.sub(&var(Y0 + k).pow(2));
    }
    push("h r - <x,x>".into(), xx);
    push("h r - <y,y>".into(), yy);
    // M (x × e_k) + y × (M e_k)
    for k in 0..3 {
        for a in 0..3 {
            let mut p = MPoly::zero(DIM);
            for m in 0..3 {
                for b in 0..3 {
                    let e = levi(m, b, k);
                    if e != 0 {
                        p = p.add(&mv(a, m).mul(&var(X0 + b)).scale(&Rat::from(e)));
                    }
                }
            }
            for b in 0..3 {
                for c in 0..3 {
                    let e = levi(a, b, c);
                    if e != 0 {
                        p = p.add(&var(Y0 + b).mul(&mv(c, k)).scale(&Rat::from(e)));
                    }
                }
            }
            push(format!("(M (x × e_{k}) + y × M e_{k})_{a}"), p);
        }
    }
    out
}

/// The 38 quadrics used as equations of X.
pub fn x_defining_quadrics() -> &'static [XQuadric] {
    static Q: OnceLock<Vec<XQuadric>> = OnceLock::new();
    Q.get_or_init(build_quadrics)
}

/// Rows `∇F(z)` for all defining quadrics.
pub fn quadric_jacobian(z: &[BigComplex]) -> Vec<Vec<BigComplex>> {
    x_defining_quadrics().iter().map(|q| q.gradient_c(z)).collect()
}

/// The leg condition `r - 2<M p, P> - 2<P, y> - 2<p, x> + h(|p|² + |P|² - d²)`
/// for base point `P`, platform point `p` and squared leg `d²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalForm {
    pub base: Point,
    pub platform: Point,
    pub d2: Rat,
}

impl SphericalForm {
    pub fn new(base: Point, platform: Point, d2: Rat) -> Self {
        SphericalForm { base, platform, d2 }
    }

    /// Coefficients on the 17 coordinates.
    pub fn coeffs(&self) -> Vec<Rat> {
        let mut c = self.pseudo_coeffs();
        c[H] = dot(&self.platform, &self.platform) + dot(&self.base, &self.base) - &self.d2;
        c
    }

    /// Coefficients of the pseudo-spherical part (no `h` term).
    pub fn pseudo_coeffs(&self) -> Vec<Rat> {
        let mut c = vec![Rat::new(); DIM];
        for i in 0..3 {
            for j in 0..3 {
                c[m_idx(i, j)] = Rat::from(&self.base[i] * &self.platform[j]) * -2i32;
            }
            c[Y0 + i] = Rat::from(&self.base[i] * -2i32);
            c[X0 + i] = Rat::from(&self.platform[i] * -2i32);
        }
        c[R] = Rat::from(1);
        c
    }

    pub fn eval<K: Field>(&self, z: &[K]) -> K {
        self.coeffs().iter().zip(z).fold(K::zero(), |a, (c, x)| a.add(&K::from_rat(c).mul(x)))
    }

    pub fn eval_c(&self, z: &[BigComplex]) -> BigComplex {
        lin_c(&self.coeffs(), z)
    }

    pub fn pseudo_c(&self, z: &[BigComplex]) -> BigComplex {
        lin_c(&self.pseudo_coeffs(), z)
    }
}

/// `r - 2γ<M p, P> - 2<P, y> - 2γ<p, x>` for a complex scaling `γ`.
pub fn pseudo_spherical_c(base: &Point, platform: &Point, gamma: &BigComplex, z: &[BigComplex]) -> BigComplex {
    let prec = gamma.prec();
    let f = |r: &Rat| Float::with_val(prec, r);
    let mut mp = BigComplex::zero(prec);
    let mut xs = BigComplex::zero(prec);
    let mut ys = BigComplex::zero(prec);
    for i in 0..3 {
        for j in 0..3 {
            mp = &mp + &z[m_idx(i, j)].scale(&f(&Rat::from(&base[i] * &platform[j])));
        }
        xs = &xs + &z[X0 + i].scale(&f(&platform[i]));
        ys = &ys + &z[Y0 + i].scale(&f(&base[i]));
    }
    let m2 = Float::with_val(prec, -2);
    &(&z[R] + &(&(&mp + &xs) * gamma).scale(&m2)) + &ys.scale(&m2)
}

pub(crate) fn lin_c(c: &[Rat], z: &[BigComplex]) -> BigComplex {
    let prec = z[0].prec();
    let mut acc = BigComplex::zero(prec);
    for (k, x) in c.iter().zip(z) {
        if !Field::is_zero(k) {
            acc = &acc + &x.scale(&Float::with_val(prec, k));
        }
    }
    acc
}

/// The six spherical forms of a hexapod, platform scaled by γ.
pub fn spherical_forms(hex: &Hexapod) -> Vec<SphericalForm> {
    let p = hex.scaled_platform();
    (0..6).map(|i| SphericalForm::new(hex.base.get(i).clone(), p[i].clone(), hex.legs2[i].clone())).collect()
}

fn is_rotation(r: &[[Rat; 3]; 3]) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            if dot(&r[i], &r[j]) != Rat::from((i == j) as i64) {
                return false;
            }
        }
    }
    let det = Rat::from(&r[0][0] * &crate::tuple::cross(&r[1], &r[2])[0])
        + Rat::from(&r[0][1] * &crate::tuple::cross(&r[1], &r[2])[1])
        + Rat::from(&r[0][2] * &crate::tuple::cross(&r[1], &r[2])[2]);
    det == 1
}

/// `(1 : R : -Rᵀτ : τ : <τ,τ>)` for the isometry `p ↦ R p + τ`.
pub fn embed_isometry(r: &[[Rat; 3]; 3], tau: &Point) -> Result<ConformalPoint<Rat>> {
    if !is_rotation(r) {
        return Err(Error::NotRotation);
    }
    let x = std::array::from_fn(|i| -(0..3).fold(Rat::new(), |a, k| a + Rat::from(&r[k][i] * &tau[k])));
    Ok(ConformalPoint { h: Rat::from(1), m: r.clone(), x, y: tau.clone(), r: dot(tau, tau) })
}

/// Euler parameters of `M / h`, first nonzero entry scaled to 1; `None` on
/// the boundary `h = 0`.
pub fn euler_project(p: &ConformalPoint<Rat>) -> Option<[Rat; 4]> {
    if Field::is_zero(&p.h) {
        return None;
    }
    let m = &p.m;
    let h = &p.h;
    let g = |a: &Rat, b: &Rat| Rat::from(a - b);
    let s = |a: &Rat, b: &Rat| Rat::from(a + b);
    let tr = Rat::from(&m[0][0] + &m[1][1]) + &m[2][2];
    // Each candidate is the quaternion times one of its own components.
    let cands: [[Rat; 4]; 4] = [
        [Rat::from(h + &tr), g(&m[2][1], &m[1][2]), g(&m[0][2], &m[2][0]), g(&m[1][0], &m[0][1])],
        [g(&m[2][1], &m[1][2]), Rat::from(h + &m[0][0]) - &m[1][1] - &m[2][2], s(&m[0][1], &m[1][0]), s(&m[0][2], &m[2][0])],
        [g(&m[0][2], &m[2][0]), s(&m[0][1], &m[1][0]), Rat::from(h - &m[0][0]) + &m[1][1] - &m[2][2], s(&m[1][2], &m[2][1])],
        [g(&m[1][0], &m[0][1]), s(&m[0][2], &m[2][0]), s(&m[1][2], &m[2][1]), Rat::from(h - &m[0][0]) - &m[1][1] + &m[2][2]],
    ];
    let k = (0..4).max_by(|&a, &b| cands[a][a].clone().abs().cmp(&cands[b][b].clone().abs()))?;
    let q = &cands[k];
    let lead = q.iter().find(|x| !Field::is_zero(*x))?.clone();
    Some(std::array::from_fn(|i| Rat::from(&q[i] / &lead)))
}

fn cdot(a: &[BigComplex; 3], b: &[BigComplex; 3]) -> BigComplex {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn cpoint(p: &Point, prec: u32) -> [BigComplex; 3] {
    std::array::from_fn(|k| BigComplex::from_rat(prec, &p[k]))
}

/// Kernel line of the bond system at `γ = 1`; at other `γ` the kernel is
/// `(α, λ, γμ, γr)`.
#[derive(Clone, Debug)]
pub struct BondLine {
    pub u: ParamPt,
    pub s: ParamPt,
    /// Base direction `c(u)`.
    pub w: [BigComplex; 3],
    /// Platform direction `c(s)`.
    pub v: [BigComplex; 3],
    pub omega1: [BigComplex; 4],
}

/// A boundary point `(0 : α w vᵀ : λ v : μ w : r)` for a given `γ`.
#[derive(Clone, Debug)]
pub struct Bond {
    pub u: ParamPt,
    pub s: ParamPt,
    pub w: [BigComplex; 3],
    pub v: [BigComplex; 3],
    pub gamma: BigComplex,
    /// `(α, λ, μ, r)`.
    pub omega: [BigComplex; 4],
}

fn normalize_max(v: &[BigComplex]) -> Vec<BigComplex> {
    let k = (0..v.len()).max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap()).unwrap();
    let inv = v[k].inv();
    v.iter().map(|x| x * &inv).collect()
}

/// Rows `(-2WV, -2V, -2W, 1)` on `(α, λ, μ, r)` with `W = <P_i, w>`,
/// `V = <γ p_i, v>`.
fn bond_system(base: &SixTuple, platform: &SixTuple, gamma: &BigComplex, w: &[BigComplex; 3], v: &[BigComplex; 3]) -> CMatrix {
    let prec = gamma.prec();
    let m2 = Float::with_val(prec, -2);
    let rows = (0..6)
        .map(|i| {
            let ww = cdot(&cpoint(base.get(i), prec), w);
            let vv = &cdot(&cpoint(platform.get(i), prec), v) * gamma;
            vec![(&ww * &vv).scale(&m2), vv.scale(&m2), ww.scale(&m2), BigComplex::one(prec)]
        })
        .collect();
    CMatrix::from_rows(rows, prec)
}

pub fn bond_line(base: &SixTuple, platform: &SixTuple, u: &ParamPt, s: &ParamPt, prec: u32) -> Result<BondLine> {
    let w = u.conic_point(prec);
    let v = s.conic_point(prec);
    let n = bond_system(base, platform, &BigComplex::one(prec), &w, &v);
    let rank = n.rank().rank;
    if rank != 3 {
        return Err(Error::BondRank(rank));
    }
    let k = n.kernel();
    let om = normalize_max(&k[0]);
    Ok(BondLine { u: u.clone(), s: s.clone(), w, v, omega1: [om[0].clone(), om[1].clone(), om[2].clone(), om[3].clone()] })
}

impl BondLine {
    pub fn with_prec(&self, prec: u32) -> Self {
        let w = |a: &[BigComplex]| -> Vec<BigComplex> { a.iter().map(|x| x.with_prec(prec)).collect() };
        BondLine {
            u: self.u.with_prec(prec),
            s: self.s.with_prec(prec),
            w: w(&self.w).try_into().unwrap(),
            v: w(&self.v).try_into().unwrap(),
            omega1: w(&self.omega1).try_into().unwrap(),
        }
    }

    /// The bond at `γ`; `ω` is left unnormalized so it is linear in `γ`.
    pub fn at(&self, gamma: &BigComplex) -> Bond {
        let o = &self.omega1;
        let om = [o[0].clone(), o[1].clone(), &o[2] * gamma, &o[3] * gamma];
        Bond {
            u: self.u.clone(),
            s: self.s.clone(),
            w: self.w.clone(),
            v: self.v.clone(),
            gamma: gamma.clone(),
            omega: om,
        }
    }
}

pub fn bond_solve(base: &SixTuple, platform: &SixTuple, gamma: &Rat, u: &ParamPt, s: &ParamPt, prec: u32) -> Result<Bond> {
    if Field::is_zero(gamma) {
        return Err(Error::Input("gamma must be nonzero".into()));
    }
    Ok(bond_line(base, platform, u, s, prec)?.at(&BigComplex::from_rat(prec, gamma)))
}

fn outer(a: &[BigComplex; 3], b: &[BigComplex; 3], k: &BigComplex) -> [[BigComplex; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i] * &b[j]) * k))
}

fn scaled(a: &[BigComplex; 3], k: &BigComplex) -> [BigComplex; 3] {
    std::array::from_fn(|i| &a[i] * k)
}

impl Bond {
    pub fn prec(&self) -> u32 {
        self.gamma.prec()
    }

    pub fn point(&self) -> ConformalPoint<BigComplex> {
        let p = self.prec();
        let [al, la, mu, r] = &self.omega;
        ConformalPoint {
            h: BigComplex::zero(p),
            m: outer(&self.w, &self.v, al),
            x: scaled(&self.v, la),
            y: scaled(&self.w, mu),
            r: r.clone(),
        }
    }

    pub fn coords(&self) -> Vec<BigComplex> {
        self.point().coords()
    }

    /// Pseudo-spherical residuals `r - 2αW_iV_i - 2λV_i - 2μW_i` relative to `|ω|`.
    pub fn pseudo_residual(&self, base: &SixTuple, platform: &SixTuple) -> Float {
        let n = bond_system(base, platform, &self.gamma, &self.w, &self.v);
        n.mul_vec(&self.omega).iter().fold(Float::new(self.prec()), |a, x| a.max(&x.abs()))
    }
}

/// Seven vectors spanning the tangent space of X at the bond.
pub fn tangent_space_at_bond(bond: &Bond) -> Result<Vec<Vec<BigComplex>>> {
    let p = bond.prec();
    let w1 = bond.u.conic_tangent(p);
    let v1 = bond.s.conic_tangent(p);
    if cdot(&w1, &w1).is_zero() || cdot(&v1, &v1).is_zero() {
        return Err(Error::TangentRescale);
    }
    let [al, la, mu, _] = &bond.omega;
    let one = BigComplex::one(p);
    let z3 = || std::array::from_fn(|_| BigComplex::zero(p));
    let zm = || std::array::from_fn(|_| std::array::from_fn(|_| BigComplex::zero(p)));
    let row = |m: [[BigComplex; 3]; 3], x: [BigComplex; 3], y: [BigComplex; 3], r: BigComplex| {
        ConformalPoint { h: BigComplex::zero(p), m, x, y, r }.coords()
    };
    Ok(vec![
        row(outer(&bond.w, &bond.v, &one), z3(), z3(), BigComplex::zero(p)),
        row(outer(&w1, &bond.v, al), z3(), scaled(&w1, mu), BigComplex::zero(p)),
        row(outer(&bond.w, &v1, al), scaled(&v1, la), z3(), BigComplex::zero(p)),
        row(zm(), bond.v.clone(), z3(), BigComplex::zero(p)),
        row(zm(), z3(), bond.w.clone(), BigComplex::zero(p)),
        row(zm(), z3(), z3(), one.clone()),
        row(zm(), v1, w1, BigComplex::zero(p)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{point, rotation_from_quaternion};

    fn ident() -> [[Rat; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| Rat::from((i == j) as i64)))
    }

    #[test]
    fn embedded_identity() {
        let e = embed_isometry(&ident(), &point(0, 0, 0)).unwrap();
        assert_eq!(e.coords()[..10].iter().filter(|x| **x == 1).count(), 4);
        let e = embed_isometry(&ident(), &point(1, 0, 0)).unwrap();
        assert_eq!(e.x, point(-1, 0, 0));
        assert_eq!(e.r, 1);
        assert!(x_defining_quadrics().iter().all(|q| Field::is_zero(&q.eval(&e.coords()))));
    }

    #[test]
    fn quadric_count() {
        assert_eq!(x_defining_quadrics().len(), 38);
    }

    #[test]
    fn euler_examples() {
        let e = embed_isometry(&ident(), &point(0, 0, 0)).unwrap();
        assert_eq!(euler_project(&e).unwrap(), [Rat::from(1), Rat::new(), Rat::new(), Rat::new()]);
        let rz = rotation_from_quaternion(&[Rat::new(), Rat::new(), Rat::new(), Rat::from(1)]);
        let e = embed_isometry(&rz, &point(0, 0, 0)).unwrap();
        assert_eq!(euler_project(&e).unwrap(), [Rat::new(), Rat::new(), Rat::new(), Rat::from(1)]);
    }

    #[test]
    fn rejects_reflection() {
        let mut r = ident();
        r[2][2] = Rat::from(-1);
        assert!(matches!(embed_isometry(&r, &point(0, 0, 0)), Err(Error::NotRotation)));
    }
}
