//! Photographic maps of 6-tuples into the Segre cubic, their quadric
//! pencils, and the matched-direction computation between two tuples.

use std::fmt;

use exactalg::{
    aberth, primitive_part, resultant_dense, roots_complex, BigComplex, Field, Float, GaussRat, MPoly, Matrix, Mono,
    Rat, UPoly,
};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tuple::{combos, sub, Point, SixTuple};

/// Index pairs (0-based) of the three plane factors of each component.
pub const COMPONENTS: [[(usize, usize); 3]; 5] = [
    [(0, 1), (2, 5), (3, 4)],
    [(0, 3), (1, 2), (4, 5)],
    [(0, 5), (1, 4), (2, 3)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 1), (2, 3), (4, 5)],
];

/// Coefficients of `H_ij = (A_i - A_j) · (x, y, z)`.
pub fn h_form(t: &SixTuple, i: usize, j: usize) -> Result<Point> {
    if i >= 6 || j >= 6 || i == j {
        return Err(Error::BadIndex(i, j));
    }
    Ok(sub(t.get(i), t.get(j)))
}

fn g(re: Rat, im: Rat) -> GaussRat {
    GaussRat::new(re, im)
}

fn gi(n: i64) -> GaussRat {
    GaussRat::from_i64(n)
}

/// The conic parametrization `c(t) = (2t, i(1+t²), 1-t²)`.
pub fn conic() -> [UPoly<GaussRat>; 3] {
    let i = GaussRat::i();
    [
        UPoly::new(vec![gi(0), gi(2)]),
        UPoly::new(vec![i.clone(), gi(0), i]),
        UPoly::new(vec![gi(1), gi(0), gi(-1)]),
    ]
}

/// Restriction of a real linear form to the conic, a quadratic in `t`.
pub fn restrict_linear(d: &Point) -> UPoly<GaussRat> {
    let z = Rat::new();
    UPoly::new(vec![
        g(d[2].clone(), d[1].clone()),
        g(Rat::from(&d[0] * 2u32), z),
        g(-d[2].clone(), d[1].clone()),
    ])
}

/// A point of the projective line: a finite parameter or the point at
/// infinity of the second chart.
#[derive(Clone, Debug)]
pub enum ParamPt {
    Finite(BigComplex),
    Infinity,
}

impl ParamPt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ParamPt::Finite(_))
    }

    /// The antiholomorphic involution `t ↦ -1/t̄`.
    pub fn sigma(&self) -> ParamPt {
        match self {
            ParamPt::Infinity => ParamPt::Finite(BigComplex::zero(64)),
            ParamPt::Finite(t) if t.is_zero() => ParamPt::Infinity,
            ParamPt::Finite(t) => ParamPt::Finite(-&t.conj().inv()),
        }
    }

    /// Homogeneous coordinates `(t0, t1)` normalized so that the larger one is 1.
    pub fn homog(&self, prec: u32) -> (BigComplex, BigComplex) {
        match self {
            ParamPt::Infinity => (BigComplex::zero(prec), BigComplex::one(prec)),
            ParamPt::Finite(t) => {
                let t = t.with_prec(prec);
                if t.abs() <= 1 {
                    (BigComplex::one(prec), t)
                } else {
                    (t.inv(), BigComplex::one(prec))
                }
            }
        }
    }

    /// Chordal distance on the Riemann sphere.
    pub fn dist(&self, o: &ParamPt) -> f64 {
        let chord = |a: &BigComplex| 1.0 / (1.0 + a.norm_sqr().to_f64()).sqrt();
        match (self, o) {
            (ParamPt::Infinity, ParamPt::Infinity) => 0.0,
            (ParamPt::Infinity, ParamPt::Finite(b)) | (ParamPt::Finite(b), ParamPt::Infinity) => chord(b),
            (ParamPt::Finite(a), ParamPt::Finite(b)) => a.dist(b).to_f64() * chord(a) * chord(b),
        }
    }

    /// Point of the conic, `c(t)` or `(0, i, -1)` at infinity.
    pub fn conic_point(&self, prec: u32) -> [BigComplex; 3] {
        match self {
            ParamPt::Infinity => [BigComplex::zero(prec), BigComplex::i(prec), BigComplex::from_f64(prec, -1.0, 0.0)],
            ParamPt::Finite(t) => {
                let one = BigComplex::one(prec);
                let t2 = t * t;
                [
                    t.scale(&Float::with_val(prec, 2)),
                    &BigComplex::i(prec) * &(&one + &t2),
                    &one - &t2,
                ]
            }
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        match self {
            ParamPt::Finite(t) => ParamPt::Finite(t.with_prec(prec)),
            ParamPt::Infinity => ParamPt::Infinity,
        }
    }

    /// Tangent of the conic, oriented so that `c × c' = -2i c`:
    /// `c'(t) = (2, 2it, -2t)`, and `(-2, 0, 0)` at infinity.
    pub fn conic_tangent(&self, prec: u32) -> [BigComplex; 3] {
        match self {
            ParamPt::Infinity => [BigComplex::from_f64(prec, -2.0, 0.0), BigComplex::zero(prec), BigComplex::zero(prec)],
            ParamPt::Finite(t) => {
                let two = Float::with_val(prec, 2);
                [BigComplex::from_f64(prec, 2.0, 0.0), (&BigComplex::i(prec) * t).scale(&two), (-t).scale(&two)]
            }
        }
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        match self {
            ParamPt::Infinity => None,
            ParamPt::Finite(t) => Some(t.to_f64()),
        }
    }
}

impl fmt::Display for ParamPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPt::Infinity => write!(f, "inf"),
            ParamPt::Finite(t) => write!(f, "{}", t.to_string_digits(20)),
        }
    }
}

/// Evaluate a binary form of formal degree `d` at a point of P¹.
pub fn eval_binary(p: &UPoly<GaussRat>, d: usize, t: &ParamPt, prec: u32) -> BigComplex {
    let (t0, t1) = t.homog(prec);
    let mut acc = BigComplex::zero(prec);
    for k in 0..=d {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let term = &(&BigComplex::from_field(prec, &c) * &t1.powu(k as u32)) * &t0.powu((d - k) as u32);
        acc = &acc + &term;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Birational6,
    Birational4,
    Planar2to1 { image_degree: usize },
    Degenerate { map_degree: usize, image_degree: usize },
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapClass::Birational6 => write!(f, "birational-6"),
            MapClass::Birational4 => write!(f, "birational-4"),
            MapClass::Planar2to1 { image_degree } => write!(f, "planar-2:1-deg-{image_degree}"),
            MapClass::Degenerate { map_degree, image_degree } => {
                write!(f, "degenerate (map degree {map_degree}, image degree {image_degree})")
            }
        }
    }
}

/// The photographic map restricted to the conic.
#[derive(Clone, Debug)]
pub struct MoebiusMap {
    pub tuple: SixTuple,
    /// The five products before any cancellation, formal degree 6.
    pub raw: [UPoly<GaussRat>; 5],
    /// Components after removing the common factor, formal degree `degree`.
    pub comps: [UPoly<GaussRat>; 5],
    /// Monic common finite factor.
    pub removed: UPoly<GaussRat>,
    /// Multiplicity of the common zero at `t = ∞`.
    pub removed_at_infinity: usize,
    pub degree: usize,
    pub map_degree: usize,
    pub class: MapClass,
}

impl MoebiusMap {
    pub fn image_degree(&self) -> usize {
        if self.map_degree == 0 {
            0
        } else {
            self.degree / self.map_degree
        }
    }

    pub fn eval(&self, t: &ParamPt, prec: u32) -> [BigComplex; 5] {
        std::array::from_fn(|k| eval_binary(&self.comps[k], self.degree, t, prec))
    }
}

/// Gcd of nonzero binary forms of formal degree `d`: the monic finite part
/// and the multiplicity at infinity. `None` when all forms vanish.
fn binary_gcd(ps: &[UPoly<GaussRat>], d: usize) -> Option<(UPoly<GaussRat>, usize)> {
    let nz: Vec<&UPoly<GaussRat>> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return None;
    }
    let mut gg = UPoly::zero();
    for p in &nz {
        gg = gg.gcd(p);
        if gg.degree() == 0 {
            break;
        }
    }
    let inf = nz.iter().map(|p| d - p.degree()).min().unwrap();
    Some((gg, inf))
}

pub fn photographic_map(tuple: &SixTuple) -> Result<MoebiusMap> {
    let mut raw: Vec<UPoly<GaussRat>> = Vec::with_capacity(5);
    for comp in COMPONENTS.iter() {
        let mut p = UPoly::one();
        for &(i, j) in comp {
            p = p.mul(&restrict_linear(&h_form(tuple, i, j)?));
        }
        raw.push(p);
    }
    let (removed, inf) = binary_gcd(&raw, 6).ok_or(Error::DegenerateTuple)?;
    let degree = 6 - removed.degree() - inf;
    let comps: Vec<UPoly<GaussRat>> = raw.iter().map(|p| p.div_exact(&removed).expect("gcd divides")).collect();
    let raw: [UPoly<GaussRat>; 5] = raw.try_into().unwrap();
    let comps: [UPoly<GaussRat>; 5] = comps.try_into().unwrap();
    let map_degree = map_degree(&comps, degree);
    let image_degree = if map_degree == 0 { 0 } else { degree / map_degree };
    let class = match (map_degree, degree) {
        (1, 6) => MapClass::Birational6,
        (1, 4) => MapClass::Birational4,
        (2, _) if tuple.is_planar() && (1..=3).contains(&image_degree) => MapClass::Planar2to1 { image_degree },
        _ => MapClass::Degenerate { map_degree, image_degree },
    };
    Ok(MoebiusMap { tuple: tuple.clone(), raw, comps, removed, removed_at_infinity: inf, degree, map_degree, class })
}

/// Size of a generic fiber: the common zeros of `φ_i(t)φ_j(t0) - φ_j(t)φ_i(t0)`.
fn map_degree(comps: &[UPoly<GaussRat>; 5], d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let t0 = g(Rat::from((2, 7)), Rat::from((3, 11)));
    let p0: Vec<GaussRat> = comps.iter().map(|p| p.eval(&t0)).collect();
    let mut minors = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            minors.push(comps[i].scale(&p0[j]).sub(&comps[j].scale(&p0[i])));
        }
    }
    match binary_gcd(&minors, d) {
        Some((gg, inf)) => gg.degree() + inf,
        None => 0,
    }
}

/// The Segre cubic in the coordinates of `COMPONENTS`:
/// `x0 x1 x2 - x3 x4 (x0 + x1 + x2 + x3 + x4)`.
pub fn segre<K: Field>(x: &[K]) -> K {
    let s = x.iter().fold(K::zero(), |a, b| a.add(b));
    x[0].mul(&x[1]).mul(&x[2]).sub(&x[3].mul(&x[4]).mul(&s))
}

/// Gradient of the Segre cubic.
pub fn segre_gradient<K: Field>(x: &[K]) -> [K; 5] {
    let s = x.iter().fold(K::zero(), |a, b| a.add(b));
    let x34 = x[3].mul(&x[4]);
    [
        x[1].mul(&x[2]).sub(&x34),
        x[0].mul(&x[2]).sub(&x34),
        x[0].mul(&x[1]).sub(&x34),
        x[4].mul(&s).add(&x34).neg(),
        x[3].mul(&s).add(&x34).neg(),
    ]
}

/// The Segre cubic as a polynomial in `x0..x4`.
pub fn segre_poly<K: Field>() -> MPoly<K> {
    let x: Vec<MPoly<K>> = (0..5).map(|k| MPoly::var(5, k)).collect();
    let s = x.iter().fold(MPoly::zero(5), |a, b| a.add(b));
    x[0].mul(&x[1]).mul(&x[2]).sub(&x[3].mul(&x[4]).mul(&s))
}

fn segre_gradient_c(x: &[BigComplex]) -> [BigComplex; 5] {
    let prec = x[0].prec();
    let mut s = BigComplex::zero(prec);
    for v in x {
        s = &s + v;
    }
    let x34 = &x[3] * &x[4];
    [
        &(&x[1] * &x[2]) - &x34,
        &(&x[0] * &x[2]) - &x34,
        &(&x[0] * &x[1]) - &x34,
        -&(&(&x[4] * &s) + &x34),
        -&(&(&x[3] * &s) + &x34),
    ]
}

impl Field for UPolyField {
    fn zero() -> Self {
        UPolyField(UPoly::zero())
    }
    fn one() -> Self {
        UPolyField(UPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        UPolyField(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        UPolyField(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        UPolyField(self.0.mul(&o.0))
    }
    fn neg(&self) -> Self {
        UPolyField(self.0.neg())
    }
    fn inv(&self) -> Self {
        panic!("polynomials are not invertible")
    }
    fn from_rat(r: &Rat) -> Self {
        UPolyField(UPoly::constant(GaussRat::from_rat(r)))
    }
    fn to_gauss_parts(&self) -> (Rat, Rat) {
        self.0.coeff(0).to_gauss_parts()
    }
}

/// Ring wrapper so the generic Segre formulas apply to polynomial components.
#[derive(Clone, Debug, PartialEq)]
struct UPolyField(UPoly<GaussRat>);

impl fmt::Display for UPolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn wrap(comps: &[UPoly<GaussRat>; 5]) -> Vec<UPolyField> {
    comps.iter().map(|p| UPolyField(p.clone())).collect()
}

/// The Segre cubic vanishes identically along the map.
pub fn segre_check(map: &MoebiusMap) -> bool {
    segre(&wrap(&map.comps)).is_zero()
}

/// The two parameters whose image lies in the plane `T_ij`: the roots of
/// `H_ij(c(t))`.
pub fn t_plane_roots(map: &MoebiusMap, i: usize, j: usize, prec: u32) -> Result<[ParamPt; 2]> {
    let q = restrict_linear(&h_form(&map.tuple, i, j)?);
    if q.is_zero() {
        return Err(Error::PlaneVanishes(i, j));
    }
    let c: Vec<BigComplex> = (0..3).map(|k| BigComplex::from_field(prec, &q.coeff(k))).collect();
    let mut out = if c[2].is_zero() {
        [ParamPt::Finite(-&(&c[0] / &c[1])), ParamPt::Infinity]
    } else {
        let disc = &(&c[1] * &c[1]) - &(&c[0] * &c[2]).scale(&Float::with_val(prec, 4));
        let r = disc.sqrt();
        let den = c[2].scale(&Float::with_val(prec, 2)).inv();
        [ParamPt::Finite(&(&(-&c[1]) + &r) * &den), ParamPt::Finite(&(&(-&c[1]) - &r) * &den)]
    };
    out.sort_by(|a, b| match (a, b) {
        (ParamPt::Finite(x), ParamPt::Finite(y)) => x.lex_cmp(y),
        (ParamPt::Finite(_), ParamPt::Infinity) => std::cmp::Ordering::Less,
        (ParamPt::Infinity, ParamPt::Finite(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    Ok(out)
}

/// Quadrics in `x0..x4` with rational coefficients containing the curve.
#[derive(Clone, Debug)]
pub struct QuadricPencil {
    pub quadrics: Vec<MPoly<Rat>>,
}

impl QuadricPencil {
    pub fn dim(&self) -> usize {
        self.quadrics.len()
    }

    /// Every basis quadric vanishes identically along the map.
    pub fn vanishes_on(&self, map: &MoebiusMap) -> bool {
        self.quadrics.iter().all(|q| compose(&q.map_coeffs(GaussRat::from_rat), &map.comps).is_zero())
    }
}

/// `q(φ0(t), ..., φ4(t))`.
pub fn compose(q: &MPoly<GaussRat>, comps: &[UPoly<GaussRat>]) -> UPoly<GaussRat> {
    let mut acc = UPoly::zero();
    for (m, c) in q.terms() {
        let mut term = UPoly::constant(c.clone());
        for (v, p) in comps.iter().enumerate() {
            let e = m.exp(v);
            if e > 0 {
                term = term.mul(&p.pow(e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

fn quad_monos() -> Vec<(usize, usize)> {
    (0..5).flat_map(|a| (a..5).map(move |b| (a, b))).collect()
}

pub fn quadric_pencil(map: &MoebiusMap) -> QuadricPencil {
    let monos = quad_monos();
    let prods: Vec<UPoly<GaussRat>> = monos.iter().map(|&(a, b)| map.comps[a].mul(&map.comps[b])).collect();
    let n = 2 * map.degree + 1;
    let mut rows = Vec::with_capacity(2 * n);
    for k in 0..n {
        let parts: Vec<(Rat, Rat)> = prods.iter().map(|p| p.coeff(k).to_gauss_parts()).collect();
        rows.push(parts.iter().map(|x| x.0.clone()).collect());
        rows.push(parts.iter().map(|x| x.1.clone()).collect());
    }
    let ker = Matrix::<Rat>::from_rows(rows).kernel();
    let quadrics = ker
        .iter()
        .map(|v| {
            let mut q = MPoly::zero(5);
            for (c, &(a, b)) in v.iter().zip(&monos) {
                let mut m = Mono::one();
                m = m.mul(&Mono::var(a, 1)).mul(&Mono::var(b, 1));
                q.add_term(m, c);
            }
            primitive_part(&q)
        })
        .collect();
    QuadricPencil { quadrics }
}

/// Outcome of the residual intersection computation.
#[derive(Clone, Debug)]
pub struct ResidualCount {
    pub count: usize,
    /// Monic finite part of the gcd of the Jacobian minors along the curve.
    pub finite: UPoly<GaussRat>,
    pub at_infinity: usize,
}

fn det3(m: &[[UPoly<GaussRat>; 3]; 3]) -> UPoly<GaussRat> {
    let t = |a: usize, b: usize, c: usize| m[0][a].mul(&m[1][b]).mul(&m[2][c]);
    t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(2, 1, 0)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2))
}

/// Points of the curve where `Q1 ∩ Q2 ∩ M6` is singular, counted by the
/// gcd of the 3×3 minors of the Jacobian restricted to the curve.
pub fn residual_intersection_count(map: &MoebiusMap, pencil: &QuadricPencil) -> Result<ResidualCount> {
    if pencil.dim() != 2 {
        return Err(Error::NotMoebiusGeneral(format!("pencil dimension {}", pencil.dim())));
    }
    let d = map.degree;
    let cubic = segre_poly();
    let gens: Vec<MPoly<GaussRat>> =
        vec![pencil.quadrics[0].map_coeffs(GaussRat::from_rat), pencil.quadrics[1].map_coeffs(GaussRat::from_rat), cubic];
    let jac: Vec<Vec<UPoly<GaussRat>>> =
        gens.iter().map(|f| (0..5).map(|v| compose(&f.derivative(v), &map.comps)).collect()).collect();
    let cols: Vec<usize> = (0..5).collect();
    let minors: Vec<UPoly<GaussRat>> = combos(&cols, 3)
        .par_iter()
        .map(|c| {
            let m: [[UPoly<GaussRat>; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|k| jac[r][c[k]].clone()));
            det3(&m)
        })
        .collect();
    let (finite, at_infinity) =
        binary_gcd(&minors, 4 * d).ok_or_else(|| Error::NotSmooth("Jacobian rank drops along the whole curve".into()))?;

    // Non-immersive points of the parametrization.
    let dcomps: Vec<UPoly<GaussRat>> = map.comps.iter().map(|p| p.derivative()).collect();
    let mut wr = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            wr.push(map.comps[i].mul(&dcomps[j]).sub(&map.comps[j].mul(&dcomps[i])));
        }
    }
    if let Some((sing, _)) = binary_gcd(&wr, 2 * d - 2) {
        let common = finite.gcd(&sing);
        if common.degree() > 0 {
            return Err(Error::NotSmooth(format!("curve is singular at the roots of {common}")));
        }
    }
    if at_infinity > 0 && !immersive_at_infinity(&map.comps, d) {
        return Err(Error::NotSmooth("curve is singular at t = inf".into()));
    }
    Ok(ResidualCount { count: finite.degree() + at_infinity, finite, at_infinity })
}

fn immersive_at_infinity(comps: &[UPoly<GaussRat>; 5], d: usize) -> bool {
    if d == 0 {
        return false;
    }
    let a: Vec<GaussRat> = comps.iter().map(|p| p.coeff(d)).collect();
    let b: Vec<GaussRat> = comps.iter().map(|p| p.coeff(d - 1)).collect();
    Matrix::from_rows(vec![a, b]).rank() == 2
}

/// `φ` is an immersion: `φ(t)` and `φ'(t)` are never proportional.
pub fn is_immersive(map: &MoebiusMap) -> bool {
    let d = map.degree;
    if d == 0 {
        return false;
    }
    let dcomps: Vec<UPoly<GaussRat>> = map.comps.iter().map(|p| p.derivative()).collect();
    let mut wr = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            wr.push(map.comps[i].mul(&dcomps[j]).sub(&map.comps[j].mul(&dcomps[i])));
        }
    }
    let finite_ok = match binary_gcd(&wr, 2 * d - 2) {
        Some((gg, _)) => gg.degree() == 0,
        None => false,
    };
    finite_ok && immersive_at_infinity(&map.comps, d)
}

/// Dense bihomogeneous form: `c[i][j]` is the coefficient of `u^i s^j`.
#[derive(Clone, Debug)]
struct BiForm {
    c: Vec<Vec<GaussRat>>,
    du: usize,
    ds: usize,
}

impl BiForm {
    fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    fn u_coeffs_at(&self, s: &GaussRat) -> Vec<GaussRat> {
        self.c.iter().map(|row| UPoly::new(row.clone()).eval(s)).collect()
    }

    fn u_coeffs_num(&self, s: &ParamPt, prec: u32) -> Vec<BigComplex> {
        self.c.iter().map(|row| eval_binary(&UPoly::new(row.clone()), self.ds, s, prec)).collect()
    }

    /// `|f(u, s)|` relative to the coefficient mass.
    fn residual(&self, u: &ParamPt, s: &ParamPt, prec: u32) -> Float {
        let cu = self.u_coeffs_num(s, prec);
        let (u0, u1) = u.homog(prec);
        let mut v = BigComplex::zero(prec);
        for (i, c) in cu.iter().enumerate() {
            v = &v + &(&(c * &u1.powu(i as u32)) * &u0.powu((self.du - i) as u32));
        }
        let mut mass = Float::new(prec);
        for row in &self.c {
            for x in row {
                mass += BigComplex::from_field(prec, x).abs();
            }
        }
        if mass.is_zero() {
            return mass;
        }
        v.abs() / mass
    }

    fn from_mpoly(p: &MPoly<GaussRat>, du: usize, ds: usize) -> Self {
        let mut c = vec![vec![GaussRat::zero(); ds + 1]; du + 1];
        for (m, k) in p.terms() {
            c[m.exp(0) as usize][m.exp(1) as usize] = k.clone();
        }
        BiForm { c, du, ds }
    }
}

/// Common zeros of bihomogeneous forms on P¹ × P¹.
#[derive(Clone, Debug)]
struct CommonZeros {
    eliminant: UPoly<GaussRat>,
    at_infinity: usize,
    points: Vec<(ParamPt, ParamPt, u32)>,
}

/// `u`-resultant of two forms as a polynomial in `s`, by evaluation at
/// integer nodes and interpolation.
fn eliminate_u(a: &BiForm, b: &BiForm) -> UPoly<GaussRat> {
    let n = a.du * b.ds + b.du * a.ds + 1;
    let xs: Vec<GaussRat> = (0..n as i64).map(|k| gi(k - n as i64 / 2)).collect();
    let ys: Vec<GaussRat> =
        xs.iter().map(|s| resultant_dense(&a.u_coeffs_at(s), &b.u_coeffs_at(s), a.du, b.du)).collect();
    UPoly::interpolate(&xs, &ys)
}

/// Pairs of the ten minors indexed like `minor_forms`, those with four
/// distinct component indices first.
fn minor_pairs() -> Vec<(usize, usize)> {
    let idx: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let mut pairs: Vec<(usize, usize)> = (0..10).flat_map(|a| (a + 1..10).map(move |b| (a, b))).collect();
    let shared = |&(a, b): &(usize, usize)| {
        let (p, q) = (idx[a], idx[b]);
        [p.0, p.1].iter().filter(|x| **x == q.0 || **x == q.1).count()
    };
    pairs.sort_by_key(shared);
    pairs
}

/// Common zeros, eliminating `u` from pairs of forms until the gcd of the
/// resultants is stable and each of its roots lifts to a verified zero.
/// `None` when every resultant vanishes.
fn common_zeros(forms: &[BiForm], prec: u32) -> Result<Option<CommonZeros>> {
    let du = forms[0].du;
    let ds = forms[0].ds;
    let d = 2 * du * ds;
    let mut acc: Option<(UPoly<GaussRat>, usize)> = None;
    let mut used = 0;
    let mut stable = 0;
    let mut pending = minor_pairs().into_iter().filter(|&(i, j)| !forms[i].is_zero() && !forms[j].is_zero());
    loop {
        let next = pending.next();
        if let Some((i, j)) = next {
            let r = eliminate_u(&forms[i], &forms[j]);
            if r.is_zero() {
                continue;
            }
            used += 1;
            let new = match &acc {
                None => (r.monic(), d - r.degree()),
                Some((gg, inf)) => (gg.gcd(&r), (*inf).min(d - r.degree())),
            };
            if acc.as_ref() == Some(&new) {
                stable += 1;
            } else {
                stable = 0;
            }
            acc = Some(new);
        }
        let Some((eliminant, at_infinity)) = acc.clone() else {
            return Ok(None);
        };
        let done = next.is_none();
        let empty = eliminant.degree() == 0 && at_infinity == 0;
        if empty && used >= 2 {
            return Ok(Some(CommonZeros { eliminant, at_infinity, points: Vec::new() }));
        }
        if done || (used >= 3 && stable >= 2) {
            match lift_zeros(forms, &eliminant, at_infinity, prec)? {
                Some(points) => return Ok(Some(CommonZeros { eliminant, at_infinity, points })),
                None if done => {
                    return Err(Error::Numeric("a root of the eliminant does not lift to a common zero".into()))
                }
                None => stable = 0,
            }
        }
    }
}

/// Lift each root of the eliminant to verified common zeros; `None` if
/// some root has no lift.
fn lift_zeros(
    forms: &[BiForm],
    eliminant: &UPoly<GaussRat>,
    at_infinity: usize,
    prec: u32,
) -> Result<Option<Vec<(ParamPt, ParamPt, u32)>>> {
    let forms: Vec<&BiForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let mut s_roots: Vec<(ParamPt, u32)> = Vec::new();
    if eliminant.degree() > 0 {
        for (z, m) in roots_complex(eliminant, prec)?.roots {
            s_roots.push((ParamPt::Finite(z), m));
        }
    }
    if at_infinity > 0 {
        s_roots.push((ParamPt::Infinity, at_infinity as u32));
    }
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 3) as i32)));
    let mut points = Vec::new();
    for (s, m) in s_roots {
        let mut accepted: Vec<ParamPt> = Vec::new();
        for u in u_candidates(&forms, &s, prec)? {
            let worst = forms.iter().map(|f| f.residual(&u, &s, prec)).fold(Float::new(prec), |a, b| a.max(&b));
            if worst < tol && !accepted.iter().any(|v| v.dist(&u) < 1e-20) {
                accepted.push(u);
            }
        }
        if accepted.is_empty() {
            return Ok(None);
        }
        let k = accepted.len() as u32;
        for u in accepted {
            points.push((u, s.clone(), if k == 1 { m } else { 1 }));
        }
    }
    Ok(Some(points))
}

/// Roots in `u` of the form whose specialization at `s` is largest, with
/// `∞` when the leading coefficients vanish numerically.
fn u_candidates(forms: &[&BiForm], s: &ParamPt, prec: u32) -> Result<Vec<ParamPt>> {
    let mut best: Option<(Float, Vec<BigComplex>)> = None;
    for f in forms {
        let c = f.u_coeffs_num(s, prec);
        let norm = c.iter().fold(Float::new(prec), |a, x| a.max(&x.abs()));
        if best.as_ref().is_none_or(|b| norm > b.0) {
            best = Some((norm, c));
        }
    }
    let (norm, mut c) = best.unwrap();
    let small = Float::with_val(prec, &norm >> (prec / 2));
    let mut out = Vec::new();
    if c.last().is_some_and(|x| x.abs() <= small) {
        out.push(ParamPt::Infinity);
        while c.last().is_some_and(|x| x.abs() <= small) {
            c.pop();
        }
    }
    if c.len() > 1 {
        let (z, _) = aberth(&c, prec, 3000)?;
        out.extend(z.into_iter().map(ParamPt::Finite));
    }
    Ok(out)
}

/// One matched pair of directions.
#[derive(Clone, Debug)]
pub struct Matched {
    pub u: ParamPt,
    pub s: ParamPt,
    pub multiplicity: u32,
    /// The common image is a node of the Segre cubic.
    pub node: bool,
}

#[derive(Clone, Debug)]
pub struct MatchedDirections {
    pub points: Vec<Matched>,
    /// Sum of eliminant multiplicities.
    pub total_multiplicity: usize,
    pub distinct: usize,
}

fn minor_forms(a: &[UPoly<GaussRat>; 5], da: usize, b: &[UPoly<GaussRat>; 5], db: usize) -> Vec<BiForm> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let mut c = vec![vec![GaussRat::zero(); db + 1]; da + 1];
            for (p, row) in c.iter_mut().enumerate() {
                for (q, x) in row.iter_mut().enumerate() {
                    *x = a[i].coeff(p).mul(&b[j].coeff(q)).sub(&a[j].coeff(p).mul(&b[i].coeff(q)));
                }
            }
            out.push(BiForm { c, du: da, ds: db });
        }
    }
    out
}

/// Pairs `(u, s)` with `f_base(c(u)) = f_platform(c(s))` projectively.
pub fn matched_directions(base: &SixTuple, platform: &SixTuple, prec: u32) -> Result<MatchedDirections> {
    let a = photographic_map(base)?;
    let b = photographic_map(platform)?;
    matched_directions_maps(&a, &b, prec)
}

pub fn matched_directions_maps(a: &MoebiusMap, b: &MoebiusMap, prec: u32) -> Result<MatchedDirections> {
    let forms = minor_forms(&a.comps, a.degree, &b.comps, b.degree);
    if forms.iter().all(|f| f.is_zero()) {
        return Err(Error::Equiform);
    }
    let cz = common_zeros(&forms, prec)?.ok_or(Error::Equiform)?;
    let node_tol = Float::with_val(prec, Float::i_exp(1, -((prec / 3) as i32)));
    let mut points: Vec<Matched> = cz
        .points
        .into_iter()
        .map(|(u, s, m)| {
            let x = a.eval(&u, prec);
            let scale = x.iter().fold(Float::new(prec), |acc, v| acc.max(&v.abs()));
            let gr = segre_gradient_c(&x);
            let gmax = gr.iter().fold(Float::new(prec), |acc, v| acc.max(&v.abs()));
            let node = gmax < Float::with_val(prec, &node_tol * Float::with_val(prec, &scale * &scale));
            Matched { u, s, multiplicity: m, node }
        })
        .collect();
    points.sort_by(|p, q| cmp_param(&p.s, &q.s).then(cmp_param(&p.u, &q.u)));
    Ok(MatchedDirections {
        total_multiplicity: cz.eliminant.degree() + cz.at_infinity,
        distinct: points.len(),
        points,
    })
}

fn cmp_param(a: &ParamPt, b: &ParamPt) -> std::cmp::Ordering {
    match (a, b) {
        (ParamPt::Finite(x), ParamPt::Finite(y)) => x.lex_cmp(y),
        (ParamPt::Finite(_), ParamPt::Infinity) => std::cmp::Ordering::Less,
        (ParamPt::Infinity, ParamPt::Finite(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// Injectivity of the parametrization: the divided differences
/// `(φ_i(u)φ_j(s) - φ_j(u)φ_i(s)) / (u - s)` have only diagonal common zeros.
pub fn is_injective(map: &MoebiusMap, prec: u32) -> Result<bool> {
    let d = map.degree;
    if d < 2 {
        return Ok(false);
    }
    let u = MPoly::<GaussRat>::var(2, 0);
    let s = MPoly::<GaussRat>::var(2, 1);
    let lift = |p: &UPoly<GaussRat>, v: usize| MPoly::from_upoly(2, v, p);
    let diff = u.sub(&s);
    let mut forms = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let m = lift(&map.comps[i], 0)
                .mul(&lift(&map.comps[j], 1))
                .sub(&lift(&map.comps[j], 0).mul(&lift(&map.comps[i], 1)));
            let q = m.div_exact(&diff).ok_or_else(|| Error::Invariant("minor not divisible by u - s".into()))?;
            forms.push(BiForm::from_mpoly(&q, d - 1, d - 1));
        }
    }
    if forms.iter().all(|f| f.is_zero()) {
        return Ok(false);
    }
    match common_zeros(&forms, prec)? {
        None => Ok(false),
        Some(cz) => Ok(cz.points.iter().all(|(u, s, _)| u.dist(s) < 1e-20)),
    }
}

/// Outcome of the Möbius-generality test. Smoothness of the residual curve
/// is not certified.
#[derive(Clone, Debug)]
pub struct MoebiusGeneralReport {
    pub class: Option<MapClass>,
    pub image_degree_6: bool,
    pub injective: bool,
    pub immersive: bool,
    pub pencil_dim: usize,
    pub residual_count: Option<usize>,
    pub failures: Vec<String>,
}

impl MoebiusGeneralReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn moebius_general_test(tuple: &SixTuple, prec: u32) -> MoebiusGeneralReport {
    let mut rep = MoebiusGeneralReport {
        class: None,
        image_degree_6: false,
        injective: false,
        immersive: false,
        pencil_dim: 0,
        residual_count: None,
        failures: Vec::new(),
    };
    let map = match photographic_map(tuple) {
        Ok(m) => m,
        Err(e) => {
            rep.failures.push(e.to_string());
            return rep;
        }
    };
    rep.class = Some(map.class);
    rep.image_degree_6 = map.image_degree() == 6;
    if !rep.image_degree_6 {
        rep.failures.push(format!("image degree {} ({})", map.image_degree(), map.class));
    }
    rep.immersive = is_immersive(&map);
    if !rep.immersive {
        rep.failures.push("parametrization is not an immersion".into());
    }
    rep.injective = map.map_degree == 1 && is_injective(&map, prec).unwrap_or(false);
    if !rep.injective {
        rep.failures.push("parametrization is not injective".into());
    }
    let pencil = quadric_pencil(&map);
    rep.pencil_dim = pencil.dim();
    if pencil.dim() != 2 {
        rep.failures.push(format!("pencil dimension {}", pencil.dim()));
    } else {
        match residual_intersection_count(&map, &pencil) {
            Ok(r) => {
                rep.residual_count = Some(r.count);
                if r.count != 14 {
                    rep.failures.push(format!("residual count {}", r.count));
                }
            }
            Err(e) => rep.failures.push(e.to_string()),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::tuple_a;

    #[test]
    fn h_forms() {
        let a = tuple_a();
        assert_eq!(h_form(&a, 0, 1).unwrap(), [Rat::from(-2), Rat::new(), Rat::new()]);
        assert_eq!(h_form(&a, 2, 5).unwrap(), [Rat::new(), Rat::from(1), Rat::from(-3)]);
        assert!(h_form(&a, 3, 3).is_err());
    }

    #[test]
    fn conic_is_isotropic() {
        let c = conic();
        let q = c[0].mul(&c[0]).add(&c[1].mul(&c[1])).add(&c[2].mul(&c[2]));
        assert!(q.is_zero());
    }

    #[test]
    fn plane_roots_of_h12() {
        let m = photographic_map(&tuple_a()).unwrap();
        let r = t_plane_roots(&m, 0, 1, 128).unwrap();
        assert!(matches!(&r[0], ParamPt::Finite(z) if z.is_zero()));
        assert!(matches!(r[1], ParamPt::Infinity));
    }
}
