//! Forward kinematics in Study parameters `(e₀:e₁:e₂:e₃:f₀:f₁:f₂:f₃)`:
//! spherical conditions, the quartics `G_k`, their common cubic, the
//! octics `E_{m,n}`, their resultants with the cubic and the motion
//! polynomial `J`, followed by pose sampling along `J = 0`.

use std::collections::BTreeMap;
use std::io::Write;

use exactalg::{
    aberth, eval_cpoly, eval_mpoly, det_bareiss, mpoly_gcd_many, primitive_part, sylvester_resultant, BigComplex, Field,
    Float, MPoly, Matrix, Mono, Rat,
};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tuple::{sub, Hexapod, Point};

pub const NV: usize = 8;
pub const NAMES: [&str; 8] = ["e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"];

pub fn e(i: usize) -> MPoly<Rat> {
    MPoly::var(NV, i)
}

pub fn f(i: usize) -> MPoly<Rat> {
    MPoly::var(NV, 4 + i)
}

fn c(x: i64) -> MPoly<Rat> {
    MPoly::constant(NV, Rat::from(x))
}

/// `N = e₀² + e₁² + e₂² + e₃²`.
pub fn study_n() -> MPoly<Rat> {
    (0..4).fold(MPoly::zero(NV), |a, i| &a + &e(i).pow(2))
}

/// The Study quadric `Ψ = Σ eᵢ fᵢ`.
pub fn study_psi() -> MPoly<Rat> {
    (0..4).fold(MPoly::zero(NV), |a, i| &a + &(&e(i) * &f(i)))
}

/// Homogeneous rotation acting on row vectors, `p ↦ p R̃`.
pub fn rotation_study() -> [[MPoly<Rat>; 3]; 3] {
    let ee = |i: usize, j: usize| &e(i) * &e(j);
    let sq = |s: [i64; 4]| (0..4).fold(MPoly::zero(NV), |a, i| &a + &ee(i, i).scale(&Rat::from(s[i])));
    let two = |p: MPoly<Rat>| p.scale(&Rat::from(2));
    [
        [sq([1, 1, -1, -1]), two(&ee(1, 2) + &ee(0, 3)), two(&ee(1, 3) - &ee(0, 2))],
        [two(&ee(1, 2) - &ee(0, 3)), sq([1, -1, 1, -1]), two(&ee(2, 3) + &ee(0, 1))],
        [two(&ee(1, 3) + &ee(0, 2)), two(&ee(2, 3) - &ee(0, 1)), sq([1, -1, -1, 1])],
    ]
}

pub fn translation_study() -> [MPoly<Rat>; 3] {
    let ef = |i: usize, j: usize| &e(i) * &f(j);
    let two = |p: MPoly<Rat>| p.scale(&Rat::from(2));
    [
        two(&(&(&ef(0, 1) - &ef(1, 0)) + &ef(2, 3)) - &ef(3, 2)),
        two(&(&(&ef(0, 2) - &ef(2, 0)) + &ef(3, 1)) - &ef(1, 3)),
        two(&(&(&ef(0, 3) - &ef(3, 0)) + &ef(1, 2)) - &ef(2, 1)),
    ]
}

fn quad_monos() -> Vec<Mono> {
    let mut out = Vec::with_capacity(36);
    for i in 0..NV {
        for j in i..NV {
            out.push(Mono::var(i, 1).mul(&Mono::var(j, 1)));
        }
    }
    out
}

/// The quadric `Λ` with `‖p R̃ + t̃ − N P‖² − d² N² = N Λ + A Ψ`, chosen with
/// coefficient vector orthogonal to that of `Ψ`.
pub fn spherical_quadric(base: &Point, platform: &Point, d2: &Rat) -> Result<MPoly<Rat>> {
    let r = rotation_study();
    let t = translation_study();
    let n = study_n();
    let psi = study_psi();
    let mut q = &n.pow(2).scale(d2) * &c(-1);
    for col in 0..3 {
        let mut x = &t[col] - &n.scale(&base[col]);
        for (row, p) in platform.iter().enumerate() {
            x = &x + &r[row][col].scale(p);
        }
        q = &q + &x.pow(2);
    }
    let monos = quad_monos();
    let cols: Vec<MPoly<Rat>> = monos
        .iter()
        .map(|m| n.mul_term(m, &Rat::from(1)))
        .chain(monos.iter().map(|m| psi.mul_term(m, &Rat::from(1))))
        .collect();
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    for p in cols.iter().chain(std::iter::once(&q)) {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(*m).or_insert(k);
        }
    }
    let nr = index.len();
    let mut a = Matrix::<Rat>::zeros(nr + 1, cols.len());
    for (j, p) in cols.iter().enumerate() {
        for (m, x) in p.terms() {
            a.set(index[m], j, x.clone());
        }
    }
    for (j, m) in monos.iter().enumerate() {
        a.set(nr, j, psi.coeff(m));
    }
    let mut b = vec![Rat::new(); nr + 1];
    for (m, x) in q.terms() {
        b[index[m]] = x.clone();
    }
    let sol = a.solve(&b).ok_or_else(|| Error::Invariant("spherical condition is not in (N, Psi)".into()))?;
    let lam = MPoly::from_terms(NV, monos.iter().zip(&sol[..36]).map(|(m, x)| (m.exps(NV), x.clone())));
    let aa = MPoly::from_terms(NV, monos.iter().zip(&sol[36..]).map(|(m, x)| (m.exps(NV), x.clone())));
    if &(&n * &lam) + &(&aa * &psi) != q {
        return Err(Error::Invariant("spherical decomposition is not exact".into()));
    }
    Ok(lam)
}

/// `Λ₁ … Λ₆` of a hexapod, using the scaled platform.
pub fn lambdas(hex: &Hexapod) -> Result<Vec<MPoly<Rat>>> {
    let p = hex.scaled_platform();
    (0..6).into_par_iter().map(|i| spherical_quadric(hex.base.get(i), &p[i], &hex.legs2[i])).collect()
}

/// `(S, T, U, V, W)` with `Δ = S f₀ + T f₁ + U f₂ + V f₃ + W`.
pub fn affine_in_f(d: &MPoly<Rat>) -> Result<[MPoly<Rat>; 5]> {
    let mut out: [MPoly<Rat>; 5] = std::array::from_fn(|_| MPoly::zero(NV));
    for (m, x) in d.terms() {
        let fs: Vec<u32> = (4..8).map(|v| m.exp(v)).collect();
        let k = match fs.iter().sum::<u32>() {
            0 => 4,
            1 => fs.iter().position(|&x| x == 1).unwrap(),
            _ => return Err(Error::Invariant("difference of spherical conditions is not affine in f".into())),
        };
        let mut mm = *m;
        for v in 4..8 {
            mm.set(v, 0);
        }
        out[k].add_term(mm, x);
    }
    Ok(out)
}

fn delta(lams: &[MPoly<Rat>], i: usize, j: usize) -> Result<[MPoly<Rat>; 5]> {
    affine_in_f(&(&lams[i] - &lams[j]))
}

/// Index pairs (0-based) whose differences enter `Ω_k` (k 1-based).
pub fn omega_rows(k: usize) -> Vec<(usize, usize)> {
    if k == 1 {
        (2..6).map(|j| (1, j)).collect()
    } else {
        (1..6).filter(|&j| j != k - 1).map(|j| (0, j)).collect()
    }
}

fn e_row() -> Vec<MPoly<Rat>> {
    vec![e(0), e(1), e(2), e(3), MPoly::zero(NV)]
}

/// `Ω₁ … Ω₆` and `G_k = Ω_k / N`.
pub fn omega_and_g(lams: &[MPoly<Rat>]) -> Result<(Vec<MPoly<Rat>>, Vec<MPoly<Rat>>)> {
    let n = study_n();
    let res: Vec<Result<(MPoly<Rat>, MPoly<Rat>)>> = (1..=6)
        .into_par_iter()
        .map(|k| {
            let mut m = Vec::new();
            for (i, j) in omega_rows(k) {
                m.push(delta(lams, i, j)?.to_vec());
            }
            m.push(e_row());
            let om = det_bareiss(&m);
            let g = om.div_exact(&n).ok_or_else(|| Error::Invariant(format!("N does not divide Omega_{k}")))?;
            Ok((om, g))
        })
        .collect();
    let mut oms = Vec::new();
    let mut gs = Vec::new();
    for r in res {
        let (o, g) = r?;
        oms.push(o);
        gs.push(g);
    }
    Ok((oms, gs))
}

/// `G₁ − G₂ + G₃ − G₄ + G₅ − G₆`.
pub fn alternating_sum(g: &[MPoly<Rat>]) -> MPoly<Rat> {
    g.iter().enumerate().fold(MPoly::zero(NV), |a, (k, x)| if k % 2 == 0 { &a + x } else { &a - x })
}

#[derive(Clone, Debug)]
pub struct CommonCubic {
    pub s: MPoly<Rat>,
    /// `L₂ … L₆`; empty when the gcd is constant.
    pub l: Vec<MPoly<Rat>>,
    /// Common point of the planes `L_k = 0` in Euler parameters.
    pub vertex: Option<[Rat; 4]>,
}

impl CommonCubic {
    pub fn vertex_on_s(&self) -> bool {
        self.vertex.as_ref().is_some_and(|v| Field::is_zero(&self.s.eval(&euler_point(v))))
    }
}

fn euler_point(v: &[Rat; 4]) -> Vec<Rat> {
    let mut p = v.to_vec();
    p.resize(NV, Rat::new());
    p
}

/// Gcd of `G₂ … G₆`, the cofactors and the vertex of the planes.
pub fn common_cubic(g: &[MPoly<Rat>]) -> CommonCubic {
    let s = mpoly_gcd_many(&g[1..]).unwrap_or_else(|| MPoly::one(NV));
    if s.is_constant() {
        return CommonCubic { s: MPoly::one(NV), l: Vec::new(), vertex: None };
    }
    let l: Vec<MPoly<Rat>> = g[1..].iter().map(|x| x.div_exact(&s).expect("gcd divides")).collect();
    let vertex = if l.iter().all(|x| x.total_degree() == 1 && x.support_vars().iter().all(|&v| v < 4)) {
        let rows = l.iter().map(|x| (0..4).map(|i| x.coeff(&Mono::var(i, 1))).collect()).collect();
        let k = Matrix::from_rows(rows).kernel();
        (k.len() == 1).then(|| {
            let lead = k[0].iter().find(|x| !Field::is_zero(*x)).unwrap().clone();
            std::array::from_fn(|i| Rat::from(&k[0][i] / &lead))
        })
    } else {
        None
    };
    CommonCubic { s, l, vertex }
}

/// `f = num / den` from `Δ_ij = Δ_ik = Δ_il = Ψ = 0`.
#[derive(Clone, Debug)]
pub struct Cramer {
    pub idx: [usize; 4],
    pub num: [MPoly<Rat>; 4],
    pub den: MPoly<Rat>,
}

/// Indices 0-based.
pub fn f_cramer(lams: &[MPoly<Rat>], i: usize, j: usize, k: usize, l: usize) -> Result<Cramer> {
    let mut rows: Vec<Vec<MPoly<Rat>>> = Vec::new();
    let mut rhs = Vec::new();
    for &b in &[j, k, l] {
        let d = delta(lams, i, b)?;
        rows.push(d[..4].to_vec());
        rhs.push(d[4].neg());
    }
    rows.push((0..4).map(e).collect());
    rhs.push(MPoly::zero(NV));
    let den = det_bareiss(&rows);
    if den.is_zero() {
        return Err(Error::DegenerateIndices);
    }
    let num = std::array::from_fn(|col| {
        let mut m = rows.clone();
        for (r, x) in m.iter_mut().zip(&rhs) {
            r[col] = x.clone();
        }
        det_bareiss(&m)
    });
    Ok(Cramer { idx: [i, j, k, l], num, den })
}

/// Strip factors `N` and the rational content.
fn strip_n(mut p: MPoly<Rat>) -> (MPoly<Rat>, u32) {
    let n = study_n();
    let mut k = 0;
    while let Some(q) = p.div_exact(&n) {
        if p.is_zero() {
            break;
        }
        p = q;
        k += 1;
    }
    (primitive_part(&p), k)
}

#[derive(Clone, Debug)]
pub struct Octic {
    /// Excluded indices, 1-based.
    pub m: usize,
    pub n: usize,
    pub cramer: Cramer,
    pub e: MPoly<Rat>,
    pub removed_n: u32,
}

/// Numerator of `Λ_i` after inserting `f` from the other four indices;
/// `m`, `n` 1-based.
pub fn e_octic(lams: &[MPoly<Rat>], m: usize, n: usize) -> Result<Octic> {
    if m == n || !(1..=6).contains(&m) || !(1..=6).contains(&n) {
        return Err(Error::BadIndex(m, n));
    }
    let idx: Vec<usize> = (0..6).filter(|&x| x != m - 1 && x != n - 1).collect();
    let cr = f_cramer(lams, idx[0], idx[1], idx[2], idx[3])?;
    let lam = &lams[idx[0]];
    let den_pows = [MPoly::one(NV), cr.den.clone(), cr.den.pow(2)];
    let mut tot = MPoly::zero(NV);
    for (mono, x) in lam.terms() {
        let mut em = *mono;
        let mut term = MPoly::one(NV);
        let mut fd = 0;
        for v in 0..4 {
            let k = mono.exp(4 + v);
            em.set(4 + v, 0);
            for _ in 0..k {
                term = &term * &cr.num[v];
            }
            fd += k as usize;
        }
        if fd > 2 {
            return Err(Error::Invariant("spherical condition of degree above 2 in f".into()));
        }
        tot = &tot + &(&term * &den_pows[2 - fd]).mul_term(&em, x);
    }
    let (e_poly, removed_n) = strip_n(tot);
    if e_poly.total_degree() > 8 {
        return Err(Error::Invariant(format!("E_{m},{n} has degree {}", e_poly.total_degree())));
    }
    Ok(Octic { m, n, cramer: cr, e: e_poly, removed_n })
}

/// `F_{m,n} = Res_{e₀}(S, E_{m,n})` and `J = gcd F_{m,n}`.
pub fn motion_gcd(s: &MPoly<Rat>, octics: &[Octic]) -> Result<(Vec<MPoly<Rat>>, MPoly<Rat>)> {
    if s.degree_in(0) == 0 {
        return Err(Error::Input("the common cubic does not involve e0".into()));
    }
    let fs: Vec<MPoly<Rat>> = octics
        .par_iter()
        .map(|o| if o.e.degree_in(0) == 0 { Ok(o.e.pow(s.degree_in(0))) } else { sylvester_resultant(s, &o.e, 0) })
        .collect::<std::result::Result<Vec<_>, _>>()?
        .into_iter()
        .map(|x| primitive_part(&x))
        .collect();
    let nonzero: Vec<MPoly<Rat>> = fs.iter().filter(|x| !x.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::AllResultantsZero);
    }
    let j = mpoly_gcd_many(&nonzero).unwrap();
    Ok((fs, j))
}

/// Default excluded pairs for `E_{m,n}`, 1-based.
pub const DEFAULT_PAIRS: [(usize, usize); 3] = [(5, 6), (4, 6), (3, 6)];

#[derive(Clone, Debug)]
pub struct MotionCurve {
    pub lambdas: Vec<MPoly<Rat>>,
    /// `G₁ … G₆`.
    pub g: Vec<MPoly<Rat>>,
    pub cubic: CommonCubic,
    pub octics: Vec<Octic>,
    pub f: Vec<MPoly<Rat>>,
    pub j: MPoly<Rat>,
}

impl MotionCurve {
    pub fn j_degree(&self) -> u32 {
        self.j.total_degree()
    }
}

/// The quartics and the common cubic only.
pub fn quartics(hex: &Hexapod) -> Result<(Vec<MPoly<Rat>>, Vec<MPoly<Rat>>, CommonCubic)> {
    let lams = lambdas(hex)?;
    let (_, g) = omega_and_g(&lams)?;
    let cubic = common_cubic(&g);
    Ok((lams, g, cubic))
}

pub fn motion_curve(hex: &Hexapod, pairs: &[(usize, usize)]) -> Result<MotionCurve> {
    if pairs.len() < 3 {
        return Err(Error::Input("at least three index pairs are needed".into()));
    }
    let (lambdas, g, cubic) = quartics(hex)?;
    if cubic.s.is_constant() {
        return Err(Error::Input("no common cubic: the quartics G_k are coprime".into()));
    }
    let octics = pairs.par_iter().map(|&(m, n)| e_octic(&lambdas, m, n)).collect::<Result<Vec<_>>>()?;
    let (f, j) = motion_gcd(&cubic.s, &octics)?;
    Ok(MotionCurve { lambdas, g, cubic, octics, f, j })
}

/// Which Euler parameter is set to 1 for sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    E3,
    E2,
    E1,
}

impl Chart {
    fn fixed(self) -> usize {
        match self {
            Chart::E3 => 3,
            Chart::E2 => 2,
            Chart::E1 => 1,
        }
    }

    /// (solved, swept) variable indices.
    fn free(self) -> (usize, usize) {
        match self {
            Chart::E3 => (1, 2),
            Chart::E2 => (1, 3),
            Chart::E1 => (2, 3),
        }
    }
}

impl std::str::FromStr for Chart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e3" => Ok(Chart::E3),
            "e2" => Ok(Chart::E2),
            "e1" => Ok(Chart::E1),
            _ => Err(Error::Input(format!("unknown chart {s}"))),
        }
    }
}

/// First chart in `e₃, e₂, e₁` whose coordinate does not divide `J`.
pub fn auto_chart(j: &MPoly<Rat>, preferred: Chart) -> Chart {
    let ok = |c: Chart| !j.subst(c.fixed(), &Rat::new()).is_zero();
    [preferred, Chart::E3, Chart::E2, Chart::E1].into_iter().find(|&c| ok(c)).unwrap_or(preferred)
}

/// A pose with `N = 1`, `Ψ = 0`.
#[derive(Clone, Debug)]
pub struct Pose {
    pub e: [Float; 4],
    pub f: [Float; 4],
    /// `R̃` of the row action `p ↦ p R̃ + t`.
    pub r: [[Float; 3]; 3],
    pub t: [Float; 3],
}

impl Pose {
    pub fn from_study(e: &[Float; 4], f: &[Float; 4]) -> Self {
        let prec = e[0].prec();
        let fl = |x: f64| Float::with_val(prec, x);
        let mut pt = vec![BigComplex::zero(prec); NV];
        for i in 0..4 {
            pt[i] = BigComplex::new(e[i].clone(), fl(0.0));
            pt[4 + i] = BigComplex::new(f[i].clone(), fl(0.0));
        }
        let n = eval_mpoly(&study_n(), &pt).re.sqrt();
        for x in pt.iter_mut() {
            *x = x.scale(&Float::with_val(prec, 1 / &n));
        }
        let rs = rotation_study();
        let ts = translation_study();
        Pose {
            e: std::array::from_fn(|i| pt[i].re.clone()),
            f: std::array::from_fn(|i| pt[4 + i].re.clone()),
            r: std::array::from_fn(|i| std::array::from_fn(|j| eval_mpoly(&rs[i][j], &pt).re)),
            t: std::array::from_fn(|i| eval_mpoly(&ts[i], &pt).re),
        }
    }

    /// Column-form rotation `R = R̃ᵀ`.
    pub fn rotation(&self) -> [[Float; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.r[j][i].clone()))
    }

    pub fn apply(&self, p: &Point) -> [Float; 3] {
        let prec = self.t[0].prec();
        std::array::from_fn(|c| {
            let mut s = self.t[c].clone();
            for (row, x) in p.iter().enumerate() {
                s += Float::with_val(prec, &self.r[row][c] * x);
            }
            s
        })
    }

    /// Largest `|‖p_i R̃ + t − P_i‖² − d_i²|`.
    pub fn leg_residual(&self, hex: &Hexapod) -> Float {
        let p = hex.scaled_platform();
        let prec = self.t[0].prec();
        let mut worst = Float::with_val(prec, 0);
        for i in 0..6 {
            let q = self.apply(&p[i]);
            let mut s = -Float::with_val(prec, &hex.legs2[i]);
            for k in 0..3 {
                let d = Float::with_val(prec, &q[k] - &hex.base.get(i)[k]);
                s += d.square();
            }
            worst = worst.max(&s.abs());
        }
        worst
    }
}

#[derive(Clone, Debug)]
pub struct Sampling {
    pub chart: Chart,
    pub poses: Vec<Pose>,
    /// Real chart points rejected by the leg check or a vanishing denominator.
    pub rejected: usize,
    pub max_residual: Float,
}

fn cfloat(x: &Float) -> BigComplex {
    BigComplex::new(x.clone(), Float::new(x.prec()))
}

fn eval_at(p: &MPoly<Rat>, pt: &[Float]) -> Float {
    let z: Vec<BigComplex> = pt.iter().map(cfloat).collect();
    eval_mpoly(p, &z).re
}

/// Univariate coefficients of `p` in `var` at `pt` (other variables fixed).
fn coeffs_at(p: &MPoly<Rat>, var: usize, pt: &[Float]) -> Vec<BigComplex> {
    p.coeffs_in(var).iter().map(|q| cfloat(&eval_at(q, pt))).collect()
}

fn real_roots(c: &[BigComplex], prec: u32) -> Vec<Float> {
    let Ok((zs, _)) = aberth(c, prec, 600) else { return Vec::new() };
    let dc: Vec<BigComplex> = (1..c.len()).map(|k| c[k].scale(&Float::with_val(prec, k))).collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 4) as i32)));
    let mut out: Vec<Float> = Vec::new();
    for z in zs {
        if Float::with_val(prec, z.im.clone().abs()) > Float::with_val(prec, &tol * (z.re.clone().abs() + 1u32)) {
            continue;
        }
        let mut x = cfloat(&z.re);
        for _ in 0..8 {
            let d = eval_cpoly(&dc, &x);
            if d.is_zero() {
                break;
            }
            x = &x - &(&eval_cpoly(c, &x) / &d);
            x.im = Float::new(prec);
        }
        if out.iter().all(|y| Float::with_val(prec, y - &x.re).abs() > tol) {
            out.push(x.re);
        }
    }
    out
}

/// Poses along `J = 0` in an affine chart, sweeping the second free
/// coordinate over `tan θ` for `slices` equally spaced `θ ∈ (−π/2, π/2)`.
pub fn sample_motion(curve: &MotionCurve, hex: &Hexapod, chart: Chart, slices: usize, prec: u32) -> Result<Sampling> {
    if curve.j.is_constant() {
        return Err(Error::Input("J is constant: no self-motion".into()));
    }
    let chart = auto_chart(&curve.j, chart);
    let (solved, swept) = chart.free();
    let pi = Float::with_val(prec, -1).acos();
    let tol = Float::with_val(prec, 1e-20);
    let results: Vec<(Vec<Pose>, usize, Float)> = (0..slices)
        .into_par_iter()
        .map(|k| {
            let th = Float::with_val(prec, &pi * (2 * k + 1) as u32) / (2 * slices) as u32 - Float::with_val(prec, &pi / 2u32);
            let mut pt = vec![Float::new(prec); NV];
            pt[chart.fixed()] = Float::with_val(prec, 1);
            pt[swept] = th.tan();
            let mut poses = Vec::new();
            let mut rejected = 0;
            let mut worst = Float::with_val(prec, 0);
            for x in real_roots(&coeffs_at(&curve.j, solved, &pt), prec) {
                pt[solved] = x;
                for e0 in real_roots(&coeffs_at(&curve.cubic.s, 0, &pt), prec) {
                    pt[0] = e0;
                    match pose_at(curve, hex, &pt, &tol) {
                        Some((p, r)) => {
                            worst = worst.max(&r);
                            poses.push(p);
                        }
                        None => rejected += 1,
                    }
                }
            }
            (poses, rejected, worst)
        })
        .collect();
    let mut out = Sampling { chart, poses: Vec::new(), rejected: 0, max_residual: Float::with_val(prec, 0) };
    for (p, r, w) in results {
        out.poses.extend(p);
        out.rejected += r;
        out.max_residual = out.max_residual.max(&w);
    }
    Ok(out)
}

fn pose_at(curve: &MotionCurve, hex: &Hexapod, pt: &[Float], tol: &Float) -> Option<(Pose, Float)> {
    let prec = pt[0].prec();
    let e: [Float; 4] = std::array::from_fn(|i| pt[i].clone());
    let mut best: Option<(Pose, Float)> = None;
    for o in &curve.octics {
        let den = eval_at(&o.cramer.den, pt);
        let scale = o.cramer.num.iter().fold(den.clone().abs(), |a, n| a.max(&eval_at(n, pt).abs()));
        if den.is_zero() || Float::with_val(prec, den.clone().abs() / &scale) < 1e-40 {
            continue;
        }
        let f: [Float; 4] = std::array::from_fn(|i| eval_at(&o.cramer.num[i], pt) / &den);
        let pose = Pose::from_study(&e, &f);
        let r = pose.leg_residual(hex);
        if best.as_ref().map_or(true, |(_, b)| r < *b) {
            best = Some((pose, r));
        }
    }
    best.filter(|(_, r)| r < tol)
}

/// CSV rows: index, e₀…e₃, f₀…f₃, t₁…t₃ and the six moved platform points.
pub fn write_csv<W: Write>(w: W, poses: &[Pose], hex: &Hexapod, digits: usize) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    let mut head: Vec<String> = vec!["index".into()];
    head.extend(NAMES.iter().map(|s| s.to_string()));
    head.extend(["t1", "t2", "t3"].iter().map(|s| s.to_string()));
    for i in 1..=6 {
        for a in ["x", "y", "z"] {
            head.push(format!("p{i}{a}"));
        }
    }
    wr.write_record(&head)?;
    let plat = hex.scaled_platform();
    let fmt = |x: &Float| x.to_string_radix(10, Some(digits));
    for (k, p) in poses.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(p.e.iter().chain(&p.f).chain(&p.t).map(fmt));
        for q in &plat {
            row.extend(p.apply(q).iter().map(fmt));
        }
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ObservationReport {
    pub vertex: Option<[Rat; 4]>,
    /// The vertex lies on every plane `L_k = 0` and on `S = 0`.
    pub bundle: bool,
    /// The vertex is the same for a second leg vector.
    pub leg_independent: Option<bool>,
    /// Rank of the difference vectors in orientation `V`.
    pub difference_rank: Option<usize>,
    /// A regular projectivity maps `P_i` to `p_i`.
    pub projectivity: bool,
}

impl ObservationReport {
    pub fn pass(&self) -> bool {
        self.bundle && self.leg_independent != Some(false) && self.difference_rank == Some(2) && self.projectivity
    }
}

fn same_projective(a: &[Rat; 4], b: &[Rat; 4]) -> bool {
    (0..4).all(|i| (0..4).all(|j| Rat::from(&a[i] * &b[j]) == Rat::from(&a[j] * &b[i])))
}

/// Platform in the orientation given by Euler parameters `v`.
fn rotate_rows(p: &Point, v: &[Rat; 4]) -> Point {
    let rs = rotation_study();
    let pt = euler_point(v);
    let n = study_n().eval(&pt);
    std::array::from_fn(|col| {
        let mut s = Rat::new();
        for (row, x) in p.iter().enumerate() {
            s += Rat::from(&rs[row][col].eval(&pt) * x);
        }
        s / &n
    })
}

/// Rank of `(P_i − P_1) − (p_i − p_1)` for `i = 2..6`.
pub fn difference_rank(base: &[Point; 6], platform: &[Point; 6]) -> usize {
    let rows = (1..6)
        .map(|i| sub(&sub(&base[i], &base[0]), &sub(&platform[i], &platform[0])).to_vec())
        .collect();
    Matrix::from_rows(rows).rank()
}

/// A 4×4 matrix `T` and scalars `λ_i ≠ 0` with `T (P_i, 1) = λ_i (p_i, 1)`.
pub fn projectivity(base: &[Point; 6], platform: &[Point; 6]) -> Option<Matrix<Rat>> {
    let mut rows = Vec::new();
    for i in 0..6 {
        let ph: Vec<Rat> = base[i].iter().cloned().chain(std::iter::once(Rat::from(1))).collect();
        let pl: Vec<Rat> = platform[i].iter().cloned().chain(std::iter::once(Rat::from(1))).collect();
        for r in 0..4 {
            let mut row = vec![Rat::new(); 22];
            for c in 0..4 {
                row[4 * r + c] = ph[c].clone();
            }
            row[16 + i] = -pl[r].clone();
            rows.push(row);
        }
    }
    let k = Matrix::from_rows(rows).kernel();
    if k.len() != 1 {
        return None;
    }
    let v = &k[0];
    if v[16..].iter().any(Field::is_zero) {
        return None;
    }
    let t = Matrix::from_rows((0..4).map(|r| v[4 * r..4 * r + 4].to_vec()).collect());
    (!Field::is_zero(&t.det())).then_some(t)
}

/// Structural checks on the cubic and the two tuples. `other_legs`, when given, is a
/// second leg vector for the leg-independence check.
pub fn observation_checks(hex: &Hexapod, cubic: &CommonCubic, other_legs: Option<&[Rat; 6]>) -> Result<ObservationReport> {
    let plat = hex.scaled_platform();
    let base = hex.base.points().clone();
    let projectivity = projectivity(&base, &plat).is_some();
    let Some(v) = cubic.vertex.clone() else {
        return Ok(ObservationReport { vertex: None, bundle: false, leg_independent: None, difference_rank: None, projectivity });
    };
    let pt = euler_point(&v);
    let bundle = cubic.l.iter().all(|l| Field::is_zero(&l.eval(&pt))) && cubic.vertex_on_s();
    let leg_independent = match other_legs {
        Some(d) => {
            let (_, _, c2) = quartics(&hex.with_legs(d.clone()))?;
            Some(c2.vertex.as_ref().is_some_and(|w| same_projective(&v, w)))
        }
        None => None,
    };
    let rotated: [Point; 6] = std::array::from_fn(|i| rotate_rows(&plat[i], &v));
    let difference_rank = Some(difference_rank(&base, &rotated));
    Ok(ObservationReport { vertex: Some(v), bundle, leg_independent, difference_rank, projectivity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::point;

    #[test]
    fn identity_pose_lambda() {
        let big = point(1, 2, 3);
        let small = point(-1, 0, 2);
        let lam = spherical_quadric(&big, &small, &Rat::from(7)).unwrap();
        let mut pt = vec![Rat::new(); NV];
        pt[0] = Rat::from(1);
        // ‖p − P‖² − d² = 4 + 4 + 1 − 7
        assert_eq!(lam.eval(&pt), 2);
    }

    #[test]
    fn delta_is_affine() {
        let a = spherical_quadric(&point(1, 0, 0), &point(0, 1, 0), &Rat::from(2)).unwrap();
        let b = spherical_quadric(&point(0, 2, 1), &point(1, 1, 3), &Rat::from(5)).unwrap();
        let d = affine_in_f(&(&a - &b)).unwrap();
        assert!(d[..4].iter().all(|x| x.total_degree() <= 1));
    }
}
