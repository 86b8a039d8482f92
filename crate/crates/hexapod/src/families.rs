//! Two families of movable hexapods with explicit liaison platforms: three
//! concurrent leg-pair lines with a point swap (γ = −1), and 6-tuples with
//! an order-3 symmetry (γ = 1).

use std::collections::BTreeMap;

use exactalg::{Field, Mono, Rat, UPoly};
use rand::Rng;

use crate::error::{Error, Result};
use crate::study::{lambdas, omega_and_g};
use crate::tuple::{cross, rotation_from_quaternion, scale, Hexapod, Point, SixTuple};

/// Base `P₁ = (A₁,0,0)`, `P₂ = μ₁P₁`, `P₃ = (A₃,B₃,0)`, `P₄ = μ₃P₃`,
/// `P₅ = (A₅,B₅,C₅)`, `P₆ = μ₅P₅`; the lines `P₁P₂`, `P₃P₄`, `P₅P₆` meet at
/// the origin.
#[derive(Clone, Debug)]
pub struct LinesFamilyParams {
    pub a1: Rat,
    pub mu1: Rat,
    pub a3: Rat,
    pub b3: Rat,
    pub mu3: Rat,
    pub a5: Rat,
    pub b5: Rat,
    pub c5: Rat,
    pub mu5: Rat,
    /// `d₁² = d₂²`, `d₃² = d₄²`, `d₅² = d₆²`.
    pub legs2: [Rat; 3],
}

fn small_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rat {
    loop {
        let x: i64 = rng.gen_range(lo..=hi);
        if x != 0 {
            return Rat::from((x, rng.gen_range(1..=3i64)));
        }
    }
}

impl LinesFamilyParams {
    /// Small random rationals; `μᵢ ∉ {0, 1, −1}`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut mu = || loop {
            let m = small_rat(rng, -5, 5);
            if m != 1 && m != -1 {
                return m;
            }
        };
        let (mu1, mu3, mu5) = (mu(), mu(), mu());
        let mut c = || small_rat(rng, -6, 6);
        let (a1, a3, b3, a5, b5, c5) = (c(), c(), c(), c(), c(), c());
        let legs2 = [small_rat(rng, 1, 30), small_rat(rng, 1, 30), small_rat(rng, 1, 30)];
        LinesFamilyParams { a1, mu1, a3, b3, mu3, a5, b5, c5, mu5, legs2 }
    }
}

/// Platform swaps the points of each pair and `γ = −1`.
pub fn make_family_lines(p: &LinesFamilyParams) -> Result<Hexapod> {
    for mu in [&p.mu1, &p.mu3, &p.mu5] {
        if *mu == 1 {
            return Err(Error::Input("mu must differ from 1".into()));
        }
    }
    let z = Rat::new;
    let p1 = [p.a1.clone(), z(), z()];
    let p3 = [p.a3.clone(), p.b3.clone(), z()];
    let p5 = [p.a5.clone(), p.b5.clone(), p.c5.clone()];
    let base = vec![p1.clone(), scale(&p1, &p.mu1), p3.clone(), scale(&p3, &p.mu3), p5.clone(), scale(&p5, &p.mu5)];
    let base = SixTuple::new(base)?;
    let platform = base.permuted([1, 0, 3, 2, 5, 4])?;
    let [d1, d3, d5] = p.legs2.clone();
    Hexapod::new(base, platform, Rat::from(-1), [d1.clone(), d1, d3.clone(), d3, d5.clone(), d5])
}

/// The lines through the three point pairs all pass through the origin.
pub fn lines_concurrent(base: &SixTuple) -> bool {
    (0..3).all(|k| cross(base.get(2 * k), base.get(2 * k + 1)).iter().all(Field::is_zero))
}

/// Platform `p₁ = (a,b,c)`, `p₂ = (b,c,a)`, `p₃ = (c,a,b)`, `p₄ = (A,B,C)`,
/// `p₅ = (B,C,A)`, `p₆ = (C,A,B)`; base `(p₄, p₆, p₅, p₁, p₃, p₂)`.
#[derive(Clone, Debug)]
pub struct Order3FamilyParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub big_a: Rat,
    pub big_b: Rat,
    pub big_c: Rat,
    /// `d₁², d₂², d₃²`.
    pub legs2: [Rat; 3],
}

fn cyc(x: &Rat, y: &Rat, z: &Rat) -> Rat {
    Rat::from(x * x) + Rat::from(y * y) + Rat::from(z * z) - Rat::from(x * y) - Rat::from(x * z) - Rat::from(y * z)
}

impl Order3FamilyParams {
    /// Small random rationals, redrawn until `kK ≠ 0` and `k ≠ K`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let mut c = || small_rat(rng, -6, 6);
            let (a, b, c0, big_a, big_b, big_c) = (c(), c(), c(), c(), c(), c());
            let legs2 = [small_rat(rng, 1, 30), small_rat(rng, 1, 30), small_rat(rng, 1, 30)];
            let p = Order3FamilyParams { a, b, c: c0, big_a, big_b, big_c, legs2 };
            if p.legs().is_ok() && !p.is_congruent() {
                return p;
            }
        }
    }

    pub fn small_k(&self) -> Rat {
        cyc(&self.a, &self.b, &self.c)
    }

    pub fn big_k(&self) -> Rat {
        cyc(&self.big_a, &self.big_b, &self.big_c)
    }

    /// Base and platform are congruent when `k = K`.
    pub fn is_congruent(&self) -> bool {
        self.small_k() == self.big_k()
    }

    /// `(U, V, W)`.
    pub fn uvw(&self) -> [Rat; 3] {
        let m = |x: &Rat, y: &Rat| Rat::from(x * y);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (ca, cb, cc) = (&self.big_a, &self.big_b, &self.big_c);
        [
            m(ca, a) - m(ca, b) + m(cb, b) - m(cb, c) - m(cc, a) + m(cc, c),
            m(ca, a) - m(ca, c) - m(cb, a) + m(cb, b) - m(cc, b) + m(cc, c),
            m(ca, b) - m(ca, c) - m(cb, a) + m(cb, c) + m(cc, a) - m(cc, b),
        ]
    }

    pub fn legs(&self) -> Result<[Rat; 6]> {
        let kk = Rat::from(&self.small_k() * &self.big_k());
        if Field::is_zero(&kk) {
            return Err(Error::Input("k K = 0: degenerate order-3 parameters".into()));
        }
        let [u, v, w] = self.uvw();
        let [d1, d2, d3] = self.legs2.clone();
        let x = Rat::from(&d2 - &d1);
        let y = Rat::from(&d3 - &d1);
        let m = |p: &Rat, q: &Rat, r: &Rat| Rat::from(p * q) * r;
        let d4 = -(m(&u, &w, &x) - m(&v, &w, &y)) / &kk + &d1;
        let d5 = (m(&u, &v, &x) - m(&u, &w, &y)) / &kk + &d1;
        let d6 = (m(&v, &w, &x) + m(&u, &v, &y)) / &kk + &d1;
        Ok([d1, d2, d3, d4, d5, d6])
    }

    fn platform(&self) -> [Point; 6] {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (x, y, z) = (&self.big_a, &self.big_b, &self.big_c);
        let p = |u: &Rat, v: &Rat, w: &Rat| [u.clone(), v.clone(), w.clone()];
        [p(a, b, c), p(b, c, a), p(c, a, b), p(x, y, z), p(y, z, x), p(z, x, y)]
    }
}

/// `γ = 1`; legs `d₄², d₅², d₆²` from the closed-form relations.
pub fn make_family_order3(p: &Order3FamilyParams) -> Result<Hexapod> {
    let legs = p.legs()?;
    let pl = p.platform();
    let platform = SixTuple::new(pl.to_vec())?;
    let base = platform.permuted([3, 5, 4, 0, 2, 1])?;
    Hexapod::new(base, platform, Rat::from(1), legs)
}

fn shift(p: &Point, forward: bool) -> Point {
    if forward {
        [p[2].clone(), p[0].clone(), p[1].clone()]
    } else {
        [p[1].clone(), p[2].clone(), p[0].clone()]
    }
}

/// The coordinate shift acts as `(P₁,…,P₆) ↦ (P₂,P₃,P₁,P₅,P₆,P₄)` on the
/// base and, inverted, the same way on the platform.
pub fn order3_symmetric(hex: &Hexapod) -> bool {
    const SIGMA: [usize; 6] = [1, 2, 0, 4, 5, 3];
    (0..6).all(|i| {
        shift(hex.base.get(i), true) == *hex.base.get(SIGMA[i])
            && shift(hex.platform.get(i), false) == *hex.platform.get(SIGMA[i])
    })
}

/// The same hexapod seen from other frames: base and platform moved by
/// the rotations of quaternions `qb`, `qp` and translations `tb`, `tp`.
pub fn rigidly_moved(hex: &Hexapod, qb: &[Rat; 4], tb: &Point, qp: &[Rat; 4], tp: &Point) -> Result<Hexapod> {
    let base = hex.base.transformed(&rotation_from_quaternion(qb), tb)?;
    let platform = hex.platform.transformed(&rotation_from_quaternion(qp), tp)?;
    Hexapod::new(base, platform, hex.gamma.clone(), hex.legs2.clone())
}

/// Along `A ↦ A + τ`, the numerators `K(τ) G_k(τ)` as polynomials in `τ`.
#[derive(Clone, Debug)]
pub struct KFactorReport {
    pub tau_degree: usize,
    /// `k − K(τ)` divides every `K(τ) G_k(τ)`, `k = 1..6`.
    pub divisible: bool,
    /// At least one `G_k` is not identically zero.
    pub nontrivial: bool,
}

const TAU_POINTS: i64 = 16;

/// Exhibits the factor `k − K` of the quartics by interpolating in `τ`.
pub fn order3_k_factor(p: &Order3FamilyParams) -> Result<KFactorReport> {
    let mut samples: Vec<(Rat, Vec<BTreeMap<Mono, Rat>>)> = Vec::new();
    let mut tau = 0i64;
    while samples.len() < TAU_POINTS as usize + 1 {
        let t = Rat::from(tau);
        tau += 1;
        let mut q = p.clone();
        q.big_a = Rat::from(&q.big_a + &t);
        let Ok(hex) = make_family_order3(&q) else { continue };
        let (_, g) = omega_and_g(&lambdas(&hex)?)?;
        let kb = q.big_k();
        let coeffs = g.iter().map(|x| x.terms().map(|(m, c)| (*m, Rat::from(c * &kb))).collect()).collect();
        samples.push((t, coeffs));
    }
    let (fit, check) = samples.split_at(TAU_POINTS as usize);
    let xs: Vec<Rat> = fit.iter().map(|s| s.0.clone()).collect();
    // k − K(A + τ) = (k − K) − (2A − B − C) τ − τ²
    let lin = Rat::from(&p.big_a * 2) - &p.big_b - &p.big_c;
    let q = UPoly::new(vec![p.small_k() - p.big_k(), -lin, Rat::from(-1)]);
    let mut divisible = true;
    let mut nontrivial = false;
    let mut tau_degree = 0;
    for k in 0..6 {
        let mut monos: Vec<Mono> = samples.iter().flat_map(|s| s.1[k].keys().copied()).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let ys: Vec<Rat> = fit.iter().map(|s| s.1[k].get(&m).cloned().unwrap_or_default()).collect();
            let h = UPoly::interpolate(&xs, &ys);
            let (x, y) = (&check[0].0, check[0].1[k].get(&m).cloned().unwrap_or_default());
            if h.eval(x) != y {
                return Err(Error::Invariant("K G_k is not polynomial of the expected degree in tau".into()));
            }
            if !h.is_zero() {
                nontrivial = true;
                tau_degree = tau_degree.max(h.degree());
                divisible &= h.divrem(&q).1.is_zero();
            }
        }
    }
    Ok(KFactorReport { tau_degree, divisible, nontrivial })
}
