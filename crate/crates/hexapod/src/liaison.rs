//! Liaison platforms and the tangency conditions at their bonds: the scaling
//! `γ` making every bond tangent (Tang₂), the linear conditions on the squared
//! legs making them second-order tangent (Tang₃), and a certificate that a
//! given hexapod passes both tests.

use exactalg::{aberth, rational_reconstruct_complex, rational_reconstruct_tol, BigComplex, CMatrix, Field, Float, Integer, Rat};

use crate::conformal::{bond_line, pseudo_spherical_c, quadric_jacobian, spherical_forms, tangent_space_at_bond, x_defining_quadrics, Bond, BondLine, H, lin_c};
use crate::error::{Error, Result};
use crate::moebius::{matched_directions, moebius_general_test, photographic_map, quadric_pencil, residual_intersection_count, MatchedDirections};
use crate::tuple::{dot, Hexapod, SixTuple};

fn tol_bits(prec: u32, bits: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -(bits as i32)))
}

/// Checks that `platform` lies on the residual intersection of the base's
/// quadric pencil with matching counts.
#[derive(Clone, Debug)]
pub struct ResidualPlatformReport {
    pub base_general: bool,
    pub on_pencil: bool,
    pub residual_count: usize,
    pub matched: usize,
}

impl ResidualPlatformReport {
    pub fn pass(&self) -> bool {
        self.base_general && self.on_pencil && self.residual_count == self.matched
    }
}

pub fn verify_residual_platform(base: &SixTuple, platform: &SixTuple, prec: u32) -> Result<ResidualPlatformReport> {
    let gen = moebius_general_test(base, prec);
    let a = photographic_map(base)?;
    let b = photographic_map(platform)?;
    let pencil = quadric_pencil(&a);
    let on_pencil = pencil.dim() == 2 && pencil.vanishes_on(&b);
    let residual_count = residual_intersection_count(&a, &pencil)?.count;
    let md = matched_directions(base, platform, prec)?;
    Ok(ResidualPlatformReport { base_general: gen.pass(), on_pencil, residual_count, matched: md.total_multiplicity })
}

/// Bond lines at all matched directions.
pub fn bond_lines(base: &SixTuple, platform: &SixTuple, md: &MatchedDirections, prec: u32) -> Result<Vec<BondLine>> {
    md.points.iter().map(|m| bond_line(base, platform, &m.u, &m.s, prec)).collect()
}

/// The 6×7 matrix of pseudo-spherical forms on the tangent space, and the
/// tangent vectors.
pub fn eta(bond: &Bond, base: &SixTuple, platform: &SixTuple) -> Result<(CMatrix, Vec<Vec<BigComplex>>)> {
    let rows = tangent_space_at_bond(bond)?;
    let m = (0..6)
        .map(|i| rows.iter().map(|t| pseudo_spherical_c(base.get(i), platform.get(i), &bond.gamma, t)).collect())
        .collect();
    Ok((CMatrix::from_rows(m, bond.prec()), rows))
}

fn cdet(mut a: Vec<Vec<BigComplex>>) -> BigComplex {
    let n = a.len();
    let prec = a[0][0].prec();
    let mut det = BigComplex::one(prec);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap()).unwrap();
        if a[p][k].is_zero() {
            return BigComplex::zero(prec);
        }
        if p != k {
            a.swap(p, k);
            det = -&det;
        }
        det = &det * &a[k][k];
        let inv = a[k][k].inv();
        for i in k + 1..n {
            let f = &a[i][k] * &inv;
            for j in k..n {
                let v = &a[i][j] - &(&a[k][j] * &f);
                a[i][j] = v;
            }
        }
    }
    det
}

/// Relative size of the last pivot of a 6×7 `η`; zero exactly when rank ≤ 5.
fn eta_defect(e: &CMatrix) -> Float {
    let tiny = Float::with_val(e.prec(), 0);
    let r = e.rank_tol(&tiny);
    let scale = e.max_abs();
    if r.rank < 6 || scale.is_zero() {
        return Float::with_val(e.prec(), 0);
    }
    Float::with_val(e.prec(), &r.pivots[5] / &scale)
}

const NODES: usize = 16;

/// Coefficients in `γ` of the seven maximal minors of `η(γ)`.
fn minor_polys(line: &BondLine, base: &SixTuple, platform: &SixTuple, prec: u32) -> Result<Vec<Vec<BigComplex>>> {
    let pi = Float::with_val(prec, -1).acos();
    let nodes: Vec<BigComplex> = (0..NODES)
        .map(|k| {
            let th = Float::with_val(prec, &pi * (2 * k) as u32) / NODES as u32;
            let (s, c) = th.sin_cos(Float::new(prec));
            BigComplex::new(c, s)
        })
        .collect();
    let mut vals = vec![Vec::with_capacity(NODES); 7];
    for z in &nodes {
        let (e, _) = eta(&line.at(z), base, platform)?;
        for (drop, v) in vals.iter_mut().enumerate() {
            let m = (0..6).map(|i| (0..7).filter(|&j| j != drop).map(|j| e.get(i, j).clone()).collect()).collect();
            v.push(cdet(m));
        }
    }
    let inv_n = Float::with_val(prec, 1) / NODES as u32;
    Ok(vals
        .iter()
        .map(|v| {
            (0..NODES)
                .map(|n| {
                    let mut acc = BigComplex::zero(prec);
                    for (k, x) in v.iter().enumerate() {
                        acc = &acc + &(x * &nodes[(NODES - (k * n) % NODES) % NODES]);
                    }
                    acc.scale(&inv_n)
                })
                .collect()
        })
        .collect())
}

fn coeff_norm(c: &[BigComplex]) -> Float {
    c.iter().fold(Float::new(c[0].prec()), |a, x| a.max(&x.abs()))
}

/// Scalings `γ` at which every bond is tangent to X.
#[derive(Clone, Debug)]
pub struct Tang2 {
    pub gammas: Vec<Rat>,
    /// Largest relative last pivot of `η(γ)` over bonds and accepted `γ`.
    pub residual: Float,
}

pub fn tang2_from_lines(lines: &[BondLine], base: &SixTuple, platform: &SixTuple, prec: u32, den_bound: &Integer) -> Result<Tang2> {
    // Some bonds keep η singular for every γ and carry no information.
    let probe = BigComplex::new(Float::with_val(prec, 0.37), Float::with_val(prec, 0.21));
    let mut line0 = None;
    for line in lines {
        if eta_defect(&eta(&line.at(&probe), base, platform)?.0) > tol_bits(prec, prec / 4) {
            line0 = Some(line);
            break;
        }
    }
    let line0 = line0.ok_or(Error::NoTang2)?;
    let polys = minor_polys(line0, base, platform, prec)?;
    let mut best = polys.iter().max_by(|a, b| coeff_norm(a).partial_cmp(&coeff_norm(b)).unwrap()).unwrap().clone();
    let cut = Float::with_val(prec, coeff_norm(&best) * tol_bits(prec, prec / 2));
    for x in best.iter_mut() {
        if x.abs() < cut {
            *x = BigComplex::zero(prec);
        }
    }
    while best.last().is_some_and(|x| x.is_zero()) {
        best.pop();
    }
    // γ = 0 collapses the platform.
    let low = best.iter().take_while(|x| x.is_zero()).count();
    if best.len() <= low + 1 {
        return Err(Error::NoTang2);
    }
    let (cands, _) = aberth(&best[low..], prec, 2000)?;
    let loose = tol_bits(prec, prec / 4);
    let mut gammas: Vec<Rat> = Vec::new();
    let mut residual = Float::with_val(prec, 0);
    'cand: for g in cands {
        for line in lines {
            if eta_defect(&eta(&line.at(&g), base, platform)?.0) > loose {
                continue 'cand;
            }
        }
        let Some(q) = rational_reconstruct_complex(&g, den_bound, &tol_bits(prec, prec / 3)) else { continue };
        if !Field::is_zero(&q.im) || Field::is_zero(&q.re) || gammas.contains(&q.re) {
            continue;
        }
        let gq = BigComplex::from_rat(prec, &q.re);
        let mut worst = Float::with_val(prec, 0);
        for line in lines {
            worst = worst.max(&eta_defect(&eta(&line.at(&gq), base, platform)?.0));
        }
        if worst > tol_bits(prec, prec / 2) {
            continue;
        }
        residual = residual.max(&worst);
        gammas.push(q.re);
    }
    if gammas.is_empty() {
        return Err(Error::NoTang2);
    }
    gammas.sort();
    Ok(Tang2 { gammas, residual })
}

pub fn tang2_solve(base: &SixTuple, platform: &SixTuple, prec: u32, den_bound: &Integer) -> Result<Tang2> {
    let md = matched_directions(base, platform, prec)?;
    tang2_from_lines(&bond_lines(base, platform, &md, prec)?, base, platform, prec, den_bound)
}

fn hdot(a: &[BigComplex], b: &[BigComplex]) -> BigComplex {
    let mut acc = BigComplex::zero(a[0].prec());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(&x.conj() * y);
    }
    acc
}

fn norm2(a: &[BigComplex]) -> Float {
    hdot(a, a).re
}

/// Direction `c1` of a tangent vector in the kernel of `η`, transversal to
/// the bond itself.
fn first_jet(e: &CMatrix, tangents: &[Vec<BigComplex>], b: &[BigComplex]) -> Result<Vec<BigComplex>> {
    let prec = e.prec();
    let ker = e.kernel();
    if ker.len() < 2 {
        return Err(Error::Numeric(format!("kernel of eta has dimension {}", ker.len())));
    }
    let bb = hdot(b, b);
    let mut best: Option<(Float, Vec<BigComplex>)> = None;
    for k in &ker {
        let mut v = vec![BigComplex::zero(prec); b.len()];
        for (c, t) in k.iter().zip(tangents) {
            for (x, y) in v.iter_mut().zip(t) {
                *x = &*x + &(c * y);
            }
        }
        let f = &hdot(b, &v) / &bb;
        let v: Vec<BigComplex> = v.iter().zip(b).map(|(x, y)| x - &(&f * y)).collect();
        let n = norm2(&v) / norm2(k);
        if best.as_ref().map_or(true, |(m, _)| n > *m) {
            best = Some((n, v));
        }
    }
    Ok(best.unwrap().1)
}

fn quadric_values(z: &[BigComplex]) -> Vec<BigComplex> {
    x_defining_quadrics().iter().map(|q| q.eval_c(z)).collect()
}

/// One complex linear condition on `(d₁², …, d₆², 1)` at a bond.
fn tang3_row(line: &BondLine, base: &SixTuple, platform: &SixTuple, gamma: &BigComplex) -> Result<(Vec<BigComplex>, Float)> {
    let prec = gamma.prec();
    let bond = line.at(gamma);
    let (e, tangents) = eta(&bond, base, platform)?;
    let b = bond.coords();
    let c1 = first_jet(&e, &tangents, &b)?;
    let j = CMatrix::from_rows(quadric_jacobian(&b), prec);
    let rhs: Vec<BigComplex> = quadric_values(&c1).iter().map(|x| -x).collect();
    let (c2, res) = j.solve(&rhs);
    let y = e.transpose().kernel();
    if y.len() != 1 {
        return Err(Error::NoTang3(format!("cokernel of eta has dimension {}", y.len())));
    }
    let y = &y[0];
    let kappa = c2[H].clone();
    let mut row: Vec<BigComplex> = y.iter().map(|yi| -&(yi * &kappa)).collect();
    let mut cst = BigComplex::zero(prec);
    for i in 0..6 {
        let p = platform.get(i);
        let pp = &BigComplex::from_rat(prec, &dot(p, p)) * &(gamma * gamma);
        let size = &pp + &BigComplex::from_rat(prec, &dot(base.get(i), base.get(i)));
        let v = &pseudo_spherical_c(base.get(i), p, gamma, &c2) + &(&kappa * &size);
        cst = &cst + &(&y[i] * &v);
    }
    row.push(cst);
    let n = coeff_norm(&row);
    let inv = BigComplex::new(Float::with_val(prec, 1) / n, Float::new(prec));
    Ok((row.iter().map(|x| x * &inv).collect(), res))
}

/// Affine relations among the squared legs: `d²[pivots[k]] = Σ_f
/// relations[k][f] d²[free[f]] + relations[k][last]`.
#[derive(Clone, Debug)]
pub struct Tang3 {
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub relations: Vec<Vec<Rat>>,
    /// Dimension of the solution space in the squared legs.
    pub dim: usize,
    /// Largest violation of the exact relations by the numeric rows.
    pub residual: Float,
    /// Largest residual of the second-order jet solves.
    pub jet_residual: Float,
}

impl Tang3 {
    /// The remaining squared legs from the free ones.
    pub fn complete(&self, free: &[Rat]) -> [Rat; 6] {
        let mut d: [Rat; 6] = Default::default();
        for (f, &i) in self.free.iter().enumerate() {
            d[i] = free[f].clone();
        }
        for (k, &p) in self.pivots.iter().enumerate() {
            let r = &self.relations[k];
            let mut v = r.last().unwrap().clone();
            for (f, x) in free.iter().enumerate() {
                v += Rat::from(&r[f] * x);
            }
            d[p] = v;
        }
        d
    }
}

const PIVOT_ORDER: [usize; 6] = [3, 4, 5, 0, 1, 2];

fn real_rows(rows: &[Vec<BigComplex>]) -> Vec<Vec<BigComplex>> {
    let prec = rows[0][0].prec();
    let z = Float::new(prec);
    rows.iter()
        .flat_map(|r| {
            [
                r.iter().map(|x| BigComplex::new(x.re.clone(), z.clone())).collect::<Vec<_>>(),
                r.iter().map(|x| BigComplex::new(x.im.clone(), z.clone())).collect(),
            ]
        })
        .collect()
}

fn columns(rows: &[Vec<BigComplex>], cols: &[usize]) -> CMatrix {
    let prec = rows[0][0].prec();
    CMatrix::from_rows(rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect(), prec)
}

/// Solves at `work_prec`, reconstructs rationals at `prec` and checks them
/// against the numeric rows.
pub fn tang3_from_lines(lines: &[BondLine], base: &SixTuple, platform: &SixTuple, gamma: &Rat, prec: u32, work_prec: u32, den_bound: &Integer) -> Result<Tang3> {
    let g = BigComplex::from_rat(work_prec, gamma);
    let mut rows = Vec::new();
    let mut jet_residual = Float::with_val(work_prec, 0);
    for line in lines {
        let (r, res) = tang3_row(&line.with_prec(work_prec), base, platform, &g)?;
        jet_residual = jet_residual.max(&res);
        rows.push(r);
    }
    if jet_residual > tol_bits(work_prec, work_prec / 3) {
        return Err(Error::NoTang3(format!("second-order jet not solvable ({})", jet_residual.to_f64())));
    }
    let rows = real_rows(&rows);
    let rank = columns(&rows, &[0, 1, 2, 3, 4, 5]).rank().rank;
    let mut pivots: Vec<usize> = Vec::new();
    for &c in &PIVOT_ORDER {
        let mut t = pivots.clone();
        t.push(c);
        if columns(&rows, &t).rank().rank == t.len() {
            pivots = t;
        }
        if pivots.len() == rank {
            break;
        }
    }
    let free: Vec<usize> = (0..6).filter(|c| !pivots.contains(c)).collect();
    let a = columns(&rows, &pivots);
    let tol = tol_bits(work_prec, prec);
    let mut rel = vec![Vec::new(); pivots.len()];
    for &f in free.iter().chain(std::iter::once(&6)) {
        let rhs: Vec<BigComplex> = rows.iter().map(|r| -&r[f]).collect();
        let (x, res) = a.solve(&rhs);
        if res > tol_bits(work_prec, work_prec / 3) {
            return Err(Error::NoTang3("inconsistent tangency conditions".into()));
        }
        for (k, xk) in x.iter().enumerate() {
            let q = rational_reconstruct_tol(&xk.re, den_bound, &tol)
                .ok_or_else(|| Error::NoTang3(format!("coefficient {} not rational within the bound", xk.re.to_f64())))?;
            rel[k].push(q);
        }
    }
    // Violation of the exact relations by every numeric row.
    let mut residual = Float::with_val(work_prec, 0);
    for r in &rows {
        let cq = |q: &Rat| BigComplex::from_rat(work_prec, q);
        let mut s = r[6].clone();
        for (k, &p) in pivots.iter().enumerate() {
            s = &s + &(&r[p] * &cq(rel[k].last().unwrap()));
        }
        residual = residual.max(&s.abs());
        for (fi, &f) in free.iter().enumerate() {
            let mut s = r[f].clone();
            for (k, &p) in pivots.iter().enumerate() {
                s = &s + &(&r[p] * &cq(&rel[k][fi]));
            }
            residual = residual.max(&s.abs());
        }
    }
    if residual > tol {
        return Err(Error::NoTang3(format!("reconstructed relations violate the rows by {}", residual.to_f64())));
    }
    Ok(Tang3 { pivots, free, relations: rel, dim: 6 - rank, residual: Float::with_val(prec, &residual), jet_residual: Float::with_val(prec, &jet_residual) })
}

pub fn tang3_solve(base: &SixTuple, platform: &SixTuple, gamma: &Rat, prec: u32, den_bound: &Integer) -> Result<Tang3> {
    let md = matched_directions(base, platform, 2 * prec)?;
    let lines = bond_lines(base, platform, &md, 2 * prec)?;
    tang3_from_lines(&lines, base, platform, gamma, prec, 2 * prec, den_bound)
}

/// Outcome of the movability test at one bond.
#[derive(Clone, Debug)]
pub struct BondCheck {
    pub eta_rank: usize,
    pub jet_residual: Float,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub bonds: Vec<BondCheck>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        !self.bonds.is_empty() && self.bonds.iter().all(|b| b.ok)
    }

    pub fn ensure(&self) -> Result<()> {
        match self.bonds.iter().position(|b| !b.ok) {
            None if self.passed() => Ok(()),
            None => Err(Error::CertificateRefused { bond: 0, reason: "no bonds".into() }),
            Some(i) => {
                let b = &self.bonds[i];
                let reason = if b.eta_rank > 5 {
                    format!("eta has rank {}", b.eta_rank)
                } else {
                    format!("second-order jet residual {:.3e}", b.jet_residual.to_f64())
                };
                Err(Error::CertificateRefused { bond: i, reason })
            }
        }
    }
}

fn check_bond(line: &BondLine, hex: &Hexapod, prec: u32) -> Result<BondCheck> {
    let g = BigComplex::from_rat(prec, &hex.gamma);
    let bond = line.at(&g);
    let (e, tangents) = eta(&bond, &hex.base, &hex.platform)?;
    let eta_rank = e.rank().rank;
    if eta_rank > 5 {
        return Ok(BondCheck { eta_rank, jet_residual: Float::with_val(prec, 1), ok: false });
    }
    let b = bond.coords();
    let c1 = first_jet(&e, &tangents, &b)?;
    let mut m = quadric_jacobian(&b);
    let mut rhs: Vec<BigComplex> = quadric_values(&c1).iter().map(|x| -x).collect();
    for s in spherical_forms(hex) {
        let c = s.coeffs();
        m.push(c.iter().map(|x| BigComplex::from_rat(prec, x)).collect());
        rhs.push(BigComplex::zero(prec));
        debug_assert!(lin_c(&c, &b).abs() < 1e-10);
    }
    let (_, res) = CMatrix::from_rows(m, prec).solve(&rhs);
    let ok = res <= tol_bits(prec, prec / 3);
    Ok(BondCheck { eta_rank, jet_residual: res, ok })
}

/// Tangency certificate of a hexapod whose platform is a liaison of its base.
pub fn movability_certificate(hex: &Hexapod, prec: u32) -> Result<Certificate> {
    let md = matched_directions(&hex.base, &hex.platform, prec)?;
    let lines = bond_lines(&hex.base, &hex.platform, &md, prec)?;
    let bonds = lines.iter().map(|l| check_bond(l, hex, prec)).collect::<Result<Vec<_>>>()?;
    Ok(Certificate { bonds })
}

/// Everything the tangency analysis of a liaison pair produces.
#[derive(Clone, Debug)]
pub struct TangencyReport {
    pub matched: usize,
    pub tang2: Tang2,
    /// Tang₃ relations for each `γ` found.
    pub tang3: Vec<(Rat, Tang3)>,
}

/// Runs Tang₂ and Tang₃ from one computation of the matched directions at
/// twice the working precision.
pub fn tangency_analysis(base: &SixTuple, platform: &SixTuple, prec: u32, den_bound: &Integer) -> Result<TangencyReport> {
    let md = matched_directions(base, platform, 2 * prec)?;
    let fine = bond_lines(base, platform, &md, 2 * prec)?;
    let coarse: Vec<BondLine> = fine.iter().map(|l| l.with_prec(prec)).collect();
    let tang2 = tang2_from_lines(&coarse, base, platform, prec, den_bound)?;
    let mut tang3 = Vec::new();
    for g in &tang2.gammas {
        tang3.push((g.clone(), tang3_from_lines(&fine, base, platform, g, prec, 2 * prec, den_bound)?));
    }
    Ok(TangencyReport { matched: md.total_multiplicity, tang2, tang3 })
}
