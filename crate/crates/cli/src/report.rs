use std::path::Path;

use exactalg::{Float, Rat};
use hexapod::families::*;
use hexapod::liaison::{movability_certificate, tang2_solve, tang3_solve, verify_residual_platform};
use hexapod::moebius::{moebius_general_test, photographic_map, quadric_pencil};
use hexapod::study::{auto_chart, motion_curve, observation_checks, sample_motion, write_csv, Chart};
use hexapod::{Error, Hexapod, SixTuple};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{HexapodJson, Input};
use crate::{FamilyKind, Opts};

const MIN_LIAISON_PRECISION: u32 = 128;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::BadIndex(..) | Error::Alg(_) | Error::Io(_) | Error::Csv(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

pub struct Outcome {
    pub command: &'static str,
    pub pass: bool,
    pub report: Value,
    pub files: Vec<(String, Vec<u8>)>,
}

impl Outcome {
    fn new(command: &'static str, pass: bool, report: Value) -> Self {
        Outcome { command, pass, report, files: Vec::new() }
    }

    pub fn emit(&self, out: Option<&Path>) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(&json!({
            "command": self.command,
            "pass": self.pass,
            "report": self.report,
        }))?;
        println!("{text}");
        if let Some(dir) = out {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{}.json", self.command)), format!("{text}\n"))?;
            for (name, bytes) in &self.files {
                std::fs::write(dir.join(name), bytes)?;
            }
        }
        Ok(())
    }
}

type Res = Result<Outcome, Failure>;

fn sci(x: &Float) -> String {
    format!("{:.3e}", x.to_f64())
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

fn liaison_prec(o: &Opts) -> Result<u32, Failure> {
    if o.precision < MIN_LIAISON_PRECISION {
        return Err(Failure::input(format!("--precision must be at least {MIN_LIAISON_PRECISION}")));
    }
    Ok(o.precision)
}

fn platform(inp: &Input) -> Result<&SixTuple, Failure> {
    inp.platform.as_ref().ok_or_else(|| Failure::input("this command needs a platform"))
}

fn input_legs(inp: &Input) -> Result<[Rat; 6], Failure> {
    inp.legs2.clone().ok_or_else(|| Failure::input("this command needs legs_squared"))
}

/// `γ` from the input, else the unique Tang₂ value.
fn gamma_of(inp: &Input, o: &Opts) -> Result<Rat, Failure> {
    if let Some(g) = &inp.gamma {
        return Ok(g.clone());
    }
    let t = tang2_solve(&inp.base, platform(inp)?, liaison_prec(o)?, &o.den_bound().map_err(Failure::input)?)?;
    match t.gammas.as_slice() {
        [g] => Ok(g.clone()),
        gs => Err(Failure { code: 2, message: format!("gamma is not unique: {gs:?}; give it in the input") }),
    }
}

fn hexapod(inp: &Input, o: &Opts) -> Result<Hexapod, Failure> {
    let g = gamma_of(inp, o)?;
    Ok(Hexapod::new(inp.base.clone(), platform(inp)?.clone(), g, input_legs(inp)?)?)
}

pub fn moebius(inp: &Input, o: &Opts) -> Res {
    let map = photographic_map(&inp.base)?;
    let pencil = quadric_pencil(&map);
    let gen = moebius_general_test(&inp.base, liaison_prec(o)?);
    let report = json!({
        "class": format!("{:?}", map.class),
        "map_degree": map.degree,
        "image_degree": map.image_degree(),
        "segre": hexapod::moebius::segre_check(&map),
        "pencil_dim": pencil.dim(),
        "pencil": pencil.quadrics.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "moebius_general": gen.pass(),
        "injective": gen.injective,
        "immersive": gen.immersive,
        "residual_count": gen.residual_count,
        "failures": gen.failures,
    });
    Ok(Outcome::new("moebius", gen.pass(), report))
}

pub fn verify(inp: &Input, o: &Opts) -> Res {
    let r = verify_residual_platform(&inp.base, platform(inp)?, liaison_prec(o)?)?;
    let report = json!({
        "base_moebius_general": r.base_general,
        "platform_on_pencil": r.on_pencil,
        "residual_count": r.residual_count,
        "matched_directions": r.matched,
    });
    Ok(Outcome::new("verify", r.pass(), report))
}

pub fn gamma(inp: &Input, o: &Opts) -> Res {
    let bound = o.den_bound().map_err(Failure::input)?;
    match tang2_solve(&inp.base, platform(inp)?, liaison_prec(o)?, &bound) {
        Ok(t) => Ok(Outcome::new("gamma", true, json!({ "gammas": rats(&t.gammas), "residual": sci(&t.residual) }))),
        Err(Error::NoTang2) => Ok(Outcome::new("gamma", false, json!({ "gammas": [], "residual": null }))),
        Err(e) => Err(e.into()),
    }
}

fn leg_name(i: usize) -> String {
    format!("d{}^2", i + 1)
}

fn legs_value(inp: &Input, o: &Opts) -> Result<(bool, Value), Failure> {
    let g = gamma_of(inp, o)?;
    let t = match tang3_solve(&inp.base, platform(inp)?, &g, liaison_prec(o)?, &o.den_bound().map_err(Failure::input)?) {
        Ok(t) => t,
        Err(Error::NoTang3(why)) => return Ok((false, json!({ "gamma": g.to_string(), "error": why }))),
        Err(e) => return Err(e.into()),
    };
    let relations: Vec<Value> = t
        .pivots
        .iter()
        .zip(&t.relations)
        .map(|(&p, r)| {
            let mut terms: Vec<Value> = t.free.iter().zip(r).map(|(&f, c)| json!([leg_name(f), c.to_string()])).collect();
            terms.push(json!(["1", r.last().unwrap().to_string()]));
            json!({ "leg": leg_name(p), "terms": terms })
        })
        .collect();
    let member = inp.legs2.as_ref().map(|d| {
        let free: Vec<Rat> = t.free.iter().map(|&i| d[i].clone()).collect();
        t.complete(&free) == *d
    });
    let report = json!({
        "gamma": g.to_string(),
        "dimension": t.dim,
        "free": t.free.iter().map(|&i| leg_name(i)).collect::<Vec<_>>(),
        "relations": relations,
        "residual": sci(&t.residual),
        "jet_residual": sci(&t.jet_residual),
        "input_legs_satisfy": member,
    });
    Ok((member != Some(false), report))
}

pub fn legs(inp: &Input, o: &Opts) -> Res {
    let (pass, report) = legs_value(inp, o)?;
    Ok(Outcome::new("legs", pass, report))
}

fn certify_value(hex: &Hexapod, o: &Opts) -> Result<(bool, Value), Failure> {
    let c = movability_certificate(hex, liaison_prec(o)?)?;
    let bonds: Vec<Value> =
        c.bonds.iter().map(|b| json!({ "eta_rank": b.eta_rank, "jet_residual": sci(&b.jet_residual), "ok": b.ok })).collect();
    Ok((c.passed(), json!({ "gamma": hex.gamma.to_string(), "bonds": bonds })))
}

pub fn certify(inp: &Input, o: &Opts) -> Res {
    let (pass, report) = certify_value(&hexapod(inp, o)?, o)?;
    Ok(Outcome::new("certify", pass, report))
}

fn motion_value(hex: &Hexapod, o: &Opts) -> Result<(bool, Value, Vec<u8>), Failure> {
    let curve = motion_curve(hex, &o.pairs().map_err(Failure::input)?)?;
    let chart = match o.chart.as_str() {
        "auto" => auto_chart(&curve.j, Chart::E3),
        c => c.parse::<Chart>()?,
    };
    let s = sample_motion(&curve, hex, chart, o.slices, o.precision)?;
    let mut csv = Vec::new();
    write_csv(&mut csv, &s.poses, hex, 30)?;
    let obs = observation_checks(hex, &curve.cubic, None)?;
    let octics: Vec<Value> = curve
        .octics
        .iter()
        .map(|e| json!({ "m": e.m, "n": e.n, "degree": e.e.total_degree(), "degree_e0": e.e.degree_in(0), "removed_n": e.removed_n }))
        .collect();
    let report = json!({
        "alternating_sum_zero": hexapod::study::alternating_sum(&curve.g).is_zero(),
        "cubic": {
            "degree": curve.cubic.s.total_degree(),
            "degree_e0": curve.cubic.s.degree_in(0),
            "terms": curve.cubic.s.num_terms(),
            "vertex": curve.cubic.vertex.as_ref().map(|v| rats(v)),
        },
        "octics": octics,
        "resultant_degrees": curve.f.iter().map(|f| f.total_degree()).collect::<Vec<_>>(),
        "j_degree": curve.j_degree(),
        "chart": format!("{chart:?}"),
        "poses": s.poses.len(),
        "rejected": s.rejected,
        "max_leg_residual": sci(&s.max_residual),
        "observations": {
            "vertex": obs.vertex.as_ref().map(|v| rats(v)),
            "bundle": obs.bundle,
            "difference_rank": obs.difference_rank,
            "projectivity": obs.projectivity,
        },
    });
    let pass = curve.j_degree() > 0 && !s.poses.is_empty();
    Ok((pass, report, csv))
}

pub fn motion(inp: &Input, o: &Opts) -> Res {
    let (pass, report, csv) = motion_value(&hexapod(inp, o)?, o)?;
    let mut out = Outcome::new("motion", pass, report);
    out.files.push(("trajectory.csv".into(), csv));
    Ok(out)
}

pub fn all(inp: &Input, o: &Opts) -> Res {
    let m = moebius(inp, o)?;
    let v = verify(inp, o)?;
    let g = gamma(inp, o)?;
    let mut pass = m.pass && v.pass && g.pass;
    let mut report = json!({ "moebius": m.report, "verify": v.report, "gamma": g.report });
    let mut files = Vec::new();
    if g.pass || inp.gamma.is_some() {
        let (lp, lr) = legs_value(inp, o)?;
        pass &= lp;
        report["legs"] = lr;
    }
    if inp.legs2.is_some() && (g.pass || inp.gamma.is_some()) {
        let hex = hexapod(inp, o)?;
        let (cp, cr) = certify_value(&hex, o)?;
        let (mp, mr, csv) = motion_value(&hex, o)?;
        pass &= cp && mp;
        report["certify"] = cr;
        report["motion"] = mr;
        files.push(("trajectory.csv".to_string(), csv));
    }
    Ok(Outcome { command: "all", pass, report, files })
}

pub fn family(kind: FamilyKind, seed: u64, check: bool, o: &Opts) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (hex, mut report) = match kind {
        FamilyKind::Lines => {
            let p = LinesFamilyParams::random(&mut rng);
            let hex = make_family_lines(&p)?;
            let c = lines_concurrent(&hex.base);
            (hex, json!({ "family": "lines", "concurrent": c }))
        }
        FamilyKind::Order3 => {
            let p = Order3FamilyParams::random(&mut rng);
            let hex = make_family_order3(&p)?;
            let mut r = json!({
                "family": "order3",
                "symmetric": order3_symmetric(&hex),
                "k": p.small_k().to_string(),
                "big_k": p.big_k().to_string(),
                "congruent": p.is_congruent(),
            });
            if check {
                let k = order3_k_factor(&p)?;
                r["k_minus_big_k_divides"] = json!(k.divisible && k.nontrivial);
            }
            (hex, r)
        }
    };
    let hj = HexapodJson::new(&hex.base, Some(&hex.platform), Some(&hex.gamma), Some(&hex.legs2));
    report["seed"] = json!(seed);
    report["hexapod"] = serde_json::to_value(&hj).expect("serializable");
    let mut pass = true;
    if check {
        let bound = o.den_bound().map_err(Failure::input)?;
        let prec = liaison_prec(o)?;
        let t = tang2_solve(&hex.base, &hex.platform, prec, &bound);
        let gammas = t.as_ref().map(|t| rats(&t.gammas)).unwrap_or_default();
        let (cert, _) = certify_value(&hex, o)?;
        let curve = motion_curve(&hex, &o.pairs().map_err(Failure::input)?)?;
        pass = gammas == [hex.gamma.to_string()] && cert && curve.cubic.s.total_degree() == 3 && curve.j_degree() > 0;
        if let Some(d) = report.get("k_minus_big_k_divides") {
            pass &= d == true;
        }
        report["check"] = json!({
            "gammas": gammas,
            "certificate": cert,
            "cubic_degree": curve.cubic.s.total_degree(),
            "j_degree": curve.j_degree(),
        });
    }
    let mut out = Outcome::new("family", pass, report);
    out.files.push(("hexapod.json".into(), format!("{}\n", serde_json::to_string_pretty(&hj).unwrap()).into_bytes()));
    Ok(out)
}
