use std::time::Instant;

use exactalg::{BigComplex, CMatrix, Integer, Rat};
use hexapod::conformal::*;
use hexapod::fixtures::{hexapod_generic, hexapod_special, leg_relations, tuple_a, tuple_b};
use hexapod::liaison::*;
use hexapod::moebius::matched_directions;

fn bound() -> Integer {
    Integer::from(10u64.pow(12))
}

#[test]
fn bonds_lie_on_x_with_full_tangent_space() {
    let (a, b) = (tuple_a(), tuple_b());
    let md = matched_directions(&a, &b, 256).unwrap();
    let one = BigComplex::one(256);
    for line in bond_lines(&a, &b, &md, 256).unwrap() {
        let bond = line.at(&one);
        let z = bond.coords();
        assert!(bond.pseudo_residual(&a, &b) < 1e-60);
        for q in x_defining_quadrics() {
            assert!(q.eval_c(&z).abs() < 1e-60, "{}", q.label);
        }
        let t = tangent_space_at_bond(&bond).unwrap();
        assert_eq!(CMatrix::from_rows(t.clone(), 256).rank().rank, 7);
        for q in x_defining_quadrics() {
            let g = q.gradient_c(&z);
            for row in &t {
                let mut s = BigComplex::zero(256);
                for (x, y) in g.iter().zip(row) {
                    s = &s + &(x * y);
                }
                assert!(s.abs() < 1e-60, "{}", q.label);
            }
        }
    }
}

#[test]
fn residual_platform_is_verified() {
    let r = verify_residual_platform(&tuple_a(), &tuple_b(), 256).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(r.matched, 14);
}

#[test]
fn tangency_of_the_fixture() {
    let t = Instant::now();
    let rep = tangency_analysis(&tuple_a(), &tuple_b(), 256, &bound()).unwrap();
    println!("tang2 {:?} residual {:e} ({:?})", rep.tang2.gammas, rep.tang2.residual.to_f64(), t.elapsed());
    assert_eq!(rep.tang2.gammas, vec![Rat::from(1)]);
    assert!(rep.tang2.residual < exactalg::Float::with_val(64, exactalg::Float::i_exp(1, -100)));
    let (_, t3) = &rep.tang3[0];
    println!("tang3 pivots {:?} dim {} {:?}", t3.pivots, t3.dim, t3.relations);
    assert_eq!(t3.dim, 3);
    assert_eq!(t3.pivots, vec![3, 4, 5]);
    let fix = leg_relations();
    for k in 0..3 {
        assert_eq!(t3.relations[k], fix[k].to_vec());
    }
}

#[test]
fn certificates() {
    let c = movability_certificate(&hexapod_special(), 256).unwrap();
    assert!(c.passed());
    assert!(movability_certificate(&hexapod_generic(), 256).unwrap().passed());
    let mut bad = hexapod_special();
    bad.legs2[5] += Rat::from(1);
    let c = movability_certificate(&bad, 256).unwrap();
    assert!(!c.passed());
    assert!(c.ensure().is_err());
}
