use exactalg::{Integer, Rat};
use hexapod::families::*;
use hexapod::liaison::{movability_certificate, tang2_solve, tang3_solve};
use hexapod::moebius::moebius_general_test;
use hexapod::study::{e, motion_curve, quartics, DEFAULT_PAIRS};
use hexapod::Hexapod;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PREC: u32 = 256;

fn bound() -> Integer {
    Integer::from(10u64.pow(12))
}

fn usable(hex: &Hexapod) -> bool {
    moebius_general_test(&hex.base, PREC).pass() && moebius_general_test(&hex.platform, PREC).pass()
}

fn check_movable(hex: &Hexapod, gamma: i64) {
    let (_, _, cubic) = quartics(hex).unwrap();
    assert_eq!(cubic.s.total_degree(), 3);
    let tg = tang2_solve(&hex.base, &hex.platform, PREC, &bound()).unwrap();
    assert_eq!(tg.gammas, vec![Rat::from(gamma)]);
    assert!(movability_certificate(hex, PREC).unwrap().passed());
    assert!(motion_curve(hex, &DEFAULT_PAIRS).unwrap().j_degree() > 0);
}

#[test]
fn lines_family_instances_are_movable() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 2 {
        let p = LinesFamilyParams::random(&mut rng);
        let hex = make_family_lines(&p).unwrap();
        assert!(lines_concurrent(&hex.base));
        if !usable(&hex) {
            continue;
        }
        check_movable(&hex, -1);
        done += 1;
    }
}

#[test]
fn order3_family_instances_are_movable() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 2 {
        let p = Order3FamilyParams::random(&mut rng);
        let hex = make_family_order3(&p).unwrap();
        assert!(order3_symmetric(&hex));
        if !usable(&hex) {
            continue;
        }
        let k = order3_k_factor(&p).unwrap();
        assert!(k.nontrivial && k.divisible);
        check_movable(&hex, 1);
        let t3 = tang3_solve(&hex.base, &hex.platform, &Rat::from(1), PREC, &bound()).unwrap();
        assert_eq!(t3.dim, 3);
        let free: Vec<Rat> = t3.free.iter().map(|&i| hex.legs2[i].clone()).collect();
        assert_eq!(t3.complete(&free), hex.legs2);
        done += 1;
    }
}

#[test]
fn lines_family_legs_come_in_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let hex = make_family_lines(&LinesFamilyParams::random(&mut rng)).unwrap();
    let t3 = tang3_solve(&hex.base, &hex.platform, &Rat::from(-1), PREC, &bound()).unwrap();
    assert_eq!(t3.dim, 3);
    let free: Vec<Rat> = t3.free.iter().map(|&i| hex.legs2[i].clone()).collect();
    assert_eq!(t3.complete(&free), hex.legs2);
}

#[test]
fn cubic_splits_into_three_planes() {
    let q = |n: i64, d: i64| Rat::from((n, d));
    let p = LinesFamilyParams {
        a1: q(2, 1),
        mu1: q(-1, 1),
        a3: q(0, 1),
        b3: q(2, 1),
        mu3: q(-1, 1),
        a5: q(1, 1),
        b5: q(3, 2),
        c5: q(5, 3),
        mu5: q(3, 1),
        legs2: [q(7, 1), q(7, 1), q(11, 1)],
    };
    let hex = make_family_lines(&p).unwrap();
    let (_, _, cubic) = quartics(&hex).unwrap();
    let planes = [
        &e(1) - &e(2),
        &e(1) + &e(2),
        &(&e(1).scale(&p.a5) + &e(2).scale(&p.b5)) + &e(3).scale(&p.c5),
    ];
    let mut rest = cubic.s.clone();
    for l in &planes {
        rest = rest.div_exact(l).expect("plane factor");
    }
    assert_eq!(rest.total_degree(), 0);
    assert!(!rest.is_zero());
}

#[test]
fn moved_frames_keep_the_liaison() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let p = Order3FamilyParams::random(&mut rng);
    let hex = make_family_order3(&p).unwrap();
    let q = |a: i64, b: i64, c: i64, d: i64| [a, b, c, d].map(Rat::from);
    let t = |a: i64, b: i64, c: i64| [a, b, c].map(Rat::from);
    let moved = rigidly_moved(&hex, &q(1, 2, -1, 3), &t(1, -2, 5), &q(2, 0, 1, -1), &t(-3, 1, 2)).unwrap();
    assert!(!order3_symmetric(&moved));
    let tg = tang2_solve(&moved.base, &moved.platform, PREC, &bound()).unwrap();
    assert_eq!(tg.gammas, vec![Rat::from(1)]);
    let (_, _, cubic) = quartics(&moved).unwrap();
    assert_eq!(cubic.s.total_degree(), 3);
}

#[test]
fn degenerate_order3_parameters() {
    let one = Rat::from(1);
    let p = Order3FamilyParams {
        a: one.clone(),
        b: one.clone(),
        c: one.clone(),
        big_a: Rat::from(1),
        big_b: Rat::from(2),
        big_c: Rat::from(4),
        legs2: [Rat::from(3), Rat::from(4), Rat::from(5)],
    };
    assert!(make_family_order3(&p).is_err());
    let c = Order3FamilyParams { big_a: Rat::from(3), big_b: Rat::from(2), big_c: Rat::from(1), a: Rat::from(1), b: Rat::from(2), c: Rat::from(3), ..p };
    assert!(c.is_congruent());
}

#[test]
fn lines_family_rejects_unit_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut p = LinesFamilyParams::random(&mut rng);
    p.mu3 = Rat::from(1);
    assert!(make_family_lines(&p).is_err());
}
