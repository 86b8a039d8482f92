use std::time::Instant;

use exactalg::Rat;
use hexapod::fixtures::{hexapod_generic, hexapod_special};
use hexapod::study::*;

#[test]
fn special_legs_pipeline() {
    let t = Instant::now();
    let hex = hexapod_special();
    let (lams, g, cubic) = quartics(&hex).unwrap();
    println!("quartics {:?}", t.elapsed());
    assert!(alternating_sum(&g).is_zero());
    assert!(g.iter().all(|x| x.total_degree() == 4));
    assert_eq!(cubic.s.total_degree(), 3);
    assert_eq!(cubic.s.degree_in(0), 1);
    println!("S terms {} vertex {:?}", cubic.s.num_terms(), cubic.vertex);
    let octics: Vec<Octic> = DEFAULT_PAIRS.iter().map(|&(m, n)| e_octic(&lams, m, n).unwrap()).collect();
    for o in &octics {
        println!("E{}{} deg {} e0 {} removed {}", o.m, o.n, o.e.total_degree(), o.e.degree_in(0), o.removed_n);
    }
    println!("octics {:?}", t.elapsed());
    let (f, j) = motion_gcd(&cubic.s, &octics).unwrap();
    println!("F degs {:?} J deg {} ({:?})", f.iter().map(|x| x.total_degree()).collect::<Vec<_>>(), j.total_degree(), t.elapsed());
    assert_eq!(j.total_degree(), 10);
    let curve = MotionCurve { lambdas: lams, g, cubic, octics, f, j };
    let s = sample_motion(&curve, &hex, Chart::E3, 200, 256).unwrap();
    println!("poses {} rejected {} worst {:e} ({:?})", s.poses.len(), s.rejected, s.max_residual.to_f64(), t.elapsed());
    assert!(s.poses.len() >= 200);
    let gen = hexapod_generic();
    let obs = observation_checks(&hex, &curve.cubic, Some(&gen.legs2)).unwrap();
    println!("{obs:?}");
    assert!(obs.pass());
}

#[test]
fn generic_legs_give_degree_twelve() {
    let t = Instant::now();
    let c = motion_curve(&hexapod_generic(), &DEFAULT_PAIRS).unwrap();
    println!("S e0-degree {} F degs {:?} J deg {} ({:?})", c.cubic.s.degree_in(0), c.f.iter().map(|x| x.total_degree()).collect::<Vec<_>>(), c.j_degree(), t.elapsed());
    assert_eq!(c.j_degree(), 12);
    let _ = Rat::new();
}
