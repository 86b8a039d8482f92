use std::time::Instant;

use hexapod::fixtures::{tuple_a, tuple_b};
use hexapod::moebius::*;
use hexapod::{Error, SixTuple};

#[test]
fn fixture_is_birational_sextic_with_two_quadrics() {
    let m = photographic_map(&tuple_a()).unwrap();
    assert_eq!(m.class, MapClass::Birational6);
    assert_eq!(m.degree, 6);
    assert!(segre_check(&m));
    let p = quadric_pencil(&m);
    assert_eq!(p.dim(), 2);
    assert!(p.vanishes_on(&m));
}

#[test]
fn liaison_counts_agree() {
    let t = Instant::now();
    let a = photographic_map(&tuple_a()).unwrap();
    let b = photographic_map(&tuple_b()).unwrap();
    let p = quadric_pencil(&a);
    assert!(p.vanishes_on(&b));
    let r = residual_intersection_count(&a, &p).unwrap();
    println!("residual {} ({:?})", r.count, t.elapsed());
    let md = matched_directions(&tuple_a(), &tuple_b(), 256).unwrap();
    println!("matched {} distinct {} ({:?})", md.total_multiplicity, md.distinct, t.elapsed());
    for x in &md.points {
        println!("  u={} s={} m={} node={}", x.u, x.s, x.multiplicity, x.node);
    }
    assert_eq!(r.count, 14);
    assert_eq!(md.total_multiplicity, 14);
}

#[test]
fn equiform_pair_is_rejected() {
    assert!(matches!(matched_directions(&tuple_a(), &tuple_a(), 128), Err(Error::Equiform)));
}

#[test]
fn degenerate_classes() {
    let planar = SixTuple::from_ints([[0, 0, 0], [3, 1, 0], [1, 4, 0], [-2, 5, 0], [7, -3, 0], [2, 9, 0]]).unwrap();
    let m = photographic_map(&planar).unwrap();
    assert_eq!(m.class, MapClass::Planar2to1 { image_degree: 3 });
    let col = SixTuple::from_ints([[0, 0, 0], [1, 2, 3], [2, 4, 6], [-1, -2, -3], [5, 1, -2], [3, 7, 1]]).unwrap();
    let m = photographic_map(&col).unwrap();
    assert_eq!(m.class, MapClass::Birational4);
    assert!(!moebius_general_test(&col, 128).pass());
    assert!(!moebius_general_test(&planar, 128).pass());
}

#[test]
fn fixture_is_moebius_general() {
    let r = moebius_general_test(&tuple_a(), 256);
    assert!(r.pass(), "{:?}", r.failures);
}
