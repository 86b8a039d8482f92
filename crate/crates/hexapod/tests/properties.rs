use exactalg::{BigComplex, Field, MPoly, Rat};
use hexapod::conformal::*;
use hexapod::moebius::{photographic_map, segre_check, t_plane_roots, ParamPt};
use hexapod::tuple::{dot, rotation_from_quaternion, sub, Point, SixTuple};
use proptest::prelude::*;

const PREC: u32 = 200;

fn arb_point(r: i64) -> impl Strategy<Value = Point> {
    [-r..=r, -r..=r, -r..=r].prop_map(|p| p.map(Rat::from))
}

fn arb_tuple() -> impl Strategy<Value = SixTuple> {
    prop::collection::vec(arb_point(9), 6).prop_filter_map("degenerate tuple", |v| SixTuple::new(v).ok())
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| Rat::from((n, d)))
}

fn arb_quaternion() -> impl Strategy<Value = [Rat; 4]> {
    [arb_rat(), arb_rat(), arb_rat(), arb_rat()].prop_filter("zero quaternion", |q| q.iter().any(|x| !Field::is_zero(x)))
}

fn arb_param() -> impl Strategy<Value = ParamPt> {
    (-64i32..=64, -64i32..=64).prop_map(|(a, b)| ParamPt::Finite(BigComplex::from_f64(PREC, a as f64 / 16.0, b as f64 / 16.0)))
}

fn proportional(u: &[BigComplex], v: &[BigComplex]) -> bool {
    let n = |w: &[BigComplex]| w.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
    let scale = n(u) * n(v);
    (0..u.len()).all(|i| (0..u.len()).all(|j| (&(&u[i] * &v[j]) - &(&u[j] * &v[i])).abs().to_f64() <= 1e-50 * scale))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn segre_cubic_contains_the_image(t in arb_tuple()) {
        let map = photographic_map(&t).unwrap();
        prop_assert!(segre_check(&map));
    }

    #[test]
    fn photograph_commutes_with_real_structure(tup in arb_tuple(), t in arb_param()) {
        let map = photographic_map(&tup).unwrap();
        let a = map.eval(&t.sigma().with_prec(PREC), PREC);
        let b: Vec<BigComplex> = map.eval(&t, PREC).iter().map(BigComplex::conj).collect();
        prop_assert!(proportional(&a, &b));
    }

    #[test]
    fn plane_roots_are_swapped_by_sigma(tup in arb_tuple(), i in 0usize..6, j in 0usize..6) {
        prop_assume!(i != j);
        let map = photographic_map(&tup).unwrap();
        if let Ok([r0, r1]) = t_plane_roots(&map, i, j, PREC) {
            prop_assert!(r0.sigma().with_prec(PREC).dist(&r1) < 1e-40);
        }
    }

    #[test]
    fn spherical_form_is_the_leg_residual(q in arb_quaternion(), tau in arb_point(20), p in arb_point(20), bp in arb_point(20), d2 in arb_rat()) {
        let r = rotation_from_quaternion(&q);
        let z = embed_isometry(&r, &tau).unwrap().coords();
        let rp: Point = std::array::from_fn(|i| (0..3).fold(Rat::new(), |a, k| a + Rat::from(&r[i][k] * &p[k])) + &tau[i]);
        let diff = sub(&rp, &bp);
        let form = SphericalForm::new(bp, p, d2.clone());
        prop_assert_eq!(form.eval(&z), dot(&diff, &diff) - d2);
    }

    #[test]
    fn embedded_isometries_lie_on_x(q in arb_quaternion(), tau in arb_point(30)) {
        let z = embed_isometry(&rotation_from_quaternion(&q), &tau).unwrap().coords();
        for quad in x_defining_quadrics() {
            prop_assert!(Field::is_zero(&quad.eval(&z)), "{}", quad.label);
        }
    }

    #[test]
    fn boundary_points_lie_on_x(u in arb_param(), s in arb_param(), al in arb_param(), la in arb_param(), mu in arb_param(), r in arb_param()) {
        let c = |p: &ParamPt| match p { ParamPt::Finite(t) => t.clone(), ParamPt::Infinity => unreachable!() };
        let (w, v) = (u.conic_point(PREC), s.conic_point(PREC));
        let (al, la, mu) = (c(&al), c(&la), c(&mu));
        let mut z = vec![BigComplex::zero(PREC); DIM];
        for i in 0..3 {
            for j in 0..3 {
                z[m_idx(i, j)] = &al * &(&w[i] * &v[j]);
            }
            z[X0 + i] = &la * &v[i];
            z[Y0 + i] = &mu * &w[i];
        }
        z[R] = c(&r);
        for quad in x_defining_quadrics() {
            prop_assert!(quad.eval_c(&z).abs() < 1e-50, "{}", quad.label);
        }
    }
}

fn v(i: usize) -> MPoly<Rat> {
    MPoly::var(DIM, i)
}

/// At `h = 0` the quadrics are `M Mᵀ`, `Mᵀ M`, `Mᵀ y`, `M x`, `⟨x,x⟩`, `⟨y,y⟩`,
/// the cofactors of `M`, and the cross terms, which need no `h`.
#[test]
fn quadrics_reduce_to_the_boundary_system() {
    let zero = MPoly::zero(DIM);
    let m = |i: usize, j: usize| v(m_idx(i, j));
    let mut expected: Vec<MPoly<Rat>> = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            expected.push((0..3).fold(zero.clone(), |a, k| a.add(&m(i, k).mul(&m(j, k)))));
            expected.push((0..3).fold(zero.clone(), |a, k| a.add(&m(k, i).mul(&m(k, j)))));
        }
    }
    for i in 0..3 {
        expected.push((0..3).fold(zero.clone(), |a, k| a.add(&m(k, i).mul(&v(Y0 + k)))));
        expected.push((0..3).fold(zero.clone(), |a, k| a.add(&m(i, k).mul(&v(X0 + k)))));
    }
    expected.push((0..3).fold(zero.clone(), |a, k| a.sub(&v(X0 + k).pow(2))));
    expected.push((0..3).fold(zero.clone(), |a, k| a.sub(&v(Y0 + k).pow(2))));
    let quads = x_defining_quadrics();
    let restricted: Vec<MPoly<Rat>> = quads.iter().map(|q| q.poly.subst(H, &Rat::new())).collect();
    for e in &expected {
        assert!(restricted.iter().any(|r| r == e || *r == e.neg()), "missing {e}");
    }
    for (q, r) in quads.iter().zip(&restricted) {
        assert!(!r.support_vars().contains(&H));
        if q.poly.degree_in(H) > 0 && !q.label.starts_with("cof") {
            assert!(expected.iter().any(|e| e == r || *e == r.neg()), "{}", q.label);
        }
    }
}
