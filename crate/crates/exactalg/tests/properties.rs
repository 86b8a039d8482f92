use exactalg::*;
use proptest::prelude::*;

fn poly3(terms: Vec<(u32, u32, u32, i64)>) -> MPoly<Rat> {
    MPoly::from_terms(3, terms.into_iter().map(|(a, b, c, k)| (vec![a, b, c], rat(k, 1))))
}

fn arb_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly<Rat>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, 0..=max_deg, -5i64..=5), 1..=max_terms).prop_map(poly3)
}

fn arb_upoly(max_deg: usize) -> impl Strategy<Value = UPoly<Rat>> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| UPoly::new(c.into_iter().map(|x| rat(x, 1)).collect()))
}

fn arb_upoly_deg(deg: usize) -> impl Strategy<Value = UPoly<Rat>> {
    (prop::collection::vec(-9i64..=9, deg), 1i64..=9).prop_map(|(mut c, lc)| {
        c.push(lc);
        UPoly::new(c.into_iter().map(|x| rat(x, 1)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_divides_back(a in arb_poly(2, 5), b in arb_poly(2, 5)) {
        prop_assume!(!b.is_zero());
        let p = a.mul(&b);
        prop_assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn gcd_contains_planted_factor(a in arb_poly(2, 4), b in arb_poly(2, 4), g in arb_poly(1, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !g.is_zero());
        let pa = a.mul(&g);
        let pb = b.mul(&g);
        let h = mpoly_gcd(&pa, &pb);
        prop_assert!(pa.div_exact(&h).is_some());
        prop_assert!(pb.div_exact(&h).is_some());
        prop_assert!(h.div_exact(&g).is_some());
    }

    #[test]
    fn gcd_is_symmetric(a in arb_poly(2, 4), b in arb_poly(2, 4)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        prop_assert_eq!(mpoly_gcd(&a, &b), mpoly_gcd(&b, &a));
    }

    #[test]
    fn resultant_multiplicative(a1 in arb_poly(2, 3), a2 in arb_poly(2, 3), b in arb_poly(2, 3)) {
        let v = 0;
        prop_assume!(a1.degree_in(v) > 0 && a2.degree_in(v) > 0 && b.degree_in(v) > 0);
        let lhs = sylvester_resultant(&a1.mul(&a2), &b, v).unwrap();
        let rhs = sylvester_resultant(&a1, &b, v).unwrap().mul(&sylvester_resultant(&a2, &b, v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_on_common_factor(a in arb_poly(1, 3), b in arb_poly(1, 3), c in -6i64..6) {
        let t = MPoly::<Rat>::var(3, 0).sub(&MPoly::constant(3, rat(c, 1)));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let r = sylvester_resultant(&a.mul(&t), &b.mul(&t), 0).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn linear_resultant_sign(a in -50i64..50, b in -50i64..50) {
        let t = MPoly::<Rat>::var(1, 0);
        let r = sylvester_resultant(&t.sub(&MPoly::constant(1, rat(a, 1))), &t.sub(&MPoly::constant(1, rat(b, 1))), 0).unwrap();
        prop_assert_eq!(r, MPoly::constant(1, rat(b - a, 1)));
    }

    #[test]
    fn squarefree_reassembles(f in arb_upoly(4), g in arb_upoly(3)) {
        prop_assume!(f.degree() > 0 && g.degree() > 0);
        let p = f.mul(&g).mul(&g);
        let mut back = UPoly::constant(p.lc());
        for (h, m) in p.squarefree() {
            back = back.mul(&h.pow(m));
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn roots_satisfy_polynomial(f in arb_upoly(6)) {
        prop_assume!(f.degree() > 0);
        let r = roots_complex(&f, 256).unwrap();
        let total: u32 = r.roots.iter().map(|x| x.1).sum();
        prop_assert_eq!(total as usize, f.degree());
        for (z, _) in &r.roots {
            let v = eval_upoly(&f.monic(), z).abs();
            prop_assert!(v < 1e-40, "residual {}", v);
        }
    }

    #[test]
    fn reconstruct_round_trip(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000) {
        let r = rat(p, q);
        let x = Float::with_val(200, &r);
        prop_assert_eq!(rational_reconstruct(&x, &Integer::from(1_000_000)), Some(r));
    }

    #[test]
    fn exact_kernel_is_annihilated(rows in prop::collection::vec(prop::collection::vec(-4i64..4, 5), 1..5)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect());
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.cmp0().is_eq()));
        }
    }

    #[test]
    fn bareiss_matches_field_det(rows in prop::collection::vec(prop::collection::vec(-7i64..7, 4), 4)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect());
        let pm: Vec<Vec<MPoly<Rat>>> = rows.iter().map(|r| r.iter().map(|&x| MPoly::constant(1, rat(x, 1))).collect()).collect();
        prop_assert_eq!(det_bareiss(&pm).constant_term(), m.det());
    }

    // degrees past the switch to the modular algorithm
    #[test]
    fn high_degree_gcd(f in arb_upoly_deg(6), g in arb_upoly_deg(7), h in arb_upoly_deg(7)) {
        let (a, b) = (f.mul(&h), g.mul(&h));
        let d = a.gcd(&b);
        prop_assert!(d.divrem(&h).1.is_zero());
        prop_assert!(a.divrem(&d).1.is_zero() && b.divrem(&d).1.is_zero());
        let cof = f.gcd(&g);
        prop_assert_eq!(d.degree(), h.degree() + cof.degree());
    }
}

#[test]
fn gaussian_gcd() {
    let i = GaussRat::i();
    let t = MPoly::<GaussRat>::var(2, 0);
    let s = MPoly::<GaussRat>::var(2, 1);
    let g = t.sub(&s.scale(&i));
    let a = g.mul(&t.add(&s));
    let b = g.mul(&t.mul(&t).add(&MPoly::one(2)));
    assert_eq!(mpoly_gcd(&a, &b), g);
}
