use kcone::cohomology::{coho_affine_to_projective, coho_projective_to_affine, QMPoly};
use kcone::cones::{cone_chi_y, projective_cone_mc, projective_cone_mc0};
use kcone::equivariant::{projective_to_affine_full, AffineEquivariantClass};
use kcone::hilbert::{
    count_standard_monomials, hilbert_series_coefficients, kpoly_from_monomial_ideal,
    sheaf_class_from_kpoly, HilbertPolynomial, KPolynomial, MonomialIdeal,
};
use kcone::projective::{
    complete_intersection_class, degree_codim, genus_report, integral, linear_inclusion_pushforward,
    mc_smooth_hypersurface, union_additive_pushforward,
};
use kcone::{
    laurent_reduce, laurent_reduce_with_quotient, Basis, Character, Exactness, Exponent,
    LaurentExpr, ScalarEmbedding, TorusAction, TruncatedClass, YPoly, YRational,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn y_coeff() -> impl Strategy<Value = YRational> {
    prop::collection::vec(-3i64..=3, 0..3).prop_map(|c| YRational::from_poly(YPoly::from_i64s(&c)))
}

fn class_at(n: usize) -> impl Strategy<Value = TruncatedClass> {
    prop::collection::vec(y_coeff(), n + 1).prop_map(move |c| TruncatedClass::from_h_coeffs(n, c))
}

fn triple() -> impl Strategy<Value = (TruncatedClass, TruncatedClass, TruncatedClass)> {
    (0usize..=4).prop_flat_map(|n| (class_at(n), class_at(n), class_at(n)))
}

fn int_class() -> impl Strategy<Value = TruncatedClass> {
    (0usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n + 1).prop_map(move |c| TruncatedClass::from_h_ints(n, &c))
    })
}

fn action() -> impl Strategy<Value = TorusAction> {
    (1usize..=2, 0usize..=2).prop_flat_map(|(rank, n)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, rank), n + 1)
            .prop_map(move |cs| TorusAction::new(rank, cs.into_iter().map(Character).collect(), None).unwrap())
    })
}

fn laurent(rank: usize) -> impl Strategy<Value = LaurentExpr> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, rank), -2i64..=3, -3i64..=3), 0..5).prop_map(
        move |terms| {
            LaurentExpr::from_terms(
                rank,
                terms
                    .into_iter()
                    .map(|(a, t, c)| (Exponent::with_int_t(a, t), YRational::from_int(c))),
            )
            .unwrap()
        },
    )
}

fn action_and_two() -> impl Strategy<Value = (TorusAction, LaurentExpr, LaurentExpr)> {
    action().prop_flat_map(|a| {
        let r = a.rank();
        (Just(a), laurent(r), laurent(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &TruncatedClass::one(a.n()), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn nilpotent_hyperplane(n in 0usize..=6) {
        let h = TruncatedClass::h_power(n, 1);
        prop_assert!(h.pow(n as u32 + 1).is_zero());
        prop_assert!(!h.pow(n as u32).is_zero());
    }

    #[test]
    fn basis_round_trip(c in int_class()) {
        for basis in [Basis::H, Basis::T] {
            let back = TruncatedClass::from_basis(c.n(), basis, c.coeffs_in(basis)).unwrap();
            prop_assert_eq!(&back, &c);
        }
        if !c.is_zero() {
            let via_t = TruncatedClass::from_t_coeffs(c.n(), &c.t_coeffs());
            prop_assert_eq!(degree_codim(&via_t).unwrap(), degree_codim(&c).unwrap());
        }
    }

    #[test]
    fn exact_division_by_y_polynomials(x in int_class(), d in prop::sample::select(vec![vec![1i64, 1], vec![2, -1], vec![0, 1], vec![1, 0, 1]])) {
        let d = YPoly::from_i64s(&d);
        let prod = x.scale(&YRational::from_poly(d.clone()));
        prop_assert_eq!(prod.divide_exact_y(&d, Exactness::Polynomial).unwrap(), x);
    }

    #[test]
    fn reduction_is_modulo_the_relation((a, p, g) in action_and_two()) {
        let with_relation = &p + &(&g * &a.relation());
        prop_assert_eq!(laurent_reduce(&with_relation, &a).unwrap(), laurent_reduce(&p, &a).unwrap());
        let red = laurent_reduce_with_quotient(&p, &a).unwrap();
        prop_assert_eq!(&(red.reduced.terms() + &(&red.quotient * &a.relation())), &p);
        prop_assert_eq!(laurent_reduce(red.reduced.terms(), &a).unwrap(), red.reduced.clone());
    }

    #[test]
    fn reduction_is_linear((a, p, q) in action_and_two()) {
        let lhs = laurent_reduce(&(&p + &q), &a).unwrap();
        let rhs = laurent_reduce(&p, &a).unwrap().try_add(&laurent_reduce(&q, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_transfer_is_additive((a, p, q) in action_and_two(), c1 in -3i64..=3, c2 in -3i64..=3) {
        let (mp, mq) = (laurent_reduce(&p, &a).unwrap(), laurent_reduce(&q, &a).unwrap());
        let (x1, x2) = (YRational::from_int(c1), YRational::from_int(c2));
        let sum = projective_to_affine_full(&mp.try_add(&mq).unwrap(), &(&x1 + &x2)).unwrap();
        let parts = projective_to_affine_full(&mp, &x1).unwrap()
            .try_add(&projective_to_affine_full(&mq, &x2).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn embedding_independence(c in class_at(2), extra in 0usize..=3) {
        let pushed = linear_inclusion_pushforward(&c, 2 + extra).unwrap();
        prop_assert_eq!(integral(&pushed), integral(&c));
    }

    #[test]
    fn union_sum_rule(parts in (0usize..=3).prop_flat_map(|n| prop::collection::vec(class_at(n), 1..4))) {
        let total = parts.iter().fold(YRational::zero(), |acc, c| &acc + &integral(c));
        prop_assert_eq!(integral(&union_additive_pushforward(&parts).unwrap()), total);
    }

    #[test]
    fn cone_genus_and_slice(c in (0usize..=3).prop_flat_map(class_at)) {
        let cone = projective_cone_mc(&c);
        prop_assert_eq!(integral(&cone.cone_class), cone_chi_y(&integral(&c)));
        if let (Ok(slice), Ok(rep)) = (c.at_y_zero(), genus_report(&c, c.n())) {
            prop_assert_eq!(cone.cone_class.at_y_zero().unwrap(), projective_cone_mc0(&slice, &rep.todd));
        }
    }

    #[test]
    fn hypersurface_slices(d in 1u32..=6, n in 1usize..=6) {
        let mc = mc_smooth_hypersurface(d, n).unwrap();
        prop_assert_eq!(mc.at_y_zero().unwrap(), complete_intersection_class(&[d], n).unwrap());
    }

    #[test]
    fn cohomology_round_trip(cs in prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 0..5), n in 2usize..=4) {
        let action = TorusAction::new(
            2,
            (0..=n).map(|i| Character(vec![1, i as i64 - 1])).collect(),
            Some(ScalarEmbedding { weights: vec![1, 0], q: 1 }),
        ).unwrap();
        let text = cs.iter().map(|(e1, e2, c)| format!("({c})*a1^{e1}*a2^{e2}")).collect::<Vec<_>>().join(" + ");
        let p = if text.is_empty() { QMPoly::zero(2) } else { QMPoly::parse(&text, 2).unwrap() };
        let x_class = coho_affine_to_projective(&p, &action).unwrap();
        prop_assert_eq!(coho_projective_to_affine(&x_class), p);
    }

    #[test]
    fn hilbert_series_matches_counting(
        vars in 1usize..=6,
        gens in prop::collection::vec(prop::collection::vec(0u32..=3, 6), 0..=8),
    ) {
        let gens: Vec<Vec<u32>> = gens.into_iter().map(|g| g[..vars].to_vec()).collect();
        let ideal = MonomialIdeal::new(vars, gens).unwrap();
        let k = kpoly_from_monomial_ideal(&ideal).unwrap();
        let counts: Vec<BigInt> = count_standard_monomials(&ideal, 12).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(hilbert_series_coefficients(&k, 12), counts);
    }

    #[test]
    fn relation_multiples_change_finitely_many_terms(
        k in (0usize..=3).prop_flat_map(|n| prop::collection::vec(-3i64..=3, 1..6).prop_map(move |c| KPolynomial::from_i64s(n, &c))),
        g in prop::collection::vec(-2i64..=2, 1..4),
    ) {
        let shifted = k.add_relation_multiple(&g);
        prop_assert_eq!(sheaf_class_from_kpoly(&shifted), sheaf_class_from_kpoly(&k));
        let depth = 20;
        let (a, b) = (hilbert_series_coefficients(&k, depth), hilbert_series_coefficients(&shifted, depth));
        let changed = a.iter().zip(&b).filter(|(x, y)| x != y).count();
        prop_assert!(changed <= g.len() - 1 + k.n() + 1);
    }

    #[test]
    fn hilbert_polynomial_eventually_agrees(
        k in (0usize..=3).prop_flat_map(|n| prop::collection::vec(-3i64..=3, 1..6).prop_map(move |c| KPolynomial::from_i64s(n, &c))),
    ) {
        let hp = HilbertPolynomial::from_class(&sheaf_class_from_kpoly(&k)).unwrap();
        let start = k.degree().unwrap_or(0);
        let series = hilbert_series_coefficients(&k, start + 8);
        for (j, h) in series.iter().enumerate().skip(start) {
            prop_assert_eq!(hp.eval(j as i64), BigRational::from_integer(h.clone()));
        }
    }

    #[test]
    fn torus_only_classes_have_no_t(a in action(), c in -3i64..=3) {
        let e = &LaurentExpr::t_power(a.rank(), 1).scale(&YRational::from_int(c));
        let r = AffineEquivariantClass::torus_only(&a, e.clone());
        prop_assert_eq!(r.is_ok(), c == 0);
    }
}
