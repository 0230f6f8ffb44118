use gr_codes::{build_ring, RingParams, RingPoly};
use proptest::prelude::*;

fn small_rings() -> Vec<RingParams> {
    [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2), (3, 2, 2), (2, 4, 1), (5, 2, 1)]
        .iter()
        .map(|&(p, a, l)| build_ring(p, a, l).unwrap())
        .collect()
}

fn poly_from_seed(r: &RingParams, seeds: &[u64]) -> RingPoly {
    r.poly(seeds.iter().map(|&s| r.element_at(s % r.size())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorization_roots_match_exhaustive_search(
        which in 0usize..7,
        seeds in prop::collection::vec(any::<u64>(), 1..6),
        root_seeds in prop::collection::vec(any::<u64>(), 0..3),
    ) {
        let r = &small_rings()[which];
        // bias towards polynomials with roots by multiplying in linear factors
        let mut f = poly_from_seed(r, &seeds);
        for s in &root_seeds {
            f = r.poly_mul(&f, &r.poly_linear(&r.element_at(s % r.size())));
        }
        prop_assume!(!f.is_zero());
        let fact = r.linear_factorization(&f).unwrap();
        prop_assert_eq!(fact.recompose(r), f.clone());
        for c in &fact.components {
            prop_assert!(r.poly_is_monic(&c.factor));
            prop_assert_eq!(c.factor.degree(), Some(c.multiplicity));
        }
        let expected: Vec<_> = r.elements().filter(|x| r.is_zero(&r.poly_eval(&f, x))).collect();
        let got = r.poly_roots(&f, 1 << 20).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn divmod_identity(
        which in 0usize..7,
        fs in prop::collection::vec(any::<u64>(), 0..7),
        gs in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let r = &small_rings()[which];
        let f = poly_from_seed(r, &fs);
        let mut g = poly_from_seed(r, &gs);
        g = r.poly_add(&g, &r.poly_monomial(r.one(), gs.len()));
        g = r.poly(g.coeffs()[..=gs.len()].to_vec());
        let (q, rem) = r.poly_divmod_by_monic(&f, &g).unwrap();
        prop_assert_eq!(r.poly_add(&r.poly_mul(&q, &g), &rem), f);
        prop_assert!(rem.len() < g.len());
    }

    #[test]
    fn unit_root_bound_holds(
        which in 0usize..7,
        seeds in prop::collection::vec(any::<u64>(), 2..5),
    ) {
        let r = &small_rings()[which];
        let f = poly_from_seed(r, &seeds);
        prop_assume!(!f.is_zero());
        prop_assert!(r.count_unit_roots_bound_check(&f, 1 << 16).unwrap());
    }
}
