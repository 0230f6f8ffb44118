use gr_codes::rs::{find_y_roots, is_ks2_free, johnson_radius, zarankiewicz_bound, RsSpec};
use gr_codes::{build_ring, RingElement, RingPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every message of degree < k with its codeword.
fn codebook(spec: &RsSpec) -> Vec<(RingPoly, Vec<RingElement>)> {
    let r = &spec.ring;
    let size = r.size();
    (0..size.pow(spec.k as u32))
        .map(|mut idx| {
            let coeffs = (0..spec.k)
                .map(|_| {
                    let c = r.element_at(idx % size);
                    idx /= size;
                    c
                })
                .collect();
            let f = r.poly(coeffs);
            let cw = spec.encode(&f).unwrap();
            (f, cw)
        })
        .collect()
}

fn ball(spec: &RsSpec, book: &[(RingPoly, Vec<RingElement>)], y: &[RingElement], e: usize) -> Vec<RingPoly> {
    let mut v: Vec<_> = book
        .iter()
        .filter(|(_, cw)| spec.agreement(cw, y) + e >= spec.n)
        .map(|(f, _)| f.clone())
        .collect();
    v.sort();
    v
}

/// Received words near codewords so balls are usually nonempty.
fn received_word(spec: &RsSpec, book: &[(RingPoly, Vec<RingElement>)], rng: &mut ChaCha8Rng) -> Vec<RingElement> {
    let mut y = book[rng.gen_range(0..book.len())].1.clone();
    let flips = rng.gen_range(0..=spec.n);
    for _ in 0..flips {
        let i = rng.gen_range(0..spec.n);
        y[i] = spec.ring.random_element(rng);
    }
    y
}

fn check_oracle(p: u64, a: u32, ell: usize, n: usize, k: usize, trials: usize, seed: u64) {
    let spec = RsSpec::new(build_ring(p, a, ell).unwrap(), n, k).unwrap();
    let book = codebook(&spec);
    let jr = johnson_radius(n, spec.min_distance());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let y = received_word(&spec, &book, &mut rng);
        for e in 0..=jr {
            let res = spec.list_decode(&y, e).unwrap();
            let got: Vec<_> = res.candidates.iter().map(|c| c.message.clone()).collect();
            assert_eq!(got, ball(&spec, &book, &y, e), "y={y:?} e={e}");
            assert!(got.len() <= n);
        }
    }
}

#[test]
fn matches_exhaustive_ball_gr4_2() {
    check_oracle(2, 2, 2, 3, 2, 300, 11);
}

#[test]
fn matches_exhaustive_ball_gr8_2_and_gr4_3() {
    check_oracle(2, 3, 2, 3, 2, 100, 12);
    check_oracle(2, 2, 3, 7, 2, 40, 13);
    check_oracle(2, 2, 3, 7, 1, 40, 14);
    check_oracle(3, 2, 1, 2, 1, 40, 15);
}

#[test]
fn interpolants_vanish_to_chosen_multiplicity() {
    let spec = RsSpec::new(build_ring(2, 2, 3).unwrap(), 7, 2).unwrap();
    let r = &spec.ring;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let y: Vec<_> = (0..7).map(|_| r.random_element(&mut rng)).collect();
        let e = rng.gen_range(0..=4);
        let (mult, d_q) = spec.choose_params(7 - e).unwrap();
        let q = spec.gs_interpolate(&y, mult, d_q).unwrap();
        assert!(q.weighted_degree(1).unwrap() <= d_q);
        for (a, b) in spec.eval_points().iter().zip(&y) {
            assert!(r.has_multiplicity(&q, a, b, mult));
        }
    }
}

#[test]
fn product_of_linear_factors_yields_both_roots() {
    let r = build_ring(3, 2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..30 {
        let f = r.random_poly(&mut rng, 3);
        let g = r.random_poly(&mut rng, 3);
        let one = r.poly_from_ints(&[1]);
        let q = gr_codes::rs::BivariatePoly::from_y_coeffs(vec![
            r.poly_mul(&f, &g),
            r.poly_neg(&r.poly_add(&f, &g)),
            one,
        ]);
        let roots = find_y_roots(&r, &q, 3, 1 << 16).unwrap();
        assert!(roots.contains(&f) && roots.contains(&g));
        for h in &roots {
            assert!(r.bivariate_substitute(&q, h).is_zero());
        }
    }
}

#[test]
fn agreement_graphs_respect_zarankiewicz() {
    let spec = RsSpec::new(build_ring(2, 2, 3).unwrap(), 7, 2).unwrap();
    let book = codebook(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = spec.n - spec.min_distance() + 1;
    for _ in 0..200 {
        let y = received_word(&spec, &book, &mut rng);
        // right side: codewords within distance 5 of y
        let close: Vec<_> = book.iter().filter(|(_, cw)| spec.agreement(cw, &y) >= 2).take(12).collect();
        if close.len() < 2 {
            continue;
        }
        let adj: Vec<Vec<usize>> = (0..spec.n)
            .map(|i| (0..close.len()).filter(|&j| close[j].1[i] == y[i]).collect())
            .collect();
        assert!(is_ks2_free(&adj, close.len(), s));
        let edges: usize = adj.iter().map(Vec::len).sum();
        assert!(edges as f64 <= zarankiewicz_bound(spec.n, close.len(), s) + 1e-9);
    }
}
