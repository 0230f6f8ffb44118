use gr_codes::{build_ring, RingElement, RingMatrix, RingParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det(r: &RingParams, m: &[Vec<RingElement>]) -> RingElement {
    // Laplace expansion along the first row
    let n = m.len();
    if n == 0 {
        return r.one();
    }
    let mut acc = r.zero();
    for j in 0..n {
        let minor: Vec<Vec<RingElement>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = r.mul(&m[0][j], &det(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Definitional McCoy rank: largest t whose t x t minors have no common
/// nonzero annihilator.
fn brute_mccoy(r: &RingParams, a: &RingMatrix) -> usize {
    let rows = a.to_rows();
    let mut best = 0;
    for t in 1..=a.rows().min(a.cols()) {
        let mut minors = Vec::new();
        for rs in subsets(a.rows(), t) {
            for cs in subsets(a.cols(), t) {
                let sub: Vec<Vec<_>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                minors.push(det(r, &sub));
            }
        }
        let annihilated = r
            .elements()
            .filter(|z| !r.is_zero(z))
            .any(|z| minors.iter().all(|m| r.is_zero(&r.mul(&z, m))));
        if !annihilated {
            best = t;
        }
    }
    best
}

fn random_matrix(r: &RingParams, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RingMatrix {
    let entries = (0..rows * cols)
        .map(|_| {
            // skew towards zero divisors so residual blocks get exercised
            if rng.gen_bool(0.5) {
                r.mul_p_pow(&r.random_element(rng), 1)
            } else {
                r.random_element(rng)
            }
        })
        .collect();
    RingMatrix::new(rows, cols, entries).unwrap()
}

fn random_invertible(r: &RingParams, rng: &mut ChaCha8Rng, n: usize) -> RingMatrix {
    loop {
        let m = random_matrix(r, rng, n, n);
        if r.is_unit(&det(r, &m.to_rows())) {
            return m;
        }
    }
}

#[test]
fn rank_matches_definition_on_small_matrices() {
    let z4 = build_ring(2, 2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // every 2x2 over Z_4, then random 3x3 and 2x3 / 3x2
    for idx in 0..256u64 {
        let e: Vec<_> = (0..4).map(|i| z4.from_u64(idx >> (2 * i) & 3)).collect();
        let a = RingMatrix::new(2, 2, e).unwrap();
        assert_eq!(z4.mccoy_rank(&a), brute_mccoy(&z4, &a), "{a:?}");
    }
    for _ in 0..400 {
        let (rows, cols) = [(3, 3), (2, 3), (3, 2), (1, 3)][rng.gen_range(0..4)];
        let a = random_matrix(&z4, &mut rng, rows, cols);
        assert_eq!(z4.mccoy_rank(&a), brute_mccoy(&z4, &a), "{a:?}");
    }
    let gr42 = build_ring(2, 2, 2).unwrap();
    for _ in 0..20 {
        let a = random_matrix(&gr42, &mut rng, 4, 4);
        assert_eq!(gr42.mccoy_rank(&a), brute_mccoy(&gr42, &a), "{a:?}");
    }
}

#[test]
fn rank_is_invariant_under_invertible_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, a, l) in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)] {
        let r = build_ring(p, a, l).unwrap();
        for _ in 0..300 {
            let (rows, cols) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let m = random_matrix(&r, &mut rng, rows, cols);
            let pm = random_invertible(&r, &mut rng, rows);
            let qm = random_invertible(&r, &mut rng, cols);
            let t = r.mat_mul(&r.mat_mul(&pm, &m).unwrap(), &qm).unwrap();
            assert_eq!(r.mccoy_rank(&t), r.mccoy_rank(&m));
        }
    }
}

#[test]
fn unit_determinant_means_trivial_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = build_ring(3, 2, 2).unwrap();
    for n in 1..5 {
        for _ in 0..20 {
            let m = random_invertible(&r, &mut rng, n);
            assert_eq!(r.kernel_vector(&m), None);
            assert_eq!(r.mccoy_rank(&m), n);
        }
    }
}

fn all_vectors(r: &RingParams, len: usize) -> Vec<Vec<RingElement>> {
    let elems: Vec<_> = r.elements().collect();
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| elems.iter().map(move |e| {
                let mut w = v.clone();
                w.push(e.clone());
                w
            }))
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn kernel_and_solve_agree_with_exhaustion(
        which in 0usize..3,
        rows in 1usize..4,
        cols in 1usize..4,
        seed in any::<u64>(),
    ) {
        let r = [build_ring(2, 2, 1), build_ring(2, 3, 1), build_ring(3, 2, 1)][which].clone().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&r, &mut rng, rows, cols);
        let space = all_vectors(&r, cols);
        let zero = vec![r.zero(); rows];
        match r.kernel_vector(&a) {
            Some(x) => {
                prop_assert!(x.iter().any(|c| !r.is_zero(c)));
                prop_assert_eq!(r.mat_vec(&a, &x).unwrap(), zero.clone());
            }
            None => {
                prop_assert!(rows >= cols);
                prop_assert_eq!(r.mccoy_rank(&a), cols);
                prop_assert!(space.iter().all(|x| x.iter().all(|c| r.is_zero(c))
                    || r.mat_vec(&a, x).unwrap() != zero));
            }
        }
        let b: Vec<_> = if rng.gen_bool(0.5) {
            (0..rows).map(|_| r.random_element(&mut rng)).collect()
        } else {
            let x: Vec<_> = (0..cols).map(|_| r.random_element(&mut rng)).collect();
            r.mat_vec(&a, &x).unwrap()
        };
        match r.solve(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(r.mat_vec(&a, &x).unwrap(), b),
            None => prop_assert!(space.iter().all(|x| r.mat_vec(&a, x).unwrap() != b)),
        }
    }

    #[test]
    fn unit_diagonal_solve_inverts(seed in any::<u64>(), n in 1usize..5) {
        let r = build_ring(2, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = RingMatrix::zeros(&r, n, n);
        for i in 0..n {
            for j in 0..n {
                let x = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => r.random_unit(&mut rng),
                    std::cmp::Ordering::Less => r.mul_p_pow(&r.random_element(&mut rng), 1),
                    std::cmp::Ordering::Greater => r.random_element(&mut rng),
                };
                d.set(i, j, x);
            }
        }
        let rhs: Vec<_> = (0..n).map(|_| r.random_element(&mut rng)).collect();
        let x = r.unit_diagonal_solve(&d, &rhs).unwrap();
        prop_assert_eq!(r.mat_vec(&d, &x).unwrap(), rhs);
    }
}
