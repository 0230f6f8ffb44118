//! Reed–Solomon codes over `GR(p^a, ell)` evaluated at `1, γ, …, γ^(n-1)`,
//! with Guruswami–Sudan list decoding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::poly::RingPoly;
use crate::ring::{RingElement, RingParams};

/// Default cap on roots enumerated per node of the Y-root recursion and on the
/// total number of candidates it may produce.
pub const DEFAULT_ROOT_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsSpec {
    pub ring: RingParams,
    pub n: usize,
    pub k: usize,
    eval_points: Vec<RingElement>,
}

impl RsSpec {
    pub fn new(ring: RingParams, n: usize, k: usize) -> Result<Self> {
        if n == 0 || n as u64 > ring.gamma_order() {
            return Err(Error::InvalidParameter(format!(
                "length n = {n} must lie in 1..={}",
                ring.gamma_order()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("dimension k = {k} must lie in 1..={n}")));
        }
        let eval_points = (0..n as u64).map(|i| ring.gamma_pow(i)).collect();
        Ok(Self { ring, n, k, eval_points })
    }

    pub fn eval_points(&self) -> &[RingElement] {
        &self.eval_points
    }

    pub fn min_distance(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn encode(&self, message: &RingPoly) -> Result<Vec<RingElement>> {
        if let Some(d) = message.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        Ok(self.eval_points.iter().map(|x| self.ring.poly_eval(message, x)).collect())
    }

    pub fn agreement(&self, a: &[RingElement], b: &[RingElement]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x == y).count()
    }

    /// Weight of `Y` in the weighted degree; `k - 1`, raised to 1 for `k = 1`
    /// so the monomial set stays finite.
    pub fn y_weight(&self) -> usize {
        (self.k - 1).max(1)
    }

    /// Chooses the smallest multiplicity `r` admitting a degree bound
    /// `d_Q < t·r` with more monomials than constraints, then the smallest
    /// such `d_Q`.
    pub fn choose_params(&self, t: usize) -> Result<(usize, usize)> {
        let e = self.n.saturating_sub(t);
        let johnson = johnson_radius(self.n, self.min_distance());
        if t == 0 || t > self.n || (t * t) as u128 <= ((self.k - 1) * self.n) as u128 {
            return Err(Error::RadiusTooLarge { e, johnson_radius: johnson });
        }
        if self.k == 1 {
            return Ok((1, t - 1));
        }
        let w = self.y_weight();
        for r in 1.. {
            let constraints = self.n * r * (r + 1) / 2;
            let d_q = (0..t * r).find(|&d| monomial_count(d, w, None) > constraints);
            if let Some(d_q) = d_q {
                return Ok((r, d_q));
            }
        }
        unreachable!()
    }
}

/// Monomials `X^u Y^v` with `u + w·v <= d` and `v <= y_cap`.
fn monomials(d: usize, w: usize, y_cap: Option<usize>) -> Vec<(usize, usize)> {
    let vmax = if w == 0 { y_cap.unwrap_or(0) } else { (d / w).min(y_cap.unwrap_or(usize::MAX)) };
    (0..=vmax).flat_map(|v| (0..=d - w * v).map(move |u| (u, v))).collect()
}

fn monomial_count(d: usize, w: usize, y_cap: Option<usize>) -> usize {
    let vmax = if w == 0 { y_cap.unwrap_or(0) } else { (d / w).min(y_cap.unwrap_or(usize::MAX)) };
    (0..=vmax).map(|v| d - w * v + 1).sum()
}

/// Largest `e >= 0` with `e < n - sqrt(n(n - d))`.
pub fn johnson_radius(n: usize, d: usize) -> usize {
    let (n, d) = (n as u128, d as u128);
    let rhs = n * (n - d.min(n));
    (0..n).take_while(|&e| (n - e) * (n - e) > rhs).last().unwrap_or(0) as usize
}

/// `l + r·sqrt((s-1)·l)`, the edge bound for a `K_{s,2}`-free bipartite graph
/// with parts of sizes `l` and `r`.
pub fn zarankiewicz_bound(l: usize, r: usize, s: usize) -> f64 {
    l as f64 + r as f64 * ((s.saturating_sub(1) * l) as f64).sqrt()
}

/// Whether no `s` left vertices share two right neighbours. `adj[u]` lists the
/// right neighbours of left vertex `u`.
pub fn is_ks2_free(adj: &[Vec<usize>], right: usize, s: usize) -> bool {
    for w1 in 0..right {
        for w2 in w1 + 1..right {
            let common = adj.iter().filter(|nb| nb.contains(&w1) && nb.contains(&w2)).count();
            if common >= s {
                return false;
            }
        }
    }
    true
}

/// Binomial coefficients mod `p^a`, rows `0..=n`.
fn binomials(ring: &RingParams, n: usize) -> Vec<Vec<u64>> {
    let q = ring.characteristic();
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = (prev[j - 1] + prev[j]) % q;
        }
        rows.push(row);
    }
    rows
}

/// `Q(X, Y) = Σ_v q_v(X)·Y^v`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BivariatePoly {
    /// `y_coeffs[v]` is the coefficient of `Y^v`; no trailing zeros.
    y_coeffs: Vec<RingPoly>,
}

impl BivariatePoly {
    pub fn from_y_coeffs(mut y_coeffs: Vec<RingPoly>) -> Self {
        while y_coeffs.last().is_some_and(RingPoly::is_zero) {
            y_coeffs.pop();
        }
        Self { y_coeffs }
    }

    pub fn from_terms(ring: &RingParams, terms: &[((usize, usize), RingElement)]) -> Self {
        let vmax = terms.iter().map(|((_, v), _)| *v).max().map_or(0, |v| v + 1);
        let mut cols: Vec<Vec<RingElement>> = vec![Vec::new(); vmax];
        for ((u, v), c) in terms {
            let col = &mut cols[*v];
            if col.len() <= *u {
                col.resize(u + 1, ring.zero());
            }
            col[*u] = ring.add(&col[*u], c);
        }
        Self::from_y_coeffs(cols.into_iter().map(|c| ring.poly(c)).collect())
    }

    pub fn y_coeffs(&self) -> &[RingPoly] {
        &self.y_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// Largest `(1, w)`-weighted degree of a nonzero term.
    pub fn weighted_degree(&self, w: usize) -> Option<usize> {
        self.y_coeffs
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.degree().map(|u| u + w * v))
            .max()
    }

    /// Coefficient of `X^u Y^v`.
    pub fn coeff(&self, u: usize, v: usize) -> Option<&RingElement> {
        self.y_coeffs.get(v).and_then(|c| c.coeff(u))
    }
}

impl RingParams {
    pub fn bivariate_eval(&self, q: &BivariatePoly, x: &RingElement, y: &RingElement) -> RingElement {
        q.y_coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, y), &self.poly_eval(c, x)))
    }

    /// `Q(X, f(X))`.
    pub fn bivariate_substitute(&self, q: &BivariatePoly, f: &RingPoly) -> RingPoly {
        q.y_coeffs
            .iter()
            .rev()
            .fold(RingPoly::zero(), |acc, c| self.poly_add(&self.poly_mul(&acc, f), c))
    }

    /// `Q(X + α, Y + β)`.
    pub fn bivariate_shift(&self, q: &BivariatePoly, alpha: &RingElement, beta: &RingElement) -> BivariatePoly {
        // shift Y by Horner on (Y + β), then X coefficient-wise
        let mut acc: Vec<RingPoly> = Vec::new();
        for c in q.y_coeffs.iter().rev() {
            let mut next = vec![RingPoly::zero(); acc.len() + 1];
            for (v, a) in acc.iter().enumerate() {
                next[v + 1] = self.poly_add(&next[v + 1], a);
                next[v] = self.poly_add(&next[v], &self.poly_scale(a, beta));
            }
            next[0] = self.poly_add(&next[0], c);
            acc = next;
        }
        BivariatePoly::from_y_coeffs(acc.iter().map(|c| self.poly_taylor_shift(c, alpha)).collect())
    }

    /// Whether every term of `Q(X + α, Y + β)` of total degree `< r` vanishes.
    pub fn has_multiplicity(&self, q: &BivariatePoly, alpha: &RingElement, beta: &RingElement, r: usize) -> bool {
        let s = self.bivariate_shift(q, alpha, beta);
        (0..r).all(|v| (0..r - v).all(|u| s.coeff(u, v).is_none_or(|c| self.is_zero(c))))
    }

    /// `Q(X, X·Y + ζ)`.
    fn bivariate_step(&self, q: &BivariatePoly, zeta: &RingElement) -> BivariatePoly {
        let mut acc: Vec<RingPoly> = Vec::new();
        for c in q.y_coeffs.iter().rev() {
            let mut next = vec![RingPoly::zero(); acc.len() + 1];
            for (v, a) in acc.iter().enumerate() {
                next[v + 1] = self.poly_add(&next[v + 1], &self.poly_shift_up(a, 1));
                next[v] = self.poly_add(&next[v], &self.poly_scale(a, zeta));
            }
            next[0] = self.poly_add(&next[0], c);
            acc = next;
        }
        BivariatePoly::from_y_coeffs(acc)
    }
}

/// Transcript of one list decode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsListResult {
    pub candidates: Vec<RsCandidate>,
    pub r: usize,
    pub d_q: usize,
    pub t: usize,
    pub system_rows: usize,
    pub system_cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsCandidate {
    pub message: RingPoly,
    pub agreement: usize,
}

impl RsSpec {
    /// Nonzero `Q` of `(1, k-1)`-weighted degree at most `d_q` vanishing to
    /// multiplicity `r` at every `(α_i, y_i)`.
    pub fn gs_interpolate(&self, received: &[RingElement], r: usize, d_q: usize) -> Result<BivariatePoly> {
        self.interpolate_with(received, r, d_q, self.y_weight(), None).map(|(q, _, _)| q)
    }

    fn interpolate_with(
        &self,
        received: &[RingElement],
        r: usize,
        d_q: usize,
        w: usize,
        y_cap: Option<usize>,
    ) -> Result<(BivariatePoly, usize, usize)> {
        if received.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "received word of length {} for n = {}",
                received.len(),
                self.n
            )));
        }
        let ring = &self.ring;
        let mons = monomials(d_q, w, y_cap);
        let constraints = self.n * r * (r + 1) / 2;
        if mons.len() <= constraints {
            return Err(Error::InsufficientDegree { unknowns: mons.len(), constraints });
        }
        let max_deg = mons.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        let binom = binomials(ring, max_deg);
        let mut entries = Vec::with_capacity(constraints * mons.len());
        for (alpha, beta) in self.eval_points.iter().zip(received) {
            let apow: Vec<_> = (0..=max_deg as u64).map(|e| ring.pow(alpha, e)).collect();
            let bpow: Vec<_> = (0..=max_deg as u64).map(|e| ring.pow(beta, e)).collect();
            for j in 0..r {
                for i in 0..r - j {
                    for &(u, v) in &mons {
                        let c = if u < i || v < j {
                            ring.zero()
                        } else {
                            let b = binom[u][i] * binom[v][j] % ring.characteristic();
                            ring.scale(&ring.mul(&apow[u - i], &bpow[v - j]), b)
                        };
                        entries.push(c);
                    }
                }
            }
        }
        let m = RingMatrix::new(constraints, mons.len(), entries)?;
        let sol = ring.kernel_vector(&m).ok_or(Error::InterpolationFailed)?;
        let terms: Vec<_> = mons.into_iter().zip(sol).collect();
        let q = BivariatePoly::from_terms(ring, &terms);
        if q.is_zero() {
            return Err(Error::InterpolationFailed);
        }
        Ok((q, constraints, terms.len()))
    }

    pub fn list_decode(&self, received: &[RingElement], e: usize) -> Result<RsListResult> {
        self.list_decode_with_cap(received, e, DEFAULT_ROOT_CAP)
    }

    /// Every message whose encoding agrees with `received` in at least
    /// `n - e` positions.
    pub fn list_decode_with_cap(&self, received: &[RingElement], e: usize, cap: usize) -> Result<RsListResult> {
        let t = self.n.saturating_sub(e);
        let (r, d_q) = self.choose_params(t)?;
        let (q, rows, cols) = if self.k == 1 {
            // constants: X-degree below t, enough Y powers to beat n constraints
            self.interpolate_with(received, 1, d_q, 0, Some(self.n / t))?
        } else {
            self.interpolate_with(received, r, d_q, self.y_weight(), None)?
        };
        let roots = find_y_roots(&self.ring, &q, self.k, cap)?;
        let mut candidates: Vec<RsCandidate> = roots
            .into_iter()
            .filter_map(|f| {
                let cw = self.encode(&f).ok()?;
                let agreement = self.agreement(&cw, received);
                (agreement >= t).then_some(RsCandidate { message: f, agreement })
            })
            .collect();
        candidates.sort_by(|a, b| a.message.cmp(&b.message));
        candidates.dedup_by(|a, b| a.message == b.message);
        Ok(RsListResult { candidates, r, d_q, t, system_rows: rows, system_cols: cols })
    }
}

/// All `f` with `deg f < k` and `Q(X, f(X)) = 0`.
pub fn find_y_roots(ring: &RingParams, q: &BivariatePoly, k: usize, cap: usize) -> Result<Vec<RingPoly>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut prefixes = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    y_root_search(ring, q, k, cap, &mut prefix, &mut prefixes)?;
    let mut out: Vec<RingPoly> = prefixes
        .into_iter()
        .map(|c| ring.poly(c))
        .filter(|f| ring.bivariate_substitute(q, f).is_zero())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn y_root_search(
    ring: &RingParams,
    q: &BivariatePoly,
    k: usize,
    cap: usize,
    prefix: &mut Vec<RingElement>,
    out: &mut Vec<Vec<RingElement>>,
) -> Result<()> {
    if prefix.len() == k {
        if out.len() >= cap {
            return Err(Error::RootBudgetExceeded { cap });
        }
        out.push(prefix.clone());
        return Ok(());
    }
    // divide out the largest power of X, then read off Q(0, Y)
    let s = q
        .y_coeffs
        .iter()
        .filter_map(|c| ring.poly_x_valuation(c))
        .min()
        .unwrap_or(0);
    let reduced = BivariatePoly::from_y_coeffs(
        q.y_coeffs.iter().map(|c| ring.poly_shift_down(c, s)).collect(),
    );
    let m = ring.poly(
        reduced
            .y_coeffs
            .iter()
            .map(|c| c.coeff(0).cloned().unwrap_or_else(|| ring.zero()))
            .collect(),
    );
    for zeta in ring.poly_roots(&m, cap)? {
        let next = ring.bivariate_step(&reduced, &zeta);
        prefix.push(zeta);
        y_root_search(ring, &next, k, cap, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    #[test]
    fn encode_examples() {
        let r = build_ring(2, 2, 2).unwrap();
        let spec = RsSpec::new(r.clone(), 3, 2).unwrap();
        let c = r.from_u64(3);
        assert_eq!(spec.encode(&r.poly_constant(c.clone())).unwrap(), vec![c; 3]);
        let x = r.poly_from_ints(&[0, 1]);
        let g = r.gamma().clone();
        assert_eq!(spec.encode(&x).unwrap(), vec![r.one(), g.clone(), r.mul(&g, &g)]);
        let f = r.poly_from_ints(&[1, 1]);
        let expect = vec![r.from_u64(2), r.add(&r.one(), &g), r.add(&r.one(), &r.mul(&g, &g))];
        assert_eq!(spec.encode(&f).unwrap(), expect);
        assert_eq!(
            spec.encode(&r.poly_from_ints(&[0, 0, 1])),
            Err(Error::DegreeTooHigh { degree: 2, k: 2 })
        );
    }

    #[test]
    fn johnson_examples() {
        assert_eq!(johnson_radius(15, 13), 9);
        assert_eq!(johnson_radius(7, 7), 6);
        assert_eq!(johnson_radius(7, 1), 0);
        assert_eq!(johnson_radius(3, 2), 1);
    }

    #[test]
    fn interpolation_degree_examples() {
        let r = build_ring(2, 2, 2).unwrap();
        let spec = RsSpec::new(r.clone(), 3, 1).unwrap();
        let y = vec![r.one(), r.zero(), r.gamma().clone()];
        assert_eq!(
            spec.gs_interpolate(&y, 1, 1),
            Err(Error::InsufficientDegree { unknowns: 3, constraints: 3 })
        );
        let q = spec.gs_interpolate(&y, 1, 2).unwrap();
        for (a, b) in spec.eval_points().iter().zip(&y) {
            assert!(r.is_zero(&r.bivariate_eval(&q, a, b)));
        }
    }

    #[test]
    fn interpolant_vanishes_to_multiplicity() {
        let r = build_ring(2, 2, 4).unwrap();
        let spec = RsSpec::new(r.clone(), 15, 3).unwrap();
        let f = r.poly_from_ints(&[1, 2, 3]);
        let mut y = spec.encode(&f).unwrap();
        y[0] = r.zero();
        y[5] = r.gamma().clone();
        let q = spec.gs_interpolate(&y, 2, 17).unwrap();
        for (a, b) in spec.eval_points().iter().zip(&y) {
            assert!(r.has_multiplicity(&q, a, b, 2));
        }
        assert!(q.weighted_degree(2).unwrap() <= 17);
    }

    #[test]
    fn y_root_examples() {
        let r = build_ring(2, 2, 1).unwrap();
        let f = r.poly_from_ints(&[1, 3]);
        let g = r.poly_from_ints(&[2, 1]);
        let lin = |h: &RingPoly| BivariatePoly::from_y_coeffs(vec![r.poly_neg(h), r.poly_from_ints(&[1])]);
        assert_eq!(find_y_roots(&r, &lin(&f), 2, 100).unwrap(), vec![f.clone()]);
        let qf = lin(&f);
        let qg = lin(&g);
        // (Y - f)(Y - g)
        let prod = BivariatePoly::from_y_coeffs(vec![
            r.poly_mul(&qf.y_coeffs()[0], &qg.y_coeffs()[0]),
            r.poly_add(&qf.y_coeffs()[0], &qg.y_coeffs()[0]),
            r.poly_from_ints(&[1]),
        ]);
        let mut want = vec![f, g];
        want.sort();
        assert_eq!(find_y_roots(&r, &prod, 2, 100).unwrap(), want);
        let no_root = BivariatePoly::from_y_coeffs(vec![r.poly_from_ints(&[1]), RingPoly::zero(), r.poly_from_ints(&[1])]);
        assert!(find_y_roots(&r, &no_root, 1, 100).unwrap().is_empty());
    }

    #[test]
    fn decode_parameter_choices() {
        let r = build_ring(2, 2, 4).unwrap();
        let spec = RsSpec::new(r, 15, 3).unwrap();
        assert_eq!(spec.choose_params(7).unwrap(), (1, 6));
        assert!(matches!(spec.choose_params(5), Err(Error::RadiusTooLarge { e: 10, johnson_radius: 9 })));
        let r = build_ring(2, 2, 2).unwrap();
        let spec = RsSpec::new(r, 3, 2).unwrap();
        assert_eq!(spec.choose_params(2).unwrap(), (2, 3));
        assert_eq!(spec.choose_params(3).unwrap(), (1, 2));
    }

    #[test]
    fn decode_without_errors_lists_the_message() {
        let r = build_ring(3, 2, 2).unwrap();
        let spec = RsSpec::new(r.clone(), 8, 3).unwrap();
        let f = r.poly(vec![r.gamma().clone(), r.from_u64(4), r.from_u64(7)]);
        let y = spec.encode(&f).unwrap();
        let res = spec.list_decode(&y, 0).unwrap();
        assert!(res.candidates.iter().any(|c| c.message == f && c.agreement == 8));
    }

    #[test]
    fn repetition_code_decodes_constants() {
        let r = build_ring(2, 2, 2).unwrap();
        let spec = RsSpec::new(r.clone(), 3, 1).unwrap();
        let y = vec![r.one(), r.one(), r.gamma().clone()];
        let res = spec.list_decode(&y, 2).unwrap();
        let msgs: Vec<_> = res.candidates.iter().map(|c| c.message.clone()).collect();
        let mut want = vec![r.poly_constant(r.one()), r.poly_constant(r.gamma().clone())];
        want.sort();
        assert_eq!(msgs, want);
    }

    #[test]
    fn zarankiewicz_examples() {
        // K_{2,2} contains itself, a perfect matching is K_{2,2}-free
        assert!(!is_ks2_free(&[vec![0, 1], vec![0, 1]], 2, 2));
        assert!(is_ks2_free(&[vec![0], vec![1]], 2, 2));
        assert!(2.0 <= zarankiewicz_bound(2, 2, 2));
    }
}
