//! List-size and rank bounds for folded RS codes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frs::FrsSpec;
use crate::linalg::RingMatrix;
use crate::poly::RingPoly;
use crate::ring::RingParams;

/// `p^exponent`, with the value when it fits in a `u128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerBound {
    pub base: u64,
    pub exponent: u64,
    pub value: Option<u128>,
}

impl PowerBound {
    fn new(base: u64, exponent: u64) -> Self {
        let value = u32::try_from(exponent).ok().and_then(|e| (base as u128).checked_pow(e));
        Self { base, exponent, value }
    }

    /// Whether `count <= base^exponent`.
    pub fn admits(&self, count: u128) -> bool {
        self.value.is_none_or(|v| count <= v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListSizeBounds {
    /// `p^((a - i)·ell·(s - 1))`.
    pub module_bound: PowerBound,
    /// `(b - 1)·s + 1`, stated for `b > s`.
    pub improved_bound: Option<usize>,
    /// `(b - 1)^2 + 1`, stated for `s = b - 1`.
    pub corollary_bound: Option<usize>,
    /// `(b/(b+1))·(1 - mR/(m - b + 1))`.
    pub radius: f64,
}

/// Bounds attached to the radius parameter `b` and a solution scale `i`.
pub fn list_size_bounds(spec: &FrsSpec, b: usize, scale_i: u32) -> Result<ListSizeBounds> {
    if b == 0 || b > spec.m {
        return Err(Error::ParamOutOfRange(format!("b = {b} must lie in 1..={}", spec.m)));
    }
    let a = spec.ring.a();
    if scale_i >= a {
        return Err(Error::ParamOutOfRange(format!("scale {scale_i} must be below a = {a}")));
    }
    let s = spec.s;
    let exponent = (a - scale_i) as u64 * spec.ring.ell() as u64 * (s as u64 - 1);
    let (bf, m) = (b as f64, spec.m as f64);
    Ok(ListSizeBounds {
        module_bound: PowerBound::new(spec.ring.p(), exponent),
        improved_bound: (b > s).then(|| (b - 1) * s + 1),
        corollary_bound: (s + 1 == b).then(|| (b - 1) * (b - 1) + 1),
        radius: bf / (bf + 1.0) * (1.0 - m * spec.rate() / (m - bf + 1.0)),
    })
}

/// Whether the reductions mod `p` of `basis` are linearly independent over
/// the residue field; equivalently, whether `basis` is independent over the ring.
pub fn is_independent(ring: &RingParams, basis: &[RingPoly]) -> bool {
    let field = ring.residue_field();
    let width = basis.iter().map(RingPoly::len).max().unwrap_or(0);
    let rows: Vec<Vec<_>> = basis
        .iter()
        .map(|h| {
            let hb = ring.reduce_poly(h);
            (0..width).map(|i| hb.coeff(i).cloned().unwrap_or_else(|| field.zero())).collect()
        })
        .collect();
    match RingMatrix::from_rows(rows) {
        Ok(m) => width > 0 && field.mccoy_rank(&m) == basis.len(),
        Err(_) => false,
    }
}

/// The `m × w` matrices `A_i = [h_j(γ^(m·i + r))]` whose McCoy ranks enter the
/// rank inequality.
pub fn agreement_matrices(spec: &FrsSpec, basis: &[RingPoly]) -> Vec<RingMatrix> {
    let ring = &spec.ring;
    (0..spec.num_columns())
        .map(|i| {
            let rows = (0..spec.m)
                .map(|r| {
                    let x = ring.gamma_pow((i * spec.m + r) as u64);
                    basis.iter().map(|h| ring.poly_eval(h, &x)).collect()
                })
                .collect();
            RingMatrix::from_rows(rows).expect("rectangular")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankInequalityReport {
    pub ranks: Vec<usize>,
    /// `Σ (w - r_i)·(m - w + 1)`.
    pub lhs: usize,
    /// `w·k`.
    pub rhs: usize,
    pub holds: bool,
}

/// Checks `Σ_i (w - r_i) <= w·k/(m - w + 1)` for a basis of rank `w`
/// (cleared of denominators).
pub fn rank_inequality(spec: &FrsSpec, basis: &[RingPoly]) -> Result<RankInequalityReport> {
    let w = basis.len();
    if w == 0 || w > spec.m {
        return Err(Error::ParamOutOfRange(format!("basis size {w} must lie in 1..={}", spec.m)));
    }
    if !is_independent(&spec.ring, basis) {
        return Err(Error::DependentBasis);
    }
    let ranks: Vec<usize> = agreement_matrices(spec, basis)
        .iter()
        .map(|a| spec.ring.mccoy_rank(a))
        .collect();
    let lhs = ranks.iter().map(|r| (w - r) * (spec.m - w + 1)).sum();
    let rhs = w * spec.k;
    Ok(RankInequalityReport { ranks, lhs, rhs, holds: lhs <= rhs })
}

pub fn rank_inequality_check(spec: &FrsSpec, basis: &[RingPoly]) -> Result<bool> {
    rank_inequality(spec, basis).map(|r| r.holds)
}

/// `det [h_j(γ^i·X)]_{i,j}` reduced mod `p`, a polynomial over the residue field.
pub fn wronskian_mod_p(ring: &RingParams, basis: &[RingPoly]) -> RingPoly {
    let field = ring.residue_field();
    let rows: Vec<Vec<RingPoly>> = (0..basis.len())
        .map(|i| {
            let g = field.gamma_pow(i as u64);
            basis.iter().map(|h| field.poly_scale_var(&ring.reduce_poly(h), &g)).collect()
        })
        .collect();
    poly_det(&field, &rows)
}

fn poly_det(ring: &RingParams, m: &[Vec<RingPoly>]) -> RingPoly {
    let n = m.len();
    if n == 0 {
        return ring.poly_constant(ring.one());
    }
    let mut acc = RingPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RingPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = ring.poly_mul(&m[0][j], &poly_det(ring, &minor));
        acc = if j % 2 == 0 { ring.poly_add(&acc, &term) } else { ring.poly_sub(&acc, &term) };
    }
    acc
}

/// Whether every point `γ^(m·i + j)`, `j <= m - w`, is a root of the Wronskian
/// of multiplicity at least `w - r_i`. Multiplicity is read off the Taylor
/// expansion, which is valid in positive characteristic.
pub fn wronskian_multiplicity_check(spec: &FrsSpec, basis: &[RingPoly]) -> Result<bool> {
    let report = rank_inequality(spec, basis)?;
    let w = basis.len();
    let field = spec.ring.residue_field();
    let dx = wronskian_mod_p(&spec.ring, basis);
    if dx.is_zero() {
        return Ok(false);
    }
    for (i, &r) in report.ranks.iter().enumerate() {
        for j in 0..=spec.m - w {
            let x = field.gamma_pow((i * spec.m + j) as u64);
            if field.root_multiplicity(&dx, &x) < w - r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    #[test]
    fn list_size_examples() {
        let r = build_ring(2, 2, 2).unwrap();
        let spec = FrsSpec::new(r.clone(), 3, 3, 1, 2).unwrap();
        let b = list_size_bounds(&spec, 3, 0).unwrap();
        assert_eq!(b.improved_bound, Some(5));
        assert_eq!(b.corollary_bound, Some(5));
        assert_eq!(b.module_bound.value, Some(16));
        let one = FrsSpec::new(r.clone(), 3, 3, 1, 1).unwrap();
        assert_eq!(list_size_bounds(&one, 2, 1).unwrap().module_bound.value, Some(1));
        let b1 = list_size_bounds(&spec, 1, 0).unwrap();
        assert!((b1.radius - (1.0 - spec.rate()) / 2.0).abs() < 1e-12);
        assert!(matches!(list_size_bounds(&spec, 4, 0), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(list_size_bounds(&spec, 0, 0), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn wronskian_of_one_and_x() {
        let r = build_ring(2, 2, 2).unwrap();
        let basis = vec![r.poly_from_ints(&[1]), r.poly_from_ints(&[0, 1])];
        let field = r.residue_field();
        let g = field.gamma().clone();
        let expect = field.poly(vec![field.zero(), field.sub(&g, &field.one())]);
        assert_eq!(wronskian_mod_p(&r, &basis), expect);
    }

    #[test]
    fn dependent_basis_rejected() {
        let z4 = build_ring(2, 2, 1).unwrap();
        let r = build_ring(2, 2, 2).unwrap();
        assert!(!is_independent(&z4, &[z4.poly_from_ints(&[1]), z4.poly_from_ints(&[0, 2])]));
        let spec = FrsSpec::new(r.clone(), 3, 3, 2, 2).unwrap();
        let basis = vec![r.poly_from_ints(&[1]), r.poly_from_ints(&[0, 2])];
        assert_eq!(rank_inequality_check(&spec, &basis), Err(Error::DependentBasis));
        let basis = vec![r.poly_from_ints(&[1]), r.poly_from_ints(&[0, 1])];
        assert!(rank_inequality_check(&spec, &basis).unwrap());
        assert!(wronskian_multiplicity_check(&spec, &basis).unwrap());
    }
}
