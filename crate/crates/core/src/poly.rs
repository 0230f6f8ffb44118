//! Univariate polynomials over `GR(p^a, ell)`: arithmetic, p-adic valuation,
//! Hensel lifting of coprime residue factorizations and linear factorization.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{ResidueElement, RingElement, RingParams};

/// Polynomial with coefficients low degree first and no trailing zeros.
///
/// Degree is the highest index with a nonzero coefficient, whether or not that
/// coefficient is a unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingPoly {
    coeffs: Vec<RingElement>,
}

impl std::fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingPoly{:?}", self.coeffs)
    }
}

impl RingPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients, `deg + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&RingElement> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }
}

/// Roots `center + h·p^step_exponent`, `h` ranging over the ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFactorFamily {
    pub center: RingElement,
    /// Multiplicity of the residue root this family lies over.
    pub multiplicity: usize,
    pub step_exponent: u32,
}

impl LinearFactorFamily {
    /// Number of distinct ring elements in the family, `p^((a - step)·ell)`.
    pub fn size(&self, ring: &RingParams) -> u128 {
        let free = ring.a().saturating_sub(self.step_exponent) * ring.ell() as u32;
        (ring.p() as u128).pow(free)
    }

    pub fn contains(&self, ring: &RingParams, x: &RingElement) -> bool {
        let d = ring.sub(x, &self.center);
        ring.valuation(&d) >= self.step_exponent.min(ring.a())
    }
}

/// Roots of `f` lying over one residue root `ā` of multiplicity `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub residue_root: ResidueElement,
    pub multiplicity: usize,
    /// Monic Hensel lift of `(X - ā)^μ`.
    pub factor: RingPoly,
    pub families: Vec<LinearFactorFamily>,
}

/// `f = p^valuation · Π factor_i · nonlinear_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub valuation: u32,
    pub components: Vec<PrimaryComponent>,
    /// Cofactor whose reduction mod `p` has no root in the residue field.
    pub nonlinear_part: RingPoly,
}

impl LinearFactorization {
    pub fn families(&self) -> impl Iterator<Item = &LinearFactorFamily> {
        self.components.iter().flat_map(|c| c.families.iter())
    }

    pub fn recompose(&self, ring: &RingParams) -> RingPoly {
        let prod = self
            .components
            .iter()
            .fold(self.nonlinear_part.clone(), |acc, c| ring.poly_mul(&acc, &c.factor));
        ring.poly_mul_p_pow(&prod, self.valuation)
    }
}

/// Polynomial operations. `RingParams` is the context for every call.
impl RingParams {
    pub fn poly(&self, mut coeffs: Vec<RingElement>) -> RingPoly {
        while coeffs.last().is_some_and(|c| self.is_zero(c)) {
            coeffs.pop();
        }
        RingPoly { coeffs }
    }

    /// Validated construction; every coefficient must belong to this ring.
    pub fn poly_checked(&self, coeffs: Vec<RingElement>) -> Result<RingPoly> {
        if coeffs.iter().any(|c| !self.contains(c)) {
            return Err(Error::RingMismatch);
        }
        Ok(self.poly(coeffs))
    }

    /// Polynomial with integer (constant-coordinate) coefficients.
    pub fn poly_from_ints(&self, coeffs: &[i64]) -> RingPoly {
        self.poly(coeffs.iter().map(|&c| self.from_int(c)).collect())
    }

    pub fn poly_constant(&self, c: RingElement) -> RingPoly {
        self.poly(vec![c])
    }

    /// `c·X^deg`.
    pub fn poly_monomial(&self, c: RingElement, deg: usize) -> RingPoly {
        let mut v = vec![self.zero(); deg];
        v.push(c);
        self.poly(v)
    }

    /// `X - c`.
    pub fn poly_linear(&self, c: &RingElement) -> RingPoly {
        self.poly(vec![self.neg(c), self.one()])
    }

    pub fn poly_is_monic(&self, f: &RingPoly) -> bool {
        f.leading().is_some_and(|c| self.is_one(c))
    }

    pub fn poly_add(&self, f: &RingPoly, g: &RingPoly) -> RingPoly {
        let n = f.len().max(g.len());
        let zero = self.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.add(
                    f.coeffs.get(i).unwrap_or(&zero),
                    g.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        self.poly(coeffs)
    }

    pub fn poly_sub(&self, f: &RingPoly, g: &RingPoly) -> RingPoly {
        self.poly_add(f, &self.poly_neg(g))
    }

    pub fn poly_neg(&self, f: &RingPoly) -> RingPoly {
        RingPoly { coeffs: f.coeffs.iter().map(|c| self.neg(c)).collect() }
    }

    pub fn poly_mul(&self, f: &RingPoly, g: &RingPoly) -> RingPoly {
        if f.is_zero() || g.is_zero() {
            return RingPoly::zero();
        }
        let mut out = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(a, b));
            }
        }
        self.poly(out)
    }

    pub fn poly_scale(&self, f: &RingPoly, c: &RingElement) -> RingPoly {
        self.poly(f.coeffs.iter().map(|a| self.mul(a, c)).collect())
    }

    pub fn poly_mul_p_pow(&self, f: &RingPoly, v: u32) -> RingPoly {
        self.poly(f.coeffs.iter().map(|a| self.mul_p_pow(a, v)).collect())
    }

    pub fn poly_pow(&self, f: &RingPoly, e: usize) -> RingPoly {
        (0..e).fold(self.poly_constant(self.one()), |acc, _| self.poly_mul(&acc, f))
    }

    pub fn poly_eval(&self, f: &RingPoly, x: &RingElement) -> RingElement {
        f.coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    pub fn poly_derivative(&self, f: &RingPoly) -> RingPoly {
        self.poly(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, i as u64))
                .collect(),
        )
    }

    /// `f(c·X)`.
    pub fn poly_scale_var(&self, f: &RingPoly, c: &RingElement) -> RingPoly {
        let mut pw = self.one();
        let mut out = Vec::with_capacity(f.len());
        for a in &f.coeffs {
            out.push(self.mul(a, &pw));
            pw = self.mul(&pw, c);
        }
        self.poly(out)
    }

    /// Coefficients of `f(X + c)`; entry `k` is the Hasse derivative `f^[k](c)`.
    pub fn poly_taylor_shift(&self, f: &RingPoly, c: &RingElement) -> RingPoly {
        let mut a = f.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = self.mul(&a[j + 1], c);
                a[j] = self.add(&a[j], &t);
            }
        }
        self.poly(a)
    }

    /// `f · X^k`.
    pub fn poly_shift_up(&self, f: &RingPoly, k: usize) -> RingPoly {
        if f.is_zero() {
            return RingPoly::zero();
        }
        let mut v = vec![self.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        RingPoly { coeffs: v }
    }

    /// `f / X^k`, dropping the low coefficients.
    pub fn poly_shift_down(&self, f: &RingPoly, k: usize) -> RingPoly {
        RingPoly { coeffs: f.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Largest `k` with `X^k | f`; `None` for zero.
    pub fn poly_x_valuation(&self, f: &RingPoly) -> Option<usize> {
        f.coeffs.iter().position(|c| !self.is_zero(c))
    }

    /// Division by a polynomial whose leading coefficient is a unit.
    pub fn poly_divmod(&self, f: &RingPoly, g: &RingPoly) -> Result<(RingPoly, RingPoly)> {
        let lead = g.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = self.invert(lead).map_err(|_| Error::NonMonicDivisor)?;
        let dg = g.len() - 1;
        if f.len() <= dg {
            return Ok((RingPoly::zero(), f.clone()));
        }
        let mut rem = f.coeffs.clone();
        let mut quo = vec![self.zero(); f.len() - dg];
        for i in (0..quo.len()).rev() {
            let c = self.mul(&rem[i + dg], &inv);
            if self.is_zero(&c) {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[i + j] = self.sub(&rem[i + j], &self.mul(&c, gj));
            }
            quo[i] = c;
        }
        rem.truncate(dg);
        Ok((self.poly(quo), self.poly(rem)))
    }

    pub fn poly_divmod_by_monic(&self, f: &RingPoly, g: &RingPoly) -> Result<(RingPoly, RingPoly)> {
        if !self.poly_is_monic(g) {
            return Err(Error::NonMonicDivisor);
        }
        self.poly_divmod(f, g)
    }

    /// Extended gcd over a field (`a == 1`): `(d, s, t)` with `d = s·f + t·g`, `d` monic.
    pub fn poly_xgcd(&self, f: &RingPoly, g: &RingPoly) -> (RingPoly, RingPoly, RingPoly) {
        debug_assert_eq!(self.a(), 1, "xgcd needs a field");
        let one = self.poly_constant(self.one());
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (one.clone(), RingPoly::zero());
        let (mut t0, mut t1) = (RingPoly::zero(), one);
        while !r1.is_zero() {
            let (quo, rem) = self.poly_divmod(&r0, &r1).expect("field division");
            r0 = std::mem::replace(&mut r1, rem);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&quo, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.poly_sub(&t0, &self.poly_mul(&quo, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.invert(lc).expect("field");
                (
                    self.poly_scale(&r0, &inv),
                    self.poly_scale(&s0, &inv),
                    self.poly_scale(&t0, &inv),
                )
            }
        }
    }

    /// Coefficient-wise reduction into the residue field.
    pub fn reduce_poly(&self, f: &RingPoly) -> RingPoly {
        let field = self.residue_field();
        field.poly(f.coeffs.iter().map(|c| self.reduce_mod_p(c)).collect())
    }

    pub fn lift_poly(&self, f: &RingPoly) -> RingPoly {
        self.poly(f.coeffs.iter().map(|c| self.lift(c)).collect())
    }

    /// Coefficient-wise reduction into a lower-precision copy of this ring.
    pub fn reduce_poly_into(&self, f: &RingPoly, target: &RingParams) -> RingPoly {
        target.poly(f.coeffs.iter().map(|c| self.reduce_into(c, target)).collect())
    }

    /// Minimum p-adic valuation over the coefficients; `a` for zero.
    pub fn poly_content_valuation(&self, f: &RingPoly) -> u32 {
        f.coeffs.iter().map(|c| self.valuation(c)).min().unwrap_or(self.a())
    }

    /// `f = p^j · cofactor` with `p ∤ cofactor`.
    pub fn p_valuation(&self, f: &RingPoly) -> Result<(u32, RingPoly)> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let j = self.poly_content_valuation(f);
        let cofactor = self.poly(f.coeffs.iter().map(|c| self.div_p_pow(c, j)).collect());
        Ok((j, cofactor))
    }

    pub fn random_poly<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> RingPoly {
        self.poly((0..len).map(|_| self.random_element(rng)).collect())
    }

    /// Lifts `f ≡ ḡ·w̄ (mod p)` with `ḡ` monic and `gcd(ḡ, w̄) = 1` to `f = g·w`,
    /// `g` monic of degree `deg ḡ`, one p-digit per step.
    fn hensel_lift_pair(
        &self,
        f: &RingPoly,
        g_bar: &RingPoly,
        w_bar: &RingPoly,
    ) -> Result<(RingPoly, RingPoly)> {
        let field = self.residue_field();
        let (d, s, t) = field.poly_xgcd(g_bar, w_bar);
        if d.degree() != Some(0) {
            return Err(Error::NotCoprime(0, 1));
        }
        let mut g = self.lift_poly(g_bar);
        let mut w = self.lift_poly(w_bar);
        for k in 1..self.a() {
            let err = self.poly_sub(f, &self.poly_mul(&g, &w));
            if err.is_zero() {
                break;
            }
            let err = self.poly(err.coeffs.iter().map(|c| self.div_p_pow(c, k)).collect());
            let e_bar = self.reduce_poly(&err);
            let (quo, dg) = field.poly_divmod(&field.poly_mul(&t, &e_bar), g_bar)?;
            let dw = field.poly_add(&field.poly_mul(&e_bar, &s), &field.poly_mul(&quo, w_bar));
            g = self.poly_add(&g, &self.poly_mul_p_pow(&self.lift_poly(&dg), k));
            w = self.poly_add(&w, &self.poly_mul_p_pow(&self.lift_poly(&dw), k));
        }
        debug_assert_eq!(self.poly_mul(&g, &w), *f);
        Ok((g, w))
    }

    /// Lifts pairwise coprime monic residue factors of a monic `f` to monic
    /// factors over the ring with the same reductions.
    pub fn hensel_lift_coprime(
        &self,
        f: &RingPoly,
        residue_factors: &[RingPoly],
    ) -> Result<Vec<RingPoly>> {
        if !self.poly_is_monic(f) {
            return Err(Error::NonMonicDivisor);
        }
        let field = self.residue_field();
        if residue_factors.iter().any(|g| !field.poly_is_monic(g)) {
            return Err(Error::NonMonicDivisor);
        }
        for i in 0..residue_factors.len() {
            for j in i + 1..residue_factors.len() {
                let (d, _, _) = field.poly_xgcd(&residue_factors[i], &residue_factors[j]);
                if d.degree() != Some(0) {
                    return Err(Error::NotCoprime(i, j));
                }
            }
        }
        let product = residue_factors
            .iter()
            .fold(field.poly_constant(field.one()), |acc, g| field.poly_mul(&acc, g));
        if product != self.reduce_poly(f) {
            return Err(Error::ProductMismatch);
        }
        if residue_factors.len() <= 1 {
            return Ok(vec![f.clone()]);
        }
        let mut lifted =
            self.lift_chain(f, residue_factors, &field.poly_constant(field.one()))?;
        // the trailing cofactor is the constant 1
        lifted.pop();
        Ok(lifted)
    }

    /// Peels `g_1, …, g_r` off `f` one at a time; the remaining cofactor, whose
    /// reduction is `tail`, is returned last.
    fn lift_chain(
        &self,
        f: &RingPoly,
        factors: &[RingPoly],
        tail: &RingPoly,
    ) -> Result<Vec<RingPoly>> {
        let field = self.residue_field();
        let mut out = Vec::with_capacity(factors.len() + 1);
        let mut rest = f.clone();
        for (i, g_bar) in factors.iter().enumerate() {
            let w_bar = factors[i + 1..]
                .iter()
                .fold(tail.clone(), |acc, g| field.poly_mul(&acc, g));
            let (g, w) = self.hensel_lift_pair(&rest, g_bar, &w_bar)?;
            out.push(g);
            rest = w;
        }
        out.push(rest);
        Ok(out)
    }

    /// Linear factorization: strip `p^j`, split off the residue field roots,
    /// Hensel-lift the coprime split and describe the roots over each residue
    /// root as families `c + p^e·GR`.
    pub fn linear_factorization(&self, f: &RingPoly) -> Result<LinearFactorization> {
        let (j, cofactor) = self.p_valuation(f)?;
        let field = self.residue_field();
        let mut rest_bar = self.reduce_poly(&cofactor);
        let mut roots: Vec<(ResidueElement, usize)> = Vec::new();
        for alpha in field.elements() {
            let lin = field.poly_linear(&alpha);
            let mut mult = 0;
            loop {
                let (quo, rem) = field.poly_divmod(&rest_bar, &lin).expect("monic");
                if !rem.is_zero() {
                    break;
                }
                rest_bar = quo;
                mult += 1;
            }
            if mult > 0 {
                roots.push((alpha, mult));
            }
            if rest_bar.degree() == Some(0) {
                break;
            }
        }
        let factors_bar: Vec<RingPoly> = roots
            .iter()
            .map(|(alpha, mult)| field.poly_pow(&field.poly_linear(alpha), *mult))
            .collect();
        let mut lifted = if factors_bar.is_empty() {
            vec![cofactor.clone()]
        } else {
            self.lift_chain(&cofactor, &factors_bar, &rest_bar)?
        };
        let nonlinear_part = lifted.pop().expect("nonempty");
        let working = self.with_precision(self.a() - j);
        let components = roots
            .into_iter()
            .zip(lifted)
            .map(|((residue_root, multiplicity), factor)| {
                let small = self.reduce_poly_into(&factor, &working);
                let mut families = Vec::new();
                let start = working.lift(&residue_root);
                root_balls(&working, &small, start, 1, multiplicity, &mut families);
                let families = families
                    .into_iter()
                    .map(|fam| LinearFactorFamily {
                        center: self.embed_from(&fam.center, &working),
                        ..fam
                    })
                    .collect();
                PrimaryComponent { residue_root, multiplicity, factor, families }
            })
            .collect();
        Ok(LinearFactorization { valuation: j, components, nonlinear_part })
    }

    /// All roots of `f` (`f ≠ 0`), capped.
    pub fn poly_roots(&self, f: &RingPoly, cap: usize) -> Result<Vec<RingElement>> {
        let fact = self.linear_factorization(f)?;
        let families: Vec<_> = fact.families().cloned().collect();
        self.enumerate_roots(&families, cap)
    }

    /// Distinct members of the given families, sorted; fails past `cap`.
    pub fn enumerate_roots(
        &self,
        families: &[LinearFactorFamily],
        cap: usize,
    ) -> Result<Vec<RingElement>> {
        let total: u128 = families.iter().map(|f| f.size(self)).sum();
        if total > cap as u128 {
            return Err(Error::RootBudgetExceeded { cap });
        }
        let mut out = Vec::with_capacity(total as usize);
        for fam in families {
            let step = fam.step_exponent.min(self.a());
            if step == self.a() {
                out.push(fam.center.clone());
                continue;
            }
            let offsets = self.with_precision(self.a() - step);
            for h in offsets.elements() {
                out.push(self.add(&fam.center, &self.mul_p_pow(&h, step)));
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Exhaustively checks that the unit roots of `f ≠ 0`, counted once per
    /// residue class with that class's multiplicity in `f/p^j mod p`, number at
    /// most `deg f`.
    pub fn count_unit_roots_bound_check(&self, f: &RingPoly, budget: u64) -> Result<bool> {
        if self.size() > budget {
            return Err(Error::BudgetExceeded {
                p: self.p(),
                exponent: self.a() as u64 * self.ell() as u64,
                budget,
            });
        }
        let (_, cofactor) = self.p_valuation(f)?;
        let field = self.residue_field();
        let cof_bar = self.reduce_poly(&cofactor);
        let mut classes: Vec<ResidueElement> = self
            .units()
            .filter(|u| self.is_zero(&self.poly_eval(f, u)))
            .map(|u| self.reduce_mod_p(&u))
            .collect();
        classes.sort();
        classes.dedup();
        let counted: usize = classes
            .iter()
            .map(|alpha| field.root_multiplicity(&cof_bar, alpha))
            .sum();
        Ok(counted <= f.degree().unwrap_or(0))
    }

    /// Multiplicity of `alpha` as a root of `f` over a field (0 for `f = 0`).
    pub fn root_multiplicity(&self, f: &RingPoly, alpha: &RingElement) -> usize {
        if f.is_zero() {
            return 0;
        }
        let shifted = self.poly_taylor_shift(f, alpha);
        self.poly_x_valuation(&shifted).unwrap_or(0)
    }
}

/// Partitions the roots of `f` inside the ball `center + p^e·R` into maximal
/// balls found by descending one p-digit at a time. `f` lives in `ring`, whose
/// precision already accounts for any stripped power of `p`.
fn root_balls(
    ring: &RingParams,
    f: &RingPoly,
    center: RingElement,
    e: u32,
    multiplicity: usize,
    out: &mut Vec<LinearFactorFamily>,
) {
    let a = ring.a();
    if e >= a {
        if ring.is_zero(&ring.poly_eval(f, &center)) {
            out.push(LinearFactorFamily { center, multiplicity, step_exponent: a });
        }
        return;
    }
    if ball_vanishes(ring, f, &center, e) {
        out.push(LinearFactorFamily { center, multiplicity, step_exponent: e });
        return;
    }
    let digits = ring.residue_field();
    for d in digits.elements() {
        let next = ring.add(&center, &ring.mul_p_pow(&ring.lift(&d), e));
        if ring.valuation(&ring.poly_eval(f, &next)) > e {
            root_balls(ring, f, next, e + 1, multiplicity, out);
        }
    }
}

/// Sufficient test that `f` vanishes on all of `c + p^e·R`: every Taylor term
/// `f^[k](c)·p^(ek)` is zero.
fn ball_vanishes(ring: &RingParams, f: &RingPoly, c: &RingElement, e: u32) -> bool {
    let a = ring.a();
    ring.poly_taylor_shift(f, c)
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, t)| ring.valuation(t) as u64 + e as u64 * k as u64 >= a as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn brute_roots(r: &RingParams, f: &RingPoly) -> Vec<RingElement> {
        r.elements().filter(|x| r.is_zero(&r.poly_eval(f, x))).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        let prod = z4.poly_mul(&z4.poly_from_ints(&[1, 1]), &z4.poly_from_ints(&[3, 1]));
        assert_eq!(prod, z4.poly_from_ints(&[3, 0, 1]));
        assert_eq!(z4.poly_eval(&RingPoly::zero(), &z4.from_u64(3)), z4.zero());
        let z9 = build_ring(3, 2, 1).unwrap();
        let (q, r) = z9
            .poly_divmod_by_monic(&z9.poly_from_ints(&[-1, 0, 1]), &z9.poly_from_ints(&[-1, 1]))
            .unwrap();
        assert_eq!(q, z9.poly_from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            z9.poly_divmod_by_monic(&q, &z9.poly_from_ints(&[1, 3])),
            Err(Error::NonMonicDivisor)
        );
    }

    #[test]
    fn p_valuation_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        assert_eq!(
            z4.p_valuation(&z4.poly_from_ints(&[2, 2])).unwrap(),
            (1, z4.poly_from_ints(&[1, 1]))
        );
        assert_eq!(
            z4.p_valuation(&z4.poly_from_ints(&[1, 1])).unwrap(),
            (0, z4.poly_from_ints(&[1, 1]))
        );
        let z9 = build_ring(3, 2, 1).unwrap();
        assert_eq!(
            z9.p_valuation(&z9.poly_from_ints(&[6, 0, 3])).unwrap(),
            (1, z9.poly_from_ints(&[2, 0, 1]))
        );
        assert_eq!(z9.p_valuation(&RingPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn hensel_square_root_of_two_mod_49() {
        let z49 = build_ring(7, 2, 1).unwrap();
        let f7 = z49.residue_field();
        let f = z49.poly_from_ints(&[-2, 0, 1]);
        let lifted = z49
            .hensel_lift_coprime(&f, &[f7.poly_from_ints(&[-3, 1]), f7.poly_from_ints(&[-4, 1])])
            .unwrap();
        assert_eq!(lifted, vec![z49.poly_from_ints(&[-10, 1]), z49.poly_from_ints(&[-39, 1])]);
        // oracle: the square roots of 2 mod 49
        let sq: Vec<u64> = (0..49u64).filter(|r| r * r % 49 == 2).collect();
        assert_eq!(sq, vec![10, 39]);
    }

    #[test]
    fn hensel_trivial_and_error_cases() {
        let z9 = build_ring(3, 2, 1).unwrap();
        let f3 = z9.residue_field();
        let f = z9.poly_from_ints(&[-1, 0, 1]);
        let lifted = z9
            .hensel_lift_coprime(&f, &[f3.poly_from_ints(&[-1, 1]), f3.poly_from_ints(&[1, 1])])
            .unwrap();
        assert_eq!(z9.poly_mul(&lifted[0], &lifted[1]), f);
        assert_eq!(lifted[0], z9.poly_from_ints(&[-1, 1]));
        assert_eq!(z9.hensel_lift_coprime(&f, &[z9.reduce_poly(&f)]).unwrap(), vec![f.clone()]);
        assert_eq!(
            z9.hensel_lift_coprime(&f, &[f3.poly_from_ints(&[-1, 1]), f3.poly_from_ints(&[-1, 1])]),
            Err(Error::NotCoprime(0, 1))
        );
        assert_eq!(
            z9.hensel_lift_coprime(&f, &[f3.poly_from_ints(&[-1, 1]), f3.poly_from_ints(&[0, 1])]),
            Err(Error::ProductMismatch)
        );
    }

    #[test]
    fn linear_factorization_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        let f = z4.poly_from_ints(&[1, 2, 1]);
        let fact = z4.linear_factorization(&f).unwrap();
        assert_eq!(fact.valuation, 0);
        let fams: Vec<_> = fact.families().cloned().collect();
        assert_eq!(
            fams,
            vec![LinearFactorFamily { center: z4.one(), multiplicity: 2, step_exponent: 1 }]
        );
        assert_eq!(z4.enumerate_roots(&fams, 10).unwrap(), brute_roots(&z4, &f));

        let g = z4.poly_from_ints(&[1, 1, 1]);
        let fact = z4.linear_factorization(&g).unwrap();
        assert!(fact.components.is_empty());
        assert_eq!(fact.nonlinear_part, g);
        assert!(brute_roots(&z4, &g).is_empty());

        let h = z4.poly_from_ints(&[-2, 2]);
        let fact = z4.linear_factorization(&h).unwrap();
        assert_eq!(fact.valuation, 1);
        let fams: Vec<_> = fact.families().cloned().collect();
        assert_eq!(
            fams,
            vec![LinearFactorFamily { center: z4.one(), multiplicity: 1, step_exponent: 1 }]
        );
        assert_eq!(z4.enumerate_roots(&fams, 10).unwrap(), vec![z4.one(), z4.from_u64(3)]);
    }

    #[test]
    fn primary_factor_that_is_not_a_linear_power_has_no_roots() {
        // x^2 + 2 reduces to x^2 over F_2 but has no root in Z_4
        let z4 = build_ring(2, 2, 1).unwrap();
        let f = z4.poly_from_ints(&[2, 0, 1]);
        let fact = z4.linear_factorization(&f).unwrap();
        assert_eq!(fact.components.len(), 1);
        assert_eq!(fact.families().count(), 0);
        assert!(brute_roots(&z4, &f).is_empty());
        assert_eq!(fact.recompose(&z4), f);
    }

    #[test]
    fn enumerate_roots_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        let fam = |step| LinearFactorFamily { center: z4.one(), multiplicity: 1, step_exponent: step };
        assert_eq!(z4.enumerate_roots(&[fam(1)], 4).unwrap(), vec![z4.one(), z4.from_u64(3)]);
        assert_eq!(z4.enumerate_roots(&[fam(2)], 4).unwrap(), vec![z4.one()]);
        assert_eq!(z4.enumerate_roots(&[fam(1)], 1), Err(Error::RootBudgetExceeded { cap: 1 }));
    }

    #[test]
    fn unit_root_bound_examples() {
        let z9 = build_ring(3, 2, 1).unwrap();
        assert!(z9.count_unit_roots_bound_check(&z9.poly_from_ints(&[-1, 0, 1]), 1 << 16).unwrap());
        assert!(z9.count_unit_roots_bound_check(&z9.poly_from_ints(&[5]), 1 << 16).unwrap());
        let z4 = build_ring(2, 2, 1).unwrap();
        assert!(z4.count_unit_roots_bound_check(&z4.poly_from_ints(&[0, 2]), 1 << 16).unwrap());
        // 2(x - 1) has unit roots 1 and 3, one residue class of multiplicity 1
        assert!(z4.count_unit_roots_bound_check(&z4.poly_from_ints(&[-2, 2]), 1 << 16).unwrap());
        let big = build_ring(2, 2, 9).unwrap();
        assert!(matches!(
            big.count_unit_roots_bound_check(&big.poly_from_ints(&[1, 1]), 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn taylor_shift_matches_direct_expansion() {
        let r = build_ring(2, 2, 2).unwrap();
        let f = r.poly(vec![r.from_u64(1), r.gamma().clone(), r.from_u64(3), r.one()]);
        let c = r.element(&[2, 1]).unwrap();
        let shifted = r.poly_taylor_shift(&f, &c);
        for x in r.elements() {
            assert_eq!(r.poly_eval(&shifted, &x), r.poly_eval(&f, &r.add(&x, &c)));
        }
    }
}
