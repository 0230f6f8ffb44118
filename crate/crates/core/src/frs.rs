//! Folded Reed–Solomon codes over `GR(p^a, ell)` and their linear-algebraic
//! list decoder.
//!
//! The interpolant is `Q = A_0(X) + A_1(X)·Y_1 + … + A_s(X)·Y_s`, and decoding
//! solves `A_0 + Σ A_j(X)·f(γ^(j-1)·X) = 0` for `deg f < k`. Two solvers are
//! provided: a coefficient-by-coefficient recursion, and a structured solver
//! that writes the solution set as an affine free module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::poly::RingPoly;
use crate::ring::{RingElement, RingParams};

/// Default number of free-coefficient assignments the structured finder will
/// enumerate before reporting only the module.
pub const DEFAULT_ENUMERATION_CAP: usize = 4096;
/// Default cap on candidates produced by the recursive finder.
pub const DEFAULT_RECURSION_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrsSpec {
    pub ring: RingParams,
    /// Unfolded length.
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
}

/// `N` columns of `m` symbols; column `i` holds positions `m·i .. m·i + m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FoldedWord {
    columns: Vec<Vec<RingElement>>,
}

impl FoldedWord {
    pub fn from_columns(columns: Vec<Vec<RingElement>>) -> Result<Self> {
        let m = columns.first().map_or(0, Vec::len);
        if m == 0 || columns.iter().any(|c| c.len() != m) {
            return Err(Error::DimensionMismatch("columns must be nonempty and of equal height".into()));
        }
        Ok(Self { columns })
    }

    pub fn from_flat(symbols: &[RingElement], m: usize) -> Result<Self> {
        if m == 0 || symbols.len() % m != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} symbols do not fold into columns of height {m}",
                symbols.len()
            )));
        }
        Self::from_columns(symbols.chunks(m).map(<[_]>::to_vec).collect())
    }

    pub fn columns(&self) -> &[Vec<RingElement>] {
        &self.columns
    }

    pub fn columns_mut(&mut self) -> &mut [Vec<RingElement>] {
        &mut self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn height(&self) -> usize {
        self.columns[0].len()
    }

    pub fn flat(&self) -> Vec<RingElement> {
        self.columns.iter().flatten().cloned().collect()
    }

    /// Number of columns on which the two words agree entirely.
    pub fn agreement(&self, other: &FoldedWord) -> usize {
        self.columns.iter().zip(&other.columns).filter(|(a, b)| a == b).count()
    }
}

/// `A_0 … A_s` with the degree parameter `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolantQ {
    pub a: Vec<RingPoly>,
    pub d: usize,
}

impl InterpolantQ {
    pub fn is_zero(&self) -> bool {
        self.a.iter().all(RingPoly::is_zero)
    }

    pub fn s(&self) -> usize {
        self.a.len() - 1
    }
}

/// `base + Σ α_j·basis_j` over `GR(p^(a - scale_exponent), ell)`.
///
/// `free_positions[j]` is the coefficient index where `basis_j` has a 1 and
/// every other basis vector and the base have a 0. `base` is `None` when the
/// equation has no solution at all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModuleDescription {
    pub base: Option<RingPoly>,
    pub basis: Vec<RingPoly>,
    pub free_positions: Vec<usize>,
    pub scale_exponent: u32,
}

impl FreeModuleDescription {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Whether `f` (read modulo `p^(a - scale)`) lies in the module.
    pub fn contains(&self, ring: &RingParams, f: &RingPoly) -> bool {
        let Some(base) = &self.base else { return false };
        let small = ring.with_precision(ring.a() - self.scale_exponent);
        let f = ring.reduce_poly_into(f, &small);
        let zero = small.zero();
        let combo = self.free_positions.iter().zip(&self.basis).fold(base.clone(), |acc, (&u, h)| {
            let alpha = f.coeff(u).unwrap_or(&zero);
            small.poly_add(&acc, &small.poly_scale(h, alpha))
        });
        combo == f
    }
}

/// Output of the structured finder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredRoots {
    /// Solutions modulo `p^(a - scale)`, as polynomials over that ring.
    pub candidates: Vec<RingPoly>,
    pub module: FreeModuleDescription,
    /// False when the module was too large to enumerate under the cap.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finder {
    Structured,
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeOptions {
    pub finder: Finder,
    pub enumeration_cap: usize,
    pub recursion_cap: usize,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        Self {
            finder: Finder::Structured,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            recursion_cap: DEFAULT_RECURSION_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    Complete,
    /// Only the solution module is reported; its members were not enumerated.
    ModuleOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrsCandidate {
    pub message: RingPoly,
    pub agreement: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrsListResult {
    pub candidates: Vec<FrsCandidate>,
    pub module: FreeModuleDescription,
    pub status: DecodeStatus,
    pub d: usize,
    pub t: usize,
    pub s: usize,
    pub interpolant: InterpolantQ,
}

impl FrsSpec {
    pub fn new(ring: RingParams, n: usize, m: usize, k: usize, s: usize) -> Result<Self> {
        if m == 0 || n == 0 || n % m != 0 {
            return Err(Error::InvalidParameter(format!("folding m = {m} must divide n = {n}")));
        }
        if n as u64 > ring.gamma_order() {
            return Err(Error::InvalidParameter(format!(
                "length n = {n} exceeds p^ell - 1 = {}",
                ring.gamma_order()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("dimension k = {k} must lie in 1..={n}")));
        }
        if s == 0 || s > m {
            return Err(Error::InvalidParameter(format!("arity s = {s} must lie in 1..={m}")));
        }
        Ok(Self { ring, n, m, k, s })
    }

    /// The same code parameters over a lower-precision copy of the ring.
    pub fn with_ring(&self, ring: RingParams) -> Self {
        Self { ring, ..self.clone() }
    }

    pub fn num_columns(&self) -> usize {
        self.n / self.m
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn encode(&self, message: &RingPoly) -> Result<FoldedWord> {
        if let Some(d) = message.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        let flat: Vec<_> = (0..self.n as u64)
            .map(|i| self.ring.poly_eval(message, &self.ring.gamma_pow(i)))
            .collect();
        FoldedWord::from_flat(&flat, self.m)
    }

    fn constraints(&self) -> usize {
        self.num_columns() * (self.m - self.s + 1)
    }

    fn unknowns(&self, d: usize) -> usize {
        (self.s + 1) * (d + 1) + self.k - 1
    }

    /// `⌊(N(m-s+1) - k + 1)/(s+1)⌋`, raised (from 0 if negative) until the
    /// unknowns strictly outnumber the constraints.
    pub fn choose_d(&self) -> usize {
        let num = self.constraints() as i64 - self.k as i64 + 1;
        let mut d = num.div_euclid(self.s as i64 + 1).max(0) as usize;
        while self.unknowns(d) <= self.constraints() {
            d += 1;
        }
        d
    }

    /// Smallest admissible agreement for the given `D`: `t(m-s+1) > D + k - 1`.
    pub fn min_agreement(&self, d: usize) -> usize {
        (d + self.k - 1) / (self.m - self.s + 1) + 1
    }

    /// Error fraction `(s/(s+1))·(1 - mR/(m-s+1))`.
    pub fn radius(&self) -> f64 {
        let s = self.s as f64;
        let m = self.m as f64;
        s / (s + 1.0) * (1.0 - m * self.rate() / (m - s + 1.0))
    }

    pub fn interpolate(&self, y: &FoldedWord, d: i64) -> Result<InterpolantQ> {
        let constraints = self.constraints();
        if d < 0 {
            return Err(Error::DTooSmall { d, unknowns: 0, constraints });
        }
        let d = d as usize;
        let unknowns = self.unknowns(d);
        if unknowns <= constraints {
            return Err(Error::DTooSmall { d: d as i64, unknowns, constraints });
        }
        if y.num_columns() != self.num_columns() || y.height() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "received {}x{} word for an {}x{} code",
                y.height(),
                y.num_columns(),
                self.m,
                self.num_columns()
            )));
        }
        let ring = &self.ring;
        let a0_len = d + self.k;
        let mut entries = Vec::with_capacity(constraints * unknowns);
        for (i, col) in y.columns().iter().enumerate() {
            for j in 0..=self.m - self.s {
                let x = ring.gamma_pow((i * self.m + j) as u64);
                let xpow: Vec<_> = std::iter::successors(Some(ring.one()), |p| Some(ring.mul(p, &x)))
                    .take(a0_len)
                    .collect();
                entries.extend(xpow.iter().cloned());
                for l in 0..self.s {
                    let yv = &col[j + l];
                    entries.extend(xpow[..=d].iter().map(|p| ring.mul(p, yv)));
                }
            }
        }
        let mat = RingMatrix::new(constraints, unknowns, entries)?;
        let sol = ring.kernel_vector(&mat).ok_or(Error::InterpolationFailed)?;
        let mut a = vec![ring.poly(sol[..a0_len].to_vec())];
        for l in 0..self.s {
            let start = a0_len + l * (d + 1);
            a.push(ring.poly(sol[start..start + d + 1].to_vec()));
        }
        let q = InterpolantQ { a, d };
        if q.is_zero() {
            return Err(Error::InterpolationFailed);
        }
        Ok(q)
    }

    /// `A_0 + Σ A_j(X)·f(γ^(j-1)·X)` in the given ring.
    pub fn evaluate_interpolant(&self, ring: &RingParams, a: &[RingPoly], f: &RingPoly) -> RingPoly {
        a.iter().skip(1).enumerate().fold(a[0].clone(), |acc, (j, aj)| {
            let shifted = ring.poly_scale_var(f, &ring.gamma_pow(j as u64));
            ring.poly_add(&acc, &ring.poly_mul(aj, &shifted))
        })
    }

    /// All `f` with `deg f < k` solving the interpolant equation, found one
    /// coefficient at a time.
    pub fn root_find_recursive(&self, q: &InterpolantQ, cap: usize) -> Result<Vec<RingPoly>> {
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut found = Vec::new();
        let mut prefix = Vec::with_capacity(self.k);
        self.recurse(&q.a, cap, &mut prefix, &mut found)?;
        let ring = &self.ring;
        let mut out: Vec<RingPoly> = found
            .into_iter()
            .map(|c| ring.poly(c))
            .filter(|f| self.evaluate_interpolant(ring, &q.a, f).is_zero())
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn recurse(
        &self,
        a: &[RingPoly],
        cap: usize,
        prefix: &mut Vec<RingElement>,
        out: &mut Vec<Vec<RingElement>>,
    ) -> Result<()> {
        let ring = &self.ring;
        if prefix.len() == self.k {
            if out.len() >= cap {
                return Err(Error::RootBudgetExceeded { cap });
            }
            out.push(prefix.clone());
            return Ok(());
        }
        let r = a.iter().filter_map(|c| ring.poly_x_valuation(c)).min().unwrap_or(0);
        let m: Vec<RingPoly> = a.iter().map(|c| ring.poly_shift_down(c, r)).collect();
        let at0 = |c: &RingPoly| c.coeff(0).cloned().unwrap_or_else(|| ring.zero());
        // M(0, Y, …, Y) = c0 + c1·Y
        let c0 = at0(&m[0]);
        let c1 = m[1..].iter().fold(ring.zero(), |acc, c| ring.add(&acc, &at0(c)));
        let lin = ring.poly(vec![c0, c1]);
        let roots = if lin.is_zero() {
            if ring.size() > cap as u64 {
                return Err(Error::RootBudgetExceeded { cap });
            }
            ring.elements().collect()
        } else {
            ring.poly_roots(&lin, cap)?
        };
        for zeta in roots {
            // Y_j <- γ^(j-1)·X·Y_j + ζ
            let sum = m[1..].iter().fold(RingPoly::zero(), |acc, c| ring.poly_add(&acc, c));
            let mut next = vec![ring.poly_add(&m[0], &ring.poly_scale(&sum, &zeta))];
            for (j, c) in m[1..].iter().enumerate() {
                next.push(ring.poly_shift_up(&ring.poly_scale(c, &ring.gamma_pow(j as u64)), 1));
            }
            prefix.push(zeta);
            self.recurse(&next, cap, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Structured solver: strips `X^l` and `p^i`, then solves a unit-diagonal
    /// system for every coefficient except the at most `s - 1` positions `u`
    /// where `B(γ^u) ≡ 0 (mod p)`. Solutions are reported modulo `p^(a-i)`.
    pub fn root_find_structured(&self, q: &InterpolantQ, cap: usize) -> Result<StructuredRoots> {
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ring = &self.ring;
        let s = q.s();
        let l = q.a.iter().filter_map(|c| ring.poly_x_valuation(c)).min().unwrap_or(0);
        let stripped: Vec<RingPoly> = q.a.iter().map(|c| ring.poly_shift_down(c, l)).collect();
        let scale = stripped.iter().map(|c| ring.poly_content_valuation(c)).min().unwrap_or(0);
        let small = ring.with_precision(ring.a() - scale);
        let a: Vec<RingPoly> = stripped
            .iter()
            .map(|c| small.poly(c.coeffs().iter().map(|x| ring.reduce_into(&ring.div_p_pow(x, scale), &small)).collect()))
            .collect();
        let zero = small.zero();
        let coef = |j: usize, c: i64| -> &RingElement {
            if c < 0 {
                &zero
            } else {
                a[j].coeff(c as usize).unwrap_or(&zero)
            }
        };
        let gpow: Vec<RingElement> = (0..self.k as u64).map(|u| small.gamma_pow(u)).collect();
        // B_c(x) = Σ_j a_{j,c}·x^(j-1)
        let b_at = |c: i64, u: usize| -> RingElement {
            (1..=s).rev().fold(small.zero(), |acc, j| small.add(&small.mul(&acc, &gpow[u]), coef(j, c)))
        };
        let width = a.iter().map(RingPoly::len).max().unwrap_or(0) as i64;
        let h = (0..width)
            .find(|&c| (0..=s).any(|j| small.valuation(coef(j, c)) == 0))
            .expect("some coefficient is a unit after removing p^i");
        let empty = |complete| StructuredRoots {
            candidates: Vec::new(),
            module: FreeModuleDescription {
                base: None,
                basis: Vec::new(),
                free_positions: Vec::new(),
                scale_exponent: scale,
            },
            complete,
        };
        if (1..=s).all(|j| small.valuation(coef(j, h)) > 0) {
            // coefficient h of the equation is a_{0,h} plus multiples of p
            return Ok(empty(true));
        }
        let free: Vec<usize> = (0..self.k).filter(|&u| small.valuation(&b_at(h, u)) > 0).collect();
        let det: Vec<usize> = (0..self.k).filter(|u| !free.contains(u)).collect();
        let dim = det.len();
        let mut dmat = RingMatrix::zeros(&small, dim, dim);
        for (ri, &rho) in det.iter().enumerate() {
            for (ci, &u) in det.iter().enumerate() {
                dmat.set(ri, ci, b_at(h + rho as i64 - u as i64, u));
            }
        }
        let assemble = |solved: &[RingElement], free_vals: &[(usize, RingElement)]| -> RingPoly {
            let mut c = vec![small.zero(); self.k];
            for (&u, x) in det.iter().zip(solved) {
                c[u] = x.clone();
            }
            for (u, x) in free_vals {
                c[*u] = x.clone();
            }
            small.poly(c)
        };
        let rhs0: Vec<_> = det.iter().map(|&rho| small.neg(coef(0, h + rho as i64))).collect();
        let h0 = assemble(&small.unit_diagonal_solve(&dmat, &rhs0)?, &[]);
        let mut basis = Vec::with_capacity(free.len());
        for &u in &free {
            let rhs: Vec<_> = det.iter().map(|&rho| small.neg(&b_at(h + rho as i64 - u as i64, u))).collect();
            basis.push(assemble(&small.unit_diagonal_solve(&dmat, &rhs)?, &[(u, small.one())]));
        }
        let module = FreeModuleDescription {
            base: Some(h0.clone()),
            basis: basis.clone(),
            free_positions: free.clone(),
            scale_exponent: scale,
        };
        let count = (small.size() as u128).checked_pow(free.len() as u32);
        if count.is_none_or(|c| c > cap as u128) {
            return Ok(StructuredRoots { candidates: Vec::new(), module, complete: false });
        }
        // the equation is affine in f: C(h0 + Σ α_u h_u) = C(h0) + Σ α_u·L(h_u)
        let c0 = self.evaluate_interpolant(&small, &a, &h0);
        let mut linear_a = a.clone();
        linear_a[0] = RingPoly::zero();
        let cu: Vec<RingPoly> = basis.iter().map(|hb| self.evaluate_interpolant(&small, &linear_a, hb)).collect();
        let mut candidates = Vec::new();
        let total = count.unwrap() as u64;
        let size = small.size();
        for idx in 0..total {
            let mut rest = idx;
            let alphas: Vec<RingElement> = (0..free.len())
                .map(|_| {
                    let x = small.element_at(rest % size);
                    rest /= size;
                    x
                })
                .collect();
            let residual = alphas
                .iter()
                .zip(&cu)
                .fold(c0.clone(), |acc, (al, c)| small.poly_add(&acc, &small.poly_scale(c, al)));
            if residual.is_zero() {
                let f = alphas
                    .iter()
                    .zip(&basis)
                    .fold(h0.clone(), |acc, (al, hb)| small.poly_add(&acc, &small.poly_scale(hb, al)));
                candidates.push(f);
            }
        }
        candidates.sort();
        Ok(StructuredRoots { candidates, module, complete: true })
    }

    pub fn list_decode(&self, y: &FoldedWord, t: usize) -> Result<FrsListResult> {
        self.list_decode_with(y, t, DecodeOptions::default())
    }

    /// Every message whose encoding agrees with `y` on at least `t` columns.
    pub fn list_decode_with(&self, y: &FoldedWord, t: usize, opts: DecodeOptions) -> Result<FrsListResult> {
        let d = self.choose_d();
        let min_t = self.min_agreement(d);
        if t < min_t {
            return Err(Error::AgreementTooLow { t, min_t });
        }
        let q = self.interpolate(y, d as i64)?;
        self.decode_with_interpolant(y, t, q, opts)
    }

    /// Decoding from a given interpolant. The interpolant must vanish at every
    /// constrained point of `y`.
    pub fn decode_with_interpolant(
        &self,
        y: &FoldedWord,
        t: usize,
        q: InterpolantQ,
        opts: DecodeOptions,
    ) -> Result<FrsListResult> {
        let ring = &self.ring;
        let structured = self.root_find_structured(&q, opts.enumeration_cap)?;
        let module = structured.module.clone();
        let mut status = if structured.complete { DecodeStatus::Complete } else { DecodeStatus::ModuleOnly };
        let messages: Vec<RingPoly> = match opts.finder {
            Finder::Recursive => {
                status = DecodeStatus::Complete;
                self.root_find_recursive(&q, opts.recursion_cap)?
            }
            Finder::Structured if module.scale_exponent == 0 => structured.candidates,
            Finder::Structured => {
                // only the low a - i digits are pinned down; recover the rest by
                // decoding the residual word over GR(p^i)
                let low = ring.a() - module.scale_exponent;
                let top = ring.with_precision(module.scale_exponent);
                let top_spec = self.with_ring(top.clone());
                let small = ring.with_precision(low);
                let mut out = Vec::new();
                for rep in &structured.candidates {
                    let f = ring.poly(rep.coeffs().iter().map(|c| ring.embed_from(c, &small)).collect());
                    let cw = self.encode(&f)?;
                    let z: Vec<RingElement> = y
                        .flat()
                        .iter()
                        .zip(cw.flat())
                        .map(|(yi, ci)| {
                            let diff = ring.sub(yi, &ci);
                            if ring.valuation(&diff) >= low {
                                ring.reduce_into(&ring.div_p_pow(&diff, low), &top)
                            } else {
                                top.zero()
                            }
                        })
                        .collect();
                    let z = FoldedWord::from_flat(&z, self.m)?;
                    let inner = top_spec.list_decode_with(&z, t, opts)?;
                    if inner.status == DecodeStatus::ModuleOnly {
                        status = DecodeStatus::ModuleOnly;
                    }
                    for g in inner.candidates {
                        let g = ring.poly(g.message.coeffs().iter().map(|c| ring.embed_from(c, &top)).collect());
                        out.push(ring.poly_add(&f, &ring.poly_mul_p_pow(&g, low)));
                    }
                }
                out
            }
        };
        let mut candidates: Vec<FrsCandidate> = messages
            .into_iter()
            .filter_map(|f| {
                let agreement = self.encode(&f).ok()?.agreement(y);
                (agreement >= t).then_some(FrsCandidate { message: f, agreement })
            })
            .collect();
        candidates.sort_by(|a, b| a.message.cmp(&b.message));
        candidates.dedup_by(|a, b| a.message == b.message);
        Ok(FrsListResult { candidates, module, status, d: q.d, t, s: self.s, interpolant: q })
    }
}
