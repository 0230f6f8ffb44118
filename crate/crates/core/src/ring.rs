//! Galois rings `GR(p^a, ell) = Z_{p^a}[x] / (h(x))`.
//!
//! Elements are stored in coefficient form over the basis `1, γ, …, γ^(ell-1)`
//! where `γ` is the class of `x`, a root of the basic primitive polynomial `h`.
//! All arithmetic goes through a [`RingParams`] context; elements carry no
//! back-reference to their ring.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default cap on `p^(a*ell)`.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

type Coords = SmallVec<[u64; 4]>;

/// An element of `GR(p^a, ell)` as `ell` residues mod `p^a`, low degree first.
///
/// The derived ordering is lexicographic on the coefficient list and is the
/// canonical iteration order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct RingElement {
    coeffs: Coords,
}

/// Element of the residue field `F_{p^ell}`, i.e. of [`RingParams::residue_field`].
pub type ResidueElement = RingElement;

impl RingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn from_coords(coeffs: Coords) -> Self {
        Self { coeffs }
    }
}

impl From<Vec<u64>> for RingElement {
    fn from(v: Vec<u64>) -> Self {
        Self { coeffs: Coords::from_vec(v) }
    }
}

impl From<RingElement> for Vec<u64> {
    fn from(e: RingElement) -> Self {
        e.coeffs.into_vec()
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs.as_slice())
    }
}

/// Serialized ring descriptor, e.g. `{"p":2,"a":2,"ell":2,"modulus":[1,1,1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u64,
    pub a: u32,
    pub ell: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

/// The ambient ring `GR(p^a, ell)` together with its Teichmüller generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingParams {
    p: u64,
    a: u32,
    ell: usize,
    q: u64,
    modulus: Vec<u64>,
    gamma: RingElement,
}

/// Builds `GR(p^a, ell)` with the default size budget.
pub fn build_ring(p: u64, a: u32, ell: usize) -> Result<RingParams> {
    RingParams::build(p, a, ell)
}

impl RingParams {
    pub fn build(p: u64, a: u32, ell: usize) -> Result<Self> {
        Self::build_with_budget(p, a, ell, DEFAULT_BUDGET)
    }

    /// Searches monic degree-`ell` polynomials over `F_p` for a primitive one and
    /// lifts it to a basic primitive polynomial over `Z_{p^a}`.
    pub fn build_with_budget(p: u64, a: u32, ell: usize, budget: u64) -> Result<Self> {
        validate_shape(p, a, ell, budget)?;
        let residue = find_primitive_poly(p, ell).ok_or(Error::DegreeUnsupported(ell))?;
        if a == 1 {
            return Ok(Self::from_parts(p, 1, ell, residue));
        }
        let modulus = teichmuller_lift_modulus(p, a, ell, &residue)?;
        Ok(Self::from_parts(p, a, ell, modulus))
    }

    /// Uses a caller-supplied modulus after checking that it is basic primitive.
    pub fn with_modulus(p: u64, a: u32, ell: usize, modulus: Vec<u64>) -> Result<Self> {
        Self::with_modulus_and_budget(p, a, ell, modulus, DEFAULT_BUDGET)
    }

    pub fn with_modulus_and_budget(
        p: u64,
        a: u32,
        ell: usize,
        modulus: Vec<u64>,
        budget: u64,
    ) -> Result<Self> {
        validate_shape(p, a, ell, budget)?;
        let q = p.pow(a);
        if modulus.len() != ell + 1 || modulus[ell] != 1 {
            return Err(Error::InvalidParameter(format!(
                "modulus must be monic of degree {ell}"
            )));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        let residue: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !is_primitive_mod_p(&residue, p) {
            return Err(Error::InvalidParameter(
                "modulus is not primitive modulo p".into(),
            ));
        }
        let order = p.pow(ell as u32) - 1;
        let x_pow = zpoly_powmod(&x_poly(), order, &modulus, q);
        if x_pow != one_poly(ell) {
            return Err(Error::InvalidParameter(format!(
                "x^{order} != 1 modulo the supplied polynomial"
            )));
        }
        Ok(Self::from_parts(p, a, ell, modulus))
    }

    pub fn from_descriptor(d: &RingDescriptor) -> Result<Self> {
        match &d.modulus {
            Some(m) => Self::with_modulus(d.p, d.a, d.ell, m.clone()),
            None => Self::build(d.p, d.a, d.ell),
        }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            p: self.p,
            a: self.a,
            ell: self.ell,
            modulus: Some(self.modulus.clone()),
        }
    }

    fn from_parts(p: u64, a: u32, ell: usize, modulus: Vec<u64>) -> Self {
        let q = p.pow(a);
        let gamma = if ell == 1 {
            RingElement::from_coords(smallvec::smallvec![(q - modulus[0]) % q])
        } else {
            let mut c = Coords::from_elem(0, ell);
            c[1] = 1;
            RingElement::from_coords(c)
        };
        Self { p, a, ell, q, modulus, gamma }
    }

    /// The same ring read modulo `p^precision`, `1 <= precision <= a`.
    pub fn with_precision(&self, precision: u32) -> RingParams {
        assert!(precision >= 1 && precision <= self.a, "precision out of range");
        let q = self.p.pow(precision);
        let modulus = self.modulus.iter().map(|c| c % q).collect();
        Self::from_parts(self.p, precision, self.ell, modulus)
    }

    pub fn residue_field(&self) -> RingParams {
        self.with_precision(1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `p^a`, the characteristic.
    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn gamma(&self) -> &RingElement {
        &self.gamma
    }

    /// `p^(a*ell)`.
    pub fn size(&self) -> u64 {
        self.q.pow(self.ell as u32)
    }

    /// `p^ell`.
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.ell as u32)
    }

    /// Multiplicative order of `γ`, `p^ell - 1`.
    pub fn gamma_order(&self) -> u64 {
        self.residue_size() - 1
    }

    pub fn unit_count(&self) -> u64 {
        self.size() / self.residue_size() * self.gamma_order()
    }

    pub fn zero(&self) -> RingElement {
        RingElement::from_coords(Coords::from_elem(0, self.ell))
    }

    pub fn one(&self) -> RingElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> RingElement {
        let mut coords = Coords::from_elem(0, self.ell);
        coords[0] = c % self.q;
        RingElement::from_coords(coords)
    }

    pub fn from_int(&self, c: i64) -> RingElement {
        let q = self.q as i128;
        self.from_u64((c as i128).rem_euclid(q) as u64)
    }

    /// Validated construction from coordinates; missing high coordinates are zero.
    pub fn element(&self, coeffs: &[u64]) -> Result<RingElement> {
        if coeffs.len() > self.ell || coeffs.iter().any(|&c| c >= self.q) {
            return Err(Error::RingMismatch);
        }
        let mut c = Coords::from_slice(coeffs);
        c.resize(self.ell, 0);
        Ok(RingElement::from_coords(c))
    }

    /// Reduces arbitrary coordinates into the ring.
    pub fn element_wrapping(&self, coeffs: &[u64]) -> RingElement {
        assert!(coeffs.len() <= self.ell, "too many coordinates");
        let mut c: Coords = coeffs.iter().map(|x| x % self.q).collect();
        c.resize(self.ell, 0);
        RingElement::from_coords(c)
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.coeffs.len() == self.ell && x.coeffs.iter().all(|&c| c < self.q)
    }

    fn check(&self, x: &RingElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, x: &RingElement) -> bool {
        x.coeffs[0] == 1 % self.q && x.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let q = self.q;
        RingElement::from_coords(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + b) % q)
                .collect(),
        )
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let q = self.q;
        RingElement::from_coords(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + q - b) % q)
                .collect(),
        )
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        let q = self.q;
        RingElement::from_coords(x.coeffs.iter().map(|a| (q - a) % q).collect())
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let q = self.q;
        let ell = self.ell;
        if ell == 1 {
            return RingElement::from_coords(smallvec::smallvec![mulmod(x.coeffs[0], y.coeffs[0], q)]);
        }
        let mut buf: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * ell - 1);
        for (i, &xi) in x.coeffs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mulmod(xi, yj, q)) % q;
            }
        }
        for d in (ell..2 * ell - 1).rev() {
            let c = buf[d];
            if c == 0 {
                continue;
            }
            let neg_c = q - c;
            for i in 0..ell {
                let t = d - ell + i;
                buf[t] = (buf[t] + mulmod(neg_c, self.modulus[i], q)) % q;
            }
            buf[d] = 0;
        }
        RingElement::from_coords(buf[..ell].iter().copied().collect())
    }

    /// Multiplication by an integer.
    pub fn scale(&self, x: &RingElement, c: u64) -> RingElement {
        let q = self.q;
        let c = c % q;
        RingElement::from_coords(x.coeffs.iter().map(|&a| mulmod(a, c, q)).collect())
    }

    pub fn pow(&self, x: &RingElement, mut e: u64) -> RingElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn try_add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub(x, y))
    }

    pub fn try_mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_neg(&self, x: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        Ok(self.neg(x))
    }

    /// `γ^j`, with `j` taken modulo the order of `γ`.
    pub fn gamma_pow(&self, j: u64) -> RingElement {
        self.pow(&self.gamma, j % self.gamma_order())
    }

    /// A unit iff its reduction mod `p` is nonzero.
    pub fn is_unit(&self, x: &RingElement) -> bool {
        x.coeffs.iter().any(|&c| c % self.p != 0)
    }

    pub fn invert(&self, x: &RingElement) -> Result<RingElement> {
        if !self.is_unit(x) {
            return Err(Error::NotAUnit);
        }
        Ok(self.pow(x, self.unit_count() - 1))
    }

    /// Largest `v` with `p^v | x`; `a` for zero.
    pub fn valuation(&self, x: &RingElement) -> u32 {
        x.coeffs
            .iter()
            .map(|&c| int_valuation(c, self.p, self.a))
            .min()
            .unwrap_or(self.a)
    }

    /// Coordinate-wise division by `p^v`. The result is only meaningful modulo
    /// `p^(a-v)`; callers must ensure `p^v | x`.
    pub fn div_p_pow(&self, x: &RingElement, v: u32) -> RingElement {
        let d = self.p.pow(v);
        debug_assert!(x.coeffs.iter().all(|c| c % d == 0), "not divisible by p^{v}");
        RingElement::from_coords(x.coeffs.iter().map(|c| c / d).collect())
    }

    pub fn mul_p_pow(&self, x: &RingElement, v: u32) -> RingElement {
        if v >= self.a {
            return self.zero();
        }
        self.scale(x, self.p.pow(v))
    }

    /// Canonical surjection onto the residue field.
    pub fn reduce_mod_p(&self, x: &RingElement) -> ResidueElement {
        RingElement::from_coords(x.coeffs.iter().map(|c| c % self.p).collect())
    }

    /// Coordinate-wise section of [`reduce_mod_p`](Self::reduce_mod_p).
    pub fn lift(&self, y: &ResidueElement) -> RingElement {
        RingElement::from_coords(y.coeffs.iter().map(|c| c % self.p).collect())
    }

    /// Reads `x` in a lower-precision copy of this ring.
    pub fn reduce_into(&self, x: &RingElement, target: &RingParams) -> RingElement {
        debug_assert!(target.p == self.p && target.ell == self.ell && target.a <= self.a);
        RingElement::from_coords(x.coeffs.iter().map(|c| c % target.q).collect())
    }

    /// Embeds an element of a lower-precision copy by reusing its coordinates.
    pub fn embed_from(&self, x: &RingElement, source: &RingParams) -> RingElement {
        debug_assert!(source.p == self.p && source.ell == self.ell && source.a <= self.a);
        x.clone()
    }

    /// Teichmüller representative of the residue class of `x`.
    pub fn teichmuller(&self, x: &RingElement) -> RingElement {
        if !self.is_unit(x) {
            return self.zero();
        }
        let exp = self.residue_size().pow(self.a - 1);
        self.pow(x, exp)
    }

    /// The Teichmüller set `{0, 1, γ, …, γ^(p^ell - 2)}`.
    pub fn teichmuller_set(&self) -> Vec<RingElement> {
        let mut out = vec![self.zero()];
        let mut g = self.one();
        for _ in 0..self.gamma_order() {
            out.push(g.clone());
            g = self.mul(&g, &self.gamma);
        }
        out
    }

    /// Digits `b_0, …, b_(a-1)` from the Teichmüller set with `x = Σ b_i p^i`.
    pub fn p_adic_decompose(&self, x: &RingElement) -> Vec<RingElement> {
        let mut digits = Vec::with_capacity(self.a as usize);
        let mut cur = x.clone();
        for _ in 0..self.a {
            let d = self.teichmuller(&cur);
            let diff = self.sub(&cur, &d);
            cur = self.div_p_pow(&diff, 1);
            digits.push(d);
        }
        digits
    }

    pub fn p_adic_recompose(&self, digits: &[RingElement]) -> RingElement {
        digits
            .iter()
            .enumerate()
            .fold(self.zero(), |acc, (i, d)| self.add(&acc, &self.mul_p_pow(d, i as u32)))
    }

    /// Element with index `idx` in canonical (lexicographic) order.
    pub fn element_at(&self, mut idx: u64) -> RingElement {
        let mut c = Coords::from_elem(0, self.ell);
        for slot in c.iter_mut().rev() {
            *slot = idx % self.q;
            idx /= self.q;
        }
        RingElement::from_coords(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    pub fn units(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.elements().filter(move |x| self.is_unit(x))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        RingElement::from_coords((0..self.ell).map(|_| rng.gen_range(0..self.q)).collect())
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        loop {
            let x = self.random_element(rng);
            if self.is_unit(&x) {
                return x;
            }
        }
    }
}

impl Serialize for RingParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = RingDescriptor::deserialize(d)?;
        RingParams::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn int_valuation(mut c: u64, p: u64, cap: u32) -> u32 {
    if c == 0 {
        return cap;
    }
    let mut v = 0;
    while c % p == 0 && v < cap {
        c /= p;
        v += 1;
    }
    v
}

fn validate_shape(p: u64, a: u32, ell: usize, budget: u64) -> Result<()> {
    if a == 0 || ell == 0 {
        return Err(Error::InvalidParameter("a and ell must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let exponent = a as u64 * ell as u64;
    let fits = u32::try_from(exponent)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .is_some_and(|size| size <= budget);
    if !fits {
        return Err(Error::BudgetExceeded { p, exponent, budget });
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn x_poly() -> Vec<u64> {
    vec![0, 1]
}

fn one_poly(ell: usize) -> Vec<u64> {
    let mut v = vec![0; ell];
    v[0] = 1;
    v
}

/// Reduces `a` (any length) modulo the monic `g` over `Z_m`, returning `deg g` coefficients.
fn zpoly_rem(a: &[u64], g: &[u64], m: u64) -> Vec<u64> {
    let n = g.len() - 1;
    let mut buf: Vec<u64> = a.iter().map(|c| c % m).collect();
    if buf.len() < n {
        buf.resize(n, 0);
    }
    for d in (n..buf.len()).rev() {
        let c = buf[d];
        if c == 0 {
            continue;
        }
        for i in 0..n {
            let t = d - n + i;
            buf[t] = (buf[t] + mulmod(m - c, g[i], m)) % m;
        }
        buf[d] = 0;
    }
    buf.truncate(n);
    buf
}

fn zpoly_mulmod(a: &[u64], b: &[u64], g: &[u64], m: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(x, y, m)) % m;
        }
    }
    zpoly_rem(&prod, g, m)
}

fn zpoly_powmod(base: &[u64], mut e: u64, g: &[u64], m: u64) -> Vec<u64> {
    let n = g.len() - 1;
    let mut b = zpoly_rem(base, g, m);
    let mut acc = one_poly(n);
    while e > 0 {
        if e & 1 == 1 {
            acc = zpoly_mulmod(&acc, &b, g, m);
        }
        e >>= 1;
        if e > 0 {
            b = zpoly_mulmod(&b, &b, g, m);
        }
    }
    acc
}

/// `g` monic over `F_p`; primitive iff `x` has order exactly `p^deg - 1` modulo `g`.
fn is_primitive_mod_p(g: &[u64], p: u64) -> bool {
    let ell = g.len() - 1;
    if g[0] % p == 0 {
        return false;
    }
    let order = p.pow(ell as u32) - 1;
    let x = x_poly();
    let one = one_poly(ell);
    if zpoly_powmod(&x, order, g, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| zpoly_powmod(&x, order / r, g, p) != one)
}

/// First primitive polynomial in the order of the base-`p` index of its low coefficients.
fn find_primitive_poly(p: u64, ell: usize) -> Option<Vec<u64>> {
    let count = p.pow(ell as u32);
    (0..count).find_map(|mut idx| {
        let mut g = vec![0u64; ell + 1];
        for c in g.iter_mut().take(ell) {
            *c = idx % p;
            idx /= p;
        }
        g[ell] = 1;
        is_primitive_mod_p(&g, p).then_some(g)
    })
}

/// Lifts a primitive residue polynomial to the basic primitive polynomial whose
/// root is the Teichmüller lift of `x`: `h(y) = Π_i (y - β^(p^i))`, `β = x^(p^(ell(a-1)))`.
fn teichmuller_lift_modulus(p: u64, a: u32, ell: usize, residue: &[u64]) -> Result<Vec<u64>> {
    let naive = RingParams::from_parts(p, a, ell, residue.to_vec());
    let beta = naive.pow(&naive.gamma, naive.residue_size().pow(a - 1));
    let mut prod = vec![naive.one()];
    let mut conj = beta;
    for _ in 0..ell {
        let mut next = vec![naive.zero(); prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            next[i + 1] = naive.add(&next[i + 1], c);
            next[i] = naive.sub(&next[i], &naive.mul(c, &conj));
        }
        prod = next;
        conj = naive.pow(&conj, p);
    }
    let mut modulus = Vec::with_capacity(ell + 1);
    for c in &prod {
        if c.coeffs[1..].iter().any(|&x| x != 0) {
            return Err(Error::DegreeUnsupported(ell));
        }
        modulus.push(c.coeffs[0]);
    }
    let q = p.pow(a);
    let order = p.pow(ell as u32) - 1;
    if zpoly_powmod(&x_poly(), order, &modulus, q) != one_poly(ell) {
        return Err(Error::DegreeUnsupported(ell));
    }
    Ok(modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &RingParams, c: &[u64]) -> RingElement {
        r.element(c).unwrap()
    }

    #[test]
    fn z4_is_degenerate_gamma_one() {
        let r = build_ring(2, 2, 1).unwrap();
        assert_eq!(r.gamma(), &r.one());
        assert_eq!(r.gamma_order(), 1);
    }

    #[test]
    fn gr42_gamma_has_order_three() {
        let r = build_ring(2, 2, 2).unwrap();
        assert_eq!(r.modulus(), &[1, 1, 1]);
        let g = r.gamma().clone();
        let g2 = r.mul(&g, &g);
        assert_eq!(g2, el(&r, &[3, 3]));
        assert_eq!(r.mul(&g, &g2), r.one());
    }

    #[test]
    fn z9_gamma_lifts_generator_of_order_two() {
        let r = build_ring(3, 2, 1).unwrap();
        let g = r.gamma().clone();
        assert_eq!(r.reduce_mod_p(&g).coeffs(), &[2]);
        assert_eq!(r.mul(&g, &g), r.one());
        // the only elements of Z_9 of order 2 are 8
        let order_two: Vec<_> = r
            .units()
            .filter(|u| !r.is_one(u) && r.is_one(&r.mul(u, u)))
            .collect();
        assert_eq!(order_two, vec![g]);
    }

    #[test]
    fn small_arithmetic_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        assert_eq!(z4.add(&z4.from_u64(2), &z4.from_u64(2)), z4.zero());
        assert_eq!(z4.mul(&z4.from_u64(3), &z4.from_u64(3)), z4.one());
        assert!(!z4.is_unit(&z4.from_u64(2)));
        assert_eq!(z4.invert(&z4.from_u64(3)).unwrap(), z4.from_u64(3));
        assert_eq!(z4.invert(&z4.from_u64(2)), Err(Error::NotAUnit));
    }

    #[test]
    fn inverse_of_gamma_matches_exhaustive_search() {
        let r = build_ring(2, 2, 2).unwrap();
        let g = r.gamma().clone();
        let found: Vec<_> = r.elements().filter(|y| r.is_one(&r.mul(&g, y))).collect();
        assert_eq!(found, vec![r.invert(&g).unwrap()]);
    }

    #[test]
    fn p_adic_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        assert_eq!(z4.p_adic_decompose(&z4.from_u64(2)), vec![z4.zero(), z4.one()]);
        assert_eq!(z4.p_adic_decompose(&z4.from_u64(3)), vec![z4.one(), z4.one()]);
        let r = build_ring(2, 2, 2).unwrap();
        let x = el(&r, &[1, 2]);
        let tset = r.teichmuller_set();
        let brute: Vec<_> = tset
            .iter()
            .flat_map(|b0| tset.iter().map(move |b1| (b0.clone(), b1.clone())))
            .filter(|(b0, b1)| r.add(b0, &r.scale(b1, 2)) == x)
            .collect();
        assert_eq!(brute.len(), 1);
        assert_eq!(r.p_adic_decompose(&x), vec![brute[0].0.clone(), brute[0].1.clone()]);
        assert_eq!(brute[0].1, *r.gamma());
    }

    #[test]
    fn residue_examples() {
        let z4 = build_ring(2, 2, 1).unwrap();
        assert_eq!(z4.reduce_mod_p(&z4.from_u64(3)).coeffs(), &[1]);
        let z9 = build_ring(3, 2, 1).unwrap();
        assert_eq!(z9.reduce_mod_p(&z9.from_u64(4)).coeffs(), &[1]);
        let r = build_ring(2, 2, 2).unwrap();
        assert_eq!(r.reduce_mod_p(&el(&r, &[1, 2])).coeffs(), &[1, 0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_ring(4, 1, 1), Err(Error::NotPrime(4)));
        assert!(matches!(build_ring(2, 0, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            RingParams::build_with_budget(2, 4, 5, 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(r_mismatch(), Err(Error::RingMismatch));
    }

    fn r_mismatch() -> Result<RingElement> {
        let r = build_ring(2, 2, 2).unwrap();
        let z9 = build_ring(3, 2, 1).unwrap();
        r.try_add(&r.one(), &z9.one())
    }

    #[test]
    fn descriptor_round_trip() {
        let r = build_ring(2, 2, 2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"p":2,"a":2,"ell":2,"modulus":[1,1,1]}"#);
        let back: RingParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let bad = r#"{"p":2,"a":2,"ell":2,"modulus":[1,0,1]}"#;
        assert!(serde_json::from_str::<RingParams>(bad).is_err());
    }

    #[test]
    fn lifted_moduli_are_basic_primitive() {
        for (p, a, ell) in [(2, 2, 4), (2, 3, 3), (3, 2, 3), (5, 2, 2), (2, 2, 5), (7, 2, 1)] {
            let r = build_ring(p, a, ell).unwrap();
            assert!(r.is_one(&r.pow(r.gamma(), r.gamma_order())));
            for d in prime_factors(r.gamma_order()) {
                assert!(!r.is_one(&r.pow(r.gamma(), r.gamma_order() / d)));
            }
        }
    }
}
