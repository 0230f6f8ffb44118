//! Dense linear algebra over `GR(p^a, ell)`.
//!
//! Everything rests on one elimination: pick unit pivots (first unit in a
//! row-major scan of the remaining block), move them to the diagonal and clear
//! their columns. What is left is a block whose entries are all divisible by
//! `p`; dividing out the smallest power of `p` gives a matrix over a ring of
//! lower precision and the same procedure recurses there.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingParams};

/// Row-major matrix. Ring context is supplied by the `RingParams` methods.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(ring: &RingParams, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &RingParams, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Serialize for RingMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<RingElement>>::deserialize(d)?;
        RingMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Result of unit-pivot elimination on `[A | b]`.
///
/// In permuted column order the matrix reads `[[I_r, B], [0, R]]` with every
/// entry of `R` divisible by `p`.
struct Eliminated {
    m: Vec<Vec<RingElement>>,
    rhs: Vec<RingElement>,
    /// `perm[j]` is the original column sitting at position `j`.
    perm: Vec<usize>,
    rank: usize,
}

impl RingParams {
    fn eliminate(&self, a: &RingMatrix, b: Option<&[RingElement]>) -> Eliminated {
        let (rows, cols) = (a.rows, a.cols);
        let mut m = a.to_rows();
        let mut rhs = b.map_or_else(|| vec![self.zero(); rows], <[_]>::to_vec);
        let mut perm: Vec<usize> = (0..cols).collect();
        let mut rank = 0;
        while rank < rows.min(cols) {
            let found = (rank..rows)
                .flat_map(|i| (rank..cols).map(move |j| (i, j)))
                .find(|&(i, j)| self.is_unit(&m[i][j]));
            let Some((pi, pj)) = found else { break };
            m.swap(rank, pi);
            rhs.swap(rank, pi);
            if pj != rank {
                for row in m.iter_mut() {
                    row.swap(rank, pj);
                }
                perm.swap(rank, pj);
            }
            let inv = self.invert(&m[rank][rank]).expect("unit pivot");
            for x in m[rank].iter_mut() {
                *x = self.mul(x, &inv);
            }
            rhs[rank] = self.mul(&rhs[rank], &inv);
            let pivot_row = m[rank].clone();
            let pivot_rhs = rhs[rank].clone();
            for i in 0..rows {
                if i == rank || self.is_zero(&m[i][rank]) {
                    continue;
                }
                let c = m[i][rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = self.sub(x, &self.mul(&c, y));
                }
                rhs[i] = self.sub(&rhs[i], &self.mul(&c, &pivot_rhs));
            }
            rank += 1;
        }
        Eliminated { m, rhs, perm, rank }
    }

    /// Number of unit pivots; equals the McCoy rank since the residual block
    /// is annihilated by `p^(a-1)`.
    pub fn mccoy_rank(&self, a: &RingMatrix) -> usize {
        self.eliminate(a, None).rank
    }

    pub fn mat_vec(&self, a: &RingMatrix, x: &[RingElement]) -> Result<Vec<RingElement>> {
        if x.len() != a.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                a.cols
            )));
        }
        Ok((0..a.rows)
            .map(|i| {
                a.row(i)
                    .iter()
                    .zip(x)
                    .fold(self.zero(), |acc, (u, v)| self.add(&acc, &self.mul(u, v)))
            })
            .collect())
    }

    pub fn mat_mul(&self, a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut out = RingMatrix::zeros(self, a.rows, b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let s = (0..a.cols).fold(self.zero(), |acc, t| {
                    self.add(&acc, &self.mul(a.get(i, t), b.get(t, j)))
                });
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    /// Nonzero `x` with `Ax = 0`, or `None` when `A` has full column McCoy
    /// rank. A vector with a unit coordinate is returned whenever one exists.
    pub fn kernel_vector(&self, a: &RingMatrix) -> Option<Vec<RingElement>> {
        let el = self.eliminate(a, None);
        let free = a.cols - el.rank;
        if free == 0 {
            return None;
        }
        let y2 = match self.residual(&el, a.rows) {
            None => unit_vector(self, free, 0, 0),
            Some((v, small, r1)) => match small.kernel_vector(&r1) {
                Some(z) => z.iter().map(|c| self.embed_from(c, &small)).collect(),
                None => unit_vector(self, free, 0, self.a() - v),
            },
        };
        Some(self.back_substitute(&el, &y2))
    }

    /// Some `x` with `Ax = b`, or `None` if there is none.
    pub fn solve(&self, a: &RingMatrix, b: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
        if b.len() != a.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                a.rows
            )));
        }
        let el = self.eliminate(a, Some(b));
        let free = a.cols - el.rank;
        let tail = &el.rhs[el.rank..];
        let y2 = match self.residual(&el, a.rows) {
            None => {
                if tail.iter().any(|c| !self.is_zero(c)) {
                    return Ok(None);
                }
                vec![self.zero(); free]
            }
            Some((v, small, r1)) => {
                if tail.iter().any(|c| self.valuation(c) < v) {
                    return Ok(None);
                }
                let b1: Vec<_> =
                    tail.iter().map(|c| self.reduce_into(&self.div_p_pow(c, v), &small)).collect();
                match small.solve(&r1, &b1)? {
                    Some(z) => z.iter().map(|c| self.embed_from(c, &small)).collect(),
                    None => return Ok(None),
                }
            }
        };
        let mut x = self.back_substitute(&el, &y2);
        // back_substitute solved the homogeneous rows; add the pivot part of b'
        for (j, c) in el.rhs[..el.rank].iter().enumerate() {
            x[el.perm[j]] = self.add(&x[el.perm[j]], c);
        }
        Ok(Some(x))
    }

    /// The residual block `R = p^v·R1` as `(v, GR(p^(a-v)), R1 mod p^(a-v))`,
    /// or `None` when it is empty or zero.
    fn residual(&self, el: &Eliminated, rows: usize) -> Option<(u32, RingParams, RingMatrix)> {
        let r = el.rank;
        let cols = el.perm.len();
        if rows == r || cols == r {
            return None;
        }
        let v = (r..rows)
            .flat_map(|i| el.m[i][r..].iter())
            .map(|c| self.valuation(c))
            .min()
            .unwrap_or(self.a());
        if v >= self.a() {
            return None;
        }
        let small = self.with_precision(self.a() - v);
        let entries = (r..rows)
            .flat_map(|i| el.m[i][r..].iter())
            .map(|c| self.reduce_into(&self.div_p_pow(c, v), &small))
            .collect();
        let r1 = RingMatrix::new(rows - r, cols - r, entries).expect("shape");
        Some((v, small, r1))
    }

    /// Given the free part `y2` (permuted order), returns `x` in original order
    /// with pivot coordinates `y1 = -B·y2`.
    fn back_substitute(&self, el: &Eliminated, y2: &[RingElement]) -> Vec<RingElement> {
        let r = el.rank;
        let cols = el.perm.len();
        let mut x = vec![self.zero(); cols];
        for (t, val) in y2.iter().enumerate() {
            x[el.perm[r + t]] = val.clone();
        }
        for i in 0..r {
            let s = (r..cols).fold(self.zero(), |acc, j| {
                self.add(&acc, &self.mul(&el.m[i][j], &y2[j - r]))
            });
            x[el.perm[i]] = self.neg(&s);
        }
        x
    }

    /// Solves `Dx = rhs` for square `D` with unit diagonal and strictly upper
    /// entries divisible by `p`. Such a matrix is invertible (it is lower
    /// triangular with unit diagonal mod `p`), so the solution is unique.
    pub fn unit_diagonal_solve(&self, d: &RingMatrix, rhs: &[RingElement]) -> Result<Vec<RingElement>> {
        let n = d.rows;
        if d.cols != n || rhs.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} system with right-hand side of length {}",
                d.rows,
                d.cols,
                rhs.len()
            )));
        }
        for i in 0..n {
            if !self.is_unit(d.get(i, i)) {
                return Err(Error::DiagonalNotUnit(i));
            }
            for j in i + 1..n {
                if self.valuation(d.get(i, j)) == 0 {
                    return Err(Error::UpperNotDivisibleByP(i, j));
                }
            }
        }
        let mut m = d.to_rows();
        let mut b = rhs.to_vec();
        // clearing below the diagonal only adds multiples of p to later
        // diagonal entries, so every pivot stays a unit
        for i in 0..n {
            let inv = self.invert(&m[i][i]).map_err(|_| Error::DiagonalNotUnit(i))?;
            for k in i + 1..n {
                if self.is_zero(&m[k][i]) {
                    continue;
                }
                let c = self.mul(&m[k][i], &inv);
                for j in i..n {
                    let t = self.mul(&c, &m[i][j]);
                    m[k][j] = self.sub(&m[k][j], &t);
                }
                b[k] = self.sub(&b[k], &self.mul(&c, &b[i]));
            }
        }
        let mut x = vec![self.zero(); n];
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(b[i].clone(), |acc, j| self.sub(&acc, &self.mul(&m[i][j], &x[j])));
            x[i] = self.mul(&s, &self.invert(&m[i][i]).map_err(|_| Error::DiagonalNotUnit(i))?);
        }
        Ok(x)
    }

    pub fn matrix_from_ints(&self, rows: &[&[i64]]) -> Result<RingMatrix> {
        RingMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&c| self.from_int(c)).collect()).collect(),
        )
    }
}

fn unit_vector(ring: &RingParams, len: usize, pos: usize, p_exp: u32) -> Vec<RingElement> {
    let mut v = vec![ring.zero(); len];
    v[pos] = ring.mul_p_pow(&ring.one(), p_exp);
    v
}
