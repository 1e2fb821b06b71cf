//! Min-plus tropical arithmetic: scalars, dense matrices, Kleene star
//! closure, tropical determinants, and canonical projection.
//!
//! The tropical semiring used throughout is (ℚ ∪ {∞}, ⊕, ⊙) with
//! `a ⊕ b = min(a, b)` and `a ⊙ b = a + b`. Infinity is neutral for ⊕ and
//! absorbing for ⊙. All finite values are exact rationals.

use std::fmt;
use std::ops::{Add, Index, Mul};

use num_traits::{Signed, Zero};

use crate::error::{Error, KleeneViolation, Result};
use crate::exact::Rat;

/// Exhaustive permutation enumeration in [`TropicalMatrix::tdet_min`] is
/// refused above this matrix size.
pub const DEFAULT_TDET_LIMIT: usize = 10;

/// One min-plus scalar: a finite exact rational or the tropical zero `∞`.
///
/// The derived order puts every finite value below `Infinity`, so `min`
/// over `TropicalScalar` is exactly tropical addition ⊕.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalScalar {
    Finite(Rat),
    Infinity,
}

impl TropicalScalar {
    /// The tropical multiplicative unit, ordinary 0.
    pub fn one() -> Self {
        TropicalScalar::Finite(Rat::zero())
    }

    /// Wrap an exact rational.
    pub fn finite(value: Rat) -> Self {
        TropicalScalar::Finite(value)
    }

    /// Convenience constructor from a machine integer.
    pub fn from_int(value: i64) -> Self {
        TropicalScalar::Finite(Rat::from_integer(value.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropicalScalar::Finite(_))
    }

    /// The rational payload, if finite.
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            TropicalScalar::Finite(r) => Some(r),
            TropicalScalar::Infinity => None,
        }
    }

    /// Tropical addition ⊕ (minimum).
    pub fn t_add(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication ⊙ (ordinary sum, with absorbing `∞`).
    pub fn t_mul(&self, other: &Self) -> Self {
        match (self, other) {
            (TropicalScalar::Finite(a), TropicalScalar::Finite(b)) => {
                TropicalScalar::Finite(a + b)
            }
            _ => TropicalScalar::Infinity,
        }
    }
}

impl Add for TropicalScalar {
    type Output = TropicalScalar;
    /// `+` is tropical ⊕, i.e. `min`.
    fn add(self, rhs: TropicalScalar) -> TropicalScalar {
        if self <= rhs {
            self
        } else {
            rhs
        }
    }
}

impl Mul for TropicalScalar {
    type Output = TropicalScalar;
    /// `*` is tropical ⊙, i.e. ordinary addition.
    fn mul(self, rhs: TropicalScalar) -> TropicalScalar {
        self.t_mul(&rhs)
    }
}

impl Add for &TropicalScalar {
    type Output = TropicalScalar;
    fn add(self, rhs: &TropicalScalar) -> TropicalScalar {
        self.t_add(rhs)
    }
}

impl Mul for &TropicalScalar {
    type Output = TropicalScalar;
    fn mul(self, rhs: &TropicalScalar) -> TropicalScalar {
        self.t_mul(rhs)
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalScalar::Finite(r) => write!(f, "{r}"),
            TropicalScalar::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of tropical projective space: `d + 1` coordinates modulo adding
/// a common constant to every finite coordinate. Not all coordinates may
/// be `∞`.
#[derive(Debug, Clone)]
pub struct HomogeneousPoint {
    coords: Vec<TropicalScalar>,
}

impl HomogeneousPoint {
    /// Build a point from its coordinate representative.
    ///
    /// # Panics
    /// If `coords` is empty or every coordinate is `∞`.
    pub fn new(coords: Vec<TropicalScalar>) -> Self {
        assert!(
            coords.iter().any(TropicalScalar::is_finite),
            "homogeneous point needs at least one finite coordinate"
        );
        HomogeneousPoint { coords }
    }

    pub fn coords(&self) -> &[TropicalScalar] {
        &self.coords
    }

    /// Ambient dimension `d` (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Normalize so the last coordinate is 0 and drop it, landing in ℝ^d.
    /// Returns `None` if any coordinate (in particular the last) is `∞`.
    pub fn project(&self) -> Option<Vec<Rat>> {
        let last = self.coords.last().and_then(TropicalScalar::as_rat)?;
        self.coords[..self.coords.len() - 1]
            .iter()
            .map(|c| c.as_rat().map(|r| r - last))
            .collect()
    }
}

impl PartialEq for HomogeneousPoint {
    /// Projective equality: identical `∞` pattern and a single common
    /// additive shift between all finite coordinates.
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let mut shift: Option<Rat> = None;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match (a, b) {
                (TropicalScalar::Infinity, TropicalScalar::Infinity) => {}
                (TropicalScalar::Finite(x), TropicalScalar::Finite(y)) => {
                    let diff = x - y;
                    match &shift {
                        None => shift = Some(diff),
                        Some(s) if *s == diff => {}
                        Some(_) => return false,
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for HomogeneousPoint {}

impl fmt::Display for HomogeneousPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over [`TropicalScalar`]. Immutable after
/// construction; all arithmetic uses ⊕/⊙ only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TropicalScalar>,
}

impl TropicalMatrix {
    /// Build from explicit rows.
    ///
    /// # Panics
    /// If `rows` is empty or ragged.
    pub fn from_rows(rows: Vec<Vec<TropicalScalar>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix needs at least one column");
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix constructor"
        );
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        TropicalMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Build from a generator function over `(row, col)`.
    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> TropicalScalar,
    {
        assert!(rows > 0 && cols > 0, "matrix needs positive dimensions");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        TropicalMatrix { rows, cols, data }
    }

    /// Fixture-friendly constructor from integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        TropicalMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| TropicalScalar::from_int(v)).collect())
                .collect(),
        )
    }

    /// The tropical identity: 0 on the diagonal, `∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        TropicalMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TropicalScalar::one()
            } else {
                TropicalScalar::Infinity
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TropicalScalar {
        &self.data[i * self.cols + j]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<TropicalScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Copy with column `k` removed.
    ///
    /// # Panics
    /// If `k` is out of range or the matrix has a single column.
    pub fn without_column(&self, k: usize) -> Self {
        assert!(k < self.cols && self.cols > 1);
        TropicalMatrix::from_fn(self.rows, self.cols - 1, |i, j| {
            self.get(i, if j < k { j } else { j + 1 }).clone()
        })
    }

    /// Min-plus matrix product: entry `(i, k) = ⊕_j self(i,j) ⊙ rhs(j,k)`.
    pub fn trop_mul(&self, rhs: &TropicalMatrix) -> Result<TropicalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(TropicalMatrix::from_fn(self.rows, rhs.cols, |i, k| {
            let mut acc = TropicalScalar::Infinity;
            for j in 0..self.cols {
                let term = self.get(i, j).t_mul(rhs.get(j, k));
                if term < acc {
                    acc = term;
                }
            }
            acc
        }))
    }

    /// Entrywise tropical sum ⊕ (minimum).
    pub fn trop_add(&self, rhs: &TropicalMatrix) -> Result<TropicalMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(TropicalMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).t_add(rhs.get(i, j))
        }))
    }

    /// Kleene star closure `A* = I ⊕ A ⊕ A^⊙2 ⊕ … ⊕ A^⊙(n−1)`, computed by
    /// Floyd–Warshall relaxation (all-pairs shortest paths).
    ///
    /// Fails with [`Error::NegativeCycle`] when some cycle has negative
    /// tropical weight, in which case the series does not stabilize.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn kleene_star(&self) -> Result<TropicalMatrix> {
        assert!(self.is_square(), "kleene_star needs a square matrix");
        let n = self.rows;
        // I ⊕ A: shortest paths allow the empty path at every vertex.
        let mut d: Vec<TropicalScalar> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = self.get(i, j).clone();
                if i == j {
                    e = e.t_add(&TropicalScalar::one());
                }
                d.push(e);
            }
        }
        for k in 0..n {
            for i in 0..n {
                if !d[i * n + k].is_finite() {
                    continue;
                }
                for j in 0..n {
                    let via = d[i * n + k].t_mul(&d[k * n + j]);
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        for (i, entry) in d.iter().step_by(n + 1).enumerate() {
            if let TropicalScalar::Finite(v) = entry {
                if v.is_negative() {
                    return Err(Error::NegativeCycle { index: i });
                }
            }
        }
        Ok(TropicalMatrix {
            rows: n,
            cols: n,
            data: d,
        })
    }

    /// Why this matrix fails to be a Kleene star, or `None` if it is one.
    /// Checks squareness, finiteness, zero diagonal, and the triangle
    /// property `a(i,k) + a(k,j) ≥ a(i,j)` over all index triples.
    pub fn kleene_violation(&self) -> Option<KleeneViolation> {
        if !self.is_square() {
            return Some(KleeneViolation::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        for i in 0..n {
            for j in 0..n {
                if !self.get(i, j).is_finite() {
                    return Some(KleeneViolation::InfiniteEntry { row: i, col: j });
                }
            }
        }
        for i in 0..n {
            if *self.get(i, i) != TropicalScalar::one() {
                return Some(KleeneViolation::NonzeroDiagonal { index: i });
            }
        }
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    if self.get(i, k).t_mul(self.get(k, j)) < *self.get(i, j) {
                        return Some(KleeneViolation::TriangleViolation { i, k, j });
                    }
                }
            }
        }
        None
    }

    /// True iff the matrix is square with zero diagonal and satisfies the
    /// triangle property. Infinite entries yield `false`.
    pub fn is_kleene_star(&self) -> bool {
        self.kleene_violation().is_none()
    }

    /// Tropical determinant (min-plus permanent): the minimum over all
    /// permutations σ of `Σ_i a(i, σ(i))`, computed by exhaustive
    /// enumeration. `∞` iff every permutation meets an infinite entry.
    pub fn tdet_min(&self) -> Result<TropicalScalar> {
        self.tdet_min_with_limit(DEFAULT_TDET_LIMIT)
    }

    /// As [`tdet_min`](Self::tdet_min) with an explicit size cap.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn tdet_min_with_limit(&self, limit: usize) -> Result<TropicalScalar> {
        assert!(self.is_square(), "tdet_min needs a square matrix");
        let n = self.rows;
        if n > limit {
            return Err(Error::SizeLimitExceeded { size: n, limit });
        }
        let mut best = TropicalScalar::Infinity;
        let mut used = vec![false; n];
        self.tdet_rec(0, &mut used, &Rat::zero(), &mut best);
        Ok(best)
    }

    fn tdet_rec(&self, row: usize, used: &mut [bool], acc: &Rat, best: &mut TropicalScalar) {
        let n = self.rows;
        if row == n {
            let total = TropicalScalar::Finite(acc.clone());
            if total < *best {
                *best = total;
            }
            return;
        }
        for col in 0..n {
            if used[col] {
                continue;
            }
            // A permutation through an ∞ entry contributes ∞, which never
            // beats the running minimum (initialized to ∞).
            if let TropicalScalar::Finite(v) = self.get(row, col) {
                used[col] = true;
                self.tdet_rec(row + 1, used, &(acc + v), best);
                used[col] = false;
            }
        }
    }

    /// Subtract the last-row entry from each column, making the last row
    /// identically zero while fixing each column's projective class.
    pub fn canonical_projection(&self) -> Result<TropicalMatrix> {
        assert!(self.is_square(), "canonical_projection needs a square matrix");
        let n = self.rows;
        let mut last = Vec::with_capacity(n);
        for j in 0..n {
            match self.get(n - 1, j) {
                TropicalScalar::Finite(v) => last.push(v.clone()),
                TropicalScalar::Infinity => {
                    return Err(Error::InfiniteEntry { row: n - 1, col: j })
                }
            }
        }
        Ok(TropicalMatrix::from_fn(n, n, |i, j| match self.get(i, j) {
            TropicalScalar::Finite(v) => TropicalScalar::Finite(v - &last[j]),
            TropicalScalar::Infinity => TropicalScalar::Infinity,
        }))
    }
}

impl Index<(usize, usize)> for TropicalMatrix {
    type Output = TropicalScalar;
    fn index(&self, (i, j): (usize, usize)) -> &TropicalScalar {
        self.get(i, j)
    }
}

impl fmt::Display for TropicalMatrix {
    /// Space-separated rows with right-aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let mut widths = vec![0usize; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                widths[j] = widths[j].max(rendered[i * self.cols + j].len());
            }
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>w$}", rendered[i * self.cols + j], w = widths[j])?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
