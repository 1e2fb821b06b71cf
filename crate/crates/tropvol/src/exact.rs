//! Exact integer linear algebra for the Lawrence formula: arbitrary
//! precision determinants via fraction-free elimination and unimodular
//! system solves.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rat`]; handy in tests and fixtures.
pub fn rat(value: i64) -> Rat {
    Rat::from_integer(value.into())
}

/// Dense row-major matrix of arbitrary-precision integers. When built
/// from projected facet normals every entry is in {−1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// Build from explicit rows.
    ///
    /// # Panics
    /// If `rows` is empty or ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix needs at least one column");
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix constructor"
        );
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        IntMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Fixture-friendly constructor from machine-integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Build the matrix whose `j`-th column is `columns[j]`.
    ///
    /// # Panics
    /// If `columns` is empty or ragged.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Self {
        assert!(!columns.is_empty(), "matrix needs at least one column");
        let rows = columns[0].len();
        assert!(rows > 0, "matrix needs at least one row");
        assert!(
            columns.iter().all(|c| c.len() == rows),
            "ragged columns in matrix constructor"
        );
        let mut data = Vec::with_capacity(rows * columns.len());
        for i in 0..rows {
            for col in columns {
                data.push(col[i].clone());
            }
        }
        IntMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Copy with column `k` replaced by `col`.
    fn with_column(&self, k: usize, col: &[BigInt]) -> Self {
        assert_eq!(col.len(), self.rows);
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.cols + k] = col[i].clone();
        }
        out
    }

    /// Matrix-vector product.
    fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row
/// pivoting. Every intermediate division is exact, so the computation
/// never leaves the integers.
///
/// # Panics
/// If the matrix is not square.
pub fn det_exact(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "det_exact needs a square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<BigInt> = m.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * a[n * n - 1].clone()
}

/// Solve `A·γ = c` for a unimodular integer matrix `A` (|det A| = 1), by
/// Cramer's rule over exact integer determinants. The result is integral
/// and verified by back-substitution.
///
/// # Panics
/// If `A` is not square or `c` has the wrong length.
pub fn solve_unimodular(a: &IntMatrix, c: &[BigInt]) -> Result<Vec<BigInt>> {
    assert_eq!(a.rows, a.cols, "solve_unimodular needs a square matrix");
    assert_eq!(c.len(), a.rows, "right-hand side has wrong length");
    let det = det_exact(a);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    // det ∈ {±1}, so dividing by it is multiplying by it.
    let gamma: Vec<BigInt> = (0..a.cols)
        .map(|k| det_exact(&a.with_column(k, c)) * &det)
        .collect();
    assert_eq!(a.mul_vec(&gamma), c, "unimodular solve failed verification");
    Ok(gamma)
}
