//! Shared error type for the whole library.
//!
//! Every fallible operation in this crate returns [`Error`]. Variants carry
//! enough structure for callers (notably the CLI) to report which stage
//! failed and why, without string matching.

use std::fmt;

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// The reason a matrix failed Kleene star validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KleeneViolation {
    /// The matrix is not square.
    NotSquare { rows: usize, cols: usize },
    /// An entry is tropically infinite where a finite value is required.
    InfiniteEntry { row: usize, col: usize },
    /// A diagonal entry is not tropical one (zero).
    NonzeroDiagonal { index: usize },
    /// The triangle inequality `a[i][k] + a[k][j] >= a[i][j]` fails.
    TriangleViolation { i: usize, k: usize, j: usize },
    /// The last row is not identically zero (required for canonical form).
    NonzeroLastRow { col: usize },
}

impl fmt::Display for KleeneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleeneViolation::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            KleeneViolation::InfiniteEntry { row, col } => {
                write!(f, "entry ({row}, {col}) is infinite")
            }
            KleeneViolation::NonzeroDiagonal { index } => {
                write!(f, "diagonal entry {index} is nonzero")
            }
            KleeneViolation::TriangleViolation { i, k, j } => {
                write!(
                    f,
                    "triangle inequality fails: a[{i}][{k}] + a[{k}][{j}] < a[{i}][{j}]"
                )
            }
            KleeneViolation::NonzeroLastRow { col } => {
                write!(f, "last-row entry in column {col} is nonzero")
            }
        }
    }
}

/// Unified error enum for all library operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes are incompatible (e.g. tropical matrix product).
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// The Kleene star diverges: some cycle has negative tropical weight.
    /// `index` is a vertex on such a cycle.
    NegativeCycle { index: usize },
    /// An exhaustive permutation computation was requested beyond its size cap.
    SizeLimitExceeded { size: usize, limit: usize },
    /// A finite value was required but an infinite entry was found.
    InfiniteEntry { row: usize, col: usize },
    /// A matrix fails Kleene star validation.
    NotKleeneStar { violation: KleeneViolation },
    /// A square rational system has no unique solution.
    Singular,
    /// A normal matrix was expected to have determinant +-1 but does not.
    /// `det` is the decimal rendering of the offending determinant.
    NotUnimodular { det: String },
    /// A Lawrence coordinate vanished: the objective is orthogonal to a facet
    /// direction at vertex `index` and must be perturbed.
    ZeroGamma { index: usize },
    /// A vertex lies on more than `dim` facets, so the simple-polytope
    /// volume formula does not apply. Coordinates are decimal renderings.
    NonSimple {
        point: Vec<String>,
        tight_facets: usize,
    },
    /// Every objective in the fallback ladder produced a zero Lawrence
    /// coordinate somewhere.
    ObjectiveExhausted { attempts: usize },
    /// The requested operation is restricted to low dimensions: exact
    /// oracles cover 2 and 3, SVG rendering covers 2.
    UnsupportedDimension { dim: usize },
    /// Random generation failed to produce a valid instance within its
    /// retry budget.
    GenerationExhausted { attempts: usize },
}

impl Error {
    /// The library stage an error originates from, used by diagnostics to
    /// prefix messages (`error[polytrope]: ...`).
    pub fn module(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. }
            | Error::NegativeCycle { .. }
            | Error::SizeLimitExceeded { .. }
            | Error::InfiniteEntry { .. } => "trop",
            Error::NotKleeneStar { .. } => "polytrope",
            Error::Singular | Error::NotUnimodular { .. } => "exact",
            Error::ZeroGamma { .. }
            | Error::NonSimple { .. }
            | Error::ObjectiveExhausted { .. } => "volume",
            Error::UnsupportedDimension { .. } => "oracle",
            Error::GenerationExhausted { .. } => "gen",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(
                    f,
                    "dimension mismatch: {}x{} against {}x{}",
                    left.0, left.1, right.0, right.1
                )
            }
            Error::NegativeCycle { index } => {
                write!(f, "negative cycle through vertex {index}; Kleene star diverges")
            }
            Error::SizeLimitExceeded { size, limit } => {
                write!(
                    f,
                    "permutation enumeration for size {size} exceeds the cap of {limit}"
                )
            }
            Error::InfiniteEntry { row, col } => {
                write!(f, "entry ({row}, {col}) is infinite where a finite value is required")
            }
            Error::NotKleeneStar { violation } => {
                write!(f, "matrix is not a Kleene star: {violation}")
            }
            Error::Singular => write!(f, "linear system is singular"),
            Error::NotUnimodular { det } => {
                write!(f, "normal matrix has determinant {det}, expected +-1")
            }
            Error::ZeroGamma { index } => {
                write!(f, "Lawrence coordinate {index} is zero; objective needs perturbing")
            }
            Error::NonSimple { point, tight_facets } => {
                write!(
                    f,
                    "vertex ({}) lies on {tight_facets} facets; polytope is not simple",
                    point.join(", ")
                )
            }
            Error::ObjectiveExhausted { attempts } => {
                write!(
                    f,
                    "no generic objective found after {attempts} attempts"
                )
            }
            Error::UnsupportedDimension { dim } => {
                write!(f, "operation not supported in dimension {dim}")
            }
            Error::GenerationExhausted { attempts } => {
                write!(f, "random generation exhausted {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_mentions_key_facts() {
        let e = Error::NegativeCycle { index: 2 };
        assert!(e.to_string().contains("vertex 2"));

        let e = Error::DimensionMismatch {
            left: (2, 3),
            right: (4, 5),
        };
        assert!(e.to_string().contains("2x3"));
        assert!(e.to_string().contains("4x5"));

        let e = Error::NotKleeneStar {
            violation: KleeneViolation::TriangleViolation { i: 0, k: 1, j: 2 },
        };
        assert!(e.to_string().contains("triangle"));
    }

    #[test]
    fn module_routing() {
        assert_eq!(Error::Singular.module(), "exact");
        assert_eq!(Error::NegativeCycle { index: 0 }.module(), "trop");
        assert_eq!(Error::ObjectiveExhausted { attempts: 3 }.module(), "volume");
        assert_eq!(Error::UnsupportedDimension { dim: 4 }.module(), "oracle");
        assert_eq!(Error::GenerationExhausted { attempts: 9 }.module(), "gen");
    }
}
