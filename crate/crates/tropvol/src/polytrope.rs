//! The central geometric object: a polytrope given by its Kleene star
//! matrix, with cached half-space representation, membership tests,
//! tropical segments, and facet classification.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, KleeneViolation, Result};
use crate::exact::Rat;
use crate::trop::{HomogeneousPoint, TropicalMatrix, TropicalScalar};

/// One constraint `x_i − x_j ≤ bound` in homogeneous coordinates with
/// `x_{d+1} = 0`. Indices are 1-based and in `1..=d+1`, matching the
/// usual tropical-vertex numbering; the projected normal in ℝ^d is
/// `e_i − e_j` (with `e_{d+1} = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub i: usize,
    pub j: usize,
    pub bound: Rat,
}

/// The projected normal `e_i − e_j` in ℝ^d for a 1-based ordered pair,
/// where `e_{d+1}` projects to the origin.
pub fn pair_normal(i: usize, j: usize, dim: usize) -> Vec<i64> {
    let mut n = vec![0i64; dim];
    if i <= dim {
        n[i - 1] += 1;
    }
    if j <= dim {
        n[j - 1] -= 1;
    }
    n
}

impl HalfSpace {
    /// The projected normal vector `e_i − e_j` in ℝ^d.
    pub fn normal(&self, dim: usize) -> Vec<i64> {
        pair_normal(self.i, self.j, dim)
    }

    /// Evaluate `x_i − x_j` on the homogeneous lift `(x, 0)` of a point
    /// in ℝ^d.
    fn evaluate(&self, x: &[Rat]) -> Rat {
        let dim = x.len();
        let xi = if self.i <= dim {
            x[self.i - 1].clone()
        } else {
            Rat::zero()
        };
        let xj = if self.j <= dim {
            x[self.j - 1].clone()
        } else {
            Rat::zero()
        };
        xi - xj
    }

    /// Whether the lifted point satisfies the constraint with equality.
    pub fn is_tight_at(&self, x: &[Rat]) -> bool {
        self.evaluate(x) == self.bound
    }

    /// Whether the lifted point satisfies the constraint.
    pub fn admits(&self, x: &[Rat]) -> bool {
        self.evaluate(x) <= self.bound
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} - x{} <= {}", self.i, self.j, self.bound)
    }
}

/// A validated polytrope: a `(d+1)×(d+1)` Kleene star matrix in canonical
/// form (zero last row) together with its cached H-representation.
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytrope {
    dim: usize,
    star: TropicalMatrix,
    hrep: Vec<HalfSpace>,
}

impl Polytrope {
    /// Validate a matrix as a canonical Kleene star and build the
    /// polytrope. Requires: square, all entries finite, zero diagonal,
    /// triangle property, identically zero last row.
    ///
    /// # Panics
    /// If the matrix is smaller than 2×2 (dimension 0 is meaningless).
    pub fn from_star(star: TropicalMatrix) -> Result<Self> {
        if let Some(violation) = star.kleene_violation() {
            return Err(Error::NotKleeneStar { violation });
        }
        let n = star.rows();
        assert!(n >= 2, "a polytrope needs dimension at least 1");
        for j in 0..n {
            if *star.get(n - 1, j) != TropicalScalar::one() {
                return Err(Error::NotKleeneStar {
                    violation: KleeneViolation::NonzeroLastRow { col: j },
                });
            }
        }
        let dim = n - 1;
        let hrep = build_hrep(&star, dim);
        Ok(Polytrope { dim, star, hrep })
    }

    /// Build the polytrope spanned by arbitrary tropical points: the
    /// columns of `v` are canonically projected (last row zeroed) and the
    /// result is closed under the Kleene star. This yields the
    /// maximal-dimensional cell of the tropical convex hull.
    pub fn from_points(v: &TropicalMatrix) -> Result<Self> {
        Polytrope::from_star(v.canonical_projection()?.kleene_star()?)
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The underlying Kleene star matrix.
    pub fn star(&self) -> &TropicalMatrix {
        &self.star
    }

    /// Star entry `(i, j)` (0-based) as a rational.
    pub(crate) fn star_rat(&self, i: usize, j: usize) -> &Rat {
        self.star
            .get(i, j)
            .as_rat()
            .expect("validated star has only finite entries")
    }

    /// Tropical vertex `i` (0-based) projected to ℝ^d: the first `d`
    /// entries of star column `i` (the last entry is 0 by canonicity).
    pub fn vertex(&self, i: usize) -> Vec<Rat> {
        (0..self.dim).map(|r| self.star_rat(r, i).clone()).collect()
    }

    /// All `d + 1` projected tropical vertices.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        (0..=self.dim).map(|i| self.vertex(i)).collect()
    }

    /// The cached half-space representation: exactly `d(d+1)` constraints
    /// `x_i − x_j ≤ star(i, j)`, grouped per column `j` with the diagonal
    /// slot replaced by the pair `(d+1, j)`, matching the order in which
    /// the constraint system is conventionally displayed.
    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    /// Exact membership test for a point of ℝ^d.
    ///
    /// # Panics
    /// If `x` does not have exactly `d` coordinates.
    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim, "point has wrong dimension");
        self.hrep.iter().all(|h| h.admits(x))
    }

    /// True iff the polytrope has zero width along some direction
    /// `e_i − e_j`, i.e. `star(i,j) + star(j,i) = 0` for some `i ≠ j`;
    /// the Euclidean volume is then 0.
    pub fn is_degenerate(&self) -> bool {
        let n = self.dim + 1;
        for i in 0..n {
            for j in i + 1..n {
                if (self.star_rat(i, j) + self.star_rat(j, i)).is_zero() {
                    return true;
                }
            }
        }
        false
    }

    /// The 1-based ordered pairs `(i, j)` whose constraint defines a
    /// facet (a face of dimension `d − 1`). Pair `(i, j)` is a facet iff
    /// no third index shortcuts it: `star(i,k) + star(k,j) > star(i,j)`
    /// strictly for every `k ∉ {i, j}`. When the triangle inequality is
    /// tight through some `k`, the constraint is implied by `(i, k)` and
    /// `(k, j)` and meets the polytrope in a face of lower dimension.
    pub fn facet_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim + 1;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.is_facet_pair(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Facet test for a 0-based ordered pair.
    pub(crate) fn is_facet_pair(&self, i: usize, j: usize) -> bool {
        let n = self.dim + 1;
        let bound = self.star_rat(i, j);
        (0..n)
            .filter(|&k| k != i && k != j)
            .all(|k| &(self.star_rat(i, k) + self.star_rat(k, j)) > bound)
    }
}

impl fmt::Display for Polytrope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.star.fmt(f)
    }
}

fn build_hrep(star: &TropicalMatrix, dim: usize) -> Vec<HalfSpace> {
    let n = dim + 1;
    let mut hrep = Vec::with_capacity(dim * n);
    for j in 1..=n {
        for i in 1..=dim {
            let (pi, pj) = if i == j { (n, j) } else { (i, j) };
            // bound = max over vertex columns c of x_i − x_j; the Kleene
            // triangle property makes this the star entry itself, which
            // we assert rather than assume.
            let bound = (0..n)
                .map(|c| {
                    let xi = star.get(pi - 1, c).as_rat().expect("finite star");
                    let xj = star.get(pj - 1, c).as_rat().expect("finite star");
                    xi - xj
                })
                .max()
                .expect("at least one vertex column");
            assert_eq!(
                &bound,
                star.get(pi - 1, pj - 1).as_rat().expect("finite star"),
                "vertex-max bound must equal the star entry"
            );
            hrep.push(HalfSpace {
                i: pi,
                j: pj,
                bound,
            });
        }
    }
    hrep
}

/// The tropical line segment between two finite homogeneous points,
/// returned as its ordered breakpoints projected to ℝ^d. Sorting the
/// coordinate differences `y_i − x_i` gives the distinct values of λ at
/// which `(λ ⊙ x) ⊕ y` changes slope; the first breakpoint is `x` and
/// the last is `y` (projectively).
///
/// # Panics
/// If the points have different sizes or any infinite coordinate.
pub fn tropical_segment(x: &HomogeneousPoint, y: &HomogeneousPoint) -> Vec<Vec<Rat>> {
    assert_eq!(x.coords().len(), y.coords().len(), "point size mismatch");
    let xs: Vec<&Rat> = x
        .coords()
        .iter()
        .map(|c| c.as_rat().expect("tropical_segment needs finite points"))
        .collect();
    let ys: Vec<&Rat> = y
        .coords()
        .iter()
        .map(|c| c.as_rat().expect("tropical_segment needs finite points"))
        .collect();
    let mut lambdas: Vec<Rat> = xs.iter().zip(&ys).map(|(xi, yi)| *yi - *xi).collect();
    lambdas.sort();
    lambdas.dedup();
    lambdas
        .iter()
        .map(|lambda| {
            let coords: Vec<Rat> = xs
                .iter()
                .zip(&ys)
                .map(|(xi, yi)| {
                    let shifted = lambda + *xi;
                    if shifted <= **yi {
                        shifted
                    } else {
                        (*yi).clone()
                    }
                })
                .collect();
            let last = coords.last().expect("nonempty point").clone();
            coords[..coords.len() - 1]
                .iter()
                .map(|c| c - &last)
                .collect()
        })
        .collect()
}
