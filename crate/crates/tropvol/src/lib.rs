//! Exact Euclidean volumes of polytropes.
//!
//! A polytrope is a tropically convex polytope: the tropical convex hull
//! of `d + 1` points in tropical projective space, which is also an
//! ordinary convex polytope in ℝ^d. This crate models polytropes by their
//! Kleene star matrices, enumerates their ordinary vertices through
//! tropical Cramer's rule, and computes exact Euclidean volumes with the
//! simplified Lawrence vertex-summation formula. Independent oracles
//! (closed-form low-dimensional volumes and seeded Monte Carlo) verify
//! every step.
//!
//! All geometry is carried out in exact rational arithmetic; there is no
//! floating point anywhere in the computation paths.

pub mod error;
pub mod exact;
pub mod gen;
pub mod oracle;
pub mod polytrope;
pub mod pseudovertex;
pub mod trop;
pub mod volume;

pub use error::{Error, KleeneViolation, Result};
pub use exact::{det_exact, rat, solve_unimodular, IntMatrix, Rat};
pub use gen::{random_polytrope, random_polytrope_with_attempts, GenConfig};
pub use oracle::{
    cross_check, cross_check_with, exact_volume_low_dim, monte_carlo_volume, CheckReport,
    McEstimate, OracleOutcome,
};
pub use polytrope::{pair_normal, tropical_segment, HalfSpace, Polytrope};
pub use pseudovertex::{
    active_facets, enumerate_pseudovertices, is_maximal, is_simple, multi_indices,
    raw_cramer_points, simple_pseudovertices, tight_facets, tropical_cramer, MultiIndex,
    Pseudovertex,
};
pub use trop::{HomogeneousPoint, TropicalMatrix, TropicalScalar};
pub use volume::{
    compute_volume, compute_volume_with, vertex_term, Diagnostics, Objective, ObjectivePolicy,
    ObjectiveSpec, VertexTerm, VolumeReport,
};
