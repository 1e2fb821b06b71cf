//! The simplified Lawrence volume formula for simple polytropes: exact
//! per-vertex rational terms and their sum.
//!
//! For a simple polytope with vertex set `V` and a linear functional
//! `f = cᵀx + offset` that is non-constant on every edge, Lawrence's
//! formula gives `vol = Σ_{v ∈ V} N_v` where
//! `N_v = f(v)^d / (d! · δ_v · γ_1 ⋯ γ_d)`, with `γ` expressing `c` in
//! the basis of tight facet normals at `v` and `δ_v` the absolute
//! determinant of those normals. For polytropes the normal matrix is
//! totally unimodular, so `δ_v = 1` and every `γ_j` is a nonzero integer.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{det_exact, solve_unimodular, IntMatrix, Rat};
use crate::polytrope::{pair_normal, Polytrope};
use crate::pseudovertex::{multi_indices, simple_pseudovertices, Pseudovertex};

/// A linear objective `f(x) = cᵀx + offset` with integer coefficients.
/// The offset shifts every `f(v)` but never the total volume; it is kept
/// for fidelity to the formula's statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    c: Vec<BigInt>,
    offset: BigInt,
}

impl Objective {
    /// # Panics
    /// If `c` is empty or the zero vector.
    pub fn new(c: Vec<BigInt>, offset: BigInt) -> Self {
        assert!(!c.is_empty(), "objective needs at least one coefficient");
        assert!(
            c.iter().any(|x| !x.is_zero()),
            "objective vector must be nonzero"
        );
        Objective { c, offset }
    }

    /// The all-ones objective `f(x) = Σ x_i`, the default for polytropes.
    pub fn ones(d: usize) -> Self {
        Objective::new(vec![BigInt::one(); d], BigInt::zero())
    }

    /// A deterministic fallback: `c = (1, M, M², …, M^{d−1})` with `M`
    /// derived from the constraint bounds so that the powers dominate any
    /// bound-level coincidences.
    pub fn powers(p: &Polytrope) -> Self {
        let max_bound = p
            .hrep()
            .iter()
            .map(|h| h.bound.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        let m: BigInt = BigInt::one() + 2 * (max_bound.ceil().to_integer() + 1);
        let mut c = Vec::with_capacity(p.dim());
        let mut power = BigInt::one();
        for _ in 0..p.dim() {
            c.push(power.clone());
            power *= &m;
        }
        Objective::new(c, BigInt::zero())
    }

    /// A seeded random small-integer objective (entries in `[−9, 9]`,
    /// not all zero). Deterministic for a given `(d, seed)`.
    pub fn random(d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let c: Vec<BigInt> = (0..d).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            if c.iter().any(|x| !x.is_zero()) {
                return Objective::new(c, BigInt::zero());
            }
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.c
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// Evaluate `f(x) = cᵀx + offset` exactly.
    ///
    /// # Panics
    /// If `x` has the wrong length.
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.c.len(), "objective/point dimension mismatch");
        let mut acc = Rat::from_integer(self.offset.clone());
        for (ci, xi) in self.c.iter().zip(x) {
            acc += Rat::from_integer(ci.clone()) * xi;
        }
        acc
    }
}

/// One rung of an objective policy ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveSpec {
    /// `c = 𝟙`.
    Ones,
    /// Bound-derived geometric powers, see [`Objective::powers`].
    Powers,
    /// Seeded random small integers.
    Random(u64),
    /// An explicit caller-chosen objective.
    Fixed(Objective),
}

impl ObjectiveSpec {
    fn build(&self, p: &Polytrope) -> Objective {
        match self {
            ObjectiveSpec::Ones => Objective::ones(p.dim()),
            ObjectiveSpec::Powers => Objective::powers(p),
            ObjectiveSpec::Random(seed) => Objective::random(p.dim(), *seed),
            ObjectiveSpec::Fixed(obj) => obj.clone(),
        }
    }
}

/// An ordered list of objectives to try; the first one that avoids a zero
/// Lawrence coordinate everywhere wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectivePolicy {
    pub attempts: Vec<ObjectiveSpec>,
}

/// Number of seeded random rungs in the default ladder.
const RANDOM_OBJECTIVE_RETRIES: u64 = 8;

impl Default for ObjectivePolicy {
    /// Ones first, then powers, then eight fixed-seed random objectives.
    fn default() -> Self {
        let mut attempts = vec![ObjectiveSpec::Ones, ObjectiveSpec::Powers];
        attempts.extend((0..RANDOM_OBJECTIVE_RETRIES).map(ObjectiveSpec::Random));
        ObjectivePolicy { attempts }
    }
}

impl ObjectivePolicy {
    /// A single fixed objective with no fallback.
    pub fn fixed(obj: Objective) -> Self {
        ObjectivePolicy {
            attempts: vec![ObjectiveSpec::Fixed(obj)],
        }
    }
}

/// The Lawrence summand at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTerm {
    pub vertex: Pseudovertex,
    /// `f(v)` under the report's objective.
    pub f_value: Rat,
    /// Lawrence coordinates of `c` in the tight-normal basis; all nonzero
    /// integers.
    pub gammas: Vec<BigInt>,
    /// `|det` of the tight normals`|`; always 1 for polytropes.
    pub delta: BigInt,
    /// `N_v = f(v)^d / (d! · δ · Πγ_j)`.
    pub term: Rat,
}

/// Counters describing how a volume run went.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagnostics {
    /// Multi-indices evaluated (`C(2d, d)` unless degenerate).
    pub enumerated: usize,
    /// Cramer points merged into earlier identical points.
    pub duplicates_merged: usize,
    /// Objectives discarded due to a zero Lawrence coordinate.
    pub objective_retries: usize,
}

/// Result of a volume computation: per-vertex terms, their exact sum, the
/// objective that succeeded, and run diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub terms: Vec<VertexTerm>,
    pub total: Rat,
    pub objective: Objective,
    pub diagnostics: Diagnostics,
}

fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(d: usize) -> BigInt {
    (2..=d as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// Compute the Lawrence term at one vertex from its tight facet normals.
/// `normals` must hold exactly `d` projected normal vectors.
///
/// # Panics
/// If `normals` does not contain `d` vectors of length `d`.
pub fn vertex_term(
    v: &Pseudovertex,
    normals: &[Vec<i64>],
    obj: &Objective,
    d: usize,
) -> Result<VertexTerm> {
    assert_eq!(normals.len(), d, "need exactly d tight normals");
    let columns: Vec<Vec<BigInt>> = normals
        .iter()
        .map(|n| {
            assert_eq!(n.len(), d, "normal has wrong dimension");
            n.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let a = IntMatrix::from_columns(&columns);
    let delta = det_exact(&a).abs();
    if delta.is_zero() {
        return Err(Error::Singular);
    }
    if !delta.is_one() {
        return Err(Error::NotUnimodular {
            det: delta.to_string(),
        });
    }
    let gammas = solve_unimodular(&a, obj.coefficients())?;
    if let Some(idx) = gammas.iter().position(BigInt::is_zero) {
        return Err(Error::ZeroGamma { index: idx + 1 });
    }
    let f_value = obj.evaluate(&v.point);
    let denominator = gammas
        .iter()
        .fold(factorial(d) * &delta, |acc, g| acc * g);
    let term = rat_pow(&f_value, d) / Rat::from_integer(denominator);
    Ok(VertexTerm {
        vertex: v.clone(),
        f_value,
        gammas,
        delta,
        term,
    })
}

/// Exact volume under the default objective policy (`𝟙`, then powers,
/// then seeded random vectors).
pub fn compute_volume(p: &Polytrope) -> Result<VolumeReport> {
    compute_volume_with(p, &ObjectivePolicy::default())
}

/// Exact volume under an explicit objective policy.
///
/// Degenerate polytropes short-circuit to total 0 with no terms. All
/// other inputs must be simple: every deduplicated pseudovertex must lie
/// on exactly `d` facets.
pub fn compute_volume_with(p: &Polytrope, policy: &ObjectivePolicy) -> Result<VolumeReport> {
    let d = p.dim();
    if p.is_degenerate() {
        return Ok(VolumeReport {
            terms: Vec::new(),
            total: Rat::zero(),
            objective: Objective::ones(d),
            diagnostics: Diagnostics::default(),
        });
    }
    let pvs = simple_pseudovertices(p)?;
    let enumerated = multi_indices(d).len();
    let duplicates_merged = enumerated - pvs.len();
    let normal_sets: Vec<Vec<Vec<i64>>> = pvs
        .iter()
        .map(|pv| {
            pv.tight
                .iter()
                .map(|&(i, j)| pair_normal(i, j, d))
                .collect()
        })
        .collect();

    let mut objective_retries = 0usize;
    for spec in &policy.attempts {
        let objective = spec.build(p);
        let mut terms = Vec::with_capacity(pvs.len());
        let mut zero_gamma = false;
        for (pv, normals) in pvs.iter().zip(&normal_sets) {
            match vertex_term(pv, normals, &objective, d) {
                Ok(term) => terms.push(term),
                Err(Error::ZeroGamma { .. }) => {
                    zero_gamma = true;
                    break;
                }
                Err(other) => return Err(other),
            }
        }
        if zero_gamma {
            objective_retries += 1;
            continue;
        }
        let total: Rat = terms.iter().map(|t| t.term.clone()).sum();
        debug_assert!(
            !total.is_negative(),
            "volume of a valid polytrope cannot be negative"
        );
        return Ok(VolumeReport {
            terms,
            total,
            objective,
            diagnostics: Diagnostics {
                enumerated,
                duplicates_merged,
                objective_retries,
            },
        });
    }
    Err(Error::ObjectiveExhausted {
        attempts: policy.attempts.len(),
    })
}
