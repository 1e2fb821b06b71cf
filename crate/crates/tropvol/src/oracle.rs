//! Independent volume verification: exact low-dimensional formulas
//! (shoelace in 2d, facet-fan triangulation in 3d) and a seeded Monte
//! Carlo estimator, plus a combined cross-check report.
//!
//! The exact oracles share no code with the Lawrence path beyond
//! pseudovertex enumeration; all orderings use exact sign comparisons,
//! never floating-point angles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::polytrope::{pair_normal, Polytrope};
use crate::pseudovertex::simple_pseudovertices;
use crate::volume::{compute_volume, compute_volume_with, Objective, ObjectivePolicy, ObjectiveSpec};

/// Samples drawn per axis have denominator 2^32, keeping membership
/// tests exact.
const SAMPLE_DENOM_BITS: u32 = 32;

/// Defaults used by [`cross_check`] when it falls back to Monte Carlo.
pub const CROSS_CHECK_MC_SAMPLES: u64 = 1_000_000;
pub const CROSS_CHECK_MC_SEED: u64 = 42;

/// Outcome of a Monte Carlo volume estimate. Fully determined by
/// `(polytrope, samples, seed)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McEstimate {
    /// Hit fraction times box volume.
    pub estimate: Rat,
    /// Rational approximation of `box_vol · sqrt(p(1−p)/samples)`.
    pub stderr: Rat,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
    /// Per-axis `(min, max)` bounds of the sampling box, from the
    /// constraints `x_i ≤ b_{i,d+1}` and `−x_i ≤ b_{d+1,i}`.
    pub box_bounds: Vec<(Rat, Rat)>,
}

impl McEstimate {
    /// The box volume implied by the bounds.
    pub fn box_volume(&self) -> Rat {
        self.box_bounds
            .iter()
            .map(|(lo, hi)| hi - lo)
            .product()
    }

    /// Whether `value` lies within `3·stderr` of the estimate.
    pub fn within_three_sigma(&self, value: &Rat) -> bool {
        (value - &self.estimate).abs() <= Rat::from_integer(3.into()) * &self.stderr
    }
}

/// Exact volume by an independent low-dimensional method: shoelace over
/// angularly ordered vertices for `d = 2`, facet-grouped fan
/// triangulation from the centroid for `d = 3`. Degenerate polytropes
/// yield 0.
pub fn exact_volume_low_dim(p: &Polytrope) -> Result<Rat> {
    match p.dim() {
        2 => polygon_area(p),
        3 => polyhedron_volume(p),
        d => Err(Error::UnsupportedDimension { dim: d }),
    }
}

/// Order planar vectors counterclockwise starting from the positive
/// x-axis, using exact half-plane and cross-product sign tests.
fn ccw_cmp(a: &(Rat, Rat), b: &(Rat, Rat)) -> Ordering {
    fn lower_half(u: &(Rat, Rat)) -> bool {
        u.1.is_negative() || (u.1.is_zero() && !u.0.is_positive())
    }
    match (lower_half(a), lower_half(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => {
            let cross = &a.0 * &b.1 - &a.1 * &b.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Sort points counterclockwise around their centroid and return them;
/// exact arithmetic throughout.
fn sort_ccw_around_centroid(points: &[(Rat, Rat)]) -> Vec<(Rat, Rat)> {
    let m = Rat::from_integer((points.len() as i64).into());
    let cx: Rat = points.iter().map(|p| p.0.clone()).sum::<Rat>() / &m;
    let cy: Rat = points.iter().map(|p| p.1.clone()).sum::<Rat>() / &m;
    let mut with_dirs: Vec<((Rat, Rat), (Rat, Rat))> = points
        .iter()
        .map(|p| ((&p.0 - &cx, &p.1 - &cy), p.clone()))
        .collect();
    with_dirs.sort_by(|a, b| ccw_cmp(&a.0, &b.0));
    with_dirs.into_iter().map(|(_, p)| p).collect()
}

fn polygon_area(p: &Polytrope) -> Result<Rat> {
    if p.is_degenerate() {
        return Ok(Rat::zero());
    }
    let pvs = simple_pseudovertices(p)?;
    let points: Vec<(Rat, Rat)> = pvs
        .iter()
        .map(|pv| (pv.point[0].clone(), pv.point[1].clone()))
        .collect();
    let ordered = sort_ccw_around_centroid(&points);
    let mut twice_area = Rat::zero();
    for (k, a) in ordered.iter().enumerate() {
        let b = &ordered[(k + 1) % ordered.len()];
        twice_area += &a.0 * &b.1 - &b.0 * &a.1;
    }
    Ok(twice_area.abs() / Rat::from_integer(2.into()))
}

/// 3×3 rational determinant by cofactor expansion.
fn det3(r: [[Rat; 3]; 3]) -> Rat {
    let [a, b, c] = &r[0];
    let [d, e, f] = &r[1];
    let [g, h, i] = &r[2];
    a * &(e * i - f * h) - b * &(d * i - f * g) + c * &(d * h - e * g)
}

fn polyhedron_volume(p: &Polytrope) -> Result<Rat> {
    if p.is_degenerate() {
        return Ok(Rat::zero());
    }
    let pvs = simple_pseudovertices(p)?;
    let m = Rat::from_integer((pvs.len() as i64).into());
    let centroid: Vec<Rat> = (0..3)
        .map(|k| pvs.iter().map(|pv| pv.point[k].clone()).sum::<Rat>() / &m)
        .collect();
    let mut total = Rat::zero();
    for (i, j) in p.facet_pairs() {
        let verts: Vec<&Vec<Rat>> = pvs
            .iter()
            .filter(|pv| pv.tight.contains(&(i, j)))
            .map(|pv| &pv.point)
            .collect();
        debug_assert!(verts.len() >= 3, "a 3d facet needs at least 3 vertices");
        // project out an axis along which the facet normal is nonzero
        let normal = pair_normal(i, j, 3);
        let k = normal
            .iter()
            .position(|&c| c != 0)
            .expect("facet normal is nonzero");
        let axes: Vec<usize> = (0..3).filter(|&t| t != k).collect();
        let fm = Rat::from_integer((verts.len() as i64).into());
        let fc: Vec<Rat> = axes
            .iter()
            .map(|&t| verts.iter().map(|v| v[t].clone()).sum::<Rat>() / &fm)
            .collect();
        let mut ordered: Vec<(&Vec<Rat>, (Rat, Rat))> = verts
            .iter()
            .map(|v| (*v, (&v[axes[0]] - &fc[0], &v[axes[1]] - &fc[1])))
            .collect();
        ordered.sort_by(|a, b| ccw_cmp(&a.1, &b.1));
        // fan from the first facet vertex; all tetrahedra against the
        // global centroid share an orientation sign within one facet
        let apex = ordered[0].0;
        let mut signed = Rat::zero();
        for t in 1..ordered.len() - 1 {
            let rel = |v: &Vec<Rat>, c: usize| &v[c] - &centroid[c];
            let w1 = apex;
            let w2 = ordered[t].0;
            let w3 = ordered[t + 1].0;
            signed += det3([
                [rel(w1, 0), rel(w1, 1), rel(w1, 2)],
                [rel(w2, 0), rel(w2, 1), rel(w2, 2)],
                [rel(w3, 0), rel(w3, 1), rel(w3, 2)],
            ]);
        }
        total += signed.abs() / Rat::from_integer(6.into());
    }
    Ok(total)
}

/// Per-sample membership test, specialized once per run.
enum Membership {
    /// All star entries are machine integers: scaled `i128` arithmetic
    /// with exact results. Per axis, the sampled coordinate is
    /// `width · u / 2^32`, stored as the integer `width · u`; constraint
    /// bounds are pre-scaled by `2^32`.
    Scaled {
        widths: Vec<i128>,
        /// `(i, j, bound·2^32)` per constraint, 1-based indices.
        constraints: Vec<(usize, usize, i128)>,
    },
    /// General exact rational fallback.
    Exact {
        lows: Vec<Rat>,
        widths: Vec<Rat>,
        denom: Rat,
    },
}

/// Seeded Monte Carlo volume estimate. Deterministic in
/// `(polytrope, samples, seed)`; membership is tested exactly, with
/// coordinates of denominator 2^32 per axis. Degenerate inputs return
/// the zero estimate with zero hits.
///
/// # Panics
/// If `samples` is 0.
pub fn monte_carlo_volume(p: &Polytrope, samples: u64, seed: u64) -> McEstimate {
    assert!(samples > 0, "need at least one sample");
    let d = p.dim();
    let n = d + 1;
    let box_bounds: Vec<(Rat, Rat)> = (0..d)
        .map(|axis| {
            let lo = -p.star_rat(n - 1, axis).clone();
            let hi = p.star_rat(axis, n - 1).clone();
            (lo, hi)
        })
        .collect();
    if p.is_degenerate() {
        return McEstimate {
            estimate: Rat::zero(),
            stderr: Rat::zero(),
            hits: 0,
            samples,
            seed,
            box_bounds,
        };
    }

    // canonical form puts the box at the origin
    debug_assert!(box_bounds.iter().all(|(lo, _)| lo.is_zero()));

    let all_i64 = (0..n).all(|i| {
        (0..n).all(|j| {
            let e = p.star_rat(i, j);
            e.is_integer() && e.numer().to_i64().is_some()
        })
    });
    let membership = if all_i64 {
        let widths: Vec<i128> = box_bounds
            .iter()
            .map(|(lo, hi)| (hi - lo).to_integer().to_i128().expect("i64 entries"))
            .collect();
        let constraints: Vec<(usize, usize, i128)> = p
            .hrep()
            .iter()
            .map(|h| {
                let scaled = h.bound.to_integer().to_i128().expect("i64 entries")
                    << SAMPLE_DENOM_BITS;
                (h.i, h.j, scaled)
            })
            .collect();
        Membership::Scaled {
            widths,
            constraints,
        }
    } else {
        Membership::Exact {
            lows: box_bounds.iter().map(|(lo, _)| lo.clone()).collect(),
            widths: box_bounds.iter().map(|(lo, hi)| hi - lo).collect(),
            denom: Rat::from_integer(BigInt::from(1u64 << SAMPLE_DENOM_BITS)),
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut draws = vec![0u32; d];
    for _ in 0..samples {
        for slot in draws.iter_mut() {
            *slot = rng.next_u32();
        }
        let inside = match &membership {
            Membership::Scaled {
                widths,
                constraints,
            } => {
                let coord =
                    |t: usize| -> i128 { widths[t] * draws[t] as i128 };
                constraints.iter().all(|&(i, j, bound)| {
                    let xi = if i <= d { coord(i - 1) } else { 0 };
                    let xj = if j <= d { coord(j - 1) } else { 0 };
                    xi - xj <= bound
                })
            }
            Membership::Exact {
                lows,
                widths,
                denom,
            } => {
                let x: Vec<Rat> = (0..d)
                    .map(|t| {
                        &lows[t]
                            + &widths[t] * Rat::from_integer(draws[t].into()) / denom
                    })
                    .collect();
                p.contains(&x)
            }
        };
        if inside {
            hits += 1;
        }
    }

    let box_vol: Rat = box_bounds.iter().map(|(lo, hi)| hi - lo).product();
    let hit_fraction = Rat::new(BigInt::from(hits), BigInt::from(samples));
    let estimate = &box_vol * hit_fraction;
    // stderr = box · sqrt(h(n−h)/n³); computed as an integer square root
    // after scaling by 2^64 for precision
    let h = BigInt::from(hits);
    let s = BigInt::from(samples);
    let scaled: BigInt = (&h * (&s - &h) * &s) << 64u32;
    let root = scaled.sqrt();
    let stderr = box_vol * Rat::new(root, (&s * &s) << 32u32);
    McEstimate {
        estimate,
        stderr,
        hits,
        samples,
        seed,
        box_bounds,
    }
}

/// Which oracle a [`CheckReport`] used and how it compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Exact low-dimensional formula; `matches` is exact rational
    /// equality with the Lawrence total.
    Exact { value: Rat, matches: bool },
    /// Monte Carlo estimate; `within_three_sigma` compares against the
    /// Lawrence total.
    MonteCarlo {
        estimate: McEstimate,
        within_three_sigma: bool,
    },
}

/// Aggregated verification verdict for one polytrope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub dim: usize,
    /// Lawrence total under the default objective policy.
    pub default_total: Rat,
    /// Lawrence total under an alternate objective.
    pub alternate_total: Rat,
    pub objectives_match: bool,
    pub oracle: OracleOutcome,
    /// False only on exact disagreement (objective invariance or the
    /// exact oracle); Monte Carlo misses are warnings, not failures.
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "default objective total   = {}", self.default_total)?;
        writeln!(f, "alternate objective total = {}", self.alternate_total)?;
        match &self.oracle {
            OracleOutcome::Exact { value, matches } => {
                writeln!(f, "exact oracle              = {value}")?;
                writeln!(
                    f,
                    "oracle agreement          = {}",
                    if *matches { "exact" } else { "MISMATCH" }
                )?;
            }
            OracleOutcome::MonteCarlo {
                estimate,
                within_three_sigma,
            } => {
                writeln!(
                    f,
                    "monte carlo estimate      = {} (stderr {}, {} hits / {} samples, seed {})",
                    estimate.estimate,
                    estimate.stderr,
                    estimate.hits,
                    estimate.samples,
                    estimate.seed
                )?;
                writeln!(
                    f,
                    "oracle agreement          = {}",
                    if *within_three_sigma {
                        "within 3 standard errors"
                    } else {
                        "outside 3 standard errors"
                    }
                )?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        write!(f, "result: {}", if self.pass { "pass" } else { "fail" })
    }
}

/// Run the full verification stack on one polytrope: the Lawrence total
/// under the default policy, the same under an alternate objective
/// (exact equality required), and an independent oracle — exact for
/// `d ∈ {2, 3}`, Monte Carlo otherwise. Monte Carlo disagreement beyond
/// three standard errors is reported as a warning with full data rather
/// than a failure.
pub fn cross_check(p: &Polytrope) -> Result<CheckReport> {
    cross_check_with(p, CROSS_CHECK_MC_SAMPLES, CROSS_CHECK_MC_SEED)
}

/// As [`cross_check`] with explicit Monte Carlo parameters.
pub fn cross_check_with(p: &Polytrope, mc_samples: u64, mc_seed: u64) -> Result<CheckReport> {
    let default_report = compute_volume(p)?;
    let default_total = default_report.total.clone();

    // pick an alternate objective different from the one that won
    let alternate_spec = if default_report.objective == Objective::powers(p) {
        ObjectiveSpec::Random(4242)
    } else {
        ObjectiveSpec::Powers
    };
    let alternate_total = if p.is_degenerate() {
        Rat::zero()
    } else {
        compute_volume_with(
            p,
            &ObjectivePolicy {
                attempts: vec![alternate_spec],
            },
        )?
        .total
    };
    let objectives_match = default_total == alternate_total;

    let mut warnings = Vec::new();
    let oracle = match p.dim() {
        2 | 3 => {
            let value = exact_volume_low_dim(p)?;
            let matches = value == default_total;
            OracleOutcome::Exact { value, matches }
        }
        _ => {
            let estimate = monte_carlo_volume(p, mc_samples, mc_seed);
            let within = estimate.within_three_sigma(&default_total);
            if !within {
                warnings.push(format!(
                    "monte carlo estimate {} (stderr {}, {} hits / {} samples, seed {}) \
                     is more than 3 standard errors from the exact total {}",
                    estimate.estimate,
                    estimate.stderr,
                    estimate.hits,
                    estimate.samples,
                    estimate.seed,
                    default_total
                ));
            }
            OracleOutcome::MonteCarlo {
                estimate,
                within_three_sigma: within,
            }
        }
    };
    let exact_ok = match &oracle {
        OracleOutcome::Exact { matches, .. } => *matches,
        OracleOutcome::MonteCarlo { .. } => true,
    };
    Ok(CheckReport {
        dim: p.dim(),
        default_total,
        alternate_total,
        objectives_match,
        oracle,
        pass: objectives_match && exact_ok,
        warnings,
    })
}
