//! Pseudovertex enumeration via tropical Cramer's rule over weakly
//! increasing multi-indices, plus the maximality and simplicity
//! classifiers built on top of it.
//!
//! For a polytrope with tropical vertices `v_1, …, v_{d+1}`, every choice
//! of a weakly increasing multi-index `I = (i_1 ≤ … ≤ i_d)` yields the
//! Cramer vector of the row matrix `(v_{i_1}; …; v_{i_d})`; its negation,
//! projected to ℝ^d, is a point of the polytrope. The ordinary vertices
//! are always among these at most `C(2d, d)` points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::exact::{det_exact, IntMatrix, Rat};
use crate::polytrope::{pair_normal, Polytrope};
use crate::trop::{HomogeneousPoint, TropicalMatrix, TropicalScalar};

/// A weakly increasing sequence of length `d` over `{1, …, d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    /// Wrap a sequence, checking monotonicity and range.
    ///
    /// # Panics
    /// If `entries` is empty, not weakly increasing, or out of range.
    pub fn new(entries: Vec<usize>) -> Self {
        let d = entries.len();
        assert!(d >= 1, "multi-index must be nonempty");
        assert!(
            entries.windows(2).all(|w| w[0] <= w[1]),
            "multi-index must be weakly increasing"
        );
        assert!(
            entries.iter().all(|&e| (1..=d + 1).contains(&e)),
            "multi-index entries must lie in 1..=d+1"
        );
        MultiIndex { entries }
    }

    /// The constant multi-index `(i, …, i)` of length `d`.
    pub fn constant(i: usize, d: usize) -> Self {
        MultiIndex::new(vec![i; d])
    }

    /// 1-based entries.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// How many times vertex index `i` occurs.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.entries.iter().filter(|&&e| e == i).count()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "v{e}")?;
        }
        write!(f, ")")
    }
}

/// All weakly increasing multi-indices of length `d` over `{1, …, d+1}`
/// in lexicographic order; exactly `C(2d, d)` of them.
pub fn multi_indices(d: usize) -> Vec<MultiIndex> {
    assert!(d >= 1, "dimension must be positive");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fn rec(d: usize, lo: usize, current: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if current.len() == d {
            out.push(MultiIndex::new(current.clone()));
            return;
        }
        for next in lo..=d + 1 {
            current.push(next);
            rec(d, next, current, out);
            current.pop();
        }
    }
    rec(d, 1, &mut current, &mut out);
    out
}

/// Tropical Cramer's rule: for a `d × (d+1)` matrix `L` of homogeneous
/// vertex rows, coordinate `k` of the result is the tropical determinant
/// of `L` with column `k` deleted.
///
/// # Panics
/// If `L` does not have exactly one more column than rows.
pub fn tropical_cramer(l: &TropicalMatrix) -> Result<HomogeneousPoint> {
    assert_eq!(
        l.cols(),
        l.rows() + 1,
        "Cramer matrix needs d rows and d+1 columns"
    );
    let coords: Result<Vec<TropicalScalar>> =
        (0..l.cols()).map(|k| l.without_column(k).tdet_min()).collect();
    Ok(HomogeneousPoint::new(coords?))
}

/// A deduplicated pseudovertex: exact coordinates, every multi-index that
/// generates it, and the facet-defining constraints tight at it (in H-rep
/// order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudovertex {
    pub point: Vec<Rat>,
    pub generators: Vec<MultiIndex>,
    pub tight: Vec<(usize, usize)>,
}

/// The raw (not deduplicated) projected Cramer points, one per
/// multi-index, in lexicographic multi-index order.
pub fn raw_cramer_points(p: &Polytrope) -> Result<Vec<(MultiIndex, Vec<Rat>)>> {
    let d = p.dim();
    let star = p.star();
    let mut out = Vec::new();
    for mi in multi_indices(d) {
        // row r of L is the homogeneous vertex v_{i_r}, i.e. star column i_r
        let l = TropicalMatrix::from_fn(d, d + 1, |r, c| {
            star.get(c, mi.entries()[r] - 1).clone()
        });
        let cramer = tropical_cramer(&l)?;
        // negate and normalize on the last coordinate: point_k = C_{d+1} − C_k
        let c: Vec<&Rat> = cramer
            .coords()
            .iter()
            .map(|s| s.as_rat().expect("finite star gives finite Cramer vector"))
            .collect();
        let point: Vec<Rat> = (0..d).map(|k| c[d] - c[k]).collect();
        debug_assert!(p.contains(&point), "Cramer point must lie in the polytrope");
        out.push((mi, point));
    }
    Ok(out)
}

/// All ordered pairs `(i, j)` (1-based) whose constraint is tight at `x`,
/// in H-rep order, regardless of facet-hood.
pub fn active_facets(p: &Polytrope, x: &[Rat]) -> Vec<(usize, usize)> {
    p.hrep()
        .iter()
        .filter(|h| h.is_tight_at(x))
        .map(|h| (h.i, h.j))
        .collect()
}

/// The facet-defining constraints tight at `x`, in H-rep order: the
/// subset of [`active_facets`] whose pairs actually support facets of the
/// polytrope (redundant tight constraints arising from triangle-equality
/// ties are dropped).
pub fn tight_facets(p: &Polytrope, x: &[Rat]) -> Vec<(usize, usize)> {
    p.hrep()
        .iter()
        .filter(|h| h.is_tight_at(x) && p.is_facet_pair(h.i - 1, h.j - 1))
        .map(|h| (h.i, h.j))
        .collect()
}

/// Enumerate all pseudovertices: evaluate Cramer's rule on every
/// multi-index, deduplicate identical points (exact coordinate equality),
/// merge generator lists, and attach tight facet sets. Points appear in
/// first-generator (lexicographic) order.
pub fn enumerate_pseudovertices(p: &Polytrope) -> Result<Vec<Pseudovertex>> {
    let raw = raw_cramer_points(p)?;
    let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    let mut out: Vec<Pseudovertex> = Vec::new();
    for (mi, point) in raw {
        match seen.get(&point) {
            Some(&idx) => out[idx].generators.push(mi),
            None => {
                seen.insert(point.clone(), out.len());
                let tight = tight_facets(p, &point);
                out.push(Pseudovertex {
                    point,
                    generators: vec![mi],
                    tight,
                });
            }
        }
    }
    Ok(out)
}

/// Enumerate pseudovertices and require the polytrope to be simple in
/// the Lawrence sense: every deduplicated point must lie on exactly `d`
/// facets. Returns the offending point otherwise.
pub fn simple_pseudovertices(p: &Polytrope) -> Result<Vec<Pseudovertex>> {
    let d = p.dim();
    let pvs = enumerate_pseudovertices(p)?;
    for pv in &pvs {
        if pv.tight.len() != d {
            return Err(crate::error::Error::NonSimple {
                point: pv.point.iter().map(|c| c.to_string()).collect(),
                tight_facets: pv.tight.len(),
            });
        }
    }
    Ok(pvs)
}

/// True iff all `C(2d, d)` projected Cramer points are pairwise distinct.
pub fn is_maximal(p: &Polytrope) -> Result<bool> {
    let raw = raw_cramer_points(p)?;
    let total = raw.len();
    let distinct: BTreeMap<&Vec<Rat>, ()> =
        raw.iter().map(|(_, pt)| (pt, ())).collect();
    Ok(distinct.len() == total)
}

/// True iff every deduplicated pseudovertex lies on exactly `d` facets
/// whose projected normals are linearly independent (the defining
/// property of a simple polytope). Degenerate polytropes are not simple.
pub fn is_simple(p: &Polytrope) -> Result<bool> {
    if p.is_degenerate() {
        return Ok(false);
    }
    let d = p.dim();
    for pv in enumerate_pseudovertices(p)? {
        if pv.tight.len() != d {
            return Ok(false);
        }
        let normal_cols: Vec<Vec<BigInt>> = pv
            .tight
            .iter()
            .map(|&(i, j)| pair_normal(i, j, d).into_iter().map(Into::into).collect())
            .collect();
        if det_exact(&IntMatrix::from_columns(&normal_cols)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
