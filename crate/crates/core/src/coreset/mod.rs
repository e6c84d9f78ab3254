//! Weighted ε-coresets for the (k,l)-center and discrete (k,l)-median
//! objectives.

mod curves;
mod median;
mod segments;

pub use curves::{center_coreset_curves, curves_cardinality_bound, CurvesOutcome, GateFailure};
pub use median::{
    compute_psi, median_coreset, sample_coreset, sample_size, ClusterStats, SamplingDistribution,
    LAMBDA_ALPHA, LAMBDA_GAMMA,
};
pub use segments::{center_coreset_segments, segments_cardinality_bound};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::clustering::{nearest_center, ObjectiveKind};
use crate::curve::{Curve, CurveSet};
use crate::error::{invalid, Error, Result};

/// Construction record of a grid-based center coreset.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterMeta {
    /// Cost of the farthest-first approximation used as scale.
    pub delta_hat: f64,
    pub cell_length: f64,
    pub grids: usize,
    /// Vertex count every curve was keyed with (2 for segments).
    pub complexity: usize,
    /// Curves no grid covered; each became its own member.
    pub uncovered: usize,
    /// Per input curve, the position of its representative in `members`.
    pub representative: Vec<usize>,
    /// Number of cell-id keys the grids can produce, plus `uncovered`.
    pub key_bound: f64,
}

/// Construction record of a sampled median coreset.
#[derive(Debug, Clone, PartialEq)]
pub struct MedianMeta {
    pub seed: u64,
    pub rho: f64,
    pub sample_size: usize,
    /// Median cost of the local-search approximation.
    pub approx_cost: f64,
    pub swaps: usize,
    pub phi: f64,
    pub normalizer: f64,
    /// All curves coincide with their centers; ψ is uniform and nothing is sampled.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoresetMeta {
    Center(CenterMeta),
    Median(MedianMeta),
}

/// A weighted subset of the input. `indices[i]` is the input position of
/// `members[i]`; an index may repeat for sampled coresets.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCoreset {
    pub members: Vec<Curve>,
    pub indices: Vec<usize>,
    pub weights: Vec<f64>,
    pub epsilon: f64,
    pub meta: CoresetMeta,
}

impl WeightedCoreset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Summed weight per distinct input index, in index order.
    pub fn aggregated(&self) -> Vec<(usize, f64)> {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for (&i, &w) in self.indices.iter().zip(&self.weights) {
            *acc.entry(i).or_insert(0.0) += w;
        }
        acc.into_iter().collect()
    }

    /// Objective value of `centers` on the coreset. The center objective
    /// ignores weights; the sums weigh each member.
    pub fn cost(&self, centers: &[Curve], kind: ObjectiveKind, rel_tol: f64) -> Result<f64> {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for (pos, &i) in self.indices.iter().enumerate() {
            first.entry(i).or_insert(pos);
        }
        let mut terms = Vec::with_capacity(first.len());
        for (i, w) in self.aggregated() {
            let (_, f) = nearest_center(&self.members[first[&i]], centers, rel_tol)?;
            terms.push((w, f.value));
        }
        Ok(kind.aggregate_weighted(terms))
    }
}

pub(crate) fn check_epsilon(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid("epsilon", "must lie in (0, 1)"));
    }
    Ok(())
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("k", "must be at least 1"));
    }
    Ok(())
}

/// Keeps the lowest-index curve per key. Returns member indices in
/// ascending order and, per curve, the position of its representative.
pub(crate) fn pick_representatives<K: Ord>(keys: Vec<K>) -> (Vec<usize>, Vec<usize>) {
    let mut seen: BTreeMap<K, usize> = BTreeMap::new();
    let mut members = Vec::new();
    let mut representative = Vec::with_capacity(keys.len());
    for (i, key) in keys.into_iter().enumerate() {
        let pos = *seen.entry(key).or_insert_with(|| {
            members.push(i);
            members.len() - 1
        });
        representative.push(pos);
    }
    (members, representative)
}

/// Center coreset whose only member is the first curve; used when the
/// approximation cost is zero.
pub(crate) fn single_member(curves: &CurveSet, eps: f64, complexity: usize) -> WeightedCoreset {
    WeightedCoreset {
        members: alloc::vec![curves[0].clone()],
        indices: alloc::vec![0],
        weights: alloc::vec![1.0],
        epsilon: eps,
        meta: CoresetMeta::Center(CenterMeta {
            delta_hat: 0.0,
            cell_length: 0.0,
            grids: 0,
            complexity,
            uncovered: 0,
            representative: alloc::vec![0; curves.len()],
            key_bound: 1.0,
        }),
    }
}

pub(crate) fn from_indices(curves: &CurveSet, indices: Vec<usize>, eps: f64, meta: CenterMeta) -> WeightedCoreset {
    WeightedCoreset {
        members: indices.iter().map(|&i| curves[i].clone()).collect(),
        weights: alloc::vec![1.0; indices.len()],
        indices,
        epsilon: eps,
        meta: CoresetMeta::Center(meta),
    }
}

pub(crate) fn not_segments() -> Error {
    invalid("curves", "every curve must have exactly two vertices")
}
