use alloc::vec::Vec;

use crate::clustering::kl_center_approx;
use crate::curve::CurveSet;
use crate::error::Result;
use crate::geometry::{CellId, Cube, Grid};

use super::{check_epsilon, check_k, from_indices, not_segments, pick_representatives, single_member};
use super::{CenterMeta, WeightedCoreset};

/// `2^{2d} 6^{2d} d^d k / ε^{2d}`.
pub fn segments_cardinality_bound(d: usize, k: usize, eps: f64) -> f64 {
    let d_f = d as f64;
    libm::pow(12.0, 2.0 * d_f) * libm::pow(d_f, d_f) * k as f64 / libm::pow(eps, 2.0 * d_f)
}

/// Center coreset for line segments.
///
/// A farthest-first (k,2)-center solution gives the scale Δ̂. Around both
/// endpoints of every center sits a grid of edge `2Δ̂` and cell length
/// `εΔ̂/(6√d)`. Segments sharing their center and both endpoint cells are
/// represented by the one with the lowest index.
pub fn center_coreset_segments(curves: &CurveSet, eps: f64, k: usize, rel_tol: f64) -> Result<WeightedCoreset> {
    check_epsilon(eps)?;
    check_k(k)?;
    if curves.curves().iter().any(|c| !c.is_segment()) {
        return Err(not_segments());
    }
    let approx = kl_center_approx(curves, k, 2, rel_tol)?;
    let delta_hat = approx.cost;
    if delta_hat == 0.0 {
        return Ok(single_member(curves, eps, 2));
    }
    let d = curves.dimension();
    let cell = eps * delta_hat / (6.0 * libm::sqrt(d as f64));
    let mut grids = Vec::with_capacity(approx.centers.len());
    for c in &approx.centers {
        let at = |p| Grid::new(Cube::new(p, 2.0 * delta_hat)?, cell, None);
        grids.push((at(c.start().clone())?, at(c.end().clone())?));
    }
    let locate = |j: usize, i: usize| -> Option<(CellId, CellId)> {
        let (gs, ge) = &grids[j];
        let t = &curves[i];
        Some((gs.cell_of(t.start())?, ge.cell_of(t.end())?))
    };

    let mut uncovered = 0;
    let mut keys = Vec::with_capacity(curves.len());
    for i in 0..curves.len() {
        let own = approx.assignment[i];
        // rounding can push an endpoint just past its own grid
        let found = locate(own, i)
            .map(|cells| (own, cells))
            .or_else(|| (0..grids.len()).find_map(|j| locate(j, i).map(|cells| (j, cells))));
        keys.push(match found {
            Some((j, (a, b))) => (0, j, a, b, 0),
            None => {
                uncovered += 1;
                (1, 0, CellId(Vec::new()), CellId(Vec::new()), i)
            }
        });
    }
    let (indices, representative) = pick_representatives(keys);
    let per_grid = grids[0].0.cell_count() as f64;
    let meta = CenterMeta {
        delta_hat,
        cell_length: cell,
        grids: 2 * grids.len(),
        complexity: 2,
        uncovered,
        representative,
        key_bound: grids.len() as f64 * per_grid * per_grid + uncovered as f64,
    };
    Ok(from_indices(curves, indices, eps, meta))
}
