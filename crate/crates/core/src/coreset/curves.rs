use alloc::vec;
use alloc::vec::Vec;

use crate::clustering::kl_center_approx;
use crate::curve::{Curve, CurveSet};
use crate::error::Result;
use crate::geometry::{align_to_last_axis, dist, CellId, Cube, Grid, Motion, Point};

use super::{check_epsilon, check_k, from_indices, pick_representatives, single_member};
use super::{CenterMeta, WeightedCoreset};

/// The size gate rejected the input: the longest center edge is too long
/// compared to the approximation cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateFailure {
    /// Length of the longest center edge.
    pub delta: f64,
    pub delta_hat: f64,
    pub sqrt_n: f64,
    pub complexity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurvesOutcome {
    Success(WeightedCoreset),
    Failure(GateFailure),
}

impl CurvesOutcome {
    pub fn success(self) -> Option<WeightedCoreset> {
        match self {
            CurvesOutcome::Success(s) => Some(s),
            CurvesOutcome::Failure(_) => None,
        }
    }
}

/// `k (2^{3m} √n l^{12 d² m} / ε^{dm} + 2^m m^m)`.
pub fn curves_cardinality_bound(k: usize, m: usize, l: usize, d: usize, n: usize, eps: f64) -> f64 {
    let (m_f, l_f, d_f) = (m as f64, l as f64, d as f64);
    let grid_part = libm::pow(2.0, 3.0 * m_f) * libm::sqrt(n as f64) * libm::pow(l_f, 12.0 * d_f * d_f * m_f)
        / libm::pow(eps, d_f * m_f);
    k as f64 * (grid_part + libm::pow(2.0, m_f) * libm::pow(m_f, m_f))
}

struct EdgeGrid {
    edge: usize,
    cube: usize,
    grid: Grid,
}

type VertexCell = (usize, usize, CellId);

/// Grids enveloping every edge of `c`: the edge is moved to the origin and
/// rotated onto the last axis, then covered by `⌈1 + |e|/(2Δ̂)⌉` cubes of
/// edge `2Δ̂` stacked along that axis.
fn envelope(c: &Curve, delta_hat: f64, cell: f64) -> Result<Vec<EdgeGrid>> {
    let d = c.dim();
    let mut out = Vec::new();
    for (j, (a, b)) in c.edges().enumerate() {
        let translation = a.to_vector().neg();
        let e = a.vector_to(b)?;
        let (angles, length, direction) = if e.is_zero() {
            (Vec::new(), 0.0, 1.0)
        } else {
            let (angles, aligned) = align_to_last_axis(&Point::new(e.into_coords())?)?;
            let last = aligned[d - 1];
            // one dimension has no rotation; the edge may point backwards
            (angles, last.abs(), if last < 0.0 { -1.0 } else { 1.0 })
        };
        let motion = Motion::new(translation, angles)?;
        let cubes = libm::ceil(1.0 + length / (2.0 * delta_hat)) as usize;
        for s in 0..cubes {
            let mut center = vec![0.0; d];
            center[d - 1] = direction * s as f64 * 2.0 * delta_hat;
            let cube = Cube::new(Point::new(center)?, 2.0 * delta_hat)?;
            out.push(EdgeGrid {
                edge: j + 1,
                cube: s + 1,
                grid: Grid::new(cube, cell, Some(motion.clone()))?,
            });
        }
    }
    Ok(out)
}

fn locate(grids: &[EdgeGrid], t: &Curve) -> Option<Vec<VertexCell>> {
    t.vertices()
        .iter()
        .map(|v| {
            grids
                .iter()
                .find_map(|g| g.grid.cell_of(v).map(|id| (g.edge, g.cube, id)))
        })
        .collect()
}

/// Center coreset for polygonal curves.
///
/// Curves are padded to a common complexity `m ≥ 3`. A farthest-first
/// (k,l)-center solution gives Δ̂; if `(δ/Δ̂)^m > √n` for the longest
/// center edge `δ` the construction stops with [`CurvesOutcome::Failure`].
/// Otherwise every vertex gets the first grid cell containing it among the
/// grids of its center, and curves with the same cell sequence share the
/// lowest-index representative. Members are the unpadded input curves.
pub fn center_coreset_curves(curves: &CurveSet, eps: f64, k: usize, l: usize, rel_tol: f64) -> Result<CurvesOutcome> {
    check_epsilon(eps)?;
    check_k(k)?;
    let m = curves.max_complexity().max(3);
    let padded = CurveSet::new(
        curves
            .curves()
            .iter()
            .map(|c| c.pad_to_complexity(m))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let approx = kl_center_approx(&padded, k, l, rel_tol)?;
    let delta_hat = approx.cost;
    if delta_hat == 0.0 {
        return Ok(CurvesOutcome::Success(single_member(curves, eps, m)));
    }

    let delta = approx
        .centers
        .iter()
        .flat_map(|c| c.edges().map(|(a, b)| dist(a.coords(), b.coords())))
        .fold(0.0, f64::max);
    let n = curves.len() as f64;
    // (δ/Δ̂)^m > √n, compared in log space
    if delta > 0.0 && m as f64 * (libm::log(delta) - libm::log(delta_hat)) > 0.5 * libm::log(n) {
        return Ok(CurvesOutcome::Failure(GateFailure {
            delta,
            delta_hat,
            sqrt_n: libm::sqrt(n),
            complexity: m,
        }));
    }

    let d = curves.dimension();
    let cell = eps * delta_hat / (6.0 * libm::sqrt(d as f64));
    let grids = approx
        .centers
        .iter()
        .map(|c| envelope(c, delta_hat, cell))
        .collect::<Result<Vec<_>>>()?;

    let mut uncovered = 0;
    let mut keys = Vec::with_capacity(curves.len());
    for (i, t) in padded.curves().iter().enumerate() {
        let own = approx.assignment[i];
        let found = locate(&grids[own], t)
            .map(|cells| (own, cells))
            .or_else(|| (0..grids.len()).find_map(|j| locate(&grids[j], t).map(|cells| (j, cells))));
        keys.push(match found {
            Some((j, cells)) => (0, j, cells, 0),
            None => {
                uncovered += 1;
                (1, 0, Vec::new(), i)
            }
        });
    }
    let (indices, representative) = pick_representatives(keys);
    let key_bound = grids
        .iter()
        .map(|gs| {
            let kappa: f64 = gs.iter().map(|g| g.grid.cell_count() as f64).sum();
            libm::pow(kappa, m as f64)
        })
        .sum::<f64>()
        + uncovered as f64;
    let meta = CenterMeta {
        delta_hat,
        cell_length: cell,
        grids: grids.iter().map(Vec::len).sum(),
        complexity: m,
        uncovered,
        representative,
        key_bound,
    };
    Ok(CurvesOutcome::Success(from_indices(curves, indices, eps, meta)))
}
