//! Clustering objectives, nearest-center assignment and the approximation
//! algorithms: farthest-first (k,l)-center with simplified centers, its
//! discrete variant with centers drawn from the input, and swap-based local
//! search for the discrete (k,l)-median.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{Curve, CurveSet};
use crate::error::{invalid, Error, Result};
use crate::frechet::{frechet_distance, simplify, FrechetResult, MIN_REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// Maximum distance to the nearest center.
    Center,
    /// Sum of distances to the nearest center.
    Median,
    /// Sum of squared distances to the nearest center.
    Means,
}

impl ObjectiveKind {
    /// Folds per-curve nearest distances into the objective value.
    pub fn aggregate(self, distances: impl IntoIterator<Item = f64>) -> f64 {
        let it = distances.into_iter();
        match self {
            ObjectiveKind::Center => it.fold(0.0, f64::max),
            ObjectiveKind::Median => it.sum(),
            ObjectiveKind::Means => it.map(|d| d * d).sum(),
        }
    }

    /// Weighted objective value; weights scale each term (ignored for center).
    pub fn aggregate_weighted(self, terms: impl IntoIterator<Item = (f64, f64)>) -> f64 {
        let it = terms.into_iter();
        match self {
            ObjectiveKind::Center => it.map(|(_, d)| d).fold(0.0, f64::max),
            ObjectiveKind::Median => it.map(|(w, d)| w * d).sum(),
            ObjectiveKind::Means => it.map(|(w, d)| w * d * d).sum(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub k: usize,
    pub l: usize,
}

impl Objective {
    pub fn new(kind: ObjectiveKind, k: usize, l: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k", "must be at least 1"));
        }
        if l < 2 {
            return Err(invalid("l", "must be at least 2"));
        }
        Ok(Self { kind, k, l })
    }
}

/// One accepted local-search swap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Swap {
    /// Position in the center list that was replaced.
    pub slot: usize,
    pub removed: usize,
    pub inserted: usize,
    pub cost_before: f64,
    pub cost_after: f64,
}

/// Construction record of a clustering.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    /// Distance of the curve picked in each farthest-first round after the first.
    pub farthest: Vec<f64>,
    /// True when farthest-first ran out of distinct curves and repeated one.
    pub exhausted: bool,
    /// Median cost of the farthest-first seed (local search only).
    pub seed_cost: Option<f64>,
    pub gamma: Option<f64>,
    pub swaps: Vec<Swap>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub centers: Vec<Curve>,
    /// Input indices of the centers, for discrete clusterings.
    pub center_indices: Option<Vec<usize>>,
    /// Per input curve, the position of its nearest center in `centers`.
    pub assignment: Vec<usize>,
    /// Per input curve, the distance to its assigned center.
    pub distances: Vec<f64>,
    pub cost: f64,
    pub objective: Objective,
    pub trace: Trace,
}

impl Clustering {
    /// Members of the cluster of center `j`.
    pub fn cluster(&self, j: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| (a == j).then_some(i))
            .collect()
    }
}

/// Argmin (or argmax) over candidates whose distances are brackets. When the
/// winner's bracket overlaps another's, both are recomputed at a tenth of the
/// tolerance, down to [`MIN_REL_TOL`]; remaining overlaps resolve to the
/// lowest index.
fn select_interval<F>(n: usize, rel_tol: f64, maximize: bool, mut eval: F) -> Result<(usize, FrechetResult)>
where
    F: FnMut(usize, f64) -> Result<FrechetResult>,
{
    let mut results = (0..n).map(|i| eval(i, rel_tol)).collect::<Result<Vec<_>>>()?;
    let mut tol = rel_tol;
    loop {
        let mut best = 0;
        for i in 1..n {
            let better = if maximize {
                results[i].value > results[best].value
            } else {
                results[i].value < results[best].value
            };
            if better {
                best = i;
            }
        }
        let rivals: Vec<usize> = (0..n)
            .filter(|&i| i != best && results[i].overlaps(&results[best]))
            .collect();
        if rivals.is_empty() {
            return Ok((best, results[best]));
        }
        if tol <= MIN_REL_TOL {
            let lowest = rivals[0].min(best);
            return Ok((lowest, results[lowest]));
        }
        tol = (tol / 10.0).max(MIN_REL_TOL);
        for i in core::iter::once(best).chain(rivals) {
            // exact brackets cannot tighten further
            if results[i].lower < results[i].upper {
                results[i] = eval(i, tol)?;
            }
        }
    }
}

/// Nearest center of `t` (lowest index among ties) and its distance.
pub fn nearest_center(t: &Curve, centers: &[Curve], rel_tol: f64) -> Result<(usize, FrechetResult)> {
    if centers.is_empty() {
        return Err(Error::Empty("center set"));
    }
    select_interval(centers.len(), rel_tol, false, |j, tol| {
        frechet_distance(t, &centers[j], tol)
    })
}

/// Nearest-center assignment of every curve together with the distances.
pub fn assign(curves: &CurveSet, centers: &[Curve], rel_tol: f64) -> Result<(Vec<usize>, Vec<f64>)> {
    let mut assignment = Vec::with_capacity(curves.len());
    let mut distances = Vec::with_capacity(curves.len());
    for t in curves.curves() {
        let (j, f) = nearest_center(t, centers, rel_tol)?;
        assignment.push(j);
        distances.push(f.value);
    }
    Ok((assignment, distances))
}

/// Objective value of `centers` on `curves`.
pub fn cost(curves: &CurveSet, centers: &[Curve], kind: ObjectiveKind, rel_tol: f64) -> Result<f64> {
    let (_, distances) = assign(curves, centers, rel_tol)?;
    Ok(kind.aggregate(distances))
}

/// Farthest-first (k,l)-center approximation with `l`-simplified centers.
///
/// The first center simplifies the first input curve; every later round
/// simplifies the curve farthest from the centers chosen so far. With
/// `k > n` the curves run out and centers repeat (`trace.exhausted`).
pub fn kl_center_approx(curves: &CurveSet, k: usize, l: usize, rel_tol: f64) -> Result<Clustering> {
    let objective = Objective::new(ObjectiveKind::Center, k, l)?;
    let ts = curves.curves();
    let n = ts.len();
    let mut centers = vec![simplify(&ts[0], l)?];
    let mut trace = Trace::default();
    // nearest distance and owning center of every curve so far
    let mut near = ts
        .iter()
        .map(|t| frechet_distance(t, &centers[0], rel_tol))
        .collect::<Result<Vec<_>>>()?;
    let mut owner = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;

    for _ in 1..k {
        let (pick, far) = select_interval(n, rel_tol, true, |i, tol| {
            if tol == rel_tol {
                Ok(near[i])
            } else {
                frechet_distance(&ts[i], &centers[owner[i]], tol)
            }
        })?;
        trace.farthest.push(far.value);
        if used[pick] {
            trace.exhausted = true;
        }
        used[pick] = true;
        let c = simplify(&ts[pick], l)?;
        let slot = centers.len();
        for (i, t) in ts.iter().enumerate() {
            let f = frechet_distance(t, &c, rel_tol)?;
            if f.value < near[i].value {
                near[i] = f;
                owner[i] = slot;
            }
        }
        centers.push(c);
    }

    let (assignment, distances) = assign(curves, &centers, rel_tol)?;
    let cost = ObjectiveKind::Center.aggregate(distances.iter().copied());
    Ok(Clustering {
        centers,
        center_indices: None,
        assignment,
        distances,
        cost,
        objective,
        trace,
    })
}

/// Symmetric matrix of pairwise continuous Fréchet distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(curves: &CurveSet, rel_tol: f64) -> Result<Self> {
        let ts = curves.curves();
        let n = ts.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = frechet_distance(&ts[i], &ts[j], rel_tol)?.value;
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Ok(Self { n, values })
    }

    /// Builds a matrix from an arbitrary symmetric distance function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Distance from curve `i` to its nearest center (first position on ties).
    #[inline]
    pub fn nearest(&self, i: usize, centers: &[usize]) -> (usize, f64) {
        let mut best = (0, self.get(i, centers[0]));
        for (slot, &c) in centers.iter().enumerate().skip(1) {
            let d = self.get(i, c);
            if d < best.1 {
                best = (slot, d);
            }
        }
        best
    }

    /// Objective value of the center indices `centers`.
    pub fn cost(&self, centers: &[usize], kind: ObjectiveKind) -> f64 {
        kind.aggregate((0..self.n).map(|i| self.nearest(i, centers).1))
    }
}

/// Indices-only result of the discrete algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteClustering {
    pub centers: Vec<usize>,
    pub assignment: Vec<usize>,
    pub distances: Vec<f64>,
    pub cost: f64,
    pub kind: ObjectiveKind,
    pub trace: Trace,
}

impl DiscreteClustering {
    fn evaluate(matrix: &DistanceMatrix, centers: Vec<usize>, kind: ObjectiveKind, trace: Trace) -> Self {
        let (assignment, distances): (Vec<_>, Vec<_>) =
            (0..matrix.len()).map(|i| matrix.nearest(i, &centers)).unzip();
        let cost = kind.aggregate(distances.iter().copied());
        Self {
            centers,
            assignment,
            distances,
            cost,
            kind,
            trace,
        }
    }

    /// Attaches the center curves.
    pub fn into_clustering(self, curves: &CurveSet) -> Clustering {
        let m = curves.max_complexity().max(2);
        Clustering {
            centers: self.centers.iter().map(|&i| curves[i].clone()).collect(),
            objective: Objective {
                kind: self.kind,
                k: self.centers.len(),
                l: m,
            },
            center_indices: Some(self.centers),
            assignment: self.assignment,
            distances: self.distances,
            cost: self.cost,
            trace: self.trace,
        }
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("k", "must be at least 1"));
    }
    if k > n {
        return Err(Error::TooManyCenters { k, n });
    }
    Ok(())
}

/// Discrete farthest-first k-center on a precomputed matrix. Centers are
/// distinct input indices; the first is index 0.
pub fn k_center_approx_matrix(matrix: &DistanceMatrix, k: usize) -> Result<DiscreteClustering> {
    let n = matrix.len();
    check_k(k, n)?;
    let mut centers = vec![0usize];
    let mut is_center = vec![false; n];
    is_center[0] = true;
    let mut near: Vec<f64> = (0..n).map(|i| matrix.get(i, 0)).collect();
    let mut trace = Trace::default();
    for _ in 1..k {
        let mut pick = None;
        for i in (0..n).filter(|&i| !is_center[i]) {
            if pick.map_or(true, |p: usize| near[i] > near[p]) {
                pick = Some(i);
            }
        }
        let pick = pick.expect("k <= n leaves a non-center");
        trace.farthest.push(near[pick]);
        is_center[pick] = true;
        centers.push(pick);
        for (i, d) in near.iter_mut().enumerate() {
            *d = d.min(matrix.get(i, pick));
        }
    }
    Ok(DiscreteClustering::evaluate(
        matrix,
        centers,
        ObjectiveKind::Center,
        trace,
    ))
}

/// Discrete farthest-first k-center on curves.
pub fn k_center_approx(curves: &CurveSet, k: usize, rel_tol: f64) -> Result<Clustering> {
    check_k(k, curves.len())?;
    let matrix = DistanceMatrix::new(curves, rel_tol)?;
    Ok(k_center_approx_matrix(&matrix, k)?.into_clustering(curves))
}

/// `1 / (3·k·n)`, the swap threshold scale used by the median coreset.
pub fn default_gamma(k: usize, n: usize) -> f64 {
    1.0 / (3.0 * k as f64 * n as f64)
}

/// Upper bound `3nk - k` on the number of swaps with the default gamma.
pub fn swap_bound(k: usize, n: usize) -> usize {
    3 * n * k - k
}

/// First improving swap of `centers`, scanning slots then candidates in
/// index order. A swap improves when it lowers the cost by more than `margin`.
pub fn find_improving_swap(
    matrix: &DistanceMatrix,
    centers: &[usize],
    margin: f64,
) -> Option<Swap> {
    let n = matrix.len();
    let current = matrix.cost(centers, ObjectiveKind::Median);
    let mut trial = centers.to_vec();
    for slot in 0..centers.len() {
        for cand in 0..n {
            if centers.contains(&cand) {
                continue;
            }
            trial[slot] = cand;
            let after = matrix.cost(&trial, ObjectiveKind::Median);
            if current - margin > after {
                return Some(Swap {
                    slot,
                    removed: centers[slot],
                    inserted: cand,
                    cost_before: current,
                    cost_after: after,
                });
            }
        }
        trial[slot] = centers[slot];
    }
    None
}

/// Swap-based local search for the discrete k-median, seeded with the
/// discrete farthest-first solution. First-improvement order.
pub fn k_median_approx_matrix(matrix: &DistanceMatrix, k: usize, gamma: f64) -> Result<DiscreteClustering> {
    if !(gamma > 0.0) {
        return Err(invalid("gamma", "must be positive"));
    }
    let seed = k_center_approx_matrix(matrix, k)?;
    let mut centers = seed.centers;
    let mut trace = seed.trace;
    let seed_cost = matrix.cost(&centers, ObjectiveKind::Median);
    trace.seed_cost = Some(seed_cost);
    trace.gamma = Some(gamma);
    let margin = gamma * seed_cost;
    while let Some(swap) = find_improving_swap(matrix, &centers, margin) {
        centers[swap.slot] = swap.inserted;
        trace.swaps.push(swap);
    }
    Ok(DiscreteClustering::evaluate(
        matrix,
        centers,
        ObjectiveKind::Median,
        trace,
    ))
}

/// Local-search k-median on curves; `gamma` defaults to `1 / (3kn)`.
pub fn k_median_approx(curves: &CurveSet, k: usize, gamma: Option<f64>, rel_tol: f64) -> Result<Clustering> {
    check_k(k, curves.len())?;
    let matrix = DistanceMatrix::new(curves, rel_tol)?;
    let gamma = gamma.unwrap_or_else(|| default_gamma(k, curves.len()));
    Ok(k_median_approx_matrix(&matrix, k, gamma)?.into_clustering(curves))
}
