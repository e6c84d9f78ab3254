//! Brute-force reference computations: discrete Fréchet by enumerating
//! couplings, exact discrete k-center and k-median by enumerating center
//! subsets, the coreset sandwich check, and a concrete instance on which the
//! vertex-centroid segment is not the optimal (1,2)-means center.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::clustering::{DistanceMatrix, ObjectiveKind};
use crate::coreset::WeightedCoreset;
use crate::curve::{Curve, CurveSet};
use crate::error::{invalid, Error, Result};
use crate::frechet::frechet_distance;
use crate::geometry::{centroid, dist, Point};

/// Largest sequence length [`exhaustive_discrete_frechet`] accepts.
pub const MAX_COUPLING_LEN: usize = 7;

/// Size limits for subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self { max_n: 14, max_k: 3 }
    }
}

/// Minimum over all monotone couplings of the largest coupled distance.
pub fn exhaustive_discrete_frechet(p: &[Point], q: &[Point]) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Empty("vertex sequence"));
    }
    if p.len() > MAX_COUPLING_LEN || q.len() > MAX_COUPLING_LEN {
        return Err(Error::GuardExceeded(format!(
            "coupling enumeration limited to {MAX_COUPLING_LEN}x{MAX_COUPLING_LEN}, got {}x{}",
            p.len(),
            q.len()
        )));
    }
    if p[0].dim() != q[0].dim() {
        return Err(Error::DimensionMismatch {
            expected: p[0].dim(),
            found: q[0].dim(),
        });
    }
    fn walk(p: &[Point], q: &[Point], i: usize, j: usize, worst: f64, best: &mut f64) {
        let worst = worst.max(dist(p[i].coords(), q[j].coords()));
        if worst >= *best {
            return;
        }
        if i + 1 == p.len() && j + 1 == q.len() {
            *best = worst;
            return;
        }
        if i + 1 < p.len() {
            walk(p, q, i + 1, j, worst, best);
        }
        if j + 1 < q.len() {
            walk(p, q, i, j + 1, worst, best);
        }
        if i + 1 < p.len() && j + 1 < q.len() {
            walk(p, q, i + 1, j + 1, worst, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(p, q, 0, 0, 0.0, &mut best);
    Ok(best)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Outcome of an exact optimization by enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: usize,
    pub k: usize,
    pub kind: ObjectiveKind,
    pub optimum: f64,
    /// Lexicographically first optimal center subset.
    pub argmin: Vec<usize>,
    pub evaluated: usize,
    pub target: Option<f64>,
    /// `target / optimum`; `None` when the optimum is zero.
    pub ratio: Option<f64>,
}

impl OracleReport {
    /// Attaches the value of a heuristic to compare against the optimum.
    pub fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self.ratio = (self.optimum > 0.0).then(|| target / self.optimum);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.optimum == 0.0
    }

    /// Whether the target is within `factor` of the optimum, with a relative
    /// slack `tol`.
    pub fn within(&self, factor: f64, tol: f64) -> bool {
        match self.target {
            Some(t) => t <= factor * self.optimum * (1.0 + tol) + tol,
            None => true,
        }
    }
}

fn brute_force(matrix: &DistanceMatrix, k: usize, kind: ObjectiveKind, guard: Guard) -> Result<OracleReport> {
    let n = matrix.len();
    if k == 0 {
        return Err(invalid("k", "must be at least 1"));
    }
    if k > n {
        return Err(Error::TooManyCenters { k, n });
    }
    if n > guard.max_n || k > guard.max_k {
        return Err(Error::GuardExceeded(format!(
            "subset enumeration limited to n <= {}, k <= {}, got n = {n}, k = {k}",
            guard.max_n, guard.max_k
        )));
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut evaluated = 0;
    for c in k_subsets(n, k) {
        evaluated += 1;
        let v = matrix.cost(&c, kind);
        if v < best.0 {
            best = (v, c);
        }
    }
    Ok(OracleReport {
        n,
        k,
        kind,
        optimum: best.0,
        argmin: best.1,
        evaluated,
        target: None,
        ratio: None,
    })
}

/// Exact discrete k-center optimum over all center subsets of the input.
pub fn brute_force_discrete_center(matrix: &DistanceMatrix, k: usize, guard: Guard) -> Result<OracleReport> {
    brute_force(matrix, k, ObjectiveKind::Center, guard)
}

/// Exact discrete k-median optimum over all center subsets of the input.
pub fn brute_force_discrete_median(matrix: &DistanceMatrix, k: usize, guard: Guard) -> Result<OracleReport> {
    brute_force(matrix, k, ObjectiveKind::Median, guard)
}

/// Every `k`-subset of `0..n`, refusing more than `max_subsets`.
pub fn exhaustive_candidates(n: usize, k: usize, max_subsets: usize) -> Result<Vec<Vec<usize>>> {
    let count = binomial(n, k);
    if count > max_subsets as u128 {
        return Err(Error::GuardExceeded(format!(
            "{count} candidate sets exceed the limit of {max_subsets}"
        )));
    }
    Ok(k_subsets(n, k).collect())
}

/// `count` seeded random `k`-subsets of `0..n` (each sorted, repeats possible
/// across subsets).
pub fn random_candidates(n: usize, k: usize, count: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > n {
        return Err(invalid("k", "must lie in 1..=n"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    Ok((0..count)
        .map(|_| {
            for i in 0..k {
                let j = i + (rng.next_u64() % (n - i) as u64) as usize;
                pool.swap(i, j);
            }
            let mut c = pool[..k].to_vec();
            c.sort_unstable();
            c
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateCheck {
    pub full: f64,
    pub coreset: f64,
    /// `min((1 + ε) full − coreset, coreset − (1 − ε) full)`; negative on violation.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub epsilon: f64,
    pub checks: Vec<CandidateCheck>,
    pub worst_margin: f64,
    pub failures: usize,
}

impl SandwichReport {
    fn new(epsilon: f64, tol: f64, pairs: impl Iterator<Item = (f64, f64)>) -> Self {
        let checks: Vec<CandidateCheck> = pairs
            .map(|(full, coreset)| {
                let margin = ((1.0 + epsilon) * full - coreset).min(coreset - (1.0 - epsilon) * full);
                CandidateCheck {
                    full,
                    coreset,
                    margin,
                    pass: margin >= -tol * full.max(1.0),
                }
            })
            .collect();
        Self {
            epsilon,
            worst_margin: checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min),
            failures: checks.iter().filter(|c| !c.pass).count(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Sandwich check for candidate center sets given as input indices,
/// evaluated on a precomputed distance matrix. `tol` is a relative slack
/// for rounding in the costs.
pub fn sandwich_check_matrix(
    matrix: &DistanceMatrix,
    coreset: &WeightedCoreset,
    eps: f64,
    candidates: &[Vec<usize>],
    kind: ObjectiveKind,
    tol: f64,
) -> SandwichReport {
    sandwich_check_weights(matrix, &coreset.aggregated(), eps, candidates, kind, tol)
}

/// As [`sandwich_check_matrix`], for a coreset given as `(input index,
/// weight)` pairs.
pub fn sandwich_check_weights(
    matrix: &DistanceMatrix,
    weights: &[(usize, f64)],
    eps: f64,
    candidates: &[Vec<usize>],
    kind: ObjectiveKind,
    tol: f64,
) -> SandwichReport {
    SandwichReport::new(
        eps,
        tol,
        candidates.iter().map(|c| {
            let full = matrix.cost(c, kind);
            let core = kind.aggregate_weighted(weights.iter().map(|&(i, w)| (w, matrix.nearest(i, c).1)));
            (full, core)
        }),
    )
}

/// Sandwich check for explicit candidate center sets.
pub fn coreset_sandwich_check(
    curves: &CurveSet,
    coreset: &WeightedCoreset,
    eps: f64,
    candidates: &[Vec<Curve>],
    kind: ObjectiveKind,
    rel_tol: f64,
) -> Result<SandwichReport> {
    let mut pairs = Vec::with_capacity(candidates.len());
    for c in candidates {
        let full = crate::clustering::cost(curves, c, kind, rel_tol)?;
        let core = coreset.cost(c, kind, rel_tol)?;
        pairs.push((full, core));
    }
    Ok(SandwichReport::new(eps, rel_tol * 10.0, pairs.into_iter()))
}

/// A segment set on which the centroid segment loses to another center
/// under the (1,2)-means objective.
#[derive(Debug, Clone, PartialEq)]
pub struct MeansCounterexample {
    pub curves: CurveSet,
    /// Indices of the first group; the rest form the second.
    pub first_group: Vec<usize>,
    /// Segment between the centroids of all start and all end points.
    pub mu: Curve,
    /// Segment from the first group's start centroid to the second group's end centroid.
    pub nu: Curve,
    pub cost_mu: f64,
    pub cost_nu: f64,
    /// `cost_mu` as a sum of larger squared endpoint distances.
    pub cost_mu_endpoints: f64,
    /// Conditions (I) to (V) in order.
    pub conditions: [bool; 5],
}

/// Builds and checks the counterexample instance in the plane.
///
/// The first group's distance to either center is attained at the start
/// points, the second group's at the end points, and the two centers have
/// different endpoints.
pub fn means_counterexample(rel_tol: f64) -> Result<MeansCounterexample> {
    let seg = |a: [f64; 2], b: [f64; 2]| Curve::from_coords(&[&a, &b]);
    let curves = CurveSet::new(vec![
        seg([-10.0, 5.0], [100.0, 0.0])?,
        seg([10.0, 5.0], [100.0, 0.0])?,
        seg([0.0, 0.0], [90.0, -5.0])?,
        seg([0.0, 0.0], [110.0, -5.0])?,
    ])?;
    let first_group = vec![0, 1];
    let second: Vec<usize> = (2..4).collect();
    let starts = |ix: &[usize]| ix.iter().map(|&i| curves[i].start().clone()).collect::<Vec<_>>();
    let ends = |ix: &[usize]| ix.iter().map(|&i| curves[i].end().clone()).collect::<Vec<_>>();
    let all: Vec<usize> = (0..4).collect();
    let mu0 = centroid(&starts(&all))?;
    let mu1 = centroid(&ends(&all))?;
    let nu0 = centroid(&starts(&first_group))?;
    let nu1 = centroid(&ends(&second))?;

    let d = |p: &Point, q: &Point| dist(p.coords(), q.coords());
    let start_dominates = |ix: &[usize], c0: &Point, c1: &Point| {
        ix.iter()
            .all(|&i| d(curves[i].start(), c0) > d(curves[i].end(), c1))
    };
    let end_dominates = |ix: &[usize], c0: &Point, c1: &Point| {
        ix.iter()
            .all(|&i| d(curves[i].end(), c1) > d(curves[i].start(), c0))
    };
    let conditions = [
        start_dominates(&first_group, &mu0, &mu1),
        start_dominates(&first_group, &nu0, &nu1),
        end_dominates(&second, &mu0, &mu1),
        end_dominates(&second, &nu0, &nu1),
        mu0 != nu0 && mu1 != nu1,
    ];
    if conditions.iter().any(|ok| !ok) {
        return Err(invalid("counterexample", "instance violates its own conditions"));
    }

    let mu = Curve::new(vec![mu0.clone(), mu1.clone()])?;
    let nu = Curve::new(vec![nu0, nu1])?;
    let cost_of = |c: &Curve| -> Result<f64> {
        let mut s = 0.0;
        for t in curves.curves() {
            let f = frechet_distance(t, c, rel_tol)?.value;
            s += f * f;
        }
        Ok(s)
    };
    let cost_mu = cost_of(&mu)?;
    let cost_nu = cost_of(&nu)?;
    let cost_mu_endpoints = curves
        .curves()
        .iter()
        .map(|t| {
            let (a, b) = (d(t.start(), &mu0), d(t.end(), &mu1));
            (a * a).max(b * b)
        })
        .sum();
    Ok(MeansCounterexample {
        curves,
        first_group,
        mu,
        nu,
        cost_mu,
        cost_nu,
        cost_mu_endpoints,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frechet::discrete_frechet;

    fn pts(rows: &[&[f64]]) -> Vec<Point> {
        rows.iter().map(|r| Point::new(r.to_vec()).unwrap()).collect()
    }

    #[test]
    fn coupling_examples() {
        let p = pts(&[&[0., 0.], &[1., 0.], &[2., 1.]]);
        assert_eq!(exhaustive_discrete_frechet(&p, &p).unwrap(), 0.0);
        let a = pts(&[&[0., 0.]]);
        let b = pts(&[&[3., 4.]]);
        assert_eq!(exhaustive_discrete_frechet(&a, &b).unwrap(), 5.0);
        let q = pts(&[&[0., 1.], &[2., 2.]]);
        assert_eq!(
            exhaustive_discrete_frechet(&p, &q).unwrap(),
            discrete_frechet(&p, &q).unwrap()
        );
        let long = pts(&[&[0., 0.][..]; 8]);
        assert!(matches!(
            exhaustive_discrete_frechet(&long, &a),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let all: Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(k_subsets(30, 2).count(), 435);
        assert_eq!(binomial(30, 2), 435);
        assert_eq!(k_subsets(3, 3).count(), 1);
        assert_eq!(k_subsets(2, 3).count(), 0);
    }

    #[test]
    fn brute_force_examples() {
        let xs: [f64; 4] = [0.0, 0.0, 5.0, 5.0];
        let m = DistanceMatrix::from_fn(4, |i, j| (xs[i] - xs[j]).abs());
        assert_eq!(brute_force_discrete_center(&m, 4, Guard { max_n: 14, max_k: 4 }).unwrap().optimum, 0.0);
        let r = brute_force_discrete_median(&m, 2, Guard::default()).unwrap();
        assert_eq!((r.optimum, r.argmin.clone()), (0.0, vec![0, 2]));
        assert!(r.with_target(0.0).is_exact());
        let big = DistanceMatrix::from_fn(15, |i, j| (i as f64 - j as f64).abs());
        assert!(matches!(
            brute_force_discrete_center(&big, 2, Guard::default()),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn counterexample_holds() {
        let c = means_counterexample(1e-9).unwrap();
        assert!(c.conditions.iter().all(|&b| b));
        assert!((c.cost_mu - 425.0).abs() < 1e-9);
        assert!((c.cost_nu - 400.0).abs() < 1e-9);
        assert!((c.cost_mu - c.cost_mu_endpoints).abs() < 1e-9);
    }
}
