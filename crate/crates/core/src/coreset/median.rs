//! Sensitivity sampling for the discrete (k,l)-median.
//!
//! Sensitivity bounds come from a local-search approximation `Ĉ` with
//! clusters `U_j`, mean cluster distances `m_j` and `Φ = (1/6n) Σ F(τ, Ĉ)`:
//!
//! `λ(τ) = (2 m_j + F(τ, ĉ_j)) / (3Φ/4) + 8n / |U_j|`
//!
//! `ψ(τ) = λ(τ) / (n Λ)` with `Λ = Σ λ(τ) / n`, which equals `24 + 8k` when
//! every cluster is nonempty.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::clustering::{default_gamma, k_median_approx_matrix, DistanceMatrix, DiscreteClustering};
use crate::curve::CurveSet;
use crate::error::{invalid, Result};

use super::{check_epsilon, check_k, CoresetMeta, MedianMeta, WeightedCoreset};

/// Approximation factor assumed for `Ĉ` inside `λ`.
pub const LAMBDA_ALPHA: f64 = 6.0;
/// Ball fraction used inside `λ`.
pub const LAMBDA_GAMMA: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    /// Input index of the center.
    pub center: usize,
    pub members: Vec<usize>,
    pub mean_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingDistribution {
    pub psi: Vec<f64>,
    pub lambda: Vec<f64>,
    /// `Λ = Σ λ / n`.
    pub normalizer: f64,
    pub clusters: Vec<ClusterStats>,
    pub phi: f64,
    pub alpha: f64,
    pub gamma: f64,
    /// Prefix sums of `psi`.
    pub cumulative: Vec<f64>,
    pub approx: DiscreteClustering,
    pub degenerate: bool,
}

impl SamplingDistribution {
    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    /// Total mass ψ would have with the fixed denominator `32k` in place of `Λ`.
    pub fn literal_mass(&self) -> f64 {
        let n = self.len() as f64;
        let k = self.clusters.len() as f64;
        self.lambda.iter().map(|l| l / (n * 32.0 * k)).sum()
    }

    /// One draw from ψ. Consumes exactly one `u64` from `rng`.
    pub fn draw<R: RngCore>(&self, rng: &mut R) -> usize {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let total = self.cumulative[self.cumulative.len() - 1];
        let target = u * total;
        self.cumulative
            .partition_point(|&c| c <= target)
            .min(self.cumulative.len() - 1)
    }

    /// `count` independent draws, with replacement.
    pub fn draw_many<R: RngCore>(&self, count: usize, rng: &mut R) -> Vec<usize> {
        (0..count).map(|_| self.draw(rng)).collect()
    }
}

/// Builds ψ from a local-search median approximation with `γ = 1/(3kn)`.
pub fn compute_psi(matrix: &DistanceMatrix, k: usize) -> Result<SamplingDistribution> {
    let n = matrix.len();
    let approx = k_median_approx_matrix(matrix, k, default_gamma(k, n))?;
    let mut clusters: Vec<ClusterStats> = approx
        .centers
        .iter()
        .map(|&c| ClusterStats {
            center: c,
            members: Vec::new(),
            mean_distance: 0.0,
        })
        .collect();
    for (i, &slot) in approx.assignment.iter().enumerate() {
        clusters[slot].members.push(i);
    }
    for (slot, cl) in clusters.iter_mut().enumerate() {
        if !cl.members.is_empty() {
            let sum: f64 = cl.members.iter().map(|&i| approx.distances[i]).sum();
            cl.mean_distance = sum / cl.members.len() as f64;
        }
        debug_assert!(cl.members.iter().all(|&i| approx.assignment[i] == slot));
    }

    let nf = n as f64;
    let total: f64 = approx.distances.iter().sum();
    let degenerate = total == 0.0;
    let phi = total / (LAMBDA_ALPHA * nf);
    let lambda: Vec<f64> = if degenerate {
        vec![1.0; n]
    } else {
        (0..n)
            .map(|i| {
                let cl = &clusters[approx.assignment[i]];
                (2.0 * cl.mean_distance + approx.distances[i]) / ((1.0 - LAMBDA_GAMMA) * phi)
                    + 2.0 * nf / (LAMBDA_GAMMA * cl.members.len() as f64)
            })
            .collect()
    };
    let normalizer = lambda.iter().sum::<f64>() / nf;
    let psi: Vec<f64> = lambda.iter().map(|l| l / (nf * normalizer)).collect();
    let cumulative = psi
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    Ok(SamplingDistribution {
        psi,
        lambda,
        normalizer,
        clusters,
        phi,
        alpha: LAMBDA_ALPHA,
        gamma: LAMBDA_GAMMA,
        cumulative,
        approx,
        degenerate,
    })
}

/// `⌈640 (ln 2 − ln ρ) k² ln n / ε²⌉`.
pub fn sample_size(n: usize, k: usize, eps: f64, rho: f64) -> Result<usize> {
    check_epsilon(eps)?;
    check_k(k)?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid("rho", "must lie in (0, 1)"));
    }
    if n < 2 {
        return Err(invalid("n", "sampling needs at least two curves"));
    }
    let k = k as f64;
    let v = 640.0 * (libm::log(2.0) - libm::log(rho)) * k * k * libm::log(n as f64) / (eps * eps);
    Ok(libm::ceil(v) as usize)
}

/// Draws `ell` members from `dist` with a ChaCha8 stream seeded by `seed`.
/// Each draw `s` weighs `1 / (ell ψ(s))`. A degenerate distribution yields
/// one member per nonempty cluster weighted by the cluster size instead.
pub fn sample_coreset(
    curves: &CurveSet,
    dist: &SamplingDistribution,
    ell: usize,
    eps: f64,
    rho: f64,
    seed: u64,
) -> Result<WeightedCoreset> {
    if ell == 0 {
        return Err(invalid("ell", "must be at least 1"));
    }
    let (indices, weights): (Vec<usize>, Vec<f64>) = if dist.degenerate {
        dist.clusters
            .iter()
            .filter(|c| !c.members.is_empty())
            .map(|c| (c.center, c.members.len() as f64))
            .unzip()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let drawn = dist.draw_many(ell, &mut rng);
        let w = drawn.iter().map(|&i| 1.0 / (ell as f64 * dist.psi[i])).collect();
        (drawn, w)
    };
    Ok(WeightedCoreset {
        members: indices.iter().map(|&i| curves[i].clone()).collect(),
        indices,
        weights,
        epsilon: eps,
        meta: CoresetMeta::Median(MedianMeta {
            seed,
            rho,
            sample_size: ell,
            approx_cost: dist.approx.trace.seed_cost.unwrap_or(0.0),
            swaps: dist.approx.trace.swaps.len(),
            phi: dist.phi,
            normalizer: dist.normalizer,
            degenerate: dist.degenerate,
        }),
    })
}

/// Weighted ε-coreset for the discrete (k,l)-median, valid with
/// probability at least `1 - rho`.
pub fn median_coreset(curves: &CurveSet, eps: f64, k: usize, rho: f64, seed: u64, rel_tol: f64) -> Result<WeightedCoreset> {
    let ell = sample_size(curves.len(), k, eps, rho)?;
    let matrix = DistanceMatrix::new(curves, rel_tol)?;
    let dist = compute_psi(&matrix, k)?;
    sample_coreset(curves, &dist, ell, eps, rho, seed)
}
