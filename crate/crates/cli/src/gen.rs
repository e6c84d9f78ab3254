//! Synthetic clustered curve sets.

use anyhow::{bail, Result};
use curve_coreset::{Curve, CurveSet, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub clusters: usize,
    pub per_cluster: usize,
    /// Vertices per curve.
    pub complexity: usize,
    pub dimension: usize,
    /// Template start points are drawn from `[-spread, spread]^d`.
    pub spread: f64,
    /// Maximum length of a template edge.
    pub edge: f64,
    /// Each member coordinate moves by at most this much from its template.
    pub noise: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            clusters: 3,
            per_cluster: 5,
            complexity: 4,
            dimension: 2,
            spread: 10.0,
            edge: 2.0,
            noise: 0.1,
            seed: 0,
        }
    }
}

/// Random-walk templates, one per cluster, and perturbed copies of each.
/// Draw order: every template (start, then edges), then every member
/// (clusters in order, vertices in order, coordinates in order).
pub fn generate(cfg: &GenConfig) -> Result<CurveSet> {
    if cfg.clusters == 0 || cfg.per_cluster == 0 {
        bail!("clusters and per-cluster counts must be positive");
    }
    if cfg.complexity < 2 || cfg.dimension == 0 {
        bail!("curves need at least two vertices and one dimension");
    }
    if !(cfg.spread >= 0.0 && cfg.edge >= 0.0 && cfg.noise >= 0.0)
        || !(cfg.spread.is_finite() && cfg.edge.is_finite() && cfg.noise.is_finite())
    {
        bail!("spread, edge and noise must be finite and nonnegative");
    }
    let d = cfg.dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut uniform = |r: f64| if r > 0.0 { rng.random_range(-r..=r) } else { 0.0 };

    let mut templates = Vec::with_capacity(cfg.clusters);
    for _ in 0..cfg.clusters {
        let mut v: Vec<Vec<f64>> = vec![(0..d).map(|_| uniform(cfg.spread)).collect()];
        for _ in 1..cfg.complexity {
            let step: Vec<f64> = (0..d).map(|_| uniform(cfg.edge)).collect();
            // keep the step inside the ball of radius `edge`
            let norm = step.iter().map(|x| x * x).sum::<f64>().sqrt();
            let scale = if norm > cfg.edge { cfg.edge / norm } else { 1.0 };
            let last = v.last().unwrap();
            let next = last.iter().zip(&step).map(|(a, b)| a + b * scale).collect();
            v.push(next);
        }
        templates.push(v);
    }

    let mut curves = Vec::with_capacity(cfg.clusters * cfg.per_cluster);
    for (c, t) in templates.iter().enumerate() {
        for i in 0..cfg.per_cluster {
            let pts = t
                .iter()
                .map(|v| Point::new(v.iter().map(|x| x + uniform(cfg.noise)).collect()))
                .collect::<Result<Vec<_>, _>>()?;
            curves.push(Curve::new(pts)?.with_label(format!("c{c}-{i}")));
        }
    }
    Ok(CurveSet::new(curves)?)
}
