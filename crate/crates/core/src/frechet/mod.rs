//! Continuous and discrete Fréchet distances.
//!
//! The continuous distance is bracketed by bisection over the free-space
//! decision procedure: the largest endpoint distance is a lower bound and
//! the discrete distance of the vertex sequences an upper bound. Results
//! carry the final bracket so callers can compare values interval-aware.

mod free_space;
mod simplify;

pub use simplify::simplify;

use alloc::vec;

use crate::curve::Curve;
use crate::error::{invalid, Error, Result};
use crate::geometry::{dist, Point};

/// Default relative tolerance for [`frechet_distance`].
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Smallest tolerance interval-aware comparisons tighten down to.
pub const MIN_REL_TOL: f64 = 1e-12;

const MAX_BISECTIONS: usize = 256;

/// A bracketed continuous Fréchet distance: `lower <= value <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrechetResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub tolerance: f64,
}

impl FrechetResult {
    fn exact(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            lower: value,
            upper: value,
            tolerance,
        }
    }

    /// Whether the brackets of `self` and `other` intersect.
    pub fn overlaps(&self, other: &FrechetResult) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }
}

/// Closed ball of curves around `center` under the Fréchet distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Curve,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Curve, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(invalid("radius", "must be nonnegative"));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, t: &Curve) -> Result<bool> {
        in_ball(self, t)
    }
}

fn check_pair(t: &Curve, s: &Curve) -> Result<()> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: s.dim(),
        });
    }
    Ok(())
}

fn endpoint_bound(t: &[Point], s: &[Point]) -> f64 {
    let a = dist(t[0].coords(), s[0].coords());
    let b = dist(t[t.len() - 1].coords(), s[s.len() - 1].coords());
    a.max(b)
}

/// Fréchet distance between two line segments: the larger endpoint distance.
pub fn segment_frechet(s1: &Curve, s2: &Curve) -> Result<f64> {
    if !s1.is_segment() || !s2.is_segment() {
        return Err(invalid("segment", "both curves must have exactly two vertices"));
    }
    check_pair(s1, s2)?;
    Ok(endpoint_bound(s1.vertices(), s2.vertices()))
}

/// Decides whether `F(t, s) <= delta`.
pub fn frechet_decision(t: &Curve, s: &Curve, delta: f64) -> Result<bool> {
    if !(delta >= 0.0) {
        return Err(invalid("delta", "must be nonnegative"));
    }
    check_pair(t, s)?;
    Ok(free_space::decide(t.vertices(), s.vertices(), delta))
}

/// Continuous Fréchet distance bracketed to `upper - lower <= rel_tol · max(1, upper)`.
pub fn frechet_distance(t: &Curve, s: &Curve, rel_tol: f64) -> Result<FrechetResult> {
    if !(rel_tol > 0.0) {
        return Err(invalid("rel_tol", "must be positive"));
    }
    check_pair(t, s)?;
    Ok(bracket(t.vertices(), s.vertices(), rel_tol))
}

/// Smallest value at or a few ulps above `hi` the decision procedure
/// accepts. The discrete bound can sit exactly on a free-space tangency
/// where rounding flips the decision.
fn certify(t: &[Point], s: &[Point], hi: f64) -> f64 {
    let mut h = hi;
    let mut step = hi.max(f64::MIN_POSITIVE) * f64::EPSILON;
    for _ in 0..64 {
        if free_space::decide(t, s, h) {
            break;
        }
        h += step;
        step *= 2.0;
    }
    h
}

fn bracket(t: &[Point], s: &[Point], rel_tol: f64) -> FrechetResult {
    let mut lo = endpoint_bound(t, s);
    let mut hi = certify(t, s, discrete_unchecked(t, s));
    if hi - lo <= rel_tol * hi.max(1.0) {
        return FrechetResult {
            value: 0.5 * (lo + hi),
            lower: lo,
            upper: hi,
            tolerance: rel_tol,
        };
    }
    if free_space::decide(t, s, lo) {
        return FrechetResult::exact(lo, rel_tol);
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= rel_tol * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if free_space::decide(t, s, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    FrechetResult {
        value: 0.5 * (lo + hi),
        lower: lo,
        upper: hi,
        tolerance: rel_tol,
    }
}

/// Discrete Fréchet distance between two vertex sequences.
pub fn discrete_frechet(p: &[Point], q: &[Point]) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Empty("vertex sequence"));
    }
    if p[0].dim() != q[0].dim() {
        return Err(Error::DimensionMismatch {
            expected: p[0].dim(),
            found: q[0].dim(),
        });
    }
    Ok(discrete_unchecked(p, q))
}

pub(crate) fn discrete_unchecked(p: &[Point], q: &[Point]) -> f64 {
    let nq = q.len();
    let mut prev = vec![0.0f64; nq];
    let mut cur = vec![0.0f64; nq];
    for (i, pi) in p.iter().enumerate() {
        for j in 0..nq {
            let d = dist(pi.coords(), q[j].coords());
            let reach = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(reach);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[nq - 1]
}

/// Membership of `t` in the closed ball `b`, decided without bisection.
pub fn in_ball(b: &Ball, t: &Curve) -> Result<bool> {
    frechet_decision(&b.center, t, b.radius)
}
