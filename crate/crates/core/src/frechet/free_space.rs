//! Free-space reachability for the continuous Fréchet decision problem.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{dist, dist2, Point};

type Interval = Option<(f64, f64)>;

const TANGENCY_SLACK: f64 = 1e-12;

/// Parameter interval `[lo, hi] ⊆ [0, 1]` of the points on segment `a→b`
/// within distance `delta` of `c`.
pub(crate) fn free_interval(a: &[f64], b: &[f64], c: &[f64], delta: f64) -> Interval {
    let start_in = dist(a, c) <= delta;
    let end_in = dist(b, c) <= delta;
    let len2 = dist2(a, b);
    if len2 == 0.0 {
        return if start_in { Some((0.0, 1.0)) } else { None };
    }
    // |a + t(b - a) - c|^2 = len2 t^2 + 2 h t + (|a - c|^2 - delta^2)
    let h: f64 = a
        .iter()
        .zip(b)
        .zip(c)
        .map(|((ai, bi), ci)| (bi - ai) * (ai - ci))
        .sum();
    let k = dist2(a, c) - delta * delta;
    let mut disc = h * h - len2 * k;
    if disc < 0.0 {
        if disc >= -TANGENCY_SLACK * (1.0 + h * h) {
            disc = 0.0;
        } else {
            return None;
        }
    }
    let root = libm::sqrt(disc);
    let mut lo = ((-h - root) / len2).max(0.0);
    let mut hi = ((-h + root) / len2).min(1.0);
    if start_in {
        lo = 0.0;
    }
    if end_in {
        hi = 1.0;
    }
    if lo > hi {
        return None;
    }
    Some((lo, hi))
}

fn clip_from(iv: Interval, from: f64) -> Interval {
    iv.and_then(|(lo, hi)| {
        let lo = lo.max(from);
        (lo <= hi).then_some((lo, hi))
    })
}

/// Decides `F(p, q) <= delta` for curves with at least two vertices each.
pub(crate) fn decide(p: &[Point], q: &[Point], delta: f64) -> bool {
    let (np, nq) = (p.len(), q.len());
    debug_assert!(np >= 2 && nq >= 2);
    let pc = |i: usize| p[i].coords();
    let qc = |j: usize| q[j].coords();
    if dist(pc(0), qc(0)) > delta || dist(pc(np - 1), qc(nq - 1)) > delta {
        return false;
    }
    let (ep, eq) = (np - 1, nq - 1);

    // left[j]: reachable part of the boundary at the current P-vertex over Q-edge j
    let mut left: Vec<Interval> = vec![None; eq];
    let mut prev_full = true;
    for (j, slot) in left.iter_mut().enumerate() {
        if !prev_full {
            break;
        }
        let iv = free_interval(qc(j), qc(j + 1), pc(0), delta);
        *slot = iv;
        prev_full = matches!(iv, Some((_, hi)) if hi == 1.0);
    }

    // bottom[i]: reachable part of the boundary at Q-vertex 0 over P-edge i
    let mut bottom: Vec<Interval> = vec![None; ep];
    let mut prev_full = true;
    for (i, slot) in bottom.iter_mut().enumerate() {
        if !prev_full {
            break;
        }
        let iv = free_interval(pc(i), pc(i + 1), qc(0), delta);
        *slot = iv;
        prev_full = matches!(iv, Some((_, hi)) if hi == 1.0);
    }

    // Sweep columns (P-edges) bottom to top; `below` is the reachable part of
    // the current cell's bottom boundary.
    let mut last_top: Interval = None;
    for i in 0..ep {
        let mut below = bottom[i];
        let mut next_left: Vec<Interval> = vec![None; eq];
        for j in 0..eq {
            let l = left[j];
            let right = if below.is_some() {
                free_interval(qc(j), qc(j + 1), pc(i + 1), delta)
            } else if let Some((lo, _)) = l {
                clip_from(free_interval(qc(j), qc(j + 1), pc(i + 1), delta), lo)
            } else {
                None
            };
            let top = if l.is_some() {
                free_interval(pc(i), pc(i + 1), qc(j + 1), delta)
            } else if let Some((lo, _)) = below {
                clip_from(free_interval(pc(i), pc(i + 1), qc(j + 1), delta), lo)
            } else {
                None
            };
            next_left[j] = right;
            below = top;
        }
        if i + 1 == ep {
            last_top = below;
        }
        left = next_left;
    }
    matches!(left[eq - 1], Some((_, hi)) if hi == 1.0)
        || matches!(last_top, Some((_, hi)) if hi == 1.0)
}
