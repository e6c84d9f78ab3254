//! Vertex-restricted `l`-simplification under the discrete Fréchet distance.
//!
//! Among all subsequences of the input vertices that keep the first and the
//! last vertex and have at most `l` entries, returns one of minimum discrete
//! Fréchet distance to the input. Ties prefer fewer vertices.
//!
//! State `(c, i, j)`: `c` vertices kept so far, input vertex `i` is coupled
//! with kept vertex `j`. Moves either advance along the input (same `j`) or
//! keep a new vertex `j' > j` while staying at `i` or stepping to `i + 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::Curve;
use crate::error::{invalid, Result};
use crate::geometry::dist;

#[derive(Clone, Copy)]
enum Step {
    Start,
    Advance,
    KeepStay(usize),
    KeepDiagonal(usize),
}

/// Best vertex-restricted simplification of `t` with at most `l` vertices.
pub fn simplify(t: &Curve, l: usize) -> Result<Curve> {
    if l < 2 {
        return Err(invalid("l", "simplification needs at least 2 vertices"));
    }
    let m = t.complexity();
    if m <= l {
        return Ok(t.clone());
    }
    let v = t.vertices();
    let d = |i: usize, j: usize| dist(v[i].coords(), v[j].coords());
    let idx = |i: usize, j: usize| i * m + j;

    let mut best = vec![vec![f64::INFINITY; m * m]; l];
    let mut step = vec![vec![Step::Start; m * m]; l];
    best[0][idx(0, 0)] = 0.0;

    for c in 0..l {
        if c > 0 {
            let (done, rest) = best.split_at_mut(c);
            let prev = &done[c - 1];
            let layer = &mut rest[0];
            for i in 0..m {
                // running minima over j < j' of the previous layer at i and i - 1
                let (mut stay, mut stay_at) = (f64::INFINITY, 0);
                let (mut diag, mut diag_at) = (f64::INFINITY, 0);
                for jn in 0..m {
                    if jn > 0 {
                        let j = jn - 1;
                        if prev[idx(i, j)] < stay {
                            stay = prev[idx(i, j)];
                            stay_at = j;
                        }
                        if i > 0 && prev[idx(i - 1, j)] < diag {
                            diag = prev[idx(i - 1, j)];
                            diag_at = j;
                        }
                    }
                    let here = d(i, jn);
                    if stay < f64::INFINITY {
                        let val = stay.max(here);
                        if val < layer[idx(i, jn)] {
                            layer[idx(i, jn)] = val;
                            step[c][idx(i, jn)] = Step::KeepStay(stay_at);
                        }
                    }
                    if diag < f64::INFINITY {
                        let val = diag.max(here);
                        if val < layer[idx(i, jn)] {
                            layer[idx(i, jn)] = val;
                            step[c][idx(i, jn)] = Step::KeepDiagonal(diag_at);
                        }
                    }
                }
            }
        }
        let layer = &mut best[c];
        for i in 0..m - 1 {
            for j in 0..m {
                let from = layer[idx(i, j)];
                if from == f64::INFINITY {
                    continue;
                }
                let val = from.max(d(i + 1, j));
                if val < layer[idx(i + 1, j)] {
                    layer[idx(i + 1, j)] = val;
                    step[c][idx(i + 1, j)] = Step::Advance;
                }
            }
        }
    }

    let goal = idx(m - 1, m - 1);
    let mut layer = 0;
    for c in 1..l {
        if best[c][goal] < best[layer][goal] {
            layer = c;
        }
    }

    let mut kept = Vec::with_capacity(layer + 1);
    let (mut c, mut i, mut j) = (layer, m - 1, m - 1);
    kept.push(j);
    loop {
        match step[c][idx(i, j)] {
            Step::Start => break,
            Step::Advance => i -= 1,
            Step::KeepStay(pj) => {
                c -= 1;
                j = pj;
                kept.push(j);
            }
            Step::KeepDiagonal(pj) => {
                c -= 1;
                i -= 1;
                j = pj;
                kept.push(j);
            }
        }
    }
    kept.reverse();
    t.subcurve(&kept)
}
