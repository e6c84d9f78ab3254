//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use curve_coreset::clustering::{
    cost, default_gamma, k_center_approx_matrix, k_median_approx_matrix, swap_bound, DistanceMatrix, ObjectiveKind,
};
use curve_coreset::coreset::{
    center_coreset_curves, center_coreset_segments, compute_psi, curves_cardinality_bound, sample_coreset,
    sample_size, segments_cardinality_bound, CoresetMeta, CurvesOutcome, WeightedCoreset,
};
use curve_coreset::frechet::{discrete_frechet, frechet_distance, segment_frechet};
use curve_coreset::geometry::{align_to_last_axis, centroid, euclidean, rotate, translate, Motion};
use curve_coreset::oracle::{
    brute_force_discrete_center, brute_force_discrete_median, coreset_sandwich_check, exhaustive_candidates,
    exhaustive_discrete_frechet, means_counterexample, random_candidates, sandwich_check_matrix, Guard,
};
use curve_coreset::{Curve, CurveSet, Point, DEFAULT_REL_TOL};
use curve_coreset_cli::format::{to_json, CurveFile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = DEFAULT_REL_TOL;

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn point(r: &mut ChaCha8Rng, d: usize, range: f64) -> Point {
    Point::new((0..d).map(|_| r.random_range(-range..range)).collect()).unwrap()
}

fn curve(r: &mut ChaCha8Rng, d: usize, m: usize, range: f64) -> Curve {
    Curve::new((0..m).map(|_| point(r, d, range)).collect()).unwrap()
}

/// `n` curves around `clusters` random-walk templates. Members move by at
/// most `tight` per coordinate; every tenth member is moved by up to
/// `far` as well, so the approximation cost is driven by a few curves.
fn clustered(seed: u64, n: usize, clusters: usize, m: usize, edge: f64, tight: f64, far: f64) -> CurveSet {
    let d = 2;
    let mut r = rng(seed);
    let templates: Vec<Vec<Vec<f64>>> = (0..clusters)
        .map(|_| {
            let mut v = vec![(0..d).map(|_| r.random_range(-30.0..30.0)).collect::<Vec<f64>>()];
            for _ in 1..m {
                let last = v.last().unwrap().clone();
                v.push(last.iter().map(|x| x + r.random_range(-edge..edge) / 2f64.sqrt()).collect());
            }
            v
        })
        .collect();
    let curves = (0..n)
        .map(|i| {
            let t = &templates[i % clusters];
            let shift: Vec<f64> = (0..d)
                .map(|_| if i % 10 == 9 { r.random_range(-far..far) } else { 0.0 })
                .collect();
            let pts = t
                .iter()
                .map(|v| {
                    Point::new(
                        v.iter()
                            .zip(&shift)
                            .map(|(x, s)| x + s + r.random_range(-tight..=tight))
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            Curve::new(pts).unwrap()
        })
        .collect();
    CurveSet::new(curves).unwrap()
}

fn c1_segment_closed_form() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let d = 1 + i % 3;
        let (a, b) = (curve(&mut r, d, 2, 10.0), curve(&mut r, d, 2, 10.0));
        let closed = segment_frechet(&a, &b).unwrap();
        let ends = euclidean(a.start(), b.start()).unwrap().max(euclidean(a.end(), b.end()).unwrap());
        check!(closed == ends, "closed form disagrees with endpoint distances");
        let err = (frechet_distance(&a, &b, TOL).unwrap().value - ends).abs();
        worst = worst.max(err);
        check!(err <= 1e-7, "pair {i}: error {err}");
    }
    Ok(format!("1000 pairs, max error {worst:.1e}"))
}

fn c2_discrete_exactness() -> Outcome {
    let mut r = rng(2);
    for i in 0..500 {
        let d = 1 + i % 3;
        let p: Vec<Point> = (0..r.random_range(1..=6)).map(|_| point(&mut r, d, 10.0)).collect();
        let q: Vec<Point> = (0..r.random_range(1..=6)).map(|_| point(&mut r, d, 10.0)).collect();
        let dp = discrete_frechet(&p, &q).unwrap();
        let ex = exhaustive_discrete_frechet(&p, &q).unwrap();
        check!(dp == ex, "pair {i}: DP {dp} vs couplings {ex}");
    }
    Ok("500 pairs, exact agreement".into())
}

fn c3_ordering() -> Outcome {
    let mut r = rng(3);
    let mut widest: f64 = 0.0;
    for i in 0..500 {
        let d = 1 + i % 3;
        let (ma, mb) = (r.random_range(2..=8), r.random_range(2..=8));
        let (a, b) = (curve(&mut r, d, ma, 10.0), curve(&mut r, d, mb, 10.0));
        let f = frechet_distance(&a, &b, TOL).unwrap();
        let disc = discrete_frechet(a.vertices(), b.vertices()).unwrap();
        check!(f.lower <= f.value && f.value <= f.upper, "pair {i}: {f:?}");
        check!(f.value <= disc + 1e-7, "pair {i}: value {} above discrete {disc}", f.value);
        check!(f.upper - f.lower <= TOL * f.upper.max(1.0), "pair {i}: bracket too wide {f:?}");
        widest = widest.max((f.upper - f.lower) / f.upper.max(1.0));
    }
    Ok(format!("500 pairs, widest relative bracket {widest:.1e}"))
}

fn c4_isometries() -> Outcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let d = 1 + i % 5;
        let (p, q) = (point(&mut r, d, 10.0), point(&mut r, d, 10.0));
        let x = point(&mut r, d, 10.0).to_vector();
        let before = euclidean(&p, &q).unwrap();
        let scale = 1e-9 * (1.0 + before);
        let moved = euclidean(&translate(&p, &x).unwrap(), &translate(&q, &x).unwrap()).unwrap();
        check!((moved - before).abs() <= scale, "case {i}: translation changed a distance");
        let back = translate(&translate(&p, &x).unwrap(), &x.neg()).unwrap();
        check!(close(&back, &p, 1e-9), "case {i}: translation inverse");
        if d >= 2 {
            let axis = r.random_range(0..d - 1);
            let alpha = r.random_range(-2.0 * std::f64::consts::PI..=2.0 * std::f64::consts::PI);
            let (rp, rq) = (rotate(&p, axis, alpha).unwrap(), rotate(&q, axis, alpha).unwrap());
            let after = euclidean(&rp, &rq).unwrap();
            worst = worst.max((after - before).abs());
            check!((after - before).abs() <= scale, "case {i}: rotation changed a distance");
            check!(close(&rotate(&rp, axis, -alpha).unwrap(), &p, 1e-9), "case {i}: rotation inverse");
        }
        if p.to_vector().is_zero() {
            continue;
        }
        let norm = p.to_vector().norm();
        let (angles, aligned) = align_to_last_axis(&p).unwrap();
        for j in 0..d - 1 {
            check!(aligned[j].abs() <= 1e-9 * (1.0 + norm), "case {i}: component {j} is {}", aligned[j]);
        }
        if d >= 2 {
            check!(aligned[d - 1] >= -1e-9, "case {i}: last component negative");
        }
        check!((aligned.to_vector().norm() - norm).abs() <= 1e-9 * norm.max(1.0), "case {i}: norm changed");
        let m = Motion::new(x.clone(), angles).unwrap();
        let round = m.to_world(&m.to_local(&q).unwrap()).unwrap();
        let tol = 1e-9 * (1.0 + q.to_vector().norm() + x.norm());
        check!(close(&round, &q, tol), "case {i}: motion round trip");
    }
    Ok(format!("10000 cases, worst rotation drift {worst:.1e}"))
}

fn close(a: &Point, b: &Point, tol: f64) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| (x - y).abs() <= tol)
}

/// Random curves, clustered for even seeds.
fn small_instance(seed: u64, n: usize, m: usize) -> CurveSet {
    if seed % 2 == 0 {
        clustered(seed, n, 3, m, 4.0, 1.0, 3.0)
    } else {
        let mut r = rng(seed);
        let d = r.random_range(1..=3);
        CurveSet::new((0..n).map(|_| curve(&mut r, d, m, 10.0)).collect()).unwrap()
    }
}

fn c5_gonzalez_ratio() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for inst in 0..50 {
        let n = r.random_range(3..=10);
        let k = r.random_range(1..=3);
        let m = r.random_range(2..=5);
        let t = small_instance(500 + inst, n, m);
        let matrix = DistanceMatrix::new(&t, TOL).unwrap();
        let c = k_center_approx_matrix(&matrix, k).unwrap();
        let opt = brute_force_discrete_center(&matrix, k, Guard::default()).unwrap().with_target(c.cost);
        check!(opt.within(3.0, 1e-12), "instance {inst}: cost {} against optimum {}", c.cost, opt.optimum);
        worst = worst.max(opt.ratio.unwrap_or(1.0));
    }
    Ok(format!("50 instances, worst ratio {worst:.3}"))
}

fn c6_local_search_ratio() -> Outcome {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    let mut most_swaps = 0;
    for inst in 0..50 {
        let n = r.random_range(3..=12);
        let k = r.random_range(1..=3);
        let m = r.random_range(2..=5);
        let t = small_instance(600 + inst, n, m);
        let matrix = DistanceMatrix::new(&t, TOL).unwrap();
        let c = k_median_approx_matrix(&matrix, k, default_gamma(k, n)).unwrap();
        let swaps = c.trace.swaps.len();
        check!(swaps <= swap_bound(k, n), "instance {inst}: {swaps} swaps");
        most_swaps = most_swaps.max(swaps);
        let opt = brute_force_discrete_median(&matrix, k, Guard::default()).unwrap().with_target(c.cost);
        check!(opt.within(6.0, 1e-12), "instance {inst}: cost {} against optimum {}", c.cost, opt.optimum);
        worst = worst.max(opt.ratio.unwrap_or(1.0));
    }
    Ok(format!("50 instances, worst ratio {worst:.3}, most swaps {most_swaps}"))
}

/// Every input curve within `εΔ̂/6` of its representative.
fn check_representatives(t: &CurveSet, s: &WeightedCoreset) -> Result<f64, String> {
    let CoresetMeta::Center(meta) = &s.meta else {
        return Err("not a center coreset".into());
    };
    let radius = s.epsilon * meta.delta_hat / 6.0;
    let mut worst: f64 = 0.0;
    for (i, &pos) in meta.representative.iter().enumerate() {
        let f = frechet_distance(&t[i], &s.members[pos], TOL).unwrap().value;
        check!(f <= radius + 1e-7, "curve {i} is {f} from its member, radius {radius}");
        worst = worst.max(f / radius.max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

fn subset_candidates(t: &CurveSet, sets: Vec<Vec<usize>>) -> Vec<Vec<Curve>> {
    sets.into_iter()
        .map(|c| c.into_iter().map(|i| t[i].clone()).collect())
        .collect()
}

fn sandwich(t: &CurveSet, s: &WeightedCoreset, cands: &[Vec<Curve>], kind: ObjectiveKind) -> Result<usize, String> {
    let rep = coreset_sandwich_check(t, s, s.epsilon, cands, kind, TOL).unwrap();
    check!(rep.passed(), "{} of {} candidate sets violate the sandwich, worst margin {}", rep.failures, cands.len(), rep.worst_margin);
    Ok(cands.len())
}

fn c7_segment_coreset() -> Outcome {
    let mut lines = Vec::new();
    for k in 1..=3 {
        for eps in [0.25, 0.5] {
            let seed = 700 + k as u64;
            let t = clustered(seed, 200, k, 2, 4.0, 0.02, 1.0);
            let s = center_coreset_segments(&t, eps, k, TOL).unwrap();
            check_representatives(&t, &s).map_err(|e| format!("k={k} eps={eps}: {e}"))?;
            let bound = segments_cardinality_bound(2, k, eps);
            check!(s.len() as f64 <= bound, "k={k} eps={eps}: {} members above {bound}", s.len());
            // half input subsets, half random segments over the data's range
            let mut cands = subset_candidates(&t, random_candidates(t.len(), k, 100, seed).unwrap());
            let mut r = rng(seed);
            for _ in 0..100 {
                cands.push((0..k).map(|_| curve(&mut r, 2, 2, 40.0)).collect());
            }
            sandwich(&t, &s, &cands, ObjectiveKind::Center).map_err(|e| format!("k={k} eps={eps}: {e}"))?;
            let size = s.len();

            let small = clustered(seed + 50, 12, k, 2, 4.0, 0.02, 1.0);
            let s = center_coreset_segments(&small, eps, k, TOL).unwrap();
            check_representatives(&small, &s).map_err(|e| format!("n=12 k={k} eps={eps}: {e}"))?;
            let all = subset_candidates(&small, exhaustive_candidates(12, k, 1000).unwrap());
            sandwich(&small, &s, &all, ObjectiveKind::Center).map_err(|e| format!("n=12 k={k} eps={eps}: {e}"))?;
            lines.push(format!("k={k} eps={eps}: {size}/200"));
        }
    }
    Ok(format!("sizes {}", lines.join(", ")))
}

fn long_edge_instance() -> CurveSet {
    CurveSet::new(
        (0..10)
            .map(|i| {
                let y = i as f64 * 0.01;
                Curve::from_coords(&[&[0.0, y], &[500.0, y], &[1000.0, y]]).unwrap()
            })
            .collect(),
    )
    .unwrap()
}

fn c8_curve_coreset() -> Outcome {
    let mut sizes = Vec::new();
    for (k, eps) in [(1, 0.5), (2, 0.5), (3, 0.25)] {
        let seed = 800 + k as u64;
        let t = clustered(seed, 100, k, 3, 0.5, 0.02, 0.5);
        let s = match center_coreset_curves(&t, eps, k, 3, TOL).unwrap() {
            CurvesOutcome::Success(s) => s,
            CurvesOutcome::Failure(f) => return Err(format!("k={k}: short-edge instance hit the gate: {f:?}")),
        };
        check_representatives(&t, &s).map_err(|e| format!("k={k} eps={eps}: {e}"))?;
        let bound = curves_cardinality_bound(k, 3, 3, 2, t.len(), eps);
        check!(s.len() as f64 <= bound, "k={k}: {} members above {bound}", s.len());
        let cands = subset_candidates(&t, random_candidates(t.len(), k, 200, seed).unwrap());
        sandwich(&t, &s, &cands, ObjectiveKind::Center).map_err(|e| format!("k={k} eps={eps}: {e}"))?;

        let small = clustered(seed + 50, 12, k, 3, 0.1, 0.05, 0.5);
        let Some(ss) = center_coreset_curves(&small, eps, k, 3, TOL).unwrap().success() else {
            return Err(format!("n=12 k={k}: gate failure"));
        };
        check_representatives(&small, &ss).map_err(|e| format!("n=12 k={k}: {e}"))?;
        let all = subset_candidates(&small, exhaustive_candidates(12, k, 1000).unwrap());
        sandwich(&small, &ss, &all, ObjectiveKind::Center).map_err(|e| format!("n=12 k={k}: {e}"))?;
        sizes.push(format!("k={k} eps={eps}: {}/100", s.len()));
    }

    let long = long_edge_instance();
    let CurvesOutcome::Failure(f) = center_coreset_curves(&long, 0.5, 1, 3, TOL).unwrap() else {
        return Err("long-edge instance passed the gate".into());
    };
    let dir = tempfile::TempDir::new().unwrap();
    let input = dir.path().join("long.json");
    std::fs::write(&input, to_json(&CurveFile::from_set(&long), false).unwrap()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_curve-coreset"))
        .args(["coreset", "--variant", "center-curves", "--epsilon", "0.5", "--k", "1", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(dir.path().join("out.json"))
        .status()
        .unwrap();
    check!(status.code() == Some(3), "gate exit code {:?}", status.code());
    Ok(format!(
        "sizes {}; long edges: delta/delta_hat = {:.0}, exit code 3",
        sizes.join(", "),
        f.delta / f.delta_hat
    ))
}

fn c9_psi_validity() -> Outcome {
    let mut r = rng(9);
    let mut worst_var: f64 = 0.0;
    let mut literal = None;
    for inst in 0..20 {
        let n = r.random_range(10..=50);
        let k = 1 + inst % 3;
        let t = small_instance(900 + inst as u64, n, 3);
        let matrix = DistanceMatrix::new(&t, TOL).unwrap();
        let d = compute_psi(&matrix, k).unwrap();
        check!(!d.degenerate, "instance {inst} is degenerate");
        let sum: f64 = d.psi.iter().sum();
        check!((sum - 1.0).abs() <= 1e-9, "instance {inst}: sum of psi {sum}");
        check!(d.psi.iter().all(|&p| p > 0.0), "instance {inst}: zero probability");
        check!(d.cumulative.windows(2).all(|w| w[0] < w[1]), "instance {inst}: cumulative not increasing");
        if k == 2 {
            let mass = d.literal_mass();
            check!((mass - 0.625).abs() <= 1e-12, "instance {inst}: literal mass {mass}");
            literal = Some(mass);
        }
        let phi = 1.0 / n as f64;
        for c in random_candidates(n, k, 20, inst as u64).unwrap() {
            let x: Vec<f64> = (0..n).map(|i| matrix.nearest(i, &c).1).collect();
            let plain: f64 = x.iter().map(|v| v * phi).sum();
            let y: Vec<f64> = x.iter().zip(&d.psi).map(|(v, p)| v * phi / p).collect();
            let mean: f64 = y.iter().zip(&d.psi).map(|(v, p)| v * p).sum();
            check!((plain - mean).abs() <= 1e-9 * plain.max(1.0), "instance {inst}: expectation {plain} vs {mean}");
            let var = y.iter().zip(&d.psi).map(|(v, p)| v * v * p).sum::<f64>() - mean * mean;
            let cap = (d.normalizer - 1.0) * mean * mean;
            check!(var <= cap * (1.0 + 1e-9), "instance {inst}: variance {var} above {cap}");
            if cap > 0.0 {
                worst_var = worst_var.max(var / cap);
            }
        }
    }
    Ok(format!(
        "20 instances, variance at most {worst_var:.3} of the bound, k=2 literal mass {}",
        literal.unwrap_or(f64::NAN)
    ))
}

fn c10_median_guarantee() -> Outcome {
    let (n, k, eps, rho) = (30, 2, 0.2, 1.0 / 3.0);
    let ell = sample_size(n, k, eps, rho).unwrap();
    check!(ell == 390_025, "sample size {ell}");
    let t = clustered(1000, n, 3, 3, 4.0, 1.0, 3.0);
    let matrix = DistanceMatrix::new(&t, TOL).unwrap();
    let dist = compute_psi(&matrix, k).unwrap();
    let cands = exhaustive_candidates(n, k, 435).unwrap();
    check!(cands.len() == 435, "{} candidate sets", cands.len());
    let mut successes = 0;
    let mut worst: f64 = f64::INFINITY;
    for trial in 0..30 {
        let s = sample_coreset(&t, &dist, ell, eps, rho, trial).unwrap();
        let rep = sandwich_check_matrix(&matrix, &s, eps, &cands, ObjectiveKind::Median, TOL);
        worst = worst.min(rep.checks.iter().map(|c| c.margin / c.full).fold(f64::INFINITY, f64::min));
        if rep.passed() {
            successes += 1;
        }
    }
    check!(successes >= 20, "{successes}/30 trials passed");
    Ok(format!("ell = {ell}, {successes}/30 trials passed, smallest relative margin {worst:.4}"))
}

fn c11_unbiased() -> Outcome {
    let t = clustered(1100, 30, 3, 3, 4.0, 1.0, 3.0);
    let matrix = DistanceMatrix::new(&t, TOL).unwrap();
    let dist = compute_psi(&matrix, 2).unwrap();
    let c = random_candidates(t.len(), 2, 1, 11).unwrap().remove(0);
    let centers: Vec<Curve> = c.iter().map(|&i| t[i].clone()).collect();
    let full = cost(&t, &centers, ObjectiveKind::Median, TOL).unwrap();
    check!((full - matrix.cost(&c, ObjectiveKind::Median)).abs() <= 1e-9 * full, "matrix and curve costs differ");
    let trials = 10_000;
    let mut sum = 0.0;
    for seed in 0..trials {
        let s = sample_coreset(&t, &dist, 100, 0.5, 0.5, seed).unwrap();
        sum += s
            .indices
            .iter()
            .zip(&s.weights)
            .map(|(&i, w)| w * matrix.nearest(i, &c).1)
            .sum::<f64>();
    }
    let mean = sum / trials as f64;
    let rel = (mean - full).abs() / full;
    check!(rel <= 0.02, "mean {mean} vs cost {full}");
    Ok(format!("mean {mean:.4} vs cost {full:.4}, relative error {rel:.4}"))
}

fn c12_means_counterexample() -> Outcome {
    let c = means_counterexample(TOL).map_err(|e| e.to_string())?;
    check!(c.conditions.iter().all(|&x| x), "conditions {:?}", c.conditions);
    check!(c.cost_nu < c.cost_mu, "nu {} not below mu {}", c.cost_nu, c.cost_mu);
    check!((c.cost_mu - c.cost_mu_endpoints).abs() <= 1e-6 * c.cost_mu, "mu costs disagree");
    let mut r = rng(12);
    for set in 0..100 {
        let d = 1 + set % 4;
        let pts: Vec<Point> = (0..r.random_range(1..30)).map(|_| point(&mut r, d, 10.0)).collect();
        let ctr = centroid(&pts).unwrap();
        let ssd = |q: &Point| pts.iter().map(|p| euclidean(p, q).unwrap().powi(2)).sum::<f64>();
        let best = ssd(&ctr);
        for _ in 0..100 {
            let q = point(&mut r, d, 10.0);
            check!(best <= ssd(&q) + 1e-9 * (1.0 + best), "set {set}: a candidate beats the centroid");
        }
    }
    Ok(format!(
        "(1,2)-means: centroid segment {} vs split segment {}; centroid dominance on 100 sets",
        c.cost_mu, c.cost_nu
    ))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "segment closed form", limit: secs(10), run: c1_segment_closed_form },
        Criterion { id: 2, name: "discrete Frechet exactness", limit: secs(30), run: c2_discrete_exactness },
        Criterion { id: 3, name: "bracket ordering", limit: None, run: c3_ordering },
        Criterion { id: 4, name: "isometry and inversion", limit: None, run: c4_isometries },
        Criterion { id: 5, name: "farthest-first ratio", limit: secs(60), run: c5_gonzalez_ratio },
        Criterion { id: 6, name: "local search ratio and swaps", limit: secs(120), run: c6_local_search_ratio },
        Criterion { id: 7, name: "segment center coreset", limit: secs(120), run: c7_segment_coreset },
        Criterion { id: 8, name: "polygonal center coreset", limit: secs(180), run: c8_curve_coreset },
        Criterion { id: 9, name: "sampling distribution", limit: None, run: c9_psi_validity },
        Criterion { id: 10, name: "median coreset guarantee", limit: secs(300), run: c10_median_guarantee },
        Criterion { id: 11, name: "estimator unbiasedness", limit: None, run: c11_unbiased },
        Criterion { id: 12, name: "means counterexample", limit: None, run: c12_means_counterexample },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS [{:>2}] {}: {detail} ({took:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {why} ({took:.2?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
