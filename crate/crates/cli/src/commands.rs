use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use curve_coreset::clustering::{
    cost, k_center_approx, k_median_approx, kl_center_approx, swap_bound, Clustering, DistanceMatrix, ObjectiveKind,
};
use curve_coreset::coreset::{
    center_coreset_curves, center_coreset_segments, curves_cardinality_bound, median_coreset, sample_size,
    segments_cardinality_bound, CurvesOutcome, WeightedCoreset,
};
use curve_coreset::frechet::{discrete_frechet, frechet_distance};
use curve_coreset::oracle::{exhaustive_candidates, random_candidates, sandwich_check_weights};
use curve_coreset::{Curve, CurveSet, Error, DEFAULT_REL_TOL};
use log::{info, warn};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::format::{emit, read_curves, read_json, record, to_json, CoresetFile, CurveFile, CurveRecord};
use crate::gen::{generate, GenConfig};

/// How a command ended when it did not error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// The polygonal center coreset hit its size gate.
    GateFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

impl Format {
    fn render<T: Serialize>(self, value: &T) -> Result<String> {
        to_json(value, self == Format::Pretty)
    }
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    ensure!(rel_tol > 0.0 && rel_tol < 1.0, "--rel-tol must lie in (0, 1), got {rel_tol}");
    Ok(())
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 3)]
    pub clusters: usize,
    #[arg(long, default_value_t = 5)]
    pub per_cluster: usize,
    /// Vertices per curve.
    #[arg(long, default_value_t = 4)]
    pub complexity: usize,
    #[arg(long, default_value_t = 2)]
    pub dimension: usize,
    #[arg(long, default_value_t = 10.0)]
    pub spread: f64,
    /// Longest template edge.
    #[arg(long, default_value_t = 2.0)]
    pub edge: f64,
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

pub fn gen(a: &GenArgs) -> Result<Outcome> {
    let set = generate(&GenConfig {
        clusters: a.clusters,
        per_cluster: a.per_cluster,
        complexity: a.complexity,
        dimension: a.dimension,
        spread: a.spread,
        edge: a.edge,
        noise: a.noise,
        seed: a.seed,
    })?;
    info!("generated {} curves", set.len());
    emit(a.output.as_deref(), &a.format.render(&CurveFile::from_set(&set))?)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Label or index of the first curve.
    pub a: String,
    /// Label or index of the second curve.
    pub b: String,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Resolves a label first, then a numeric index.
fn find(set: &CurveSet, key: &str) -> Result<usize> {
    if let Some(i) = set.position(key) {
        return Ok(i);
    }
    match key.parse::<usize>() {
        Ok(i) if i < set.len() => Ok(i),
        _ => bail!("no curve labelled or indexed {key:?}"),
    }
}

pub fn dist(a: &DistArgs) -> Result<Outcome> {
    check_rel_tol(a.rel_tol)?;
    let set = read_curves(&a.input)?;
    let (i, j) = (find(&set, &a.a)?, find(&set, &a.b)?);
    let f = frechet_distance(&set[i], &set[j], a.rel_tol)?;
    let discrete = discrete_frechet(set[i].vertices(), set[j].vertices())?;
    let report = json!({
        "a": i,
        "b": j,
        "value": f.value,
        "lower": f.lower,
        "upper": f.upper,
        "tolerance": f.tolerance,
        "discrete": discrete,
    });
    emit(a.output.as_deref(), &a.format.render(&report)?)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClusterObjective {
    /// Farthest-first (k,l)-center with simplified centers.
    Center,
    /// Farthest-first k-center with centers from the input.
    CenterDiscrete,
    /// Local-search discrete k-median.
    Median,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub objective: ClusterObjective,
    #[arg(long)]
    pub k: usize,
    /// Center complexity for `center`; defaults to the largest input complexity.
    #[arg(long)]
    pub l: Option<usize>,
    /// Swap threshold scale for `median`; defaults to 1/(3kn).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct SwapRecord {
    slot: usize,
    removed: usize,
    inserted: usize,
    cost_before: f64,
    cost_after: f64,
}

#[derive(Debug, Serialize)]
struct ClusterReport {
    objective: &'static str,
    n: usize,
    k: usize,
    l: usize,
    cost: f64,
    centers: Vec<CurveRecord>,
    center_indices: Option<Vec<usize>>,
    assignment: Vec<usize>,
    distances: Vec<f64>,
    farthest: Vec<f64>,
    exhausted: bool,
    seed_cost: Option<f64>,
    gamma: Option<f64>,
    swaps: Vec<SwapRecord>,
    swap_bound: Option<usize>,
}

fn cluster_report(name: &'static str, n: usize, c: Clustering) -> ClusterReport {
    let swap_limit = (c.objective.kind == ObjectiveKind::Median).then(|| swap_bound(c.objective.k, n));
    ClusterReport {
        objective: name,
        n,
        k: c.objective.k,
        l: c.objective.l,
        cost: c.cost,
        centers: c
            .centers
            .iter()
            .enumerate()
            .map(|(j, ctr)| {
                let idx = c.center_indices.as_ref().map_or(j, |ix| ix[j]);
                record(ctr, idx)
            })
            .collect(),
        center_indices: c.center_indices,
        assignment: c.assignment,
        distances: c.distances,
        farthest: c.trace.farthest,
        exhausted: c.trace.exhausted,
        seed_cost: c.trace.seed_cost,
        gamma: c.trace.gamma,
        swaps: c
            .trace
            .swaps
            .iter()
            .map(|s| SwapRecord {
                slot: s.slot,
                removed: s.removed,
                inserted: s.inserted,
                cost_before: s.cost_before,
                cost_after: s.cost_after,
            })
            .collect(),
        swap_bound: swap_limit,
    }
}

pub fn cluster(a: &ClusterArgs) -> Result<Outcome> {
    check_rel_tol(a.rel_tol)?;
    let set = read_curves(&a.input)?;
    let n = set.len();
    let (name, c) = match a.objective {
        ClusterObjective::Center => {
            let l = a.l.unwrap_or_else(|| set.max_complexity().max(2));
            ("center", kl_center_approx(&set, a.k, l, a.rel_tol)?)
        }
        ClusterObjective::CenterDiscrete => ("center-discrete", k_center_approx(&set, a.k, a.rel_tol)?),
        ClusterObjective::Median => ("median", k_median_approx(&set, a.k, a.gamma, a.rel_tol)?),
    };
    info!("{name} clustering of {n} curves, cost {}", c.cost);
    if c.trace.exhausted {
        warn!("fewer distinct curves than centers; some centers repeat");
    }
    emit(a.output.as_deref(), &a.format.render(&cluster_report(name, n, c))?)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    CenterSegments,
    CenterCurves,
    Median,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::CenterSegments => "center-segments",
            Variant::CenterCurves => "center-curves",
            Variant::Median => "median",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, false).map_err(|e| anyhow!("unknown variant {s:?}: {e}"))
    }

    fn kind(self) -> ObjectiveKind {
        match self {
            Variant::Median => ObjectiveKind::Median,
            _ => ObjectiveKind::Center,
        }
    }
}

#[derive(Debug, Args)]
pub struct CoresetArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub k: usize,
    /// Center complexity for `center-curves`; defaults to the padded input complexity.
    #[arg(long)]
    pub l: Option<usize>,
    /// Failure probability for `median`.
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub rho: f64,
    /// Required for `median`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Result of one coreset construction, shared by `coreset` and `bench`.
pub enum Built {
    Coreset { coreset: WeightedCoreset, bound: f64 },
    Failure(curve_coreset::coreset::GateFailure),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildParams {
    pub variant: Variant,
    pub eps: f64,
    pub k: usize,
    pub l: Option<usize>,
    pub rho: f64,
    pub seed: Option<u64>,
    pub rel_tol: f64,
}

pub fn build(set: &CurveSet, p: &BuildParams) -> Result<Built> {
    let BuildParams {
        variant,
        eps,
        k,
        l,
        rho,
        seed,
        rel_tol,
    } = *p;
    let d = set.dimension();
    Ok(match variant {
        Variant::CenterSegments => Built::Coreset {
            coreset: center_coreset_segments(set, eps, k, rel_tol)?,
            bound: segments_cardinality_bound(d, k, eps),
        },
        Variant::CenterCurves => {
            let m = set.max_complexity().max(3);
            let l = l.unwrap_or(m);
            match center_coreset_curves(set, eps, k, l, rel_tol)? {
                CurvesOutcome::Success(coreset) => Built::Coreset {
                    coreset,
                    bound: curves_cardinality_bound(k, m, l, d, set.len(), eps),
                },
                CurvesOutcome::Failure(f) => Built::Failure(f),
            }
        }
        Variant::Median => {
            let seed = seed.context("--seed is required for the median coreset")?;
            Built::Coreset {
                coreset: median_coreset(set, eps, k, rho, seed, rel_tol)?,
                bound: sample_size(set.len(), k, eps, rho)? as f64,
            }
        }
    })
}

pub fn coreset(a: &CoresetArgs) -> Result<Outcome> {
    check_rel_tol(a.rel_tol)?;
    let set = read_curves(&a.input)?;
    let name = a.variant.name();
    let params = BuildParams {
        variant: a.variant,
        eps: a.epsilon,
        k: a.k,
        l: a.l,
        rho: a.rho,
        seed: a.seed,
        rel_tol: a.rel_tol,
    };
    match build(&set, &params)? {
        Built::Coreset { coreset, bound } => {
            let file = CoresetFile::from_coreset(name, a.k, &set, &coreset, Some(bound));
            info!("{name} coreset: {} members from {} curves, bound {bound}", coreset.len(), set.len());
            emit(a.output.as_deref(), &a.format.render(&file)?)?;
            if a.output.is_some() {
                let summary = json!({
                    "variant": name,
                    "n": set.len(),
                    "size": coreset.len(),
                    "distinct": coreset.aggregated().len(),
                    "cardinality_bound": bound,
                    "failure": false,
                });
                print!("{}", to_json(&summary, false)?);
            }
            Ok(Outcome::Done)
        }
        Built::Failure(f) => {
            let file = CoresetFile::failed(name, a.k, &set, a.epsilon, f);
            emit(a.output.as_deref(), &a.format.render(&file)?)?;
            warn!(
                "size gate: longest center edge {} against cost {} exceeds the sqrt({}) limit at complexity {}",
                f.delta,
                f.delta_hat,
                set.len(),
                f.complexity
            );
            Ok(Outcome::GateFailure)
        }
    }
}

/// Candidate center sets for `verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidatePolicy {
    Exhaustive,
    Random(usize),
    /// JSON file `{"candidates": [[i, j, ...], ...]}` of input indices.
    File(PathBuf),
}

impl FromStr for CandidatePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exhaustive" {
            return Ok(Self::Exhaustive);
        }
        if let Some(n) = s.strip_prefix("random:") {
            return n
                .parse()
                .map(Self::Random)
                .map_err(|_| format!("bad candidate count in {s:?}"));
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(Self::File(PathBuf::from(p)));
        }
        Err(format!("expected exhaustive, random:N or file:PATH, got {s:?}"))
    }
}

#[derive(Debug, Deserialize)]
struct CandidateFile {
    candidates: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyObjective {
    Center,
    Median,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// The original curve file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub coreset: PathBuf,
    #[arg(long, default_value = "exhaustive")]
    pub candidates: CandidatePolicy,
    /// Defaults to the objective of the coreset variant.
    #[arg(long, value_enum)]
    pub objective: Option<VerifyObjective>,
    /// Centers per candidate set; defaults to the coreset's k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Defaults to the coreset's epsilon.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Seed for `random:N` candidates.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest input size allowed for exhaustive enumeration.
    #[arg(long, default_value_t = 64)]
    pub guard_n: usize,
    /// Largest number of candidate sets evaluated.
    #[arg(long, default_value_t = 1_000_000)]
    pub guard_candidates: usize,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn guard(msg: String) -> anyhow::Error {
    Error::GuardExceeded(msg).into()
}

fn candidates(a: &VerifyArgs, n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    ensure!(k >= 1 && k <= n, "k = {k} must lie in 1..={n}");
    let list = match &a.candidates {
        CandidatePolicy::Exhaustive => {
            if n > a.guard_n {
                return Err(guard(format!("exhaustive verification limited to n <= {}, got {n}", a.guard_n)));
            }
            exhaustive_candidates(n, k, a.guard_candidates)?
        }
        CandidatePolicy::Random(count) => {
            if *count > a.guard_candidates {
                return Err(guard(format!("{count} candidate sets exceed the limit of {}", a.guard_candidates)));
            }
            random_candidates(n, k, *count, a.seed)?
        }
        CandidatePolicy::File(p) => {
            let f: CandidateFile = read_json(p)?;
            for (j, c) in f.candidates.iter().enumerate() {
                ensure!(!c.is_empty(), "candidate set {j} is empty");
                ensure!(c.iter().all(|&i| i < n), "candidate set {j} names a curve outside the input");
            }
            f.candidates
        }
    };
    Ok(list)
}

#[derive(Debug, Serialize)]
struct CheckRecord<'a> {
    centers: &'a [usize],
    full: f64,
    coreset: f64,
    margin: f64,
    pass: bool,
}

/// Distances from every curve to the curves used as centers, in a
/// matrix whose other entries stay unused.
fn partial_matrix(set: &CurveSet, columns: &[bool], rel_tol: f64) -> Result<DistanceMatrix> {
    let n = set.len();
    let mut values = vec![f64::NAN; n * n];
    for j in (0..n).filter(|&j| columns[j]) {
        for i in 0..n {
            values[i * n + j] = if i == j {
                0.0
            } else {
                frechet_distance(&set[i], &set[j], rel_tol)?.value
            };
        }
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| values[i * n + j]))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    check_rel_tol(a.rel_tol)?;
    let set = read_curves(&a.input)?;
    let file: CoresetFile = read_json(&a.coreset)?;
    ensure!(file.failure.is_none(), "the coreset file records a failed construction");
    ensure!(
        file.n == set.len() && file.dimension == set.dimension(),
        "the coreset was built from {} curves in dimension {}, the input has {} in dimension {}",
        file.n,
        file.dimension,
        set.len(),
        set.dimension()
    );
    for m in &file.members {
        let same = set
            .get(m.index)
            .is_some_and(|c| c.vertices().iter().map(|p| p.coords()).eq(m.vertices.iter().map(Vec::as_slice)));
        ensure!(same, "member {} does not match input curve {}", m.label, m.index);
    }
    let weights = file.index_weights(set.len())?;
    let kind = match a.objective {
        Some(VerifyObjective::Center) => ObjectiveKind::Center,
        Some(VerifyObjective::Median) => ObjectiveKind::Median,
        None => Variant::parse(&file.variant)?.kind(),
    };
    let eps = a.epsilon.unwrap_or(file.epsilon);
    let k = a.k.unwrap_or(file.k);
    let cands = candidates(a, set.len(), k)?;
    info!("verifying against {} candidate sets", cands.len());

    let mut used = vec![false; set.len()];
    for c in &cands {
        for &i in c {
            used[i] = true;
        }
    }
    let matrix = partial_matrix(&set, &used, a.rel_tol)?;
    let r = sandwich_check_weights(&matrix, &weights, eps, &cands, kind, 10.0 * a.rel_tol);
    let report = json!({
        "epsilon": eps,
        "objective": if kind == ObjectiveKind::Center { "center" } else { "median" },
        "k": k,
        "candidates": cands.len(),
        "passed": r.passed(),
        "failures": r.failures,
        "worst_margin": r.worst_margin,
        "checks": cands.iter().zip(&r.checks).map(|(c, ch)| CheckRecord {
            centers: c,
            full: ch.full,
            coreset: ch.coreset,
            margin: ch.margin,
            pass: ch.pass,
        }).collect::<Vec<_>>(),
    });
    if !r.passed() {
        warn!("{} of {} candidate sets violate the bounds", r.failures, cands.len());
    }
    emit(a.output.as_deref(), &a.format.render(&report)?)?;
    Ok(Outcome::Done)
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("bad list entry {x:?} in {s:?}")))
        .collect()
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// Comma-separated input sizes.
    #[arg(long, default_value = "50,100")]
    pub sizes: String,
    /// Comma-separated curve complexities; ignored for `center-segments`.
    #[arg(long, default_value = "3")]
    pub complexities: String,
    /// Comma-separated epsilons.
    #[arg(long, default_value = "0.5,0.25")]
    pub epsilons: String,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub dimension: usize,
    #[arg(long, default_value_t = 1.0)]
    pub edge: f64,
    #[arg(long, default_value_t = 0.5)]
    pub noise: f64,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random candidate sets per row for the cost ratio.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct BenchRow {
    variant: &'static str,
    n: usize,
    m: usize,
    k: usize,
    l: Option<usize>,
    epsilon: f64,
    status: &'static str,
    size: Option<usize>,
    bound: Option<f64>,
    build_ms: f64,
    min_ratio: Option<f64>,
    max_ratio: Option<f64>,
}

fn cost_ratios(set: &CurveSet, s: &WeightedCoreset, kind: ObjectiveKind, cands: &[Vec<usize>], rel_tol: f64) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in cands {
        let centers: Vec<Curve> = c.iter().map(|&i| set[i].clone()).collect();
        let full = cost(set, &centers, kind, rel_tol)?;
        let core = s.cost(&centers, kind, rel_tol)?;
        let r = if full > 0.0 { core / full } else { 1.0 };
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

pub fn bench(a: &BenchArgs) -> Result<Outcome> {
    check_rel_tol(a.rel_tol)?;
    let sizes: Vec<usize> = parse_list(&a.sizes)?;
    let complexities: Vec<usize> = match a.variant {
        Variant::CenterSegments => vec![2],
        _ => parse_list(&a.complexities)?,
    };
    let epsilons: Vec<f64> = parse_list(&a.epsilons)?;
    ensure!(a.k >= 1, "k must be at least 1");
    let mut w = csv::Writer::from_writer(Vec::new());
    for &n in &sizes {
        for &m in &complexities {
            let per = n.div_ceil(a.k);
            let full = generate(&GenConfig {
                clusters: a.k,
                per_cluster: per,
                complexity: m,
                dimension: a.dimension,
                spread: 10.0,
                edge: a.edge,
                noise: a.noise,
                seed: a.seed,
            })?;
            let set = CurveSet::new(full.into_curves().into_iter().take(n).collect())?;
            let cands = random_candidates(set.len(), a.k.min(set.len()), a.samples, a.seed)?;
            for &eps in &epsilons {
                let start = Instant::now();
                let params = BuildParams {
                    variant: a.variant,
                    eps,
                    k: a.k,
                    l: a.l,
                    rho: a.rho,
                    seed: Some(a.seed),
                    rel_tol: a.rel_tol,
                };
                let built = build(&set, &params)?;
                let build_ms = start.elapsed().as_secs_f64() * 1e3;
                let mut row = BenchRow {
                    variant: a.variant.name(),
                    n: set.len(),
                    m,
                    k: a.k,
                    l: a.l,
                    epsilon: eps,
                    status: "failure",
                    size: None,
                    bound: None,
                    build_ms,
                    min_ratio: None,
                    max_ratio: None,
                };
                if let Built::Coreset { coreset, bound } = built {
                    let (lo, hi) = cost_ratios(&set, &coreset, a.variant.kind(), &cands, a.rel_tol)?;
                    row.status = "ok";
                    row.size = Some(coreset.len());
                    row.bound = Some(bound);
                    row.min_ratio = Some(lo);
                    row.max_ratio = Some(hi);
                }
                info!("bench n={} m={m} eps={eps}: {} in {build_ms:.3} ms", row.n, row.status);
                w.serialize(row)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
    emit(a.output.as_deref(), std::str::from_utf8(&bytes)?)?;
    Ok(Outcome::Done)
}

/// Exit status for an error: 4 for an exceeded oracle guard, 1 for I/O
/// failures, 2 for everything else (bad input or parameters).
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(Error::GuardExceeded(_)) = cause.downcast_ref::<Error>() {
            return 4;
        }
    }
    if err.chain().any(|c| c.is::<std::io::Error>() || c.is::<tempfile::PersistError>()) {
        return 1;
    }
    2
}
