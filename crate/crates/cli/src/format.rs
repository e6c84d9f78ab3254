//! On-disk formats: curve files, coreset files and report helpers.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use curve_coreset::coreset::{CoresetMeta, GateFailure, WeightedCoreset};
use curve_coreset::{Curve, CurveSet, Point};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    #[serde(default)]
    pub label: String,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub dimension: usize,
    pub curves: Vec<CurveRecord>,
}

impl CurveFile {
    pub fn from_set(set: &CurveSet) -> Self {
        Self {
            dimension: set.dimension(),
            curves: set
                .curves()
                .iter()
                .enumerate()
                .map(|(i, c)| record(c, i))
                .collect(),
        }
    }

    /// Validates the document and builds the curve set. Unlabelled curves
    /// get their index as label.
    pub fn to_set(&self) -> Result<CurveSet> {
        if self.dimension == 0 {
            bail!("dimension must be at least 1");
        }
        if self.curves.is_empty() {
            bail!("the file holds no curves");
        }
        let mut out = Vec::with_capacity(self.curves.len());
        for (i, rec) in self.curves.iter().enumerate() {
            if rec.vertices.is_empty() {
                bail!("curve {i} has no vertices");
            }
            let mut pts = Vec::with_capacity(rec.vertices.len());
            for (j, v) in rec.vertices.iter().enumerate() {
                if v.len() != self.dimension {
                    bail!("curve {i} vertex {j} has {} coordinates, expected {}", v.len(), self.dimension);
                }
                pts.push(Point::new(v.clone()).with_context(|| format!("curve {i} vertex {j}"))?);
            }
            let label = if rec.label.is_empty() { i.to_string() } else { rec.label.clone() };
            out.push(Curve::new(pts)?.with_label(label));
        }
        Ok(CurveSet::new(out)?)
    }
}

pub fn record(c: &Curve, index: usize) -> CurveRecord {
    CurveRecord {
        label: c.label().map_or_else(|| index.to_string(), str::to_owned),
        vertices: c.vertices().iter().map(|p| p.coords().to_vec()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    /// Position of the member in the input file.
    pub index: usize,
    pub label: String,
    pub weight: f64,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetaRecord {
    Center {
        delta_hat: f64,
        cell_length: f64,
        grids: usize,
        complexity: usize,
        uncovered: usize,
        key_bound: f64,
    },
    Median {
        seed: u64,
        rho: f64,
        sample_size: usize,
        approx_cost: f64,
        swaps: usize,
        phi: f64,
        normalizer: f64,
        degenerate: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub delta: f64,
    pub delta_hat: f64,
    pub sqrt_n: f64,
    pub complexity: usize,
}

impl From<GateFailure> for FailureRecord {
    fn from(f: GateFailure) -> Self {
        Self {
            delta: f.delta,
            delta_hat: f.delta_hat,
            sqrt_n: f.sqrt_n,
            complexity: f.complexity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoresetFile {
    pub variant: String,
    pub dimension: usize,
    pub epsilon: f64,
    pub k: usize,
    /// Number of curves in the input.
    pub n: usize,
    pub members: Vec<MemberRecord>,
    pub meta: Option<MetaRecord>,
    pub cardinality_bound: Option<f64>,
    pub failure: Option<FailureRecord>,
}

impl CoresetFile {
    pub fn from_coreset(variant: &str, k: usize, curves: &CurveSet, s: &WeightedCoreset, bound: Option<f64>) -> Self {
        let members = s
            .indices
            .iter()
            .zip(&s.weights)
            .zip(&s.members)
            .map(|((&index, &weight), c)| {
                let r = record(c, index);
                MemberRecord {
                    index,
                    label: r.label,
                    weight,
                    vertices: r.vertices,
                }
            })
            .collect();
        let meta = match &s.meta {
            CoresetMeta::Center(m) => MetaRecord::Center {
                delta_hat: m.delta_hat,
                cell_length: m.cell_length,
                grids: m.grids,
                complexity: m.complexity,
                uncovered: m.uncovered,
                key_bound: m.key_bound,
            },
            CoresetMeta::Median(m) => MetaRecord::Median {
                seed: m.seed,
                rho: m.rho,
                sample_size: m.sample_size,
                approx_cost: m.approx_cost,
                swaps: m.swaps,
                phi: m.phi,
                normalizer: m.normalizer,
                degenerate: m.degenerate,
            },
        };
        Self {
            variant: variant.to_owned(),
            dimension: curves.dimension(),
            epsilon: s.epsilon,
            k,
            n: curves.len(),
            members,
            meta: Some(meta),
            cardinality_bound: bound,
            failure: None,
        }
    }

    pub fn failed(variant: &str, k: usize, curves: &CurveSet, eps: f64, f: GateFailure) -> Self {
        Self {
            variant: variant.to_owned(),
            dimension: curves.dimension(),
            epsilon: eps,
            k,
            n: curves.len(),
            members: Vec::new(),
            meta: None,
            cardinality_bound: None,
            failure: Some(f.into()),
        }
    }

    /// Summed weight per distinct input index, for the sandwich check.
    pub fn index_weights(&self, n: usize) -> Result<Vec<(usize, f64)>> {
        let mut acc = std::collections::BTreeMap::new();
        for m in &self.members {
            if m.index >= n {
                bail!("member index {} is outside the input of {n} curves", m.index);
            }
            if !(m.weight > 0.0 && m.weight.is_finite()) {
                bail!("member {} has weight {}", m.index, m.weight);
            }
            *acc.entry(m.index).or_insert(0.0) += m.weight;
        }
        Ok(acc.into_iter().collect())
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_curves(path: &Path) -> Result<CurveSet> {
    read_json::<CurveFile>(path)?
        .to_set()
        .with_context(|| format!("validating {}", path.display()))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to stdout without one.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // a closed reader downstream is not our failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}
