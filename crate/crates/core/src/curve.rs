use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// A polygonal curve stored as its vertex sequence.
///
/// Every curve has at least two vertices; a single vertex is normalized to
/// two copies of itself on construction. Consecutive duplicates are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    vertices: Vec<Point>,
    label: Option<String>,
}

impl Curve {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Empty("curve vertices"))?;
        let d = first.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        if vertices.len() == 1 {
            let v = vertices[0].clone();
            vertices.push(v);
        }
        Ok(Self {
            vertices,
            label: None,
        })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords(rows: &[&[f64]]) -> Result<Self> {
        let vertices = rows
            .iter()
            .map(|r| Point::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn complexity(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Edge `j` (one-based), i.e. the pair `(v_j, v_{j+1})`.
    pub fn edge(&self, j: usize) -> Result<(&Point, &Point)> {
        if j == 0 || j >= self.vertices.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.vertices.len() - 1,
            });
        }
        Ok((&self.vertices[j - 1], &self.vertices[j]))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Joins `self` and `other` at their shared vertex. The last vertex of
    /// `self` must equal the first vertex of `other` exactly.
    pub fn concatenate(&self, other: &Curve) -> Result<Curve> {
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch);
        }
        // a point-curve (stored as repeated vertex) adds nothing
        if other.vertices.iter().all(|v| v == self.end()) {
            return Ok(self.clone());
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices[1..].iter().cloned());
        Ok(Curve {
            vertices,
            label: self.label.clone(),
        })
    }

    /// Prepends copies of the first vertex until the curve has `m` vertices.
    pub fn pad_to_complexity(&self, m: usize) -> Result<Curve> {
        let have = self.vertices.len();
        if have > m {
            return Err(Error::ComplexityExceeded {
                found: have,
                target: m,
            });
        }
        let mut vertices = Vec::with_capacity(m);
        vertices.extend(core::iter::repeat(self.vertices[0].clone()).take(m - have));
        vertices.extend(self.vertices.iter().cloned());
        Ok(Curve {
            vertices,
            label: self.label.clone(),
        })
    }

    /// The sub-curve made of vertices `indices` (strictly increasing).
    pub fn subcurve(&self, indices: &[usize]) -> Result<Curve> {
        let vertices = indices
            .iter()
            .map(|&i| {
                self.vertices.get(i).cloned().ok_or(Error::IndexOutOfRange {
                    index: i,
                    len: self.vertices.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut c = Curve::new(vertices)?;
        c.label = self.label.clone();
        Ok(c)
    }
}

/// A nonempty set of curves sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    curves: Vec<Curve>,
    dimension: usize,
}

impl CurveSet {
    pub fn new(curves: Vec<Curve>) -> Result<Self> {
        let dimension = curves.first().ok_or(Error::Empty("curve set"))?.dim();
        if let Some(bad) = curves.iter().find(|c| c.dim() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: bad.dim(),
            });
        }
        Ok(Self { curves, dimension })
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn into_curves(self) -> Vec<Curve> {
        self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Largest vertex count over the set.
    pub fn max_complexity(&self) -> usize {
        self.curves.iter().map(Curve::complexity).max().unwrap_or(0)
    }

    pub fn get(&self, i: usize) -> Option<&Curve> {
        self.curves.get(i)
    }

    /// Index of the first curve whose label is `label`.
    pub fn position(&self, label: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.label() == Some(label))
    }
}

impl core::ops::Index<usize> for CurveSet {
    type Output = Curve;
    fn index(&self, i: usize) -> &Curve {
        &self.curves[i]
    }
}
