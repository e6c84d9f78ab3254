//! Euclidean substrate: points, vectors, adjacent-axis rotations, rigid
//! motions, axis-aligned cubes and the grids laid over them.
//!
//! Axis indices are zero-based throughout. A rotation "about axis `i`" turns
//! the plane spanned by axes `i` and `i + 1` counter-clockwise, so valid
//! indices are `0..d - 1`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;

use crate::error::{Error, Result};

/// A point in `d`-dimensional Euclidean space.
#[derive(Clone, PartialEq)]
pub struct Point(Vec<f64>);

/// A displacement in `d`-dimensional Euclidean space.
#[derive(Clone, PartialEq)]
pub struct Vector(Vec<f64>);

macro_rules! coordinate_tuple {
    ($ty:ident) => {
        impl $ty {
            /// Builds a value from its coordinates. Rejects empty or non-finite input.
            pub fn new(coords: Vec<f64>) -> Result<Self> {
                if coords.is_empty() {
                    return Err(Error::ZeroDimension);
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(Error::NonFinite);
                }
                Ok(Self(coords))
            }

            pub fn zeros(dimension: usize) -> Self {
                Self(alloc::vec![0.0; dimension])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<f64> {
                self.0
            }

            pub fn norm(&self) -> f64 {
                libm::sqrt(self.0.iter().map(|c| c * c).sum())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }

        impl core::ops::Index<usize> for $ty {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }
    };
}

coordinate_tuple!(Point);
coordinate_tuple!(Vector);

impl Point {
    /// Position vector of this point.
    pub fn to_vector(&self) -> Vector {
        Vector(self.0.clone())
    }

    /// The vector pointing from `self` to `other`.
    pub fn vector_to(&self, other: &Point) -> Result<Vector> {
        check_dim(self.dim(), other.dim())?;
        Ok(Vector(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }
}

impl Vector {
    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Squared Euclidean distance on raw coordinate slices of equal length.
#[inline]
pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(dist2(a, b))
}

/// Euclidean distance between two points.
pub fn euclidean(p: &Point, q: &Point) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    Ok(dist(&p.0, &q.0))
}

fn check_axis(axis: usize, dimension: usize) -> Result<()> {
    if axis + 1 >= dimension {
        return Err(Error::AxisOutOfRange { axis, dimension });
    }
    Ok(())
}

fn rotate_in_place(c: &mut [f64], axis: usize, alpha: f64) {
    let (s, co) = (libm::sin(alpha), libm::cos(alpha));
    let (x, y) = (c[axis], c[axis + 1]);
    c[axis] = x * co - y * s;
    c[axis + 1] = x * s + y * co;
}

/// Counter-clockwise rotation of `p` by `alpha` radians in the plane of
/// axes `axis` and `axis + 1`.
pub fn rotate(p: &Point, axis: usize, alpha: f64) -> Result<Point> {
    check_axis(axis, p.dim())?;
    let mut c = p.0.clone();
    rotate_in_place(&mut c, axis, alpha);
    Ok(Point(c))
}

/// Translation of `p` by `x`.
pub fn translate(p: &Point, x: &Vector) -> Result<Point> {
    check_dim(p.dim(), x.dim())?;
    Ok(Point(p.0.iter().zip(&x.0).map(|(a, b)| a + b).collect()))
}

/// The rotation angle about `axis` that moves `x` into the half-plane where
/// component `axis` is zero and component `axis + 1` is nonnegative.
///
/// If the projection of `x` onto the rotation plane vanishes the component
/// pair is already aligned and the angle is 0.
pub fn axisangle(x: &Vector, axis: usize) -> Result<f64> {
    check_axis(axis, x.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(plane_angle(x.0[axis], x.0[axis + 1]))
}

fn plane_angle(xi: f64, xj: f64) -> f64 {
    let len = libm::hypot(xi, xj);
    if len == 0.0 {
        return 0.0;
    }
    let angle_to_axis = libm::acos((xi / len).clamp(-1.0, 1.0));
    if xj >= 0.0 {
        FRAC_PI_2 - angle_to_axis
    } else {
        FRAC_PI_2 + angle_to_axis
    }
}

/// Rotates `p` onto the last coordinate axis through `d - 1` successive
/// adjacent-axis rotations and returns the angles used alongside the image.
///
/// In one dimension there is nothing to rotate; the point is returned as is
/// (its single component may be negative).
pub fn align_to_last_axis(p: &Point) -> Result<(Vec<f64>, Point)> {
    if p.0.iter().all(|&c| c == 0.0) {
        return Err(Error::ZeroVector);
    }
    let mut c = p.0.clone();
    let mut angles = Vec::with_capacity(c.len().saturating_sub(1));
    for r in 0..c.len() - 1 {
        let alpha = plane_angle(c[r], c[r + 1]);
        rotate_in_place(&mut c, r, alpha);
        angles.push(alpha);
    }
    Ok((angles, Point(c)))
}

/// A rigid motion between a local, axis-aligned frame and world coordinates.
///
/// World to local: translate by `translation`, then rotate about axes
/// `0, 1, ..` by the stored angles in order. Local to world undoes those
/// steps in reverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Motion {
    pub translation: Vector,
    pub angles: Vec<f64>,
}

impl Motion {
    pub fn new(translation: Vector, angles: Vec<f64>) -> Result<Self> {
        if angles.len() + 1 > translation.dim() && !angles.is_empty() {
            return Err(Error::AxisOutOfRange {
                axis: angles.len() - 1,
                dimension: translation.dim(),
            });
        }
        Ok(Self { translation, angles })
    }

    pub fn identity(dimension: usize) -> Self {
        Self {
            translation: Vector::zeros(dimension),
            angles: Vec::new(),
        }
    }

    pub fn to_local(&self, p: &Point) -> Result<Point> {
        let mut c = translate(p, &self.translation)?.0;
        for (r, &alpha) in self.angles.iter().enumerate() {
            rotate_in_place(&mut c, r, alpha);
        }
        Ok(Point(c))
    }

    pub fn to_world(&self, p: &Point) -> Result<Point> {
        check_dim(self.translation.dim(), p.dim())?;
        let mut c = p.0.clone();
        for (r, &alpha) in self.angles.iter().enumerate().rev() {
            rotate_in_place(&mut c, r, -alpha);
        }
        translate(&Point(c), &self.translation.neg())
    }
}

/// Axis-aligned cube given by its center and edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct Cube {
    pub center: Point,
    pub edge_length: f64,
}

impl Cube {
    pub fn new(center: Point, edge_length: f64) -> Result<Self> {
        if !(edge_length >= 0.0) || !edge_length.is_finite() {
            return Err(crate::error::invalid(
                "edge_length",
                "must be finite and nonnegative",
            ));
        }
        Ok(Self {
            center,
            edge_length,
        })
    }
}

/// Identifier of a grid cell: one signed, nonzero index per axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub Vec<i64>);

/// A cube partitioned into cubic cells, optionally placed in the world by a
/// rigid motion. The cube and its cells live in the local frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub cube: Cube,
    pub cell_length: f64,
    pub motion: Option<Motion>,
}

impl Grid {
    pub fn new(cube: Cube, cell_length: f64, motion: Option<Motion>) -> Result<Self> {
        if !(cell_length > 0.0) || !cell_length.is_finite() {
            return Err(crate::error::invalid(
                "cell_length",
                "must be finite and positive",
            ));
        }
        if let Some(m) = &motion {
            check_dim(cube.center.dim(), m.translation.dim())?;
        }
        Ok(Self {
            cube,
            cell_length,
            motion,
        })
    }

    /// Largest index magnitude per axis, `⌈edge / (2·cell)⌉`.
    pub fn half_cells(&self) -> i64 {
        libm::ceil(self.cube.edge_length / (2.0 * self.cell_length)) as i64
    }

    pub fn cells_per_axis(&self) -> usize {
        2 * self.half_cells() as usize
    }

    pub fn cell_count(&self) -> usize {
        self.cells_per_axis().pow(self.cube.center.dim() as u32)
    }

    /// The cell containing `p`, or `None` when `p` lies outside the grid.
    ///
    /// Cells are half-open `[lo, hi)` along every axis except the outermost
    /// positive cell, which is closed, so every point of the grid has exactly
    /// one cell.
    pub fn cell_of(&self, p: &Point) -> Option<CellId> {
        if p.dim() != self.cube.center.dim() {
            return None;
        }
        let local = match &self.motion {
            Some(m) => m.to_local(p).ok()?,
            None => p.clone(),
        };
        let half = self.half_cells();
        if half == 0 {
            return None;
        }
        let extent = half as f64 * self.cell_length;
        let mut ids = Vec::with_capacity(p.dim());
        for (x, c) in local.0.iter().zip(&self.cube.center.0) {
            let r = x - c;
            if r < -extent || r > extent {
                return None;
            }
            let t = libm::floor(r / self.cell_length) as i64;
            let id = if t >= 0 { (t + 1).min(half) } else { t.max(-half) };
            ids.push(id);
        }
        Some(CellId(ids))
    }
}

/// Componentwise mean of a nonempty point set.
pub fn centroid(points: &[Point]) -> Result<Point> {
    let first = points.first().ok_or(Error::Empty("point set"))?;
    let d = first.dim();
    let mut acc = alloc::vec![0.0; d];
    for p in points {
        check_dim(d, p.dim())?;
        for (a, c) in acc.iter_mut().zip(&p.0) {
            *a += c;
        }
    }
    let n = points.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    Ok(Point(acc))
}
