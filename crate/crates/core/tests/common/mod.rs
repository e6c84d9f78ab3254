#![allow(dead_code)]

use curve_coreset::{Curve, CurveSet, Point};
use proptest::prelude::*;

pub fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

pub fn point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(coord(), d).prop_map(|c| Point::new(c).unwrap())
}

pub fn curve(d: usize, m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Curve> {
    prop::collection::vec(point(d), m).prop_map(|v| Curve::new(v).unwrap())
}

/// Dimension first, then a value built for that dimension.
pub fn in_dim<S, F>(dims: std::ops::RangeInclusive<usize>, f: F) -> impl Strategy<Value = S::Value>
where
    S: Strategy,
    F: Fn(usize) -> S + Clone + 'static,
{
    dims.prop_flat_map(f)
}

pub fn curve_pair(m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Curve, Curve)> {
    (1..=3usize).prop_flat_map(move |d| (curve(d, m.clone()), curve(d, m.clone())))
}

pub fn curve_set(n: std::ops::RangeInclusive<usize>, m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CurveSet> {
    (1..=2usize).prop_flat_map(move |d| {
        prop::collection::vec(curve(d, m.clone()), n.clone()).prop_map(|v| CurveSet::new(v).unwrap())
    })
}

pub fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// `k` template curves of complexity `m` in dimension `d`, each copied
/// `per` times with per-coordinate noise in `[-noise, noise]`. Template
/// edges stay shorter than `edge`.
pub fn clustered(
    k: usize,
    per: usize,
    m: usize,
    d: usize,
    edge: f64,
    noise: f64,
) -> impl Strategy<Value = CurveSet> {
    let template = (
        prop::collection::vec(-20.0..20.0f64, d),
        prop::collection::vec(prop::collection::vec(-edge..edge, d), m - 1),
    );
    let jitter = prop::collection::vec(-noise..=noise, k * per * m * d);
    (prop::collection::vec(template, k), jitter).prop_map(move |(templates, jitter)| {
        let mut it = jitter.into_iter();
        let mut curves = Vec::with_capacity(k * per);
        for (start, steps) in &templates {
            let mut vertices = vec![start.clone()];
            for step in steps {
                let last = vertices.last().unwrap();
                vertices.push(last.iter().zip(step).map(|(a, b)| a + b / (d as f64).sqrt()).collect());
            }
            for _ in 0..per {
                let pts = vertices
                    .iter()
                    .map(|v| Point::new(v.iter().map(|x| x + it.next().unwrap()).collect()).unwrap())
                    .collect();
                curves.push(Curve::new(pts).unwrap());
            }
        }
        CurveSet::new(curves).unwrap()
    })
}

/// Euclidean distance matrix of random points, a cheap stand-in metric.
pub fn point_matrix(
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = curve_coreset::clustering::DistanceMatrix> {
    (1..=3usize).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(-10.0..10.0f64, d), n.clone()).prop_map(|p| {
            curve_coreset::clustering::DistanceMatrix::from_fn(p.len(), |i, j| {
                p[i].iter().zip(&p[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
            })
        })
    })
}
