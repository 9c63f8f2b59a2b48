use std::f64::consts::PI;

use super::hyperplane::Hyperplane;
use super::polygon::Point2;
use crate::error::{invalid, Error, Result};

/// Edges of the regular `n`-gon inscribed in a circle, first vertex at angle 0.
///
/// Normals point radially outward, so the polygon interior is the negative
/// side of every plane. Planes come in chain order: plane `k` joins vertex `k`
/// to vertex `k+1`, and the last plane closes the chain.
pub fn polygonalize_circle_inscribed(center: Point2, radius: f64, n: usize) -> Result<Vec<Hyperplane>> {
    if n < 3 {
        return Err(invalid(format!("inscribed polygon needs n >= 3, got {n}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid("radius must be positive"));
    }
    let apothem = radius * (PI / n as f64).cos();
    (0..n)
        .map(|k| {
            let phi = (2 * k + 1) as f64 * PI / n as f64;
            let (s, c) = phi.sin_cos();
            Hyperplane::new(vec![c, s], c * center[0] + s * center[1] + apothem)
        })
        .collect()
}

/// Vertices of the same inscribed polygon.
pub fn inscribed_vertices(center: Point2, radius: f64, n: usize) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
            [center[0] + radius * c, center[1] + radius * s]
        })
        .collect()
}

/// Area of the disk minus its inscribed regular `n`-gon.
pub fn inscribed_gap_area(radius: f64, n: usize) -> f64 {
    let n = n as f64;
    radius * radius * (PI - 0.5 * n * (2.0 * PI / n).sin())
}

/// One tangent plane per sample point of the zero level set of `surface`,
/// with normal equal to the normalized gradient.
pub fn polygonalize_convex_tangent<S, G>(surface: S, gradient: G, samples: &[Vec<f64>]) -> Result<Vec<Hyperplane>>
where
    S: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    samples
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let v = surface(x);
            if v.abs() > 1e-9 {
                return Err(invalid(format!("sample {i} is off the surface (value {v:e})")));
            }
            let g = gradient(x);
            if g.len() != x.len() {
                return Err(Error::DimensionMismatch { expected: x.len(), got: g.len() });
            }
            if g.iter().all(|c| *c == 0.0) {
                return Err(Error::Degenerate(format!("zero gradient at sample {i}")));
            }
            let offset: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
            Hyperplane::new(g, offset)
        })
        .collect()
}

/// `n` points on the positive-octant patch of the sphere of radius `radius`
/// centred at the origin, placed on a golden-angle spiral with equal-area
/// bands in the polar coordinate.
pub fn octant_spiral_points(radius: f64, n: usize) -> Vec<Vec<f64>> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (0..n)
        .map(|k| {
            let z = 1.0 - (k as f64 + 0.5) / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = ((k as f64 * golden).fract() * 0.9 + 0.05) * PI / 2.0;
            vec![radius * rho * phi.cos(), radius * rho * phi.sin(), radius * z]
        })
        .collect()
}

/// Implicit sphere `‖x − c‖² − r²` and its gradient.
#[allow(clippy::type_complexity)]
pub fn sphere(center: Vec<f64>, radius: f64) -> (impl Fn(&[f64]) -> f64, impl Fn(&[f64]) -> Vec<f64>) {
    let c2 = center.clone();
    let f = move |x: &[f64]| x.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() - radius * radius;
    let g = move |x: &[f64]| x.iter().zip(&c2).map(|(a, b)| 2.0 * (a - b)).collect::<Vec<_>>();
    (f, g)
}
