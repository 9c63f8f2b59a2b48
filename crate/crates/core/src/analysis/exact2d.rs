use rayon::prelude::*;

use super::report::{ErrorReport, Method};
use crate::error::{check_dim, invalid, Result};
use crate::geometry::polygon::{signed_area, Point2};
use crate::geometry::{AxisBox, RegionSpec};
use crate::network::arrangement::{
    arrangement, centroid, eval_line, first_layer_lines, layer2_affine, output_affine, split_all, Line2,
};
use crate::network::ReluNetwork;

/// `Σ_{a+b+c=p} x^a y^b z^c`.
fn complete_homogeneous(p: u32, l: [f64; 3]) -> f64 {
    let mut total = 0.0;
    for a in 0..=p {
        for b in 0..=(p - a) {
            total += l[0].powi(a as i32) * l[1].powi(b as i32) * l[2].powi((p - a - b) as i32);
        }
    }
    total
}

/// `∫_T |L|^p` for an affine `L` of one sign on a convex polygon, by fanning
/// into triangles: `∫_T L^p = 2|T| p!/(p+2)! h_p(L(v₁), L(v₂), L(v₃))`.
fn integrate_power(poly: &[Point2], l: &Line2, p: u32) -> f64 {
    let coef = 2.0 / ((p as f64 + 1.0) * (p as f64 + 2.0));
    let v: Vec<f64> = poly.iter().map(|q| eval_line(l, *q).abs()).collect();
    let mut total = 0.0;
    for k in 1..poly.len() - 1 {
        let area = signed_area(&[poly[0], poly[k], poly[k + 1]]).abs();
        total += coef * area * complete_homogeneous(p, [v[0], v[k], v[k + 1]]);
    }
    total
}

/// Exact `∫ |χ̂ − N|^p` for a planar network and integer `p`.
///
/// The box is cut along the first-layer lines and `interface` (which must
/// contain every line where `chi_hat` jumps), then along each second-layer
/// zero line and the zero line of the residual, so the residual is affine and
/// of one sign on every piece.
pub fn lp_error_exact2d(
    net: &ReluNetwork,
    chi_hat: &RegionSpec,
    interface: &[Line2],
    p: u32,
    bx: &AxisBox,
) -> Result<ErrorReport> {
    check_dim(2, net.input_dim())?;
    check_dim(2, bx.dim())?;
    if p == 0 {
        return Err(invalid("p must be at least 1"));
    }
    let min_area = 1e-14 * bx.volume();
    let lines: Vec<Line2> = first_layer_lines(net).into_iter().chain(interface.iter().copied()).collect();
    let cells = arrangement(bx, lines);
    let parts: Vec<f64> = cells
        .par_iter()
        .map(|cell| {
            let c = centroid(cell);
            let chi = chi_hat.indicator(&c);
            let pattern1: Vec<bool> = {
                let mut pre = Vec::new();
                net.layers()[0].apply(&c, &mut pre);
                pre.into_iter().map(|v| v > 0.0).collect()
            };
            let z = layer2_affine(net, &pattern1);
            let mut pieces = vec![cell.clone()];
            for zl in &z {
                pieces = split_all(pieces, *zl, min_area);
            }
            let mut sum = 0.0;
            for piece in pieces {
                let pc = centroid(&piece);
                let active: Vec<bool> = z.iter().map(|zl| eval_line(zl, pc) > 0.0).collect();
                let (g, k) = output_affine(net, &z, &active);
                // χ̂ − (g·x − k) written as a line `n·x − c`
                let r: Line2 = ([-g[0], -g[1]], -k - chi);
                for sub in split_all(vec![piece], r, 0.0) {
                    sum += integrate_power(&sub, &r, p);
                }
            }
            sum
        })
        .collect();
    let power: f64 = parts.iter().sum();
    Ok(ErrorReport::new(Method::Exact2d, p as f64, power, 0.0, cells.len() as u64))
}
