use super::{Layer, ReluNetwork};
use crate::error::{check_dim, Result};
use crate::geometry::polygon::{clip_halfplane, signed_area, Point2};
use crate::geometry::AxisBox;

/// Line `n · x − c = 0` in the plane.
pub type Line2 = (Point2, f64);

/// Convex cell of the first-layer arrangement with its activation pattern.
#[derive(Clone, Debug)]
pub struct Cell {
    pub polygon: Vec<Point2>,
    pub pattern: Vec<bool>,
}

/// Area-weighted centroid of a convex polygon.
pub(crate) fn centroid(poly: &[Point2]) -> Point2 {
    let a = signed_area(poly);
    if a.abs() < f64::MIN_POSITIVE {
        let k = poly.len().max(1) as f64;
        return [poly.iter().map(|p| p[0]).sum::<f64>() / k, poly.iter().map(|p| p[1]).sum::<f64>() / k];
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let w = p[0] * q[1] - q[0] * p[1];
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [cx / (6.0 * a), cy / (6.0 * a)]
}

/// Split every convex polygon by the line; pieces below `min_area` are dropped.
pub(crate) fn split_all(cells: Vec<Vec<Point2>>, line: Line2, min_area: f64) -> Vec<Vec<Point2>> {
    let (n, c) = line;
    let scale = n[0].abs().max(n[1].abs());
    if scale == 0.0 {
        return cells;
    }
    let mut out = Vec::with_capacity(cells.len() + 8);
    for poly in cells {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &poly {
            let v = n[0] * p[0] + n[1] * p[1] - c;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo >= 0.0 || hi <= 0.0 {
            out.push(poly);
            continue;
        }
        for piece in [clip_halfplane(&poly, n, c), clip_halfplane(&poly, [-n[0], -n[1]], -c)] {
            if piece.len() >= 3 && signed_area(&piece) > min_area {
                out.push(piece);
            }
        }
    }
    out
}

/// Convex cells cut out of the box by the lines.
pub(crate) fn arrangement(bx: &AxisBox, lines: impl IntoIterator<Item = Line2>) -> Vec<Vec<Point2>> {
    let min_area = 1e-14 * bx.volume();
    let mut cells = vec![bx.corners2().to_vec()];
    for line in lines {
        cells = split_all(cells, line, min_area);
    }
    cells
}

/// First-layer zero lines of a planar network; zero rows are skipped.
pub(crate) fn first_layer_lines(net: &ReluNetwork) -> Vec<Line2> {
    let l = &net.layers()[0];
    (0..l.n_out())
        .filter_map(|i| {
            let n = [l.entry(i, 0), l.entry(i, 1)];
            (n != [0.0, 0.0]).then_some((n, l.biases()[i]))
        })
        .collect()
}

fn pattern_at(layer: &Layer, x: &[f64]) -> Vec<bool> {
    let mut pre = Vec::new();
    layer.apply(x, &mut pre);
    pre.into_iter().map(|v| v > 0.0).collect()
}

/// Cells of the first-layer arrangement of a planar network inside `bx`.
pub fn first_layer_cells(net: &ReluNetwork, bx: &AxisBox) -> Result<Vec<Cell>> {
    check_dim(2, net.input_dim())?;
    check_dim(2, bx.dim())?;
    Ok(arrangement(bx, first_layer_lines(net))
        .into_iter()
        .map(|polygon| {
            let pattern = pattern_at(&net.layers()[0], &centroid(&polygon));
            Cell { polygon, pattern }
        })
        .collect())
}

/// Second-layer pre-activations restricted to a first-layer pattern, as
/// affine maps `g · x − c`.
pub(crate) fn layer2_affine(net: &ReluNetwork, pattern: &[bool]) -> Vec<Line2> {
    let [l1, l2, _] = net.layers();
    let active: Vec<(usize, Point2, f64)> = pattern
        .iter()
        .enumerate()
        .filter(|(_, a)| **a)
        .map(|(i, _)| (i, [l1.entry(i, 0), l1.entry(i, 1)], l1.biases()[i]))
        .collect();
    (0..l2.n_out())
        .map(|j| {
            let (mut g, mut c) = ([0.0, 0.0], l2.biases()[j]);
            for &(i, n, b) in &active {
                let w = l2.entry(j, i);
                if w != 0.0 {
                    g[0] += w * n[0];
                    g[1] += w * n[1];
                    c += w * b;
                }
            }
            (g, c)
        })
        .collect()
}

/// Output as an affine map on a region with fixed layer-2 pattern.
pub(crate) fn output_affine(net: &ReluNetwork, z: &[Line2], active2: &[bool]) -> Line2 {
    let l3 = &net.layers()[2];
    let (mut g, mut c) = ([0.0, 0.0], l3.biases()[0]);
    for (j, ((zg, zc), a)) in z.iter().zip(active2).enumerate() {
        if *a {
            let w = l3.entry(0, j);
            g[0] += w * zg[0];
            g[1] += w * zg[1];
            c += w * zc;
        }
    }
    (g, c)
}

pub(crate) fn eval_line(l: &Line2, p: Point2) -> f64 {
    l.0[0] * p[0] + l.0[1] * p[1] - l.1
}
