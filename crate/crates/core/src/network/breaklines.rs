use serde::Serialize;

use super::arrangement::{eval_line, first_layer_cells, layer2_affine, Cell, Line2};
use super::ReluNetwork;
use crate::error::Result;
use crate::geometry::polygon::{dist, Point2};
use crate::geometry::AxisBox;

/// Piece of a second-layer zero set inside one first-layer cell.
#[derive(Clone, Debug, Serialize)]
pub struct BreakSegment {
    pub cell: usize,
    pub a: Point2,
    pub b: Point2,
}

#[derive(Clone, Debug, Serialize)]
pub struct NeuronBreaks {
    pub neuron: usize,
    pub segments: Vec<BreakSegment>,
    /// Cells on which the pre-activation vanishes identically.
    pub degenerate_cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SecondLayerBreaks {
    pub cells: Vec<Cell>,
    pub neurons: Vec<NeuronBreaks>,
}

/// Intersection of a line with a convex polygon, if it has positive length.
pub(crate) fn clip_line(poly: &[Point2], line: &Line2, tol: f64) -> Option<(Point2, Point2)> {
    let vals: Vec<f64> = poly.iter().map(|p| eval_line(line, *p)).collect();
    let mut pts = Vec::new();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (vp, vq) = (vals[i], vals[j]);
        if vp.abs() <= tol {
            pts.push(poly[i]);
        } else if vq.abs() > tol && (vp < 0.0) != (vq < 0.0) {
            let t = vp / (vp - vq);
            pts.push([poly[i][0] + t * (poly[j][0] - poly[i][0]), poly[i][1] + t * (poly[j][1] - poly[i][1])]);
        }
    }
    let dir = [-line.0[1], line.0[0]];
    let key = |p: &Point2| dir[0] * p[0] + dir[1] * p[1];
    let a = *pts.iter().min_by(|p, q| key(p).total_cmp(&key(q)))?;
    let b = *pts.iter().max_by(|p, q| key(p).total_cmp(&key(q)))?;
    (dist(a, b) > 1e-12).then_some((a, b))
}

/// Zero sets of every second-layer neuron of a planar network, as segments
/// clipped to the cells of the first-layer arrangement inside `bx`.
pub fn second_layer_breaklines_2d(net: &ReluNetwork, bx: &AxisBox) -> Result<SecondLayerBreaks> {
    let cells = first_layer_cells(net, bx)?;
    let n2 = net.shape()[2];
    let mut neurons: Vec<NeuronBreaks> =
        (0..n2).map(|neuron| NeuronBreaks { neuron, segments: Vec::new(), degenerate_cells: Vec::new() }).collect();
    for (k, cell) in cells.iter().enumerate() {
        for (j, z) in layer2_affine(net, &cell.pattern).iter().enumerate() {
            let tol = 1e-12 * z.0[0].abs().max(z.0[1].abs()).max(z.1.abs()).max(1.0);
            if cell.polygon.iter().all(|p| eval_line(z, *p).abs() <= tol) {
                neurons[j].degenerate_cells.push(k);
                continue;
            }
            if let Some((a, b)) = clip_line(&cell.polygon, z, tol) {
                neurons[j].segments.push(BreakSegment { cell: k, a, b });
            }
        }
    }
    Ok(SecondLayerBreaks { cells, neurons })
}
