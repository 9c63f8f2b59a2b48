#![allow(dead_code)]

use pwc_relu::geometry::polygon::SimplePolygon;
use pwc_relu::geometry::AxisBox;

pub fn h_shape() -> SimplePolygon {
    SimplePolygon::new(vec![
        [-1.5, -1.5],
        [-0.5, -1.5],
        [-0.5, -0.5],
        [0.5, -0.5],
        [0.5, -1.5],
        [1.5, -1.5],
        [1.5, 1.5],
        [0.5, 1.5],
        [0.5, 0.5],
        [-0.5, 0.5],
        [-0.5, 1.5],
        [-1.5, 1.5],
    ])
    .unwrap()
}

pub fn h_box() -> AxisBox {
    AxisBox::cube(2, -2.0, 2.0).unwrap()
}

/// Square with an L-shaped notch cut from the top edge.
pub fn notched_square() -> SimplePolygon {
    SimplePolygon::new(vec![
        [0.0, 0.0],
        [4.0, 0.0],
        [4.0, 4.0],
        [3.0, 4.0],
        [3.0, 2.0],
        [2.0, 2.0],
        [2.0, 1.0],
        [1.0, 1.0],
        [1.0, 4.0],
        [0.0, 4.0],
    ])
    .unwrap()
}

/// Deterministic scatter of points in a box.
pub fn scatter(bx: &AxisBox, n: usize, seed: u64) -> Vec<Vec<f64>> {
    pwc_relu::sampling::sample_points(bx, n, seed)
}

/// The wedge `{x < 0.6, y < 0.6}` as an open chain in the unit square.
pub fn wedge_planes() -> Vec<pwc_relu::geometry::Hyperplane> {
    use pwc_relu::geometry::Hyperplane;
    vec![Hyperplane::new(vec![1.0, 0.0], 0.6).unwrap(), Hyperplane::new(vec![0.0, 1.0], 0.6).unwrap()]
}

/// `∫ |χ̂ − N|` for the wedge by hand: two strips of width ε and length 0.6
/// carrying a linear ramp, plus the corner triangle of area ε²/2 where the
/// residual is `1 − s/ε`.
pub fn wedge_l1(eps: f64) -> f64 {
    2.0 * (eps / 2.0 * 0.6) + eps * eps / 6.0
}

/// Wedge strip area: two ε × 0.6 strips and the ε²/2 corner triangle.
pub fn wedge_strip(eps: f64) -> f64 {
    2.0 * eps * 0.6 + eps * eps / 2.0
}

/// Largest deviation, over all second-layer segment vertices, from "one face
/// at height ε and every other face at or below zero".
pub fn offset_vertex_error(doc: &pwc_relu::io::BreaklineDoc, planes: &[pwc_relu::geometry::Hyperplane], eps: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for neuron in &doc.second_layer {
        for seg in &neuron.segments {
            for v in [seg.a, seg.b] {
                let mut h: Vec<f64> = planes.iter().map(|p| p.eval(&v)).collect();
                h.sort_by(|a, b| b.total_cmp(a));
                let rest = h.get(1).copied().unwrap_or(f64::NEG_INFINITY).max(0.0);
                worst = worst.max((h[0] - eps).abs()).max(rest);
            }
        }
    }
    worst
}
