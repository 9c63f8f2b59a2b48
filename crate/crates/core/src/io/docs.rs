use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::polygon::Point2;
use crate::geometry::{AxisBox, Hyperplane};
use crate::network::{clip_line, second_layer_breaklines_2d, NeuronBreaks, ReluNetwork};

/// Planes `normals[i] · x = offsets[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneSetDoc {
    pub dim: usize,
    pub normals: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
}

impl HyperplaneSetDoc {
    pub fn from_planes(hs: &[Hyperplane]) -> Self {
        HyperplaneSetDoc {
            dim: hs.first().map_or(0, |h| h.dim()),
            normals: hs.iter().map(|h| h.normal().to_dense()).collect(),
            offsets: hs.iter().map(|h| h.offset()).collect(),
        }
    }

    pub fn to_planes(&self) -> Result<Vec<Hyperplane>> {
        if self.normals.len() != self.offsets.len() {
            return Err(Error::Format(format!("{} normals but {} offsets", self.normals.len(), self.offsets.len())));
        }
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, &c)| {
                check_dim(self.dim, n.len())?;
                Hyperplane::new(n.clone(), c)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSegment {
    pub neuron: usize,
    pub a: Point2,
    pub b: Point2,
}

/// Break lines of a planar network inside a box.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BreaklineDoc {
    #[serde(rename = "box")]
    pub bx: AxisBox,
    pub first_layer: Vec<LineSegment>,
    pub second_layer: Vec<SecondLayerDoc>,
}

/// Piece of a second-layer zero set inside first-layer cell `cell`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSegment {
    pub cell: usize,
    pub a: Point2,
    pub b: Point2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SecondLayerDoc {
    pub neuron: usize,
    pub segments: Vec<CellSegment>,
    pub degenerate_cells: Vec<usize>,
}

impl From<&NeuronBreaks> for SecondLayerDoc {
    fn from(n: &NeuronBreaks) -> Self {
        SecondLayerDoc {
            neuron: n.neuron,
            segments: n.segments.iter().map(|s| CellSegment { cell: s.cell, a: s.a, b: s.b }).collect(),
            degenerate_cells: n.degenerate_cells.clone(),
        }
    }
}

/// First-layer lines clipped to the box and second-layer zero sets of a
/// planar network.
pub fn breakline_geometry(net: &ReluNetwork, bx: &AxisBox) -> Result<BreaklineDoc> {
    check_dim(2, net.input_dim())?;
    check_dim(2, bx.dim())?;
    let l1 = &net.layers()[0];
    let corners = bx.corners2();
    let first_layer = (0..l1.n_out())
        .filter_map(|i| {
            let n = [l1.entry(i, 0), l1.entry(i, 1)];
            if n == [0.0, 0.0] {
                return None;
            }
            let line = (n, l1.biases()[i]);
            let tol = 1e-12 * n[0].abs().max(n[1].abs());
            clip_line(&corners, &line, tol).map(|(a, b)| LineSegment { neuron: i, a, b })
        })
        .collect();
    let second = second_layer_breaklines_2d(net, bx)?;
    Ok(BreaklineDoc {
        bx: bx.clone(),
        first_layer,
        second_layer: second.neurons.iter().map(SecondLayerDoc::from).collect(),
    })
}
