use serde::{Deserialize, Serialize};

use super::{AffineLayer, Layer, ReluNetwork, SparseAffineLayer};
use crate::error::{Error, Result};

/// Serialized form of a network.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub shape: [usize; 4],
    pub layers: Vec<LayerDoc>,
}

/// Dense layers store row-major weights; sparse layers store
/// `[row, column, value]` triplets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "storage", rename_all = "lowercase")]
pub enum LayerDoc {
    Dense { weights: Vec<f64>, biases: Vec<f64> },
    Sparse { weights: Vec<(usize, usize, f64)>, biases: Vec<f64> },
}

impl From<&Layer> for LayerDoc {
    fn from(l: &Layer) -> Self {
        match l {
            Layer::Dense(d) => LayerDoc::Dense { weights: d.weights().to_vec(), biases: d.biases().to_vec() },
            Layer::Sparse(s) => LayerDoc::Sparse {
                weights: s
                    .rows()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.iter().map(move |&(j, v)| (i, j, v)))
                    .collect(),
                biases: s.biases().to_vec(),
            },
        }
    }
}

impl LayerDoc {
    fn into_layer(self, rows: usize, cols: usize) -> Result<Layer> {
        match self {
            LayerDoc::Dense { weights, biases } => Ok(Layer::Dense(AffineLayer::new(rows, cols, weights, biases)?)),
            LayerDoc::Sparse { weights, biases } => {
                let mut r = vec![Vec::new(); rows];
                for (i, j, v) in weights {
                    r.get_mut(i)
                        .ok_or_else(|| Error::Format(format!("sparse entry row {i} out of range")))?
                        .push((j, v));
                }
                Ok(Layer::Sparse(SparseAffineLayer::new(cols, r, biases)?))
            }
        }
    }
}

impl From<&ReluNetwork> for NetworkDoc {
    fn from(n: &ReluNetwork) -> Self {
        NetworkDoc { shape: n.shape(), layers: n.layers().iter().map(LayerDoc::from).collect() }
    }
}

impl TryFrom<NetworkDoc> for ReluNetwork {
    type Error = Error;

    fn try_from(doc: NetworkDoc) -> Result<Self> {
        let s = doc.shape;
        if doc.layers.len() != 3 {
            return Err(Error::Format(format!("expected 3 layers, found {}", doc.layers.len())));
        }
        if s[3] != 1 {
            return Err(Error::Format("output width must be 1".into()));
        }
        let mut it = doc.layers.into_iter();
        let mut next = |k: usize| it.next().expect("three layers").into_layer(s[k + 1], s[k]);
        let (l1, l2, l3) = (next(0)?, next(1)?, next(2)?);
        ReluNetwork::new(l1, l2, l3)
    }
}
