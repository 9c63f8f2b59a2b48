//! Three-layer ReLU networks `N(x) = W3 σ(W2 σ(W1 x − b1) − b2) − b3`.

pub(crate) mod arrangement;
mod breaklines;
mod doc;
mod layer;
mod ops;

pub use arrangement::{first_layer_cells, Cell, Line2};
pub use breaklines::{second_layer_breaklines_2d, BreakSegment, NeuronBreaks, SecondLayerBreaks};
pub(crate) use breaklines::clip_line;
pub use doc::{LayerDoc, NetworkDoc};
pub use layer::{AffineLayer, Layer, SparseAffineLayer, SPARSE_DENSITY};
pub use ops::{affine_combine, restrict_to_slice};

use rayon::prelude::*;

use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::Hyperplane;

#[inline]
pub fn relu(v: f64) -> f64 {
    v.max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReluNetwork {
    layers: [Layer; 3],
}

impl ReluNetwork {
    pub fn new(l1: Layer, l2: Layer, l3: Layer) -> Result<Self> {
        if l2.n_in() != l1.n_out() {
            return Err(invalid(format!("layer 2 expects {} inputs, layer 1 has {} outputs", l2.n_in(), l1.n_out())));
        }
        if l3.n_in() != l2.n_out() {
            return Err(invalid(format!("layer 3 expects {} inputs, layer 2 has {} outputs", l3.n_in(), l2.n_out())));
        }
        if l3.n_out() != 1 {
            return Err(invalid(format!("output layer must have one neuron, got {}", l3.n_out())));
        }
        Ok(Self { layers: [l1, l2, l3] })
    }

    pub fn layers(&self) -> &[Layer; 3] {
        &self.layers
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].n_in()
    }

    /// `[d, n1, n2, 1]`.
    pub fn shape(&self) -> [usize; 4] {
        [self.layers[0].n_in(), self.layers[0].n_out(), self.layers[1].n_out(), 1]
    }

    /// Shape as `d–n1–n2–1` (en dashes).
    pub fn shape_string(&self) -> String {
        self.shape().map(|v| v.to_string()).join("\u{2013}")
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.input_dim(), x.len())?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("network input".into()));
        }
        Ok(self.eval_unchecked(x, &mut Scratch::default()))
    }

    /// Evaluate without input validation, reusing buffers.
    #[inline]
    pub fn eval_unchecked(&self, x: &[f64], s: &mut Scratch) -> f64 {
        self.layers[0].apply(x, &mut s.h1);
        s.h1.iter_mut().for_each(|v| *v = relu(*v));
        self.layers[1].apply(&s.h1, &mut s.h2);
        s.h2.iter_mut().for_each(|v| *v = relu(*v));
        self.layers[2].apply(&s.h2, &mut s.out);
        s.out[0]
    }

    /// Evaluate without validation using a per-thread scratch buffer.
    #[inline]
    pub fn eval_point(&self, x: &[f64]) -> f64 {
        SCRATCH.with(|s| self.eval_unchecked(x, &mut s.borrow_mut()))
    }

    /// Hidden activations after each ReLU, for inspection.
    pub fn activations(&self, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        check_dim(self.input_dim(), x.len())?;
        let mut s = Scratch::default();
        self.eval_unchecked(x, &mut s);
        Ok((s.h1, s.h2))
    }

    pub fn eval_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<f64>> {
        for x in xs {
            check_dim(self.input_dim(), x.len())?;
        }
        self.eval_rows(xs.iter().map(|x| x.as_slice()).collect())
    }

    /// Points packed row-major, `d` values each.
    pub fn eval_batch_flat(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let d = self.input_dim();
        if !xs.len().is_multiple_of(d) {
            return Err(invalid(format!("flat batch length {} is not a multiple of {d}", xs.len())));
        }
        self.eval_rows(xs.chunks_exact(d).collect())
    }

    fn eval_rows(&self, rows: Vec<&[f64]>) -> Result<Vec<f64>> {
        if rows.iter().any(|x| x.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFinite("network input".into()));
        }
        Ok(rows
            .par_iter()
            .map_init(Scratch::default, |s, x| self.eval_unchecked(x, s))
            .collect())
    }

    /// Rescale each first-layer row to unit norm, pushing the factor into the
    /// next layer. The function is unchanged; zero rows are left alone.
    pub fn normalize_first_layer(&self) -> Result<Self> {
        let norms: Vec<f64> = (0..self.layers[0].n_out())
            .map(|i| self.layers[0].row_entries(i).iter().map(|(_, v)| v * v).sum::<f64>().sqrt())
            .collect();
        let scale = |i: usize| if norms[i] > 0.0 { norms[i] } else { 1.0 };
        let l1 = self.layers[0].map_rows(|i, row, b| {
            let s = scale(i);
            (row.into_iter().map(|(j, v)| (j, v / s)).collect(), b / s)
        })?;
        let l2 = self.layers[1].map_rows(|_, row, b| (row.into_iter().map(|(j, v)| (j, v * scale(j))).collect(), b))?;
        Self::new(l1, l2, self.layers[2].clone())
    }

    /// Zero set of first-layer neuron `i`, as a unit-normal hyperplane.
    /// `None` when the row is zero.
    pub fn first_layer_breakline(&self, i: usize) -> Option<Hyperplane> {
        let l = &self.layers[0];
        let row = l.row_entries(i);
        if row.iter().all(|(_, v)| *v == 0.0) {
            return None;
        }
        let d = l.n_in();
        let h = if l.is_sparse() {
            Hyperplane::sparse(d, row, l.biases()[i])
        } else {
            let mut dense = vec![0.0; d];
            for (j, v) in row {
                dense[j] = v;
            }
            Hyperplane::new(dense, l.biases()[i])
        };
        h.ok()
    }

    /// All first-layer zero sets, skipping zero rows. Produced lazily so very
    /// wide inputs never materialize all of them.
    pub fn first_layer_breaklines(&self) -> impl Iterator<Item = (usize, Hyperplane)> + '_ {
        (0..self.layers[0].n_out()).filter_map(|i| self.first_layer_breakline(i).map(|h| (i, h)))
    }
}

thread_local! {
    static SCRATCH: std::cell::RefCell<Scratch> = std::cell::RefCell::new(Scratch::default());
}

/// Reusable hidden-layer buffers for [`ReluNetwork::eval_unchecked`].
#[derive(Default, Debug, Clone)]
pub struct Scratch {
    h1: Vec<f64>,
    h2: Vec<f64>,
    out: Vec<f64>,
}
