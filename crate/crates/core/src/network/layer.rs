use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Row density below which [`Layer::auto`] picks sparse storage.
pub const SPARSE_DENSITY: f64 = 0.01;

/// Dense affine map `x ↦ W x − b` with row-major `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineLayer {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
    biases: Vec<f64>,
}

impl AffineLayer {
    pub fn new(rows: usize, cols: usize, weights: Vec<f64>, biases: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("layer dimensions must be positive"));
        }
        if weights.len() != rows * cols || biases.len() != rows {
            return Err(invalid(format!(
                "dense layer {rows}x{cols} got {} weights and {} biases",
                weights.len(),
                biases.len()
            )));
        }
        if weights.iter().chain(&biases).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("layer entry".into()));
        }
        Ok(Self { rows, cols, weights, biases })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>, biases: Vec<f64>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged weight rows"));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect(), biases)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.cols..(i + 1) * self.cols]
    }
}

/// Row-sparse affine map; each row lists `(column, value)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseAffineLayer {
    cols: usize,
    rows: Vec<Vec<(usize, f64)>>,
    biases: Vec<f64>,
}

impl SparseAffineLayer {
    pub fn new(cols: usize, rows: Vec<Vec<(usize, f64)>>, biases: Vec<f64>) -> Result<Self> {
        if rows.is_empty() || cols == 0 {
            return Err(invalid("layer dimensions must be positive"));
        }
        if biases.len() != rows.len() {
            return Err(invalid("sparse layer bias count differs from row count"));
        }
        for (i, row) in rows.iter().enumerate() {
            let mut seen = std::collections::HashSet::with_capacity(row.len());
            for &(j, v) in row {
                if j >= cols {
                    return Err(invalid(format!("row {i}: column {j} out of range")));
                }
                if !seen.insert(j) {
                    return Err(invalid(format!("row {i}: duplicate column {j}")));
                }
                if !v.is_finite() {
                    return Err(Error::NonFinite("layer entry".into()));
                }
            }
        }
        if biases.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("layer bias".into()));
        }
        Ok(Self { cols, rows, biases })
    }

    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }
}

/// One affine layer in either storage.
#[derive(Clone, Debug, PartialEq)]
pub enum Layer {
    Dense(AffineLayer),
    Sparse(SparseAffineLayer),
}

impl Layer {
    /// Build from sparse rows, choosing sparse storage when the density of
    /// nonzeros is below [`SPARSE_DENSITY`].
    pub fn auto(cols: usize, rows: Vec<Vec<(usize, f64)>>, biases: Vec<f64>) -> Result<Self> {
        let nnz: usize = rows.iter().map(|r| r.iter().filter(|(_, v)| *v != 0.0).count()).sum();
        let density = nnz as f64 / (rows.len().max(1) * cols.max(1)) as f64;
        let sparse = SparseAffineLayer::new(cols, rows, biases)?;
        if density < SPARSE_DENSITY {
            Ok(Layer::Sparse(sparse))
        } else {
            Ok(Layer::Dense(sparse.to_dense()))
        }
    }

    pub fn n_in(&self) -> usize {
        match self {
            Layer::Dense(l) => l.cols,
            Layer::Sparse(l) => l.cols,
        }
    }

    pub fn n_out(&self) -> usize {
        match self {
            Layer::Dense(l) => l.rows,
            Layer::Sparse(l) => l.rows.len(),
        }
    }

    pub fn biases(&self) -> &[f64] {
        match self {
            Layer::Dense(l) => &l.biases,
            Layer::Sparse(l) => &l.biases,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, Layer::Sparse(_))
    }

    /// Nonzero entries of row `i`, as `(column, value)`.
    pub fn row_entries(&self, i: usize) -> Vec<(usize, f64)> {
        match self {
            Layer::Dense(l) => l.row(i).iter().copied().enumerate().filter(|(_, v)| *v != 0.0).collect(),
            Layer::Sparse(l) => l.rows[i].clone(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match self {
            Layer::Dense(l) => l.weights[i * l.cols + j],
            Layer::Sparse(l) => l.rows[i].iter().find(|(c, _)| *c == j).map_or(0.0, |&(_, v)| v),
        }
    }

    /// `out = W x − b`.
    #[inline]
    pub fn apply(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        match self {
            Layer::Dense(l) => {
                for (i, b) in l.biases.iter().enumerate() {
                    let row = &l.weights[i * l.cols..(i + 1) * l.cols];
                    let dot: f64 = row.iter().zip(x).map(|(w, v)| w * v).sum();
                    out.push(dot - b);
                }
            }
            Layer::Sparse(l) => {
                for (row, b) in l.rows.iter().zip(&l.biases) {
                    let dot: f64 = row.iter().map(|&(j, w)| w * x[j]).sum();
                    out.push(dot - b);
                }
            }
        }
    }

    /// Sparse rows view of any layer.
    pub fn to_rows(&self) -> Vec<Vec<(usize, f64)>> {
        (0..self.n_out()).map(|i| self.row_entries(i)).collect()
    }

    /// Same rows restricted to the columns with a new index, `usize::MAX`
    /// marking dropped columns; biases replaced by `biases`.
    pub(crate) fn remap_columns(&self, cols: usize, new_index: &[usize], biases: Vec<f64>) -> Result<Layer> {
        let rows: Vec<Vec<(usize, f64)>> = (0..self.n_out())
            .map(|i| {
                self.row_entries(i)
                    .into_iter()
                    .filter(|(j, _)| new_index[*j] != usize::MAX)
                    .map(|(j, v)| (new_index[j], v))
                    .collect()
            })
            .collect();
        let sparse = SparseAffineLayer::new(cols, rows, biases)?;
        Ok(match self {
            Layer::Dense(_) => Layer::Dense(sparse.to_dense()),
            Layer::Sparse(_) => Layer::Sparse(sparse),
        })
    }

    pub(crate) fn map_rows(&self, f: impl Fn(usize, Vec<(usize, f64)>, f64) -> (Vec<(usize, f64)>, f64)) -> Result<Layer> {
        let cols = self.n_in();
        let (rows, biases): (Vec<_>, Vec<_>) =
            (0..self.n_out()).map(|i| f(i, self.row_entries(i), self.biases()[i])).unzip();
        let sparse = SparseAffineLayer::new(cols, rows, biases)?;
        Ok(match self {
            Layer::Dense(_) => Layer::Dense(sparse.to_dense()),
            Layer::Sparse(_) => Layer::Sparse(sparse),
        })
    }
}

impl SparseAffineLayer {
    pub fn to_dense(&self) -> AffineLayer {
        let mut weights = vec![0.0; self.rows.len() * self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                weights[i * self.cols + j] = v;
            }
        }
        AffineLayer { rows: self.rows.len(), cols: self.cols, weights, biases: self.biases.clone() }
    }
}
