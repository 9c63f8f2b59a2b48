use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};

/// Tolerance on `| ‖normal‖ − 1 |` below which a normal is kept verbatim.
pub const UNIT_TOL: f64 = 1e-12;

/// Normal vector storage. Axis-aligned planes in very high dimension use the
/// sparse form so a set of `d` planes does not cost `d²` memory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Normal {
    Dense(Vec<f64>),
    Sparse { dim: usize, entries: Vec<(usize, f64)> },
}

impl Normal {
    pub fn dim(&self) -> usize {
        match self {
            Normal::Dense(v) => v.len(),
            Normal::Sparse { dim, .. } => *dim,
        }
    }

    #[inline]
    pub fn dot(&self, x: &[f64]) -> f64 {
        match self {
            Normal::Dense(v) => v.iter().zip(x).map(|(a, b)| a * b).sum(),
            Normal::Sparse { entries, .. } => entries.iter().map(|&(j, a)| a * x[j]).sum(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.nonzeros().map(|(_, a)| a * a).sum::<f64>().sqrt()
    }

    /// `(index, value)` pairs; dense storage yields every component.
    pub fn nonzeros(&self) -> Box<dyn Iterator<Item = (usize, f64)> + '_> {
        match self {
            Normal::Dense(v) => Box::new(v.iter().copied().enumerate()),
            Normal::Sparse { entries, .. } => Box::new(entries.iter().copied()),
        }
    }

    pub fn component(&self, i: usize) -> f64 {
        match self {
            Normal::Dense(v) => v[i],
            Normal::Sparse { entries, .. } => entries
                .iter()
                .find(|(j, _)| *j == i)
                .map_or(0.0, |&(_, a)| a),
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        match self {
            Normal::Dense(v) => v.clone(),
            Normal::Sparse { dim, entries } => {
                let mut v = vec![0.0; *dim];
                for &(j, a) in entries {
                    v[j] += a;
                }
                v
            }
        }
    }

    fn scaled(&self, s: f64) -> Normal {
        match self {
            Normal::Dense(v) => Normal::Dense(v.iter().map(|a| a * s).collect()),
            Normal::Sparse { dim, entries } => Normal::Sparse {
                dim: *dim,
                entries: entries.iter().map(|&(j, a)| (j, a * s)).collect(),
            },
        }
    }
}

/// The oriented hyperplane `normal · x − offset = 0` with a unit normal.
///
/// The positive side (`normal · x − offset > 0`) is the side the normal points
/// to; constructions orient normals toward the region where the step function
/// equals one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Normal,
    offset: f64,
}

impl Hyperplane {
    /// Build from a possibly non-unit normal `w` and offset `c`; the result
    /// represents `(w·x − c)/‖w‖`.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        Self::from_normal(Normal::Dense(normal), offset)
    }

    /// Sparse normal given as `(index, value)` pairs in a `dim`-dimensional space.
    pub fn sparse(dim: usize, entries: Vec<(usize, f64)>, offset: f64) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(j, _) in &entries {
            if j >= dim {
                return Err(invalid(format!("sparse index {j} out of range for dim {dim}")));
            }
            if !seen.insert(j) {
                return Err(invalid(format!("duplicate sparse index {j}")));
            }
        }
        Self::from_normal(Normal::Sparse { dim, entries }, offset)
    }

    /// `sign · x[axis] − offset = 0`.
    pub fn axis(dim: usize, axis: usize, sign: f64, offset: f64) -> Result<Self> {
        if sign == 0.0 {
            return Err(invalid("axis hyperplane needs a nonzero sign"));
        }
        Self::sparse(dim, vec![(axis, sign.signum())], offset)
    }

    pub fn from_normal(normal: Normal, offset: f64) -> Result<Self> {
        if normal.dim() == 0 {
            return Err(invalid("hyperplane dimension must be at least 1"));
        }
        if !offset.is_finite() || normal.nonzeros().any(|(_, a)| !a.is_finite()) {
            return Err(Error::NonFinite("hyperplane coefficients".into()));
        }
        let norm = normal.norm();
        if norm == 0.0 {
            return Err(Error::Degenerate("zero normal vector".into()));
        }
        if (norm - 1.0).abs() <= UNIT_TOL {
            Ok(Self { normal, offset })
        } else {
            Ok(Self { normal: normal.scaled(1.0 / norm), offset: offset / norm })
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn normal(&self) -> &Normal {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `normal · x − offset`, checking the dimension.
    pub fn signed_eval(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(self.eval(x))
    }

    /// `normal · x − offset` without a dimension check.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.dot(x) - self.offset
    }

    /// Same plane with the opposite orientation.
    pub fn flipped(&self) -> Hyperplane {
        Hyperplane { normal: self.normal.scaled(-1.0), offset: -self.offset }
    }

    /// Plane moved by `delta` along its normal.
    pub fn translated(&self, delta: f64) -> Hyperplane {
        Hyperplane { normal: self.normal.clone(), offset: self.offset + delta }
    }

    /// 2D normal as an array; panics if the plane is not two-dimensional.
    pub fn normal2(&self) -> [f64; 2] {
        assert_eq!(self.dim(), 2, "normal2 on a {}-dimensional plane", self.dim());
        [self.normal.component(0), self.normal.component(1)]
    }

    pub(crate) fn approx_eq(&self, other: &Hyperplane, tol: f64) -> bool {
        if self.dim() != other.dim() || (self.offset - other.offset).abs() > tol {
            return false;
        }
        let a = self.normal.to_dense();
        let b = other.normal.to_dense();
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }
}

/// Evaluate `hs` at `x` into `out`.
pub fn eval_all(hs: &[Hyperplane], x: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.extend(hs.iter().map(|h| h.eval(x)));
}
