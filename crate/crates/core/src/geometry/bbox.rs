use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Result};

/// Axis-aligned box `∏ (lo_i, hi_i)`, the ambient domain Ω.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl AxisBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(invalid("box must have at least one axis"));
        }
        for (a, b) in lo.iter().zip(&hi) {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(invalid(format!("box axis [{a}, {b}] has no positive length")));
            }
        }
        Ok(Self { lo, hi })
    }

    /// The unit cube `(0,1)^dim`.
    pub fn unit(dim: usize) -> Self {
        Self { lo: vec![0.0; dim], hi: vec![1.0; dim] }
    }

    /// `(lo, hi)^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(&self.lo).zip(&self.hi).all(|((v, a), b)| a < v && v < b)
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// Counterclockwise corners of a 2D box.
    pub fn corners2(&self) -> Vec<[f64; 2]> {
        assert_eq!(self.dim(), 2);
        let (x0, y0, x1, y1) = (self.lo[0], self.lo[1], self.hi[0], self.hi[1]);
        vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
    }
}
