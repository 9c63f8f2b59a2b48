use std::fmt;

use serde::Serialize;

use crate::construct::check_eps;
use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::{Hyperplane, RegionSpec};

/// Ordered planes approximating an interface in the plane, consecutive planes
/// meeting at a junction. A closed chain also joins the last plane to the first.
#[derive(Clone, Debug)]
pub struct HyperplaneChain {
    planes: Vec<Hyperplane>,
    closed: bool,
}

impl HyperplaneChain {
    pub fn new(planes: Vec<Hyperplane>, closed: bool) -> Result<Self> {
        if planes.is_empty() {
            return Err(invalid("hyperplane chain is empty"));
        }
        for h in &planes {
            check_dim(2, h.dim())?;
        }
        if closed && planes.len() < 3 {
            return Err(invalid("a closed chain needs at least three planes"));
        }
        Ok(Self { planes, closed })
    }

    pub fn open(planes: Vec<Hyperplane>) -> Result<Self> {
        Self::new(planes, false)
    }

    pub fn closed(planes: Vec<Hyperplane>) -> Result<Self> {
        Self::new(planes, true)
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// For 0-based indices `i < j`, the 0-based start of the junction they
    /// share, if they are neighbours.
    fn junction(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.planes.len();
        if j == i + 1 {
            Some(i)
        } else if self.closed && i == 0 && j == n - 1 {
            Some(n - 1)
        } else {
            None
        }
    }
}

/// Where a point sits relative to the transition strip of a chain.
/// Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TransitionLabel {
    /// Every plane is non-positive: the network is exactly 0.
    OmegaHat1,
    /// Only plane `i` is positive, by less than `ε`.
    Upsilon1(usize),
    /// Planes `i` and `i+1` (or `n` and `1` on a closed chain) are positive
    /// with sum below `ε`.
    Upsilon2(usize),
    /// The positive parts sum to at least `ε`: the network is exactly 1.
    OmegaHat3,
    /// Positive planes that do not form a junction, with sum below `ε`.
    Unknown { positive: Vec<usize> },
}

impl fmt::Display for TransitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionLabel::OmegaHat1 => write!(f, "OmegaHat1"),
            TransitionLabel::Upsilon1(i) => write!(f, "Upsilon1({i})"),
            TransitionLabel::Upsilon2(i) => write!(f, "Upsilon2({i})"),
            TransitionLabel::OmegaHat3 => write!(f, "OmegaHat3"),
            TransitionLabel::Unknown { positive } => {
                write!(f, "Unknown(positive planes {positive:?} are not adjacent)")
            }
        }
    }
}

impl TransitionLabel {
    pub fn in_strip(&self) -> bool {
        matches!(self, TransitionLabel::Upsilon1(_) | TransitionLabel::Upsilon2(_))
    }
}

pub fn classify_transition(x: [f64; 2], chain: &HyperplaneChain, eps: f64) -> Result<TransitionLabel> {
    check_eps(eps)?;
    Ok(classify_values(&x, chain, eps).0)
}

fn classify_values(x: &[f64], chain: &HyperplaneChain, eps: f64) -> (TransitionLabel, f64) {
    let mut positive = Vec::new();
    let mut sum = 0.0;
    for (i, h) in chain.planes.iter().enumerate() {
        let s = h.eval(x);
        if s > 0.0 {
            positive.push(i);
            sum += s;
        }
    }
    let label = match positive.as_slice() {
        [] => TransitionLabel::OmegaHat1,
        _ if sum >= eps => TransitionLabel::OmegaHat3,
        [i] => TransitionLabel::Upsilon1(i + 1),
        [i, j] => match chain.junction(*i, *j) {
            Some(k) => TransitionLabel::Upsilon2(k + 1),
            None => TransitionLabel::Unknown { positive: positive.iter().map(|k| k + 1).collect() },
        },
        _ => TransitionLabel::Unknown { positive: positive.iter().map(|k| k + 1).collect() },
    };
    (label, sum)
}

/// Closed-form value of `χ̂ − N` for the convex indicator of the chain:
/// zero off the strip, `χ̂ − Σ⁺/ε` on it.
pub fn predicted_residual(x: [f64; 2], chain: &HyperplaneChain, eps: f64, chi_hat: &RegionSpec) -> Result<f64> {
    check_eps(eps)?;
    let (label, sum) = classify_values(&x, chain, eps);
    match label {
        TransitionLabel::OmegaHat1 | TransitionLabel::OmegaHat3 => Ok(0.0),
        TransitionLabel::Upsilon1(_) | TransitionLabel::Upsilon2(_) => Ok(chi_hat.indicator(&x) - sum / eps),
        TransitionLabel::Unknown { .. } => Err(Error::AmbiguousChain(format!("{label} at {x:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AxisBox;

    fn wedge() -> HyperplaneChain {
        HyperplaneChain::open(vec![
            Hyperplane::new(vec![1.0, 0.0], 0.6).unwrap(),
            Hyperplane::new(vec![0.0, 1.0], 0.6).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn wedge_labels() {
        let c = wedge();
        assert_eq!(classify_transition([0.65, 0.3], &c, 0.1).unwrap(), TransitionLabel::Upsilon1(1));
        assert_eq!(classify_transition([0.3, 0.65], &c, 0.1).unwrap(), TransitionLabel::Upsilon1(2));
        assert_eq!(classify_transition([0.63, 0.64], &c, 0.1).unwrap(), TransitionLabel::Upsilon2(1));
        assert_eq!(classify_transition([0.9, 0.9], &c, 0.1).unwrap(), TransitionLabel::OmegaHat3);
        assert_eq!(classify_transition([0.2, 0.2], &c, 0.1).unwrap(), TransitionLabel::OmegaHat1);
    }

    #[test]
    fn wedge_residuals() {
        let c = wedge();
        let bx = AxisBox::unit(2);
        let chi = RegionSpec::halfspaces(bx, c.planes().to_vec()).unwrap().complement();
        assert!((predicted_residual([0.65, 0.3], &c, 0.1, &chi).unwrap() - 0.5).abs() < 1e-12);
        assert!((predicted_residual([0.63, 0.64], &c, 0.1, &chi).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(predicted_residual([0.1, 0.5], &c, 0.1, &chi).unwrap(), 0.0);
    }

    #[test]
    fn non_adjacent_planes_are_reported() {
        let planes = vec![
            Hyperplane::new(vec![1.0, 0.0], 0.5).unwrap(),
            Hyperplane::new(vec![0.0, 1.0], 0.5).unwrap(),
            Hyperplane::new(vec![-1.0, 0.0], 0.5).unwrap(),
        ];
        let open = HyperplaneChain::open(planes.clone()).unwrap();
        let closed = HyperplaneChain::closed(planes).unwrap();
        // planes 1 and 3 both positive only in a degenerate layout; shift them
        let x = [0.0, 0.0];
        assert_eq!(classify_transition(x, &open, 0.1).unwrap(), TransitionLabel::OmegaHat1);
        let tight = HyperplaneChain::open(vec![
            Hyperplane::new(vec![1.0, 0.0], -0.01).unwrap(),
            Hyperplane::new(vec![0.0, 1.0], 0.5).unwrap(),
            Hyperplane::new(vec![-1.0, 0.0], -0.01).unwrap(),
        ])
        .unwrap();
        let label = classify_transition(x, &tight, 0.1).unwrap();
        assert_eq!(label, TransitionLabel::Unknown { positive: vec![1, 3] });
        let chi = RegionSpec::everything(AxisBox::unit(2));
        assert!(matches!(predicted_residual(x, &tight, 0.1, &chi), Err(Error::AmbiguousChain(_))));
        assert_eq!(closed.junction(0, 2), Some(2));
        assert_eq!(open.junction(0, 2), None);
    }
}
