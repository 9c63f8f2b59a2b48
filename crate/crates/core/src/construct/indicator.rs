use crate::error::{invalid, Error, Result};
use crate::geometry::{AxisBox, Hyperplane};
use crate::network::{AffineLayer, Layer, ReluNetwork};

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(invalid(format!("epsilon must be positive and finite, got {eps}")));
    }
    Ok(())
}

fn face_layer(hs: &[Hyperplane]) -> Result<Layer> {
    let first = hs.first().ok_or_else(|| invalid("hyperplane list is empty"))?;
    let d = first.dim();
    let mut rows = Vec::with_capacity(hs.len());
    let mut biases = Vec::with_capacity(hs.len());
    for h in hs {
        if h.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: h.dim() });
        }
        rows.push(h.normal().nonzeros().filter(|(_, v)| *v != 0.0).collect());
        biases.push(h.offset());
    }
    Layer::auto(d, rows, biases)
}

fn scalar(w: f64, b: f64) -> Layer {
    Layer::Dense(AffineLayer::new(1, 1, vec![w], vec![b]).expect("finite scalar layer"))
}

fn sum_layer(n: usize, eps: f64) -> Result<Layer> {
    let w = -1.0 / eps;
    if !w.is_finite() {
        return Err(invalid(format!("epsilon {eps} is too small to invert")));
    }
    Ok(Layer::Dense(AffineLayer::new(1, n, vec![w; n], vec![-1.0])?))
}

/// `1 − σ(1 − (1/ε) Σ σ(aᵢ·x − bᵢ))`: zero where every `aᵢ·x < bᵢ`, one once
/// the sum of violations reaches `ε`. Normals should point away from the
/// zero region.
pub fn convex_indicator(hs: &[Hyperplane], eps: f64) -> Result<ReluNetwork> {
    check_eps(eps)?;
    let l1 = face_layer(hs)?;
    ReluNetwork::new(l1, sum_layer(hs.len(), eps)?, scalar(-1.0, -1.0))
}

/// Single-plane case of [`convex_indicator`]: a ramp from 0 at `a·x = b` to 1
/// at `a·x − b = ε`.
pub fn halfspace_ramp(h: &Hyperplane, eps: f64) -> Result<ReluNetwork> {
    convex_indicator(std::slice::from_ref(h), eps)
}

/// `σ(1 − (1/ε) Σ σ(aᵢ·x − bᵢ))`: one inside the polytope with outward faces
/// `hs`, decaying to zero across an `ε` band outside it.
pub fn region_indicator(hs: &[Hyperplane], eps: f64) -> Result<ReluNetwork> {
    check_eps(eps)?;
    let l1 = face_layer(hs)?;
    ReluNetwork::new(l1, sum_layer(hs.len(), eps)?, scalar(1.0, 0.0))
}

/// Largest value of `Σ σ(aᵢ·x − bᵢ)` over the box: exact for `d ≤ 16` (the
/// sum is convex, so a corner attains it), otherwise an upper bound.
pub(crate) fn max_violation(hs: &[Hyperplane], bx: &AxisBox) -> f64 {
    let d = bx.dim();
    if d <= 16 {
        let mut x = vec![0.0; d];
        (0u32..1 << d)
            .map(|mask| {
                for (j, v) in x.iter_mut().enumerate() {
                    *v = if mask >> j & 1 == 1 { bx.hi[j] } else { bx.lo[j] };
                }
                hs.iter().map(|h| h.eval(&x).max(0.0)).sum::<f64>()
            })
            .fold(0.0, f64::max)
    } else {
        hs.iter()
            .map(|h| {
                let top: f64 = h.normal().nonzeros().map(|(j, a)| (a * bx.lo[j]).max(a * bx.hi[j])).sum();
                (top - h.offset()).max(0.0)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wedge() -> Vec<Hyperplane> {
        vec![Hyperplane::new(vec![1.0, 0.0], 0.6).unwrap(), Hyperplane::new(vec![0.0, 1.0], 0.6).unwrap()]
    }

    #[test]
    fn ramp_profile() {
        let h = Hyperplane::new(vec![1.0, 0.0], 0.5).unwrap();
        let n = halfspace_ramp(&h, 0.1).unwrap();
        assert_eq!(n.shape_string(), "2\u{2013}1\u{2013}1\u{2013}1");
        assert!((n.eval(&[0.55, 0.3]).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(n.eval(&[0.5, 0.9]).unwrap(), 0.0);
        assert_eq!(n.eval(&[0.2, 0.9]).unwrap(), 0.0);
        assert_eq!(n.eval(&[0.9, 0.9]).unwrap(), 1.0);
        // a·x − b = ε with every step exact
        let n = halfspace_ramp(&h, 0.25).unwrap();
        assert_eq!(n.eval(&[0.75, 0.1]).unwrap(), 1.0);
        assert!(halfspace_ramp(&h, 0.0).is_err());
        assert!(halfspace_ramp(&h, f64::NAN).is_err());
    }

    #[test]
    fn wedge_values() {
        let n = convex_indicator(&wedge(), 0.1).unwrap();
        assert!((n.eval(&[0.65, 0.3]).unwrap() - 0.5).abs() < 1e-12);
        assert!((n.eval(&[0.63, 0.64]).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(n.eval(&[0.1, 0.59]).unwrap(), 0.0);
        assert!(convex_indicator(&[], 0.1).is_err());
    }

    #[test]
    fn region_form_is_complement_near_single_polytope() {
        let n = region_indicator(&wedge(), 0.1).unwrap();
        let m = convex_indicator(&wedge(), 0.1).unwrap();
        for k in 0..40 {
            let x = [k as f64 * 0.025, 1.0 - k as f64 * 0.02];
            assert!((n.eval(&x).unwrap() + m.eval(&x).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn violation_bound() {
        let bx = AxisBox::unit(2);
        assert!((max_violation(&wedge(), &bx) - 0.8).abs() < 1e-15);
    }
}
