use super::region::RegionSpec;
use crate::error::{invalid, Result};
use crate::sampling::sample_moments;

/// Monte Carlo estimate of `|A∖B| + |B∖A|` with its 95% half-width.
pub fn symm_diff_measure(a: &RegionSpec, b: &RegionSpec, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(invalid("symmetric difference needs at least one sample"));
    }
    if a.ambient() != b.ambient() {
        return Err(invalid("regions live in different ambient boxes"));
    }
    let vol = a.ambient().volume();
    let m = sample_moments(a.ambient(), samples, seed, |x| {
        Some(if a.contains(x) != b.contains(x) { 1.0 } else { 0.0 })
    })
    .expect("indicator samples are finite");
    // Binomial proportion: variance p(1 − p)/n.
    let p = m.mean();
    let hw = 1.96 * (p * (1.0 - p) / samples as f64).sqrt();
    Ok((vol * p, vol * hw))
}
