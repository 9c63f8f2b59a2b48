use rayon::prelude::*;

use super::report::{ErrorReport, Method};
use crate::error::{invalid, Error, Result};
use crate::geometry::AxisBox;
use crate::sampling::sample_moments;

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(invalid(format!("p must be finite and at least 1, got {p}")));
    }
    Ok(())
}

/// Monte Carlo estimate of `‖f − g‖_{L^p(box)}` with a 95% half-width from the
/// delta method.
pub fn lp_error_mc<F, G>(f: F, g: G, p: f64, bx: &AxisBox, samples: usize, seed: u64) -> Result<ErrorReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> f64 + Sync,
{
    check_p(p)?;
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let m = sample_moments(bx, samples, seed, |x| {
        let d = (f(x) - g(x)).abs().powf(p);
        d.is_finite().then_some(d)
    })
    .map_err(|i| Error::NonFinite(format!("sample {i}")))?;
    let vol = bx.volume();
    Ok(ErrorReport::new(Method::Mc, p, vol * m.mean(), vol * m.half_width_95(), samples as u64))
}

/// Midpoint-rule estimate of `‖f − g‖_{L^p(box)}` on a tensor grid with
/// `resolution` cells per axis, for `d ≤ 3`.
pub fn lp_error_grid<F, G>(f: F, g: G, p: f64, bx: &AxisBox, resolution: usize) -> Result<ErrorReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> f64 + Sync,
{
    check_p(p)?;
    let d = bx.dim();
    if d > 3 {
        return Err(Error::Unsupported(format!("grid quadrature is limited to d <= 3, got {d}")));
    }
    if resolution < 2 {
        return Err(invalid("grid resolution must be at least 2"));
    }
    let h: Vec<f64> = (0..d).map(|k| (bx.hi[k] - bx.lo[k]) / resolution as f64).collect();
    let mid = |k: usize, i: usize| bx.lo[k] + (i as f64 + 0.5) * h[k];
    let inner = resolution.pow(d as u32 - 1);
    let rows: Vec<Result<f64>> = (0..resolution)
        .into_par_iter()
        .map(|i0| {
            let mut x = vec![0.0; d];
            x[0] = mid(0, i0);
            let mut sum = 0.0;
            for r in 0..inner {
                let mut rest = r;
                for (k, xk) in x.iter_mut().enumerate().skip(1) {
                    *xk = mid(k, rest % resolution);
                    rest /= resolution;
                }
                let v = (f(&x) - g(&x)).abs().powf(p);
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("grid point {x:?}")));
                }
                sum += v;
            }
            Ok(sum)
        })
        .collect();
    let mut total = 0.0;
    for r in rows {
        total += r?;
    }
    let cell: f64 = h.iter().product();
    Ok(ErrorReport::new(Method::Grid, p, total * cell, 0.0, resolution as u64))
}
