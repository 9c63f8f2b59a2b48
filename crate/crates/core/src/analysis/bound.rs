use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use super::report::ErrorReport;
use super::transition::{classify_transition, HyperplaneChain, TransitionLabel};
use crate::construct::{check_eps, Part};
use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::AxisBox;
use crate::sampling::sample_moments;

/// Default sample count for strip measures.
pub const STRIP_SAMPLES: usize = 10_000_000;

/// Monte Carlo area or volume of a transition region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StripMeasure {
    pub estimate: f64,
    pub half_width_95: f64,
    pub samples: u64,
    /// Samples that fell into an unclassifiable cell.
    pub unknown: u64,
}

/// Area of the points of `bx` labelled `Upsilon1` or `Upsilon2`.
pub fn strip_measure_2d(chain: &HyperplaneChain, eps: f64, bx: &AxisBox, samples: usize, seed: u64) -> Result<StripMeasure> {
    check_dim(2, bx.dim())?;
    check_eps(eps)?;
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let unknown = AtomicU64::new(0);
    let m = sample_moments(bx, samples, seed, |x| {
        let l = classify_transition([x[0], x[1]], chain, eps).ok()?;
        if matches!(l, TransitionLabel::Unknown { .. }) {
            unknown.fetch_add(1, Ordering::Relaxed);
        }
        Some(l.in_strip() as u8 as f64)
    })
    .map_err(|i| Error::NonFinite(format!("sample {i}")))?;
    let vol = bx.volume();
    Ok(StripMeasure {
        estimate: vol * m.mean(),
        half_width_95: vol * m.half_width_95(),
        samples: samples as u64,
        unknown: unknown.into_inner(),
    })
}

/// Measure of the union over parts of `{0 < Σσ(faces) < ε}`, in any dimension.
/// For a single convex chain this is the same set as the Υ cells.
pub fn transition_measure(parts: &[Part], eps: f64, bx: &AxisBox, samples: usize, seed: u64) -> Result<StripMeasure> {
    check_eps(eps)?;
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    for part in parts {
        for f in &part.faces {
            check_dim(bx.dim(), f.dim())?;
        }
    }
    let m = sample_moments(bx, samples, seed, |x| {
        let inside = parts.iter().any(|part| {
            let s: f64 = part.faces.iter().map(|f| f.eval(x).max(0.0)).sum();
            s > 0.0 && s < eps
        });
        Some(inside as u8 as f64)
    })
    .map_err(|i| Error::NonFinite(format!("sample {i}")))?;
    let vol = bx.volume();
    Ok(StripMeasure {
        estimate: vol * m.mean(),
        half_width_95: vol * m.half_width_95(),
        samples: samples as u64,
        unknown: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub pass: bool,
    /// `estimate^p`.
    pub lhs: f64,
    /// `strip + 3 (CI of lhs + CI of strip)`.
    pub rhs: f64,
    /// `rhs − lhs`; negative on failure.
    pub margin: f64,
}

/// Check `‖χ̂ − N‖_p^p ≤ |Ω̂_ε|` allowing three half-widths of slack on each
/// side. Records the comparator and verdict on the report.
pub fn verify_bound(report: &mut ErrorReport, strip: &StripMeasure) -> BoundCheck {
    let lhs = report.power;
    let rhs = strip.estimate + 3.0 * (report.power_half_width + strip.half_width_95);
    let pass = lhs <= rhs;
    report.bound = Some(strip.estimate.max(0.0).powf(1.0 / report.p));
    report.pass = Some(pass);
    BoundCheck { pass, lhs, rhs, margin: rhs - lhs }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<(f64, f64)>,
}

/// Least-squares slope of `log error` against `log ε`. Needs at least three
/// values of `ε` spanning two decades, and positive finite errors.
pub fn scaling_study<F>(eps_list: &[f64], mut error_at: F) -> Result<ScalingFit>
where
    F: FnMut(f64) -> Result<f64>,
{
    if eps_list.len() < 3 {
        return Err(invalid("scaling study needs at least three epsilon values"));
    }
    for &e in eps_list {
        check_eps(e)?;
    }
    let (lo, hi) = eps_list.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &e| (a.min(e), b.max(e)));
    if (hi / lo).log10() < 2.0 - 1e-9 {
        return Err(invalid("epsilon values must span at least two decades"));
    }
    let mut points = Vec::with_capacity(eps_list.len());
    for &e in eps_list {
        let err = error_at(e)?;
        if !(err.is_finite() && err > 0.0) {
            return Err(Error::Degenerate(format!("error {err} at epsilon {e} cannot be fitted on a log scale")));
        }
        points.push((e, err));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::Degenerate("epsilon values are all equal".into()));
    }
    let slope = sxy / sxx;
    Ok(ScalingFit { slope, intercept: my - slope * mx, points })
}

/// Ratio `|Ω̂_ε| / (|Γ̂| ε)` reported next to the bound.
pub fn strip_ratio(strip: &StripMeasure, interface_length: f64, eps: f64) -> f64 {
    strip.estimate / (interface_length * eps)
}
