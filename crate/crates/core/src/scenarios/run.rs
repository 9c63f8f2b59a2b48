use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::presets::{build, BuiltScenario, Scenario};
use crate::analysis::{
    lp_error_exact2d, lp_error_mc, strip_measure_2d, transition_measure, verify_bound, write_csv, ErrorReport,
    StripMeasure,
};
use crate::error::{invalid, Result};
use crate::geometry::{symm_diff_measure, AxisBox};
use crate::io::{
    breakline_geometry, render_breaklines, render_field, sample_field, save_field, save_network, write_json,
    GridField, HyperplaneSetDoc,
};
use crate::network::{restrict_to_slice, ReluNetwork};
use crate::sampling::DEFAULT_SEED;

const P_VALUES: [u32; 2] = [1, 2];

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Monte Carlo samples for error estimates; `None` picks a per-scenario default.
    pub samples: Option<usize>,
    /// Samples for the transition-strip measure; `None` uses `samples`.
    pub strip_samples: Option<usize>,
    /// Field resolution per axis.
    pub resolution: usize,
    pub seed: u64,
    /// Root directory for artifacts; nothing is written when `None`.
    pub out_dir: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { samples: None, strip_samples: None, resolution: 512, seed: DEFAULT_SEED, out_dir: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub preset: String,
    pub shape: String,
    pub eps: f64,
    pub errors: Vec<ErrorReport>,
    pub strip: StripMeasure,
    /// `|χ ≠ χ̂|`, from the closed form or a Monte Carlo estimate.
    pub target_gap: f64,
    pub artifacts: Vec<PathBuf>,
    /// Kept out of `report.json` so that artifacts are reproducible.
    #[serde(skip)]
    pub timings: Vec<Timing>,
    pub warnings: Vec<String>,
}

impl ScenarioReport {
    /// True when every error row that carries a verdict passed.
    pub fn all_pass(&self) -> bool {
        self.errors.iter().all(|r| r.pass != Some(false))
    }
}

struct Clock(Vec<Timing>);

impl Clock {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f()?;
        self.0.push(Timing { stage: stage.to_string(), seconds: t.elapsed().as_secs_f64() });
        Ok(out)
    }
}

fn default_samples(b: &BuiltScenario) -> usize {
    if b.ambient.dim() > 3 {
        10_000
    } else {
        1_000_000
    }
}

pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    if opts.resolution == 0 {
        return Err(invalid("field resolution must be positive"));
    }
    let mut clock = Clock(Vec::new());
    let built = clock.time("build", || build(s))?;
    let samples = opts.samples.unwrap_or_else(|| default_samples(&built));
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let strip_samples = opts.strip_samples.unwrap_or(samples);
    let label = s.label();
    let eps = s.eps();
    let net = &built.construction.network;

    let strip = clock.time("strip", || match &built.chain {
        Some(chain) => strip_measure_2d(chain, eps, &built.ambient, strip_samples, opts.seed),
        None => transition_measure(&built.construction.parts, eps, &built.ambient, strip_samples, opts.seed),
    })?;
    let target_gap = match built.target_gap {
        Some(g) => g,
        None => {
            let (m, hw) = symm_diff_measure(&built.chi, &built.chi_hat, samples, opts.seed)?;
            m + 3.0 * hw
        }
    };

    let errors = clock.time("errors", || {
        let mut rows = Vec::new();
        for p in P_VALUES {
            let mut r = if built.ambient.dim() == 2 {
                lp_error_exact2d(net, &built.chi_hat, &built.interface, p, &built.ambient)?
            } else {
                lp_error_mc(|x| built.chi_hat.indicator(x), |x| net.eval_point(x), p as f64, &built.ambient, samples, opts.seed)?
            };
            r = r.with_scenario(label.clone()).with_eps(eps);
            verify_bound(&mut r, &strip);
            rows.push(r);
        }
        if target_gap > 0.0 {
            for p in P_VALUES {
                let p = p as f64;
                let mut r = lp_error_mc(|x| built.chi.indicator(x), |x| net.eval_point(x), p, &built.ambient, samples, opts.seed)?
                    .with_scenario(format!("{label}/chi"))
                    .with_eps(eps);
                // ‖χ − N‖_p ≤ ‖χ − χ̂‖_p + ‖χ̂ − N‖_p
                let strip_hi = strip.estimate + 3.0 * strip.half_width_95;
                let bound = target_gap.powf(1.0 / p) + strip_hi.powf(1.0 / p);
                r.bound = Some(bound);
                r.pass = Some(r.estimate <= bound + 3.0 * r.half_width_95);
                rows.push(r);
            }
        }
        Ok(rows)
    })?;

    let mut report = ScenarioReport {
        name: s.name().to_string(),
        preset: s.preset(),
        shape: built.construction.shape.clone(),
        eps,
        errors,
        strip,
        target_gap,
        artifacts: Vec::new(),
        timings: Vec::new(),
        warnings: built.construction.warnings.clone(),
    };
    if let Some(root) = &opts.out_dir {
        let dir = root.join(s.name()).join(s.preset());
        report.artifacts = clock.time("artifacts", || write_artifacts(&dir, &built, &report, opts.resolution))?;
        write_json(&dir.join("report.json"), &report)?;
        report.artifacts.push(dir.join("report.json"));
    }
    report.timings = clock.0;
    Ok(report)
}

#[derive(Serialize)]
struct ConstructionDoc<'a> {
    scenario: &'a Scenario,
    shape: &'a str,
    provenance: &'a crate::construct::Provenance,
    warnings: &'a [String],
}

/// The planar network, box and grid used for fields and break lines.
fn planar_view(b: &BuiltScenario) -> Result<(ReluNetwork, AxisBox)> {
    match &b.slice {
        None => Ok((b.construction.network.clone(), b.ambient.clone())),
        Some(s) => {
            let net = restrict_to_slice(&b.construction.network, &s.axes, &s.fixed)?;
            let bx = AxisBox::new(s.axes.iter().map(|&a| b.ambient.lo[a]).collect(), s.axes.iter().map(|&a| b.ambient.hi[a]).collect())?;
            Ok((net, bx))
        }
    }
}

fn write_artifacts(dir: &Path, b: &BuiltScenario, report: &ScenarioReport, resolution: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    let mut put = |name: &str| {
        let p = dir.join(name);
        out.push(p.clone());
        p
    };

    save_network(&put("network.json"), &b.construction.network)?;
    let doc = ConstructionDoc {
        scenario: &b.scenario,
        shape: &b.construction.shape,
        provenance: &b.construction.provenance,
        warnings: &b.construction.warnings,
    };
    write_json(&put("construction.json"), &doc)?;
    if let Some(facets) = &b.facets {
        write_json(&put("facets.json"), &HyperplaneSetDoc::from_planes(facets))?;
    }
    write_csv(fs::File::create(put("errors.csv"))?, &report.errors)?;

    let (net2, bx2) = planar_view(b)?;
    let sampled = sample_field(&net2, &bx2, [resolution, resolution], None)?;
    let field = GridField::new(sampled.bx, sampled.resolution, sampled.values, b.slice.clone())?;
    save_field(&put("field.txt"), &field)?;
    fs::write(put("field.svg"), render_field(&field)?)?;

    let lines = breakline_geometry(&net2, &bx2)?;
    write_json(&put("breaklines.json"), &lines)?;
    fs::write(put("breaklines.svg"), render_breaklines(&lines)?)?;
    Ok(out)
}
