//! The worked examples as named presets: build the network, measure its
//! error, and write artifacts under `<out>/<scenario>/<preset>/`.

mod presets;
mod run;

pub use presets::{build, h_shape_fixture, BuiltScenario, HShapeMethod, Scenario};
pub use run::{run_scenario, RunOptions, ScenarioReport, Timing};

use crate::error::Result;

pub fn circle_example(n: usize, eps: f64, opts: &RunOptions) -> Result<ScenarioReport> {
    run_scenario(&Scenario::Circle { n, eps }, opts)
}

pub fn sphere_example(n: usize, eps: f64, opts: &RunOptions) -> Result<ScenarioReport> {
    run_scenario(&Scenario::Sphere { n, eps }, opts)
}

pub fn hypercube_example(d: usize, eps: f64, opts: &RunOptions) -> Result<ScenarioReport> {
    run_scenario(&Scenario::Hypercube { d, eps }, opts)
}

pub fn hshape_example(method: HShapeMethod, eps: f64, opts: &RunOptions) -> Result<ScenarioReport> {
    run_scenario(&Scenario::HShape { method, eps }, opts)
}
