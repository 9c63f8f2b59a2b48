use std::io::Write;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Grid,
    Exact2d,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Mc => "mc",
            Method::Grid => "grid",
            Method::Exact2d => "exact2d",
        }
    }
}

/// Estimate of `‖f − g‖_{L^p}` over a box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub scenario: String,
    pub p: f64,
    pub eps: Option<f64>,
    pub method: Method,
    pub estimate: f64,
    /// 95% half-width of `estimate`; zero for deterministic methods.
    pub half_width_95: f64,
    /// `estimate^p`, the integral of `|f − g|^p`.
    pub power: f64,
    /// 95% half-width of `power`.
    pub power_half_width: f64,
    /// `|Ω̂_ε|^{1/p}` when a strip measure is attached.
    pub bound: Option<f64>,
    pub samples_or_resolution: u64,
    pub pass: Option<bool>,
}

pub const CSV_HEADER: [&str; 8] = ["scenario", "p", "eps", "method", "estimate", "ci", "bound", "pass"];

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

impl ErrorReport {
    pub(crate) fn new(method: Method, p: f64, power: f64, power_half_width: f64, n: u64) -> Self {
        let estimate = power.powf(1.0 / p);
        let half_width_95 = if power > 0.0 { power_half_width * estimate / (p * power) } else { 0.0 };
        Self {
            scenario: String::new(),
            p,
            eps: None,
            method,
            estimate,
            half_width_95,
            power,
            power_half_width,
            bound: None,
            samples_or_resolution: n,
            pass: None,
        }
    }

    pub fn with_scenario(mut self, name: impl Into<String>) -> Self {
        self.scenario = name.into();
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    /// One CSV record, floats written with 17 significant digits.
    pub fn csv_record(&self) -> [String; 8] {
        [
            self.scenario.clone(),
            num(self.p),
            self.eps.map(num).unwrap_or_default(),
            self.method.as_str().to_string(),
            num(self.estimate),
            num(self.half_width_95),
            self.bound.map(num).unwrap_or_default(),
            self.pass.map(|b| b.to_string()).unwrap_or_default(),
        ]
    }
}

pub fn write_csv<W: Write>(w: W, reports: &[ErrorReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in reports {
        out.write_record(r.csv_record())?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_csv_string(reports: &[ErrorReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, reports)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
