use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::analysis::HyperplaneChain;
use crate::construct::{
    convex_construction, decomposition_composite, detect_shared_faces, hull_composite, ConstructionReport,
    DEFAULT_MAX_RECURSION,
};
use crate::error::{invalid, Result};
use crate::geometry::polygon::SimplePolygon;
use crate::geometry::{
    convex_decomposition_2d, inscribed_gap_area, octant_spiral_points, polygonalize_circle_inscribed,
    polygonalize_convex_tangent, sphere, AxisBox, Hyperplane, RegionSpec,
};
use crate::io::SliceMeta;
use crate::network::Line2;

pub const CIRCLE_CENTER: [f64; 2] = [0.5, 0.5];
pub const CIRCLE_RADIUS: f64 = 0.25;
pub const SPHERE_RADIUS: f64 = 0.7;
pub const SPHERE_SLICE_Z: f64 = 0.205;
pub const HYPERCUBE_SLICE: f64 = 0.255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HShapeMethod {
    Hull,
    Decomposition,
}

impl fmt::Display for HShapeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HShapeMethod::Hull => "hull",
            HShapeMethod::Decomposition => "decomposition",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "scenario", rename_all = "lowercase")]
pub enum Scenario {
    Circle { n: usize, eps: f64 },
    Sphere { n: usize, eps: f64 },
    Hypercube { d: usize, eps: f64 },
    #[serde(rename = "hshape")]
    HShape { method: HShapeMethod, eps: f64 },
}

/// `1/ε` when that is an integer, else `ε` itself.
fn eps_tag(eps: f64) -> String {
    let inv = 1.0 / eps;
    if (inv - inv.round()).abs() < 1e-9 * inv {
        format!("{}", inv.round() as u64)
    } else {
        format!("{eps}")
    }
}

impl Scenario {
    /// The ten named presets.
    pub fn presets() -> Vec<Scenario> {
        use HShapeMethod::*;
        vec![
            Scenario::Circle { n: 6, eps: 1.0 / 25.0 },
            Scenario::Circle { n: 50, eps: 1.0 / 2000.0 },
            Scenario::Sphere { n: 9, eps: 1.0 / 15.0 },
            Scenario::Sphere { n: 100, eps: 1.0 / 100.0 },
            Scenario::Hypercube { d: 10_000, eps: 1.0 / 20.0 },
            Scenario::Hypercube { d: 10_000, eps: 1.0 / 200.0 },
            Scenario::HShape { method: Hull, eps: 1.0 / 12.0 },
            Scenario::HShape { method: Hull, eps: 1.0 / 200.0 },
            Scenario::HShape { method: Decomposition, eps: 1.0 / 12.0 },
            Scenario::HShape { method: Decomposition, eps: 1.0 / 200.0 },
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Circle { .. } => "circle",
            Scenario::Sphere { .. } => "sphere",
            Scenario::Hypercube { .. } => "hypercube",
            Scenario::HShape { .. } => "hshape",
        }
    }

    /// Directory name of the preset, e.g. `n6` or `hull_eps12`.
    pub fn preset(&self) -> String {
        match self {
            Scenario::Circle { n, .. } | Scenario::Sphere { n, .. } => format!("n{n}"),
            Scenario::Hypercube { d, eps } => format!("d{d}_eps{}", eps_tag(*eps)),
            Scenario::HShape { method, eps } => format!("{method}_eps{}", eps_tag(*eps)),
        }
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.name(), self.preset())
    }

    pub fn eps(&self) -> f64 {
        match self {
            Scenario::Circle { eps, .. }
            | Scenario::Sphere { eps, .. }
            | Scenario::Hypercube { eps, .. }
            | Scenario::HShape { eps, .. } => *eps,
        }
    }
}

/// A constructed preset with everything needed to analyse it.
#[derive(Clone, Debug)]
pub struct BuiltScenario {
    pub scenario: Scenario,
    pub construction: ConstructionReport,
    pub ambient: AxisBox,
    /// Indicator of the polyhedral target, 1 on the side the network ramps to.
    pub chi_hat: RegionSpec,
    /// Indicator of the exact target.
    pub chi: RegionSpec,
    /// `|χ ≠ χ̂|` when known in closed form.
    pub target_gap: Option<f64>,
    /// Ordered chain of a convex planar construction.
    pub chain: Option<HyperplaneChain>,
    /// Lines across which `chi_hat` jumps, for planar exact integration.
    pub interface: Vec<Line2>,
    /// Total length of the polyhedral interface in the plane.
    pub interface_length: Option<f64>,
    /// Planar slice used for fields and break lines when `d > 2`.
    pub slice: Option<SliceMeta>,
    /// Input faces, recorded for the sphere preset.
    pub facets: Option<Vec<Hyperplane>>,
}

/// The H-shaped region: two legs `[±0.5, ±1.5] × [−1.5, 1.5]` joined by the
/// crossbar `[−0.5, 0.5]²`, inside `(−2, 2)²`.
pub fn h_shape_fixture() -> SimplePolygon {
    SimplePolygon::new(vec![
        [-1.5, -1.5],
        [-0.5, -1.5],
        [-0.5, -0.5],
        [0.5, -0.5],
        [0.5, -1.5],
        [1.5, -1.5],
        [1.5, 1.5],
        [0.5, 1.5],
        [0.5, 0.5],
        [-0.5, 0.5],
        [-0.5, 1.5],
        [-1.5, 1.5],
    ])
    .expect("H fixture is a simple polygon")
}

fn lines(hs: &[Hyperplane]) -> Vec<Line2> {
    hs.iter().map(|h| (h.normal2(), h.offset())).collect()
}

pub fn build(s: &Scenario) -> Result<BuiltScenario> {
    match *s {
        Scenario::Circle { n, eps } => {
            if n < 3 {
                return Err(invalid(format!("circle preset needs n >= 3, got {n}")));
            }
            let ambient = AxisBox::unit(2);
            let hs = polygonalize_circle_inscribed(CIRCLE_CENTER, CIRCLE_RADIUS, n)?;
            let construction = convex_construction(&hs, &ambient, eps)?;
            let c = CIRCLE_CENTER;
            Ok(BuiltScenario {
                scenario: *s,
                chi_hat: RegionSpec::halfspaces(ambient.clone(), hs.clone())?.complement(),
                chi: RegionSpec::from_fn(ambient.clone(), move |x| {
                    (x[0] - c[0]).hypot(x[1] - c[1]) >= CIRCLE_RADIUS
                }),
                target_gap: Some(inscribed_gap_area(CIRCLE_RADIUS, n)),
                chain: Some(HyperplaneChain::closed(hs.clone())?),
                interface: lines(&hs),
                interface_length: Some(2.0 * n as f64 * CIRCLE_RADIUS * (PI / n as f64).sin()),
                slice: None,
                facets: None,
                construction,
                ambient,
            })
        }
        Scenario::Sphere { n, eps } => {
            if n == 0 {
                return Err(invalid("sphere preset needs at least one facet"));
            }
            let ambient = AxisBox::unit(3);
            let (f, g) = sphere(vec![0.0; 3], SPHERE_RADIUS);
            let hs = polygonalize_convex_tangent(f, g, &octant_spiral_points(SPHERE_RADIUS, n))?;
            let construction = convex_construction(&hs, &ambient, eps)?;
            Ok(BuiltScenario {
                scenario: *s,
                chi_hat: RegionSpec::halfspaces(ambient.clone(), hs.clone())?.complement(),
                chi: RegionSpec::from_fn(ambient.clone(), |x| x.iter().map(|v| v * v).sum::<f64>() >= SPHERE_RADIUS * SPHERE_RADIUS),
                target_gap: None,
                chain: None,
                interface: Vec::new(),
                interface_length: None,
                slice: Some(SliceMeta { axes: vec![0, 1], fixed: vec![0.0, 0.0, SPHERE_SLICE_Z] }),
                facets: Some(hs),
                construction,
                ambient,
            })
        }
        Scenario::Hypercube { d, eps } => {
            if d < 2 {
                return Err(invalid(format!("hypercube preset needs d >= 2, got {d}")));
            }
            let ambient = AxisBox::unit(d);
            let hs = (0..d).map(|i| Hyperplane::axis(d, i, 1.0, 0.5)).collect::<Result<Vec<_>>>()?;
            let construction = convex_construction(&hs, &ambient, eps)?;
            let chi_hat = RegionSpec::from_fn(ambient.clone(), |x| x.iter().any(|v| *v > 0.5));
            let mut fixed = vec![HYPERCUBE_SLICE; d];
            fixed[0] = 0.0;
            fixed[1] = 0.0;
            Ok(BuiltScenario {
                scenario: *s,
                chi: chi_hat.clone(),
                chi_hat,
                target_gap: Some(0.0),
                chain: None,
                interface: Vec::new(),
                interface_length: None,
                slice: Some(SliceMeta { axes: vec![0, 1], fixed }),
                facets: None,
                construction,
                ambient,
            })
        }
        Scenario::HShape { method, eps } => {
            let ambient = AxisBox::cube(2, -2.0, 2.0)?;
            let poly = h_shape_fixture();
            let construction = match method {
                HShapeMethod::Hull => hull_composite(&poly, &ambient, eps, DEFAULT_MAX_RECURSION)?,
                HShapeMethod::Decomposition => {
                    let pieces = convex_decomposition_2d(&poly, &ambient)?;
                    let shared = detect_shared_faces(&pieces, &ambient)?;
                    decomposition_composite(&pieces, &shared, &ambient, eps)?
                }
            };
            let interface = poly
                .edges()
                .map(|(a, b)| {
                    let n = [b[1] - a[1], a[0] - b[0]];
                    (n, n[0] * a[0] + n[1] * a[1])
                })
                .collect();
            let length = poly.edges().map(|(a, b)| (b[0] - a[0]).hypot(b[1] - a[1])).sum();
            let chi_hat = RegionSpec::polygon(ambient.clone(), poly)?.complement();
            Ok(BuiltScenario {
                scenario: *s,
                chi: chi_hat.clone(),
                chi_hat,
                target_gap: Some(0.0),
                chain: None,
                interface,
                interface_length: Some(length),
                slice: None,
                facets: None,
                construction,
                ambient,
            })
        }
    }
}
