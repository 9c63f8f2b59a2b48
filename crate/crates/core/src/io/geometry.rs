use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::docs::HyperplaneSetDoc;
use crate::construct::{
    convex_construction, decomposition_composite, detect_shared_faces, hull_composite, ConstructionReport,
    DEFAULT_MAX_RECURSION,
};
use crate::error::{invalid, Error, Result};
use crate::geometry::polygon::{Point2, SimplePolygon};
use crate::geometry::{convex_decomposition_2d, AxisBox, RegionSpec};

/// Input geometry for the command-line tools: a region inside a box. The
/// constructed network approximates the indicator of the complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeometryDoc {
    /// Convex region `{x : normals[i]·x < offsets[i] ∀ i}`.
    Halfspaces {
        #[serde(rename = "box")]
        bx: AxisBox,
        #[serde(flatten)]
        planes: HyperplaneSetDoc,
    },
    /// Simple polygon, vertices in either orientation.
    Polygon {
        #[serde(rename = "box")]
        bx: AxisBox,
        vertices: Vec<Point2>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Convex,
    Hull,
    Decomposition,
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Self::Convex),
            "hull" => Ok(Self::Hull),
            "decomposition" => Ok(Self::Decomposition),
            _ => Err(invalid(format!("unknown construction '{s}'"))),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Convex => "convex",
            Self::Hull => "hull",
            Self::Decomposition => "decomposition",
        })
    }
}

impl GeometryDoc {
    pub fn ambient(&self) -> Result<AxisBox> {
        let bx = match self {
            GeometryDoc::Halfspaces { bx, .. } | GeometryDoc::Polygon { bx, .. } => bx,
        };
        AxisBox::new(bx.lo.clone(), bx.hi.clone())
    }

    /// Construction used when none is requested.
    pub fn default_construction(&self) -> ConstructionKind {
        match self {
            GeometryDoc::Halfspaces { .. } => ConstructionKind::Convex,
            GeometryDoc::Polygon { .. } => ConstructionKind::Hull,
        }
    }

    /// The region itself; `χ̂` is its complement.
    pub fn region(&self) -> Result<RegionSpec> {
        let bx = self.ambient()?;
        match self {
            GeometryDoc::Halfspaces { planes, .. } => RegionSpec::halfspaces(bx, planes.to_planes()?),
            GeometryDoc::Polygon { vertices, .. } => RegionSpec::polygon(bx, SimplePolygon::new(vertices.clone())?),
        }
    }

    pub fn construct(&self, kind: ConstructionKind, eps: f64) -> Result<ConstructionReport> {
        let bx = self.ambient()?;
        match (self, kind) {
            (GeometryDoc::Halfspaces { planes, .. }, ConstructionKind::Convex) => {
                convex_construction(&planes.to_planes()?, &bx, eps)
            }
            (GeometryDoc::Polygon { vertices, .. }, _) => {
                let poly = SimplePolygon::new(vertices.clone())?;
                match kind {
                    ConstructionKind::Convex => {
                        if !poly.is_convex() {
                            return Err(Error::Degenerate("polygon is not convex".into()));
                        }
                        hull_composite(&poly, &bx, eps, 0)
                    }
                    ConstructionKind::Hull => hull_composite(&poly, &bx, eps, DEFAULT_MAX_RECURSION),
                    ConstructionKind::Decomposition => {
                        let pieces = convex_decomposition_2d(&poly, &bx)?;
                        let shared = detect_shared_faces(&pieces, &bx)?;
                        decomposition_composite(&pieces, &shared, &bx, eps)
                    }
                }
            }
            (GeometryDoc::Halfspaces { .. }, k) => {
                Err(invalid(format!("construction '{k}' needs a polygon; half-spaces support 'convex' only")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_json_string;

    #[test]
    fn parse_and_construct() {
        let text = r#"{"kind":"halfspaces","box":{"lo":[0,0],"hi":[1,1]},"dim":2,"normals":[[1,0]],"offsets":[0.5]}"#;
        let g: GeometryDoc = serde_json::from_str(text).unwrap();
        assert_eq!(g.default_construction(), ConstructionKind::Convex);
        let c = g.construct(ConstructionKind::Convex, 0.1).unwrap();
        assert_eq!(c.shape, "2\u{2013}1\u{2013}1\u{2013}1");
        assert!(g.construct(ConstructionKind::Hull, 0.1).unwrap_err().is_validation());
        let back: GeometryDoc = serde_json::from_str(&to_json_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn polygon_constructions() {
        let text = r#"{"kind":"polygon","box":{"lo":[-1,-1],"hi":[2,2]},"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#;
        let g: GeometryDoc = serde_json::from_str(text).unwrap();
        for k in [ConstructionKind::Convex, ConstructionKind::Hull, ConstructionKind::Decomposition] {
            let c = g.construct(k, 0.1).unwrap();
            let n = &c.network;
            assert_eq!(n.eval(&[0.5, 0.5]).unwrap(), 0.0, "{k}");
            assert!((n.eval(&[1.5, 0.5]).unwrap() - 1.0).abs() < 1e-12, "{k}");
        }
        assert!(!g.region().unwrap().contains(&[1.5, 0.5]));
    }

    #[test]
    fn bad_box_rejected() {
        let text = r#"{"kind":"polygon","box":{"lo":[0,0],"hi":[0,1]},"vertices":[[0,0],[1,0],[1,1]]}"#;
        let g: GeometryDoc = serde_json::from_str(text).unwrap();
        assert!(g.ambient().is_err());
    }
}
