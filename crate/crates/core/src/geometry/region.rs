use std::fmt;
use std::sync::Arc;

use super::bbox::AxisBox;
use super::hyperplane::Hyperplane;
use super::polygon::SimplePolygon;
use super::polytope::ConvexPolytope;
use crate::error::{check_dim, Result};

type Oracle = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// Optional geometric description attached to a region.
#[derive(Clone, Debug)]
pub enum RegionGeometry {
    Polygon(SimplePolygon),
    Polytope(ConvexPolytope),
    /// Intersection of the open negative half-spaces of the planes.
    Halfspaces(Vec<Hyperplane>),
}

/// A subset of an ambient box given by a deterministic membership oracle.
///
/// Membership is strict: boundary points are outside.
#[derive(Clone)]
pub struct RegionSpec {
    membership: Oracle,
    ambient: AxisBox,
    geometry: Option<RegionGeometry>,
}

impl fmt::Debug for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegionSpec")
            .field("ambient", &self.ambient)
            .field("geometry", &self.geometry)
            .finish_non_exhaustive()
    }
}

impl RegionSpec {
    pub fn from_fn(ambient: AxisBox, f: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Self {
        Self { membership: Arc::new(f), ambient, geometry: None }
    }

    pub fn polygon(ambient: AxisBox, poly: SimplePolygon) -> Result<Self> {
        check_dim(2, ambient.dim())?;
        let p = poly.clone();
        Ok(Self {
            membership: Arc::new(move |x| p.contains([x[0], x[1]])),
            ambient,
            geometry: Some(RegionGeometry::Polygon(poly)),
        })
    }

    pub fn polytope(ambient: AxisBox, poly: ConvexPolytope) -> Result<Self> {
        check_dim(poly.dim(), ambient.dim())?;
        let p = poly.clone();
        Ok(Self {
            membership: Arc::new(move |x| p.contains(x)),
            ambient,
            geometry: Some(RegionGeometry::Polytope(poly)),
        })
    }

    /// `{x : h·x − offset < 0 for every h}` without a feasibility check.
    pub fn halfspaces(ambient: AxisBox, hs: Vec<Hyperplane>) -> Result<Self> {
        for h in &hs {
            check_dim(ambient.dim(), h.dim())?;
        }
        let planes = hs.clone();
        Ok(Self {
            membership: Arc::new(move |x| planes.iter().all(|h| h.eval(x) < 0.0)),
            ambient,
            geometry: Some(RegionGeometry::Halfspaces(hs)),
        })
    }

    /// The whole ambient box.
    pub fn everything(ambient: AxisBox) -> Self {
        Self::from_fn(ambient, |_| true)
    }

    /// Complement within the ambient box.
    pub fn complement(&self) -> Self {
        let inner = self.membership.clone();
        Self { membership: Arc::new(move |x| !inner(x)), ambient: self.ambient.clone(), geometry: None }
    }

    #[inline]
    pub fn contains(&self, x: &[f64]) -> bool {
        (self.membership)(x)
    }

    /// `1.0` inside, `0.0` outside.
    #[inline]
    pub fn indicator(&self, x: &[f64]) -> f64 {
        if self.contains(x) {
            1.0
        } else {
            0.0
        }
    }

    pub fn ambient(&self) -> &AxisBox {
        &self.ambient
    }

    pub fn geometry(&self) -> Option<&RegionGeometry> {
        self.geometry.as_ref()
    }
}
