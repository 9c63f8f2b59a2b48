//! Hyperplanes, boxes, polygons and polytopes.

mod bbox;
mod hyperplane;
mod measure;
pub mod polygon;
mod polygonalize;
mod polytope;
mod region;

pub use bbox::AxisBox;
pub use hyperplane::{eval_all, Hyperplane, Normal, UNIT_TOL};
pub use measure::symm_diff_measure;
pub use polygon::{
    convex_decomposition_polygons, convex_hull_2d, hull_pockets, triangulate, Point2, SimplePolygon, GEOM_TOL,
};
pub use polygonalize::{
    inscribed_gap_area, inscribed_vertices, octant_spiral_points, polygonalize_circle_inscribed,
    polygonalize_convex_tangent, sphere,
};
pub use polytope::ConvexPolytope;
pub use region::{RegionGeometry, RegionSpec};

use crate::error::Result;

/// Convex decomposition of a simple polygon into H-represented pieces.
pub fn convex_decomposition_2d(region: &SimplePolygon, ambient: &AxisBox) -> Result<Vec<ConvexPolytope>> {
    convex_decomposition_polygons(region)?
        .iter()
        .map(|p| ConvexPolytope::from_convex_polygon(p, ambient))
        .collect()
}

