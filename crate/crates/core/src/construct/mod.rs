//! Closed-form weight constructions.

mod composite;
mod indicator;
mod report;

pub use composite::{
    convex_construction, decomposition_composite, detect_shared_faces, hull_composite, hull_composite_from_parts, piecewise_composite,
    PiecewiseConstantSpec, SharedFace, DEFAULT_MAX_RECURSION,
};
pub use indicator::{convex_indicator, halfspace_ramp, region_indicator};
pub(crate) use indicator::check_eps;
pub use report::{ConstructionReport, Part, PartRole, PartSummary, Provenance};
