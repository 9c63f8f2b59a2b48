//! Serialization of networks, sampled fields and break-line geometry, and
//! SVG rendering.

mod docs;
mod field;
mod geometry;
mod json;
mod svg;

pub use docs::{breakline_geometry, BreaklineDoc, CellSegment, HyperplaneSetDoc, LineSegment, SecondLayerDoc};
pub use geometry::{ConstructionKind, GeometryDoc};
pub use field::{field_from_str, field_to_string, load_field, sample_field, save_field, GridField, SliceMeta};
pub use json::{load_network, network_from_json, network_to_json, read_json, save_network, to_json_string, write_json};
pub use svg::{render_breaklines, render_field};
