use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::geometry::{Hyperplane, Normal};
use crate::network::ReluNetwork;

/// What a group of first-layer faces does in the composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartRole {
    /// Complement indicator `1 − σ(1 − Σσ/ε)` of a convex set.
    Complement,
    /// Region indicator `σ(1 − Σσ/ε)` of a convex pocket or piece.
    Region,
}

/// One convex building block of a construction.
#[derive(Clone, Debug)]
pub struct Part {
    pub role: PartRole,
    /// Pocket nesting level; 0 at the top.
    pub depth: usize,
    pub faces: Vec<Hyperplane>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartSummary {
    pub role: PartRole,
    pub depth: usize,
    pub faces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub epsilon: f64,
    /// SHA-256 over the input faces, hex encoded.
    pub geometry_digest: String,
    pub parts: Vec<PartSummary>,
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub network: ReluNetwork,
    pub epsilon: f64,
    pub shape: String,
    pub parts: Vec<Part>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

impl ConstructionReport {
    pub(crate) fn new(construction: &str, network: ReluNetwork, epsilon: f64, parts: Vec<Part>, warnings: Vec<String>) -> Self {
        let provenance = Provenance {
            construction: construction.to_string(),
            epsilon,
            geometry_digest: digest(&parts),
            parts: parts.iter().map(|p| PartSummary { role: p.role, depth: p.depth, faces: p.faces.len() }).collect(),
        };
        Self { shape: network.shape_string(), network, epsilon, parts, provenance, warnings }
    }

    /// All faces in first-layer order.
    pub fn hyperplanes(&self) -> impl Iterator<Item = &Hyperplane> {
        self.parts.iter().flat_map(|p| p.faces.iter())
    }
}

fn digest(parts: &[Part]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update([p.role as u8]);
        h.update((p.depth as u64).to_le_bytes());
        h.update((p.faces.len() as u64).to_le_bytes());
        for f in &p.faces {
            h.update((f.dim() as u64).to_le_bytes());
            match f.normal() {
                Normal::Dense(v) => v.iter().for_each(|a| h.update(a.to_bits().to_le_bytes())),
                Normal::Sparse { entries, .. } => entries.iter().for_each(|(j, a)| {
                    h.update((*j as u64).to_le_bytes());
                    h.update(a.to_bits().to_le_bytes());
                }),
            }
            h.update(f.offset().to_bits().to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
