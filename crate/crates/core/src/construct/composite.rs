use super::indicator::{check_eps, convex_indicator, max_violation, region_indicator};
use super::report::{ConstructionReport, Part, PartRole};
use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::polygon::{hull_pockets, Point2, SimplePolygon};
use crate::geometry::{AxisBox, ConvexPolytope, Hyperplane, RegionSpec};
use crate::network::{affine_combine, ReluNetwork};
use crate::sampling::sample_points;

pub const DEFAULT_MAX_RECURSION: usize = 4;

const FACE_TOL: f64 = 1e-9;

fn plateau_warning(faces: &[Hyperplane], ambient: &AxisBox, eps: f64) -> Option<String> {
    let top = max_violation(faces, ambient);
    (top < eps).then(|| {
        format!("epsilon {eps} exceeds the largest face violation {top:.6e} in the box; the output never reaches 1")
    })
}

/// Approximant of the complement of `poly`, with its parts.
fn complement_network(
    poly: &SimplePolygon,
    ambient: &AxisBox,
    eps: f64,
    depth: usize,
    max_recursion: usize,
    parts: &mut Vec<Part>,
) -> Result<ReluNetwork> {
    let (hull, pockets) = hull_pockets(poly)?;
    let hull = ConvexPolytope::from_convex_polygon(&hull, ambient)?;
    let mut nets = vec![convex_indicator(hull.faces(), eps)?];
    parts.push(Part { role: PartRole::Complement, depth, faces: hull.faces().to_vec() });
    for pocket in &pockets {
        if pocket.is_convex() {
            let k = ConvexPolytope::from_convex_polygon(pocket, ambient)
                .map_err(|e| Error::Degenerate(format!("pocket at depth {}: {e}", depth + 1)))?;
            nets.push(region_indicator(k.faces(), eps)?);
            parts.push(Part { role: PartRole::Region, depth: depth + 1, faces: k.faces().to_vec() });
        } else {
            if depth + 1 > max_recursion {
                return Err(Error::RecursionLimit { limit: max_recursion });
            }
            // χ_K = 1 − χ_{K complement}
            let inner = complement_network(pocket, ambient, eps, depth + 1, max_recursion, parts)?;
            nets.push(affine_combine(&[(-1.0, &inner)], 1.0)?);
        }
    }
    let terms: Vec<(f64, &ReluNetwork)> = nets.iter().map(|n| (1.0, n)).collect();
    affine_combine(&terms, 0.0)
}

/// [`convex_indicator`] wrapped in a report, warning when `ε` is too large
/// for the output to reach 1 inside the box.
pub fn convex_construction(hs: &[Hyperplane], ambient: &AxisBox, eps: f64) -> Result<ConstructionReport> {
    for h in hs {
        check_dim(ambient.dim(), h.dim())?;
    }
    let net = convex_indicator(hs, eps)?;
    let warnings = plateau_warning(hs, ambient, eps).into_iter().collect();
    let parts = vec![Part { role: PartRole::Complement, depth: 0, faces: hs.to_vec() }];
    Ok(ConstructionReport::new("convex_indicator", net, eps, parts, warnings))
}

/// Network approximating the indicator of the complement of `region`: a
/// complement indicator of its convex hull plus one region indicator per
/// pocket between hull and polygon. Non-convex pockets are handled by the
/// same construction, nested at most `max_recursion` levels.
pub fn hull_composite(region: &SimplePolygon, ambient: &AxisBox, eps: f64, max_recursion: usize) -> Result<ConstructionReport> {
    check_eps(eps)?;
    check_dim(2, ambient.dim())?;
    let mut parts = Vec::new();
    let net = complement_network(region, ambient, eps, 0, max_recursion, &mut parts)?;
    let warnings = plateau_warning(&parts[0].faces, ambient, eps).into_iter().collect();
    Ok(ConstructionReport::new("hull_composite", net, eps, parts, warnings))
}

/// [`hull_composite`] from a caller-supplied hull and convex pockets, in any
/// dimension.
pub fn hull_composite_from_parts(
    hull: &ConvexPolytope,
    pockets: &[ConvexPolytope],
    ambient: &AxisBox,
    eps: f64,
) -> Result<ConstructionReport> {
    check_eps(eps)?;
    let mut parts = vec![Part { role: PartRole::Complement, depth: 0, faces: hull.faces().to_vec() }];
    let mut nets = vec![convex_indicator(hull.faces(), eps)?];
    for k in pockets {
        check_dim(hull.dim(), k.dim())?;
        nets.push(region_indicator(k.faces(), eps)?);
        parts.push(Part { role: PartRole::Region, depth: 1, faces: k.faces().to_vec() });
    }
    let terms: Vec<(f64, &ReluNetwork)> = nets.iter().map(|n| (1.0, n)).collect();
    let net = affine_combine(&terms, 0.0)?;
    let warnings = plateau_warning(hull.faces(), ambient, eps).into_iter().collect();
    Ok(ConstructionReport::new("hull_composite", net, eps, parts, warnings))
}

/// Face `face` of piece `piece` coincides with a face of the earlier piece
/// `earlier`, with opposite orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SharedFace {
    pub piece: usize,
    pub face: usize,
    pub earlier: usize,
}

fn opposite_face(a: &Hyperplane, other: &ConvexPolytope) -> Option<usize> {
    let flipped = a.flipped();
    other.faces().iter().position(|g| g.approx_eq(&flipped, FACE_TOL))
}

fn edge_on(poly: &[Point2], h: &Hyperplane) -> Vec<Point2> {
    poly.iter().copied().filter(|p| h.eval(p).abs() <= FACE_TOL).collect()
}

/// Overlap length of the two pieces' edges on a common line.
fn edge_overlap(a: &[Point2], b: &[Point2], h: &Hyperplane) -> f64 {
    let n = h.normal2();
    let t = |p: &Point2| -n[1] * p[0] + n[0] * p[1];
    let range = |e: &[Point2]| e.iter().map(t).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let ((a0, a1), (b0, b1)) = (range(a), range(b));
    a1.min(b1) - a0.max(b0)
}

/// Faces each piece shares with an earlier piece. In the plane the two edges
/// must overlap with positive length; elsewhere coincident opposite planes
/// are taken as shared.
pub fn detect_shared_faces(pieces: &[ConvexPolytope], ambient: &AxisBox) -> Result<Vec<SharedFace>> {
    let polys = if ambient.dim() == 2 {
        Some(pieces.iter().map(|p| p.polygon_in(ambient)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let mut out = Vec::new();
    for (j, pj) in pieces.iter().enumerate() {
        for (f, face) in pj.faces().iter().enumerate() {
            for (i, pi) in pieces[..j].iter().enumerate() {
                if opposite_face(face, pi).is_none() {
                    continue;
                }
                let touches = match &polys {
                    Some(ps) => edge_overlap(&edge_on(&ps[j], face), &edge_on(&ps[i], face), face) > FACE_TOL,
                    None => true,
                };
                if touches {
                    out.push(SharedFace { piece: j, face: f, earlier: i });
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `1 − Σⱼ Nⱼ` over convex pieces processed in order, where `Nⱼ` is the
/// region indicator of piece `j` pulled back by `ε` from every face it shares
/// with an earlier piece. Across each such interface the two ramps sum to 1.
pub fn decomposition_composite(
    pieces: &[ConvexPolytope],
    shared: &[SharedFace],
    ambient: &AxisBox,
    eps: f64,
) -> Result<ConstructionReport> {
    check_eps(eps)?;
    if pieces.is_empty() {
        return Err(invalid("decomposition needs at least one piece"));
    }
    for p in pieces {
        check_dim(ambient.dim(), p.dim())?;
    }
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            let mut both: Vec<Hyperplane> = pieces[i].faces().to_vec();
            for f in pieces[j].faces() {
                if !both.iter().any(|g| g.approx_eq(f, FACE_TOL)) {
                    both.push(f.clone());
                }
            }
            if ConvexPolytope::new(both, ambient).is_ok() {
                return Err(invalid(format!("pieces {i} and {j} overlap")));
            }
        }
    }
    for s in shared {
        let piece = pieces.get(s.piece).ok_or_else(|| invalid(format!("shared face names piece {}", s.piece)))?;
        let face = piece.faces().get(s.face).ok_or_else(|| invalid(format!("piece {} has no face {}", s.piece, s.face)))?;
        if s.earlier >= s.piece {
            return Err(invalid(format!("shared face of piece {} must name an earlier piece", s.piece)));
        }
        if opposite_face(face, &pieces[s.earlier]).is_none() {
            return Err(Error::Degenerate(format!(
                "face {} of piece {} does not lie on a face of piece {}",
                s.face, s.piece, s.earlier
            )));
        }
    }
    let mut parts = Vec::with_capacity(pieces.len());
    let mut nets = Vec::with_capacity(pieces.len());
    for (j, p) in pieces.iter().enumerate() {
        let faces: Vec<Hyperplane> = p
            .faces()
            .iter()
            .enumerate()
            .map(|(f, h)| {
                if shared.iter().any(|s| s.piece == j && s.face == f) {
                    h.translated(-eps)
                } else {
                    h.clone()
                }
            })
            .collect();
        ConvexPolytope::new(faces.clone(), ambient)
            .map_err(|_| Error::Degenerate(format!("piece {j} vanishes after shrinking by {eps}")))?;
        nets.push(region_indicator(&faces, eps)?);
        parts.push(Part { role: PartRole::Region, depth: 0, faces });
    }
    let terms: Vec<(f64, &ReluNetwork)> = nets.iter().map(|n| (-1.0, n)).collect();
    let net = affine_combine(&terms, 1.0)?;
    Ok(ConstructionReport::new("decomposition_composite", net, eps, parts, Vec::new()))
}

/// `f(x) = Σ αᵢ χ_{Ωᵢ}(x)` over pairwise disjoint regions.
#[derive(Clone, Debug)]
pub struct PiecewiseConstantSpec {
    terms: Vec<(f64, RegionSpec)>,
    ambient: AxisBox,
}

impl PiecewiseConstantSpec {
    pub fn new(terms: Vec<(f64, RegionSpec)>, ambient: AxisBox) -> Result<Self> {
        if terms.is_empty() {
            return Err(invalid("piecewise constant function needs at least one term"));
        }
        for (a, r) in &terms {
            if !a.is_finite() {
                return Err(Error::NonFinite("coefficient".into()));
            }
            check_dim(ambient.dim(), r.ambient().dim())?;
        }
        Ok(Self { terms, ambient })
    }

    pub fn terms(&self) -> &[(f64, RegionSpec)] {
        &self.terms
    }

    pub fn ambient(&self) -> &AxisBox {
        &self.ambient
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(a, r)| a * r.indicator(x)).sum()
    }

    /// Monte Carlo spot check that no sample lies in two regions.
    pub fn check_disjoint(&self, samples: usize, seed: u64) -> Result<()> {
        for x in sample_points(&self.ambient, samples, seed) {
            let hits: Vec<usize> = (0..self.terms.len()).filter(|&i| self.terms[i].1.contains(&x)).collect();
            if hits.len() > 1 {
                return Err(invalid(format!("regions {} and {} overlap near {x:?}", hits[0], hits[1])));
            }
        }
        Ok(())
    }
}

/// Combine per-region indicator networks with the coefficients of `spec`.
pub fn piecewise_composite(spec: &PiecewiseConstantSpec, nets: &[ReluNetwork]) -> Result<ReluNetwork> {
    if nets.len() != spec.terms.len() {
        return Err(invalid(format!("{} terms but {} networks", spec.terms.len(), nets.len())));
    }
    let terms: Vec<(f64, &ReluNetwork)> = spec.terms.iter().map(|(a, _)| *a).zip(nets).collect();
    affine_combine(&terms, 0.0)
}
