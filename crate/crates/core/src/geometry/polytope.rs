use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome};

use super::bbox::AxisBox;
use super::hyperplane::{Hyperplane, Normal};
use super::polygon::{clip_halfplane, signed_area, Point2, SimplePolygon, GEOM_TOL};
use crate::error::{check_dim, invalid, Error, Result};

/// Convex polytope in H-representation: interior `{x : face·x − offset < 0 ∀ faces}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope {
    faces: Vec<Hyperplane>,
    interior_point: Vec<f64>,
    label: Option<String>,
}

impl ConvexPolytope {
    /// Checks that the faces are distinct and that their intersection with
    /// `ambient` has nonempty interior.
    pub fn new(faces: Vec<Hyperplane>, ambient: &AxisBox) -> Result<Self> {
        if faces.is_empty() {
            return Err(invalid("polytope needs at least one face"));
        }
        for f in &faces {
            check_dim(ambient.dim(), f.dim())?;
        }
        for i in 0..faces.len() {
            for j in (i + 1)..faces.len() {
                if faces[i].approx_eq(&faces[j], GEOM_TOL) {
                    return Err(Error::Degenerate(format!("faces {i} and {j} coincide")));
                }
            }
        }
        let interior_point = chebyshev_point(&faces, ambient)?;
        Ok(Self { faces, interior_point, label: None })
    }

    /// Faces of a convex polygon, oriented outward using the centroid.
    pub fn from_convex_polygon(poly: &SimplePolygon, ambient: &AxisBox) -> Result<Self> {
        if !poly.is_convex() {
            return Err(Error::Degenerate("polygon is not convex".into()));
        }
        let c = poly.centroid();
        let faces = poly
            .edges()
            .map(|(a, b)| {
                let n = [b[1] - a[1], a[0] - b[0]];
                let h = Hyperplane::new(n.to_vec(), n[0] * a[0] + n[1] * a[1])?;
                Ok(if h.eval(&c) > 0.0 { h.flipped() } else { h })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(faces, ambient)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn faces(&self) -> &[Hyperplane] {
        &self.faces
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.faces[0].dim()
    }

    /// A point strictly inside the polytope and the ambient box.
    pub fn interior_point(&self) -> &[f64] {
        &self.interior_point
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.faces.iter().all(|f| f.eval(x) < 0.0)
    }

    /// Vertices of the 2D polytope clipped to `ambient`, counterclockwise.
    pub fn polygon_in(&self, ambient: &AxisBox) -> Result<Vec<Point2>> {
        if self.dim() != 2 {
            return Err(Error::Unsupported("polygon_in needs a 2D polytope".into()));
        }
        Ok(clip_faces(&ambient.corners2(), &self.faces))
    }
}

pub(crate) fn clip_faces(start: &[Point2], faces: &[Hyperplane]) -> Vec<Point2> {
    let mut poly = start.to_vec();
    for f in faces {
        poly = clip_halfplane(&poly, f.normal2(), f.offset());
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// Maximize the slack `t` of `face(x) + t ≤ 0` and `lo + t ≤ x ≤ hi − t`.
fn chebyshev_point(faces: &[Hyperplane], ambient: &AxisBox) -> Result<Vec<f64>> {
    let dim = ambient.dim();
    if dim == 2 {
        let poly = clip_faces(&ambient.corners2(), faces);
        if poly.len() < 3 || signed_area(&poly) <= GEOM_TOL {
            return Err(Error::Degenerate("polytope interior is empty within the ambient box".into()));
        }
        let c = SimplePolygon::new(poly)?.centroid();
        return Ok(c.to_vec());
    }
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let scale = ambient.lo.iter().zip(&ambient.hi).map(|(a, b)| b - a).fold(f64::INFINITY, f64::min);
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, scale));
    let xs: Vec<_> = (0..dim).map(|j| lp.add_var(0.0, (ambient.lo[j], ambient.hi[j]))).collect();
    for f in faces {
        let mut row: Vec<_> = match f.normal() {
            Normal::Dense(v) => v.iter().enumerate().filter(|(_, a)| **a != 0.0).map(|(j, a)| (xs[j], *a)).collect(),
            Normal::Sparse { entries, .. } => entries.iter().map(|&(j, a)| (xs[j], a)).collect(),
        };
        row.push((t, 1.0));
        lp.add_constraint(row.as_slice(), ComparisonOp::Le, f.offset());
    }
    for (j, &x) in xs.iter().enumerate() {
        lp.add_constraint([(x, 1.0), (t, -1.0)].as_slice(), ComparisonOp::Ge, ambient.lo[j]);
        lp.add_constraint([(x, 1.0), (t, 1.0)].as_slice(), ComparisonOp::Le, ambient.hi[j]);
    }
    let sol = lp
        .solve()
        .map_err(|e| Error::Degenerate(format!("feasibility problem failed: {e}")))?;
    let sol = match sol {
        SolveOutcome::Solution(s) => s,
        SolveOutcome::Interrupted(_) => return Err(Error::Degenerate("feasibility problem interrupted".into())),
    };
    if sol[t] <= GEOM_TOL * scale.max(1.0) {
        return Err(Error::Degenerate("polytope interior is empty within the ambient box".into()));
    }
    Ok(xs.iter().map(|&v| sol[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_interior() {
        let bx = AxisBox::unit(2);
        let p = ConvexPolytope::new(
            vec![Hyperplane::new(vec![1.0, 0.0], 0.6).unwrap(), Hyperplane::new(vec![0.0, 1.0], 0.6).unwrap()],
            &bx,
        )
        .unwrap();
        assert!(p.contains(p.interior_point()));
        assert!((signed_area(&p.polygon_in(&bx).unwrap()) - 0.36).abs() < 1e-15);
    }

    #[test]
    fn empty_and_duplicate_faces_rejected() {
        let bx = AxisBox::unit(2);
        let h = Hyperplane::new(vec![1.0, 0.0], 0.5).unwrap();
        assert!(ConvexPolytope::new(vec![h.clone(), h.clone()], &bx).is_err());
        assert!(ConvexPolytope::new(vec![h.clone(), h.flipped()], &bx).is_err());
        assert!(ConvexPolytope::new(vec![Hyperplane::new(vec![1.0, 0.0], -0.1).unwrap()], &bx).is_err());
    }

    #[test]
    fn hypercube_feasibility_in_higher_dimension() {
        let d = 12;
        let bx = AxisBox::unit(d);
        let faces: Vec<_> = (0..d).map(|i| Hyperplane::axis(d, i, 1.0, 0.5).unwrap()).collect();
        let p = ConvexPolytope::new(faces.clone(), &bx).unwrap();
        assert!(p.contains(p.interior_point()));
        assert!(bx.contains(p.interior_point()));

        let mut bad = faces;
        bad.push(Hyperplane::axis(d, 0, -1.0, -0.6).unwrap());
        assert!(ConvexPolytope::new(bad, &bx).is_err());
    }

    #[test]
    fn polygon_faces_point_outward() {
        let bx = AxisBox::cube(2, -2.0, 2.0).unwrap();
        let tri = SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        let p = ConvexPolytope::from_convex_polygon(&tri, &bx).unwrap();
        assert_eq!(p.faces().len(), 3);
        assert!(p.contains(&[0.2, 0.2]));
        assert!(!p.contains(&[0.6, 0.6]));
    }
}
