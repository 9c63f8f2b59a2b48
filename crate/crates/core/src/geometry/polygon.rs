//! Simple polygons in the plane: validation, convex hull, hull pockets and
//! convex decomposition.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Point2 = [f64; 2];

/// Geometric tolerance for collinearity and coincidence tests.
pub const GEOM_TOL: f64 = 1e-12;

#[inline]
pub fn sub(a: Point2, b: Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn cross(a: Point2, b: Point2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
#[inline]
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    cross(sub(b, a), sub(c, a))
}

#[inline]
pub fn dist(a: Point2, b: Point2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Shoelace signed area.
pub fn signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += cross(pts[i], pts[(i + 1) % n]);
    }
    0.5 * s
}

fn nearly_collinear(a: Point2, b: Point2, c: Point2) -> bool {
    let (ab, bc) = (dist(a, b), dist(b, c));
    orient(a, b, c).abs() <= GEOM_TOL * ab.max(1.0) * bc.max(1.0)
}

/// Drop coincident and collinear vertices until none remain.
fn simplify(mut v: Vec<Point2>) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut changed = false;
        let mut out: Vec<Point2> = Vec::with_capacity(n);
        for p in &v {
            if out.last().is_some_and(|q| dist(*q, *p) <= GEOM_TOL) {
                changed = true;
                continue;
            }
            out.push(*p);
        }
        while out.len() > 1 && dist(out[0], out[out.len() - 1]) <= GEOM_TOL {
            out.pop();
            changed = true;
        }
        let n = out.len();
        if n < 3 {
            return out;
        }
        if let Some(i) = (0..n).find(|&i| nearly_collinear(out[(i + n - 1) % n], out[i], out[(i + 1) % n])) {
            out.remove(i);
            changed = true;
        }
        v = out;
        if !changed {
            return v;
        }
    }
}

fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Point2, b: Point2, c: Point2, d: f64| {
        d.abs() <= GEOM_TOL
            && c[0] >= a[0].min(b[0]) - GEOM_TOL
            && c[0] <= a[0].max(b[0]) + GEOM_TOL
            && c[1] >= a[1].min(b[1]) - GEOM_TOL
            && c[1] <= a[1].max(b[1]) + GEOM_TOL
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// A simple polygon with counterclockwise vertices; the closing edge is implicit.
///
/// Construction removes coincident and collinear vertices, reorients clockwise
/// input and rejects self-intersecting or zero-area input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonDoc", into = "PolygonDoc")]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    dim: usize,
    vertices: Vec<Point2>,
}

impl TryFrom<PolygonDoc> for SimplePolygon {
    type Error = Error;
    fn try_from(doc: PolygonDoc) -> Result<Self> {
        if doc.dim != 2 {
            return Err(Error::Format(format!("polygon document has dim {}, expected 2", doc.dim)));
        }
        SimplePolygon::new(doc.vertices)
    }
}

impl From<SimplePolygon> for PolygonDoc {
    fn from(p: SimplePolygon) -> Self {
        PolygonDoc { dim: 2, vertices: p.vertices }
    }
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("polygon vertex".into()));
        }
        let mut v = simplify(vertices);
        if v.len() < 3 {
            return Err(Error::Degenerate("polygon has fewer than 3 non-collinear vertices".into()));
        }
        let area = signed_area(&v);
        if area.abs() <= GEOM_TOL {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if area < 0.0 {
            v.reverse();
        }
        let n = v.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                    return Err(Error::Degenerate(format!("polygon edges {i} and {j} intersect")));
                }
            }
        }
        Ok(Self { vertices: v })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) > 0.0)
    }

    /// Strict interior test by crossing number; boundary points count as outside
    /// only up to floating-point rounding.
    pub fn contains(&self, p: Point2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.edges().map(|(a, b)| point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    pub fn centroid(&self) -> Point2 {
        let a = self.area();
        let (mut cx, mut cy) = (0.0, 0.0);
        for (p, q) in self.edges() {
            let c = cross(p, q);
            cx += (p[0] + q[0]) * c;
            cy += (p[1] + q[1]) * c;
        }
        [cx / (6.0 * a), cy / (6.0 * a)]
    }
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = sub(b, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 == 0.0 { 0.0 } else { ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2 };
    let t = t.clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

/// Andrew's monotone chain. Collinear boundary points are dropped.
pub fn convex_hull_2d(points: &[Point2]) -> Result<SimplePolygon> {
    if points.len() < 3 {
        return Err(invalid("convex hull needs at least 3 points"));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| dist(*a, *b) <= GEOM_TOL);
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= GEOM_TOL {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    SimplePolygon::new(hull)
}

fn on_line(a: Point2, b: Point2, p: Point2) -> bool {
    orient(a, b, p).abs() <= GEOM_TOL * dist(a, b).max(1.0)
}

/// Convex hull of `region` and the pockets between each hull edge and the
/// polygon chain it spans.
///
/// A chain that touches its hull edge in between yields one pocket per
/// excursion away from the edge.
pub fn hull_pockets(region: &SimplePolygon) -> Result<(SimplePolygon, Vec<SimplePolygon>)> {
    let hull = convex_hull_2d(region.vertices())?;
    let v = region.vertices();
    let n = v.len();
    let index_of = |p: Point2| -> Result<usize> {
        v.iter()
            .position(|q| dist(*q, p) <= GEOM_TOL)
            .ok_or_else(|| Error::Degenerate("hull vertex not found among polygon vertices".into()))
    };
    let hv = hull.vertices();
    let mut pockets = Vec::new();
    for k in 0..hv.len() {
        let (a, b) = (hv[k], hv[(k + 1) % hv.len()]);
        let (ia, ib) = (index_of(a)?, index_of(b)?);
        let steps = (ib + n - ia) % n;
        if steps <= 1 {
            continue;
        }
        let chain: Vec<Point2> = (0..=steps).map(|s| v[(ia + s) % n]).collect();
        let mut run: Vec<Point2> = vec![chain[0]];
        for &p in &chain[1..] {
            if on_line(a, b, p) {
                if run.len() >= 2 {
                    run.push(p);
                    pockets.push(SimplePolygon::new(run)?);
                }
                run = vec![p];
            } else {
                run.push(p);
            }
        }
    }
    Ok((hull, pockets))
}

fn point_in_triangle(p: Point2, a: Point2, b: Point2, c: Point2) -> bool {
    orient(a, b, p) >= -GEOM_TOL && orient(b, c, p) >= -GEOM_TOL && orient(c, a, p) >= -GEOM_TOL
}

/// Ear-clipping triangulation of a counterclockwise simple polygon, as index triples.
pub fn triangulate(poly: &SimplePolygon) -> Result<Vec<[usize; 3]>> {
    let v = poly.vertices();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let mut tris = Vec::with_capacity(v.len() - 2);
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&i| {
            let (p, c, q) = (idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]);
            if orient(v[p], v[c], v[q]) <= GEOM_TOL {
                return false;
            }
            idx.iter().all(|&o| {
                o == p || o == c || o == q || {
                    let w = v[o];
                    dist(w, v[p]) <= GEOM_TOL
                        || dist(w, v[q]) <= GEOM_TOL
                        || !point_in_triangle(w, v[p], v[c], v[q])
                }
            })
        });
        let i = ear.ok_or_else(|| Error::Degenerate("no ear found; polygon is not simple".into()))?;
        tris.push([idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]]);
        idx.remove(i);
    }
    tris.push([idx[0], idx[1], idx[2]]);
    Ok(tris)
}

fn convex_cycle(v: &[Point2], cycle: &[usize]) -> bool {
    let m = cycle.len();
    (0..m).all(|i| orient(v[cycle[i]], v[cycle[(i + 1) % m]], v[cycle[(i + 2) % m]]) >= -GEOM_TOL)
}

/// Union of two counterclockwise cycles sharing the directed edge `u→v` in `a`
/// (and `v→u` in `b`).
fn merge_cycles(a: &[usize], b: &[usize], u: usize, w: usize) -> Vec<usize> {
    let rot = |c: &[usize], start: usize| -> Vec<usize> {
        let s = c.iter().position(|&x| x == start).unwrap();
        c[s..].iter().chain(&c[..s]).copied().collect()
    };
    // a rotated to start at w ends at u; b rotated to start at u ends at w.
    let mut out = rot(a, w);
    out.extend(rot(b, u).into_iter().skip(1).take(b.len() - 2));
    out
}

fn shared_edge(a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    let m = a.len();
    let k = b.len();
    for i in 0..m {
        let (u, w) = (a[i], a[(i + 1) % m]);
        if (0..k).any(|j| b[j] == w && b[(j + 1) % k] == u) {
            return Some((u, w));
        }
    }
    None
}

/// Convex pieces of `region` as vertex cycles (collinear vertices removed).
///
/// Ear-clipping triangulation followed by greedy removal of diagonals: the
/// pair of adjacent pieces with the largest convex union is merged first.
pub fn convex_decomposition_polygons(region: &SimplePolygon) -> Result<Vec<SimplePolygon>> {
    let v = region.vertices();
    let mut pieces: Vec<Vec<usize>> = triangulate(region)?.into_iter().map(|t| t.to_vec()).collect();
    loop {
        let mut best: Option<(f64, usize, usize, Vec<usize>)> = None;
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                let Some((u, w)) = shared_edge(&pieces[i], &pieces[j]) else { continue };
                let merged = merge_cycles(&pieces[i], &pieces[j], u, w);
                if !convex_cycle(v, &merged) {
                    continue;
                }
                let pts: Vec<Point2> = merged.iter().map(|&k| v[k]).collect();
                let area = signed_area(&pts);
                if best.as_ref().is_none_or(|b| area > b.0 + GEOM_TOL) {
                    best = Some((area, i, j, merged));
                }
            }
        }
        match best {
            Some((_, i, j, merged)) => {
                pieces[i] = merged;
                pieces.remove(j);
            }
            None => break,
        }
    }
    pieces
        .into_iter()
        .map(|c| SimplePolygon::new(c.into_iter().map(|k| v[k]).collect()))
        .collect()
}

/// Clip a counterclockwise convex polygon to the half-plane `n·x − c ≤ 0`.
pub fn clip_halfplane(poly: &[Point2], n: Point2, c: f64) -> Vec<Point2> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    let val = |p: Point2| n[0] * p[0] + n[1] * p[1] - c;
    for i in 0..m {
        let (p, q) = (poly[i], poly[(i + 1) % m]);
        let (vp, vq) = (val(p), val(q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
            let t = vp / (vp - vq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn h_shape() -> SimplePolygon {
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
        .unwrap()
    }

    fn l_shape() -> SimplePolygon {
        SimplePolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]]).unwrap()
    }

    fn same_cycle(got: &[Point2], want: &[Point2]) -> bool {
        if got.len() != want.len() {
            return false;
        }
        let Some(s) = got.iter().position(|p| dist(*p, want[0]) < 1e-12) else { return false };
        (0..want.len()).all(|k| dist(got[(s + k) % got.len()], want[k]) < 1e-12)
    }

    fn bbox_of(p: &SimplePolygon) -> [f64; 4] {
        let v = p.vertices();
        let f = |i: usize, max: bool| {
            v.iter().map(|q| q[i]).fold(if max { f64::NEG_INFINITY } else { f64::INFINITY }, |a, b| {
                if max { a.max(b) } else { a.min(b) }
            })
        };
        [f(0, false), f(1, false), f(0, true), f(1, true)]
    }

    #[test]
    fn polygon_validation() {
        let cw = SimplePolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(cw.area() > 0.0);
        let col = SimplePolygon::new(vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(col.len(), 4);
        assert!(SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err());
        let bowtie = SimplePolygon::new(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(bowtie, Err(Error::Degenerate(_))));
    }

    #[test]
    fn hull_examples() {
        let sq = convex_hull_2d(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]).unwrap();
        assert!(same_cycle(sq.vertices(), &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]));

        let h = convex_hull_2d(h_shape().vertices()).unwrap();
        assert!(same_cycle(h.vertices(), &[[-1.5, -1.5], [1.5, -1.5], [1.5, 1.5], [-1.5, 1.5]]));

        let tri = convex_hull_2d(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(same_cycle(tri.vertices(), &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]));

        assert!(matches!(convex_hull_2d(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn pockets_examples() {
        let sq = SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(hull_pockets(&sq).unwrap().1.is_empty());

        let (hull, pockets) = hull_pockets(&h_shape()).unwrap();
        assert_eq!(pockets.len(), 2);
        let mut boxes: Vec<[f64; 4]> = pockets.iter().map(bbox_of).collect();
        boxes.sort_by(|a, b| a[1].total_cmp(&b[1]));
        assert_eq!(boxes, vec![[-0.5, -1.5, 0.5, -0.5], [-0.5, 0.5, 0.5, 1.5]]);
        assert!(pockets.iter().all(|p| p.len() == 4 && p.is_convex()));
        let total = h_shape().area() + pockets.iter().map(|p| p.area()).sum::<f64>();
        assert!((hull.area() - total).abs() <= 1e-9 * hull.area());

        let (hull, pockets) = hull_pockets(&l_shape()).unwrap();
        assert_eq!(pockets.len(), 1);
        assert!(same_cycle(pockets[0].vertices(), &[[2.0, 1.0], [1.0, 2.0], [1.0, 1.0]]));
        assert!((hull.area() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn decomposition_examples() {
        let tri = SimplePolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]).unwrap();
        let pieces = convex_decomposition_polygons(&tri).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(same_cycle(pieces[0].vertices(), tri.vertices()));

        let h = convex_decomposition_polygons(&h_shape()).unwrap();
        assert_eq!(h.len(), 3);
        let total: f64 = h.iter().map(|p| p.area()).sum();
        assert!((total - 7.0).abs() <= 1e-9 * 7.0);
        assert!((h_shape().area() - 7.0).abs() < 1e-12);
        let mut boxes: Vec<[f64; 4]> = h.iter().map(bbox_of).collect();
        boxes.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(
            boxes,
            vec![[-1.5, -1.5, -0.5, 1.5], [-0.5, -0.5, 0.5, 0.5], [0.5, -1.5, 1.5, 1.5]]
        );

        let l = convex_decomposition_polygons(&l_shape()).unwrap();
        assert_eq!(l.len(), 2);
        assert!((l.iter().map(|p| p.area()).sum::<f64>() - 3.0).abs() < 1e-12);
        assert!(l.iter().all(|p| p.is_convex() && p.len() == 4));
    }

    #[test]
    fn clipping_square() {
        let sq = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let half = clip_halfplane(&sq, [1.0, 0.0], 0.5);
        assert!((signed_area(&half) - 0.5).abs() < 1e-15);
        assert!(clip_halfplane(&sq, [1.0, 0.0], -1.0).is_empty());
    }
}
