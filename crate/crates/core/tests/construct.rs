mod common;

use common::{h_box, h_shape, notched_square, scatter};
use pwc_relu::construct::*;
use pwc_relu::geometry::{convex_decomposition_2d, AxisBox, ConvexPolytope, Hyperplane};
use pwc_relu::Error;

fn rect(x0: f64, y0: f64, x1: f64, y1: f64, bx: &AxisBox) -> ConvexPolytope {
    ConvexPolytope::new(
        vec![
            Hyperplane::new(vec![-1.0, 0.0], -x0).unwrap(),
            Hyperplane::new(vec![1.0, 0.0], x1).unwrap(),
            Hyperplane::new(vec![0.0, -1.0], -y0).unwrap(),
            Hyperplane::new(vec![0.0, 1.0], y1).unwrap(),
        ],
        bx,
    )
    .unwrap()
}

#[test]
fn h_shape_hull_network_shape() {
    let r = hull_composite(&h_shape(), &h_box(), 1.0 / 12.0, DEFAULT_MAX_RECURSION).unwrap();
    assert_eq!(r.shape, "2\u{2013}12\u{2013}3\u{2013}1");
    assert_eq!(r.parts.len(), 3);
    assert_eq!(r.provenance.construction, "hull_composite");
    assert_eq!(r.provenance.geometry_digest.len(), 64);
    let again = hull_composite(&h_shape(), &h_box(), 1.0 / 12.0, DEFAULT_MAX_RECURSION).unwrap();
    assert_eq!(again.provenance.geometry_digest, r.provenance.geometry_digest);
    assert!(r.warnings.is_empty());
}

#[test]
fn h_shape_hull_values() {
    let eps = 1.0 / 12.0;
    let poly = h_shape();
    let r = hull_composite(&poly, &h_box(), eps, DEFAULT_MAX_RECURSION).unwrap();
    let net = &r.network;
    for x in scatter(&h_box(), 50_000, 7) {
        let v = net.eval(&x).unwrap();
        assert!((0.0..=1.0).contains(&v), "{v} at {x:?}");
        let p = [x[0], x[1]];
        if poly.boundary_distance(p) > eps + 1e-9 {
            let want = if poly.contains(p) { 0.0 } else { 1.0 };
            assert!((v - want).abs() < 1e-12, "{v} vs {want} at {x:?}");
        }
    }
    // slab just outside a hull edge that closes a pocket
    for t in [0.1, 0.5, 0.9] {
        assert!((net.eval(&[0.0, -1.5 - t * eps]).unwrap() - 1.0).abs() < 1e-12);
        assert!((net.eval(&[0.2, 1.5 + t * eps]).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn h_shape_decomposition() {
    let eps = 1.0 / 12.0;
    let bx = h_box();
    let pieces = convex_decomposition_2d(&h_shape(), &bx).unwrap();
    assert_eq!(pieces.len(), 3);
    let shared = detect_shared_faces(&pieces, &bx).unwrap();
    assert_eq!(shared.len(), 2);
    let r = decomposition_composite(&pieces, &shared, &bx, eps).unwrap();
    assert_eq!(r.shape, "2\u{2013}12\u{2013}3\u{2013}1");
    let poly = h_shape();
    for x in scatter(&bx, 50_000, 11) {
        let v = r.network.eval(&x).unwrap();
        assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{v} at {x:?}");
        let p = [x[0], x[1]];
        if poly.boundary_distance(p) > eps + 1e-9 && !poly.contains(p) {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn gap_slab_ramps_sum_to_one() {
    let eps = 0.1;
    let bx = AxisBox::unit(2);
    let pieces = vec![rect(0.0, 0.0, 0.5, 1.0, &bx), rect(0.5, 0.0, 1.0, 1.0, &bx)];
    let shared = detect_shared_faces(&pieces, &bx).unwrap();
    assert_eq!(shared, vec![SharedFace { piece: 1, face: 0, earlier: 0 }]);
    let r = decomposition_composite(&pieces, &shared, &bx, eps).unwrap();
    let n1 = region_indicator(&r.parts[0].faces, eps).unwrap();
    let n2 = region_indicator(&r.parts[1].faces, eps).unwrap();
    for k in 1..20 {
        let x = [0.5 + eps * k as f64 / 20.0, 0.05 * k as f64];
        let sum = n1.eval(&x).unwrap() + n2.eval(&x).unwrap();
        assert!((sum - 1.0).abs() < 1e-12);
        // the whole square is the zero region, so the composite matches it
        assert!(r.network.eval(&x).unwrap().abs() < 1e-12);
    }
}

#[test]
fn single_piece_is_complement_indicator() {
    let bx = AxisBox::unit(2);
    let p = rect(0.2, 0.2, 0.7, 0.6, &bx);
    let r = decomposition_composite(std::slice::from_ref(&p), &[], &bx, 0.05).unwrap();
    let c = convex_indicator(p.faces(), 0.05).unwrap();
    for x in scatter(&bx, 2000, 3) {
        assert!((r.network.eval(&x).unwrap() - c.eval(&x).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn convex_region_has_no_pockets() {
    let bx = AxisBox::unit(2);
    let sq = pwc_relu::geometry::polygon::SimplePolygon::new(vec![[0.2, 0.2], [0.8, 0.2], [0.8, 0.8], [0.2, 0.8]]).unwrap();
    let r = hull_composite(&sq, &bx, 0.05, DEFAULT_MAX_RECURSION).unwrap();
    assert_eq!(r.parts.len(), 1);
    assert_eq!(r.shape, "2\u{2013}4\u{2013}1\u{2013}1");
    let c = convex_indicator(&r.parts[0].faces, 0.05).unwrap();
    for x in scatter(&bx, 2000, 5) {
        assert_eq!(r.network.eval(&x).unwrap(), c.eval(&x).unwrap());
    }
}

#[test]
fn decomposition_rejects_bad_input() {
    let bx = AxisBox::unit(2);
    let a = rect(0.0, 0.0, 0.6, 1.0, &bx);
    let b = rect(0.4, 0.0, 1.0, 1.0, &bx);
    assert!(decomposition_composite(&[a.clone(), b], &[], &bx, 0.1).is_err());
    let c = rect(0.6, 0.0, 1.0, 0.5, &bx);
    let bogus = [SharedFace { piece: 1, face: 2, earlier: 0 }];
    assert!(matches!(decomposition_composite(&[a.clone(), c.clone()], &bogus, &bx, 0.1), Err(Error::Degenerate(_))));
    // sharing a full edge with a piece narrower than eps leaves nothing
    let thin = rect(0.6, 0.0, 0.65, 1.0, &bx);
    let shared = detect_shared_faces(&[a.clone(), thin.clone()], &bx).unwrap();
    assert!(decomposition_composite(&[a, thin], &shared, &bx, 0.1).is_err());
}

#[test]
fn nested_pocket_recursion() {
    let poly = notched_square();
    let bx = AxisBox::cube(2, -1.0, 5.0).unwrap();
    assert!(matches!(hull_composite(&poly, &bx, 0.05, 0), Err(Error::RecursionLimit { limit: 0 })));
    let r = hull_composite(&poly, &bx, 0.05, DEFAULT_MAX_RECURSION).unwrap();
    assert_eq!(r.parts.iter().map(|p| p.depth).max(), Some(2));
    let net = &r.network;
    for (x, want) in [
        ([0.5, 0.5], 0.0),
        ([1.5, 1.5], 1.0),
        ([2.5, 3.0], 1.0),
        ([2.8, 1.3], 0.0),
        ([2.5, 1.8], 0.0),
        ([4.5, 4.5], 1.0),
        ([3.5, 3.5], 0.0),
    ] {
        assert!((net.eval(&x).unwrap() - want).abs() < 1e-12, "{x:?}");
    }
    for x in scatter(&bx, 20_000, 9) {
        let v = net.eval(&x).unwrap();
        let p = [x[0], x[1]];
        if poly.boundary_distance(p) > 0.05 + 1e-9 {
            assert!((v - if poly.contains(p) { 0.0 } else { 1.0 }).abs() < 1e-12);
        }
    }
}

#[test]
fn nested_pocket_dips_below_zero_at_inner_hull_vertex() {
    // Outside the notch hull at its corner (3, 2) the hull ramp and the inner
    // triangle's ramp overlap, so the pocket term exceeds one.
    let bx = AxisBox::cube(2, -1.0, 5.0).unwrap();
    let r = hull_composite(&notched_square(), &bx, 0.05, DEFAULT_MAX_RECURSION).unwrap();
    assert!((r.network.eval(&[3.02, 1.99]).unwrap() + 0.4).abs() < 1e-12);
}

#[test]
fn piecewise_coefficients() {
    let bx = AxisBox::unit(2);
    let a = rect(0.1, 0.1, 0.4, 0.4, &bx);
    let b = rect(0.6, 0.5, 0.9, 0.9, &bx);
    let spec = PiecewiseConstantSpec::new(
        vec![
            (2.0, pwc_relu::geometry::RegionSpec::polytope(bx.clone(), a.clone()).unwrap()),
            (-3.0, pwc_relu::geometry::RegionSpec::polytope(bx.clone(), b.clone()).unwrap()),
        ],
        bx.clone(),
    )
    .unwrap();
    spec.check_disjoint(10_000, 1).unwrap();
    let nets = vec![region_indicator(a.faces(), 0.05).unwrap(), region_indicator(b.faces(), 0.05).unwrap()];
    let n = piecewise_composite(&spec, &nets).unwrap();
    assert!((n.eval(&[0.25, 0.25]).unwrap() - 2.0).abs() < 1e-12);
    assert!((n.eval(&[0.75, 0.7]).unwrap() + 3.0).abs() < 1e-12);
    assert_eq!(n.eval(&[0.5, 0.05]).unwrap(), 0.0);
    assert!(piecewise_composite(&spec, &nets[..1]).is_err());
    let zero = PiecewiseConstantSpec::new(
        vec![
            (0.0, pwc_relu::geometry::RegionSpec::polytope(bx.clone(), a).unwrap()),
            (0.0, pwc_relu::geometry::RegionSpec::polytope(bx.clone(), b).unwrap()),
        ],
        bx.clone(),
    )
    .unwrap();
    let z = piecewise_composite(&zero, &nets).unwrap();
    for x in scatter(&bx, 1000, 2) {
        assert_eq!(z.eval(&x).unwrap(), 0.0);
    }
    let single = PiecewiseConstantSpec::new(vec![(1.0, pwc_relu::geometry::RegionSpec::everything(bx.clone()))], bx.clone()).unwrap();
    let one = piecewise_composite(&single, &nets[..1]).unwrap();
    for x in scatter(&bx, 1000, 4) {
        assert_eq!(one.eval(&x).unwrap(), nets[0].eval(&x).unwrap());
    }
}

#[test]
fn convex_indicator_exact_zero_and_range() {
    let hs: Vec<Hyperplane> = (0..7)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 7.0;
            Hyperplane::new(vec![t.cos(), t.sin()], 0.3).unwrap()
        })
        .collect();
    let bx = AxisBox::cube(2, -1.0, 1.0).unwrap();
    let n = convex_indicator(&hs, 0.07).unwrap();
    for x in scatter(&bx, 20_000, 21) {
        let v = n.eval(&x).unwrap();
        assert!((0.0..=1.0).contains(&v));
        if hs.iter().all(|h| h.eval(&x) < 0.0) {
            assert_eq!(v, 0.0);
        }
        if hs.iter().map(|h| h.eval(&x).max(0.0)).sum::<f64>() >= 0.07 * (1.0 + 1e-12) {
            assert_eq!(v, 1.0);
        }
    }
}

#[test]
fn large_epsilon_warns() {
    let bx = AxisBox::unit(2);
    let sq = pwc_relu::geometry::polygon::SimplePolygon::new(vec![[0.1, 0.1], [0.9, 0.1], [0.9, 0.9], [0.1, 0.9]]).unwrap();
    let r = hull_composite(&sq, &bx, 5.0, DEFAULT_MAX_RECURSION).unwrap();
    assert_eq!(r.warnings.len(), 1);
}
