mod common;

use pwc_relu::construct::{convex_indicator, halfspace_ramp};
use pwc_relu::geometry::{polygonalize_circle_inscribed, AxisBox, Hyperplane};
use pwc_relu::io::{breakline_geometry, load_network, network_from_json, network_to_json, save_network};
use pwc_relu::network::{first_layer_cells, restrict_to_slice, ReluNetwork};
use pwc_relu::scenarios::{build, Scenario};

#[test]
fn ramp_break_lines_are_eps_apart() {
    let h = Hyperplane::new(vec![1.0, 0.0], 0.5).unwrap();
    for eps in [0.1, 0.01, 1.0 / 3.0] {
        let doc = breakline_geometry(&halfspace_ramp(&h, eps).unwrap(), &AxisBox::unit(2)).unwrap();
        assert_eq!(doc.first_layer.len(), 1);
        assert!(common::offset_vertex_error(&doc, std::slice::from_ref(&h), eps) <= 1e-9);
        let seg = &doc.second_layer[0].segments[0];
        assert!((seg.a[0] - (0.5 + eps)).abs() <= 1e-12 && (seg.b[0] - (0.5 + eps)).abs() <= 1e-12);
    }
}

#[test]
fn hexagon_offset_polyline() {
    let eps = 1.0 / 25.0;
    let hs = polygonalize_circle_inscribed([0.5, 0.5], 0.25, 6).unwrap();
    let doc = breakline_geometry(&convex_indicator(&hs, eps).unwrap(), &AxisBox::unit(2)).unwrap();
    assert_eq!(doc.first_layer.len(), 6);
    let segs = &doc.second_layer[0].segments;
    // six parallel edges and six chamfers at the junction cells
    assert_eq!(segs.len(), 12);
    assert!(common::offset_vertex_error(&doc, &hs, eps) <= 1e-9);
    let length: f64 = segs.iter().map(|s| (s.b[0] - s.a[0]).hypot(s.b[1] - s.a[1])).sum();
    // edges keep length 0.25; each chamfer joins two offset points ε from the vertex
    assert!(length > 6.0 * 0.25 && length < 6.0 * 0.25 + 6.0 * 2.0 * eps);
}

#[test]
fn cell_count_for_hexagon() {
    let hs = polygonalize_circle_inscribed([0.5, 0.5], 0.25, 6).unwrap();
    let net = convex_indicator(&hs, 0.04).unwrap();
    // 1 + lines + crossings: the twelve non-parallel pairs all meet inside the box
    assert_eq!(first_layer_cells(&net, &AxisBox::unit(2)).unwrap().len(), 19);
}

fn assert_bitwise(a: &ReluNetwork, b: &ReluNetwork, bx: &AxisBox) {
    let pts = common::scatter(bx, 10_000, 17);
    let va = a.eval_batch(&pts).unwrap();
    let vb = b.eval_batch(&pts).unwrap();
    assert!(va.iter().zip(&vb).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn save_load_preserves_eval_bits() {
    let tmp = tempfile::tempdir().unwrap();
    for s in [
        Scenario::Circle { n: 50, eps: 1.0 / 2000.0 },
        Scenario::Sphere { n: 100, eps: 1.0 / 100.0 },
        Scenario::HShape { method: pwc_relu::scenarios::HShapeMethod::Decomposition, eps: 1.0 / 12.0 },
    ] {
        let b = build(&s).unwrap();
        let path = tmp.path().join(format!("{}.json", s.preset()));
        save_network(&path, &b.construction.network).unwrap();
        let back = load_network(&path).unwrap();
        assert_eq!(back.shape(), b.construction.network.shape());
        assert_bitwise(&b.construction.network, &back, &b.ambient);
    }
}

#[test]
fn sparse_round_trip() {
    let b = build(&Scenario::Hypercube { d: 10_000, eps: 1.0 / 200.0 }).unwrap();
    let text = network_to_json(&b.construction.network).unwrap();
    assert!(text.contains("\"sparse\""));
    assert!(text.len() < 2_000_000);
    let back = network_from_json(&text).unwrap();
    assert!(back.layers()[0].is_sparse());
    let pts = common::scatter(&b.ambient, 200, 3);
    for x in &pts {
        assert_eq!(back.eval(x).unwrap().to_bits(), b.construction.network.eval(x).unwrap().to_bits());
    }
}

#[test]
fn slice_of_hypercube_is_small() {
    let d = 10_000;
    let b = build(&Scenario::Hypercube { d, eps: 1.0 / 20.0 }).unwrap();
    let mut fixed = vec![0.255; d];
    fixed[0] = 0.0;
    fixed[1] = 0.0;
    let s = restrict_to_slice(&b.construction.network, &[0, 1], &fixed).unwrap();
    assert_eq!(s.shape(), [2, 2, 1, 1]);
    for x in common::scatter(&AxisBox::unit(2), 1000, 8) {
        let mut full = fixed.clone();
        full[0] = x[0];
        full[1] = x[1];
        assert!((s.eval(&x).unwrap() - b.construction.network.eval(&full).unwrap()).abs() <= 1e-12);
    }
}
