//! Integration fixtures for pipeline branches that the small exhaustive
//! sets cannot reach: cut arcs need a bridged cubic graph (at least 10
//! vertices), 7-regular squares need a tailored prism orientation, and
//! larger random instances exercise the dispatch end to end.

use ocol::dipath::{build_square, two_dipath_seven_colouring, SevenCase};
use ocol::eight::{colour_triangle_free, oriented_eight_colouring, EightCase};
use ocol::graph::{
    structural_profile, validate_oriented_colouring, validate_two_dipath_colouring, OrientedGraph,
};
use ocol::gen::random_cubic_orientation;
use ocol::oracle::{exact_oriented_chromatic, exact_two_dipath_chromatic, OracleConfig};

/// Cube graph oriented along a Hamiltonian cycle (Gray-code order) with
/// the leftover perfect matching oriented low-to-high, one matching edge
/// subdivided. Every vertex keeps in- and out-degree at least 1 and the
/// subdivision vertex has degree 2.
fn subdivided_cube(offset: usize, sub: usize) -> Vec<(usize, usize)> {
    let cycle = [0usize, 1, 3, 2, 6, 7, 5, 4];
    let mut arcs: Vec<(usize, usize)> = (0..8)
        .map(|i| (cycle[i] + offset, cycle[(i + 1) % 8] + offset))
        .collect();
    // Remaining matching: (0,2), (1,5), (3,7), (4,6); subdivide (0,2).
    arcs.push((offset, sub));
    arcs.push((sub, offset + 2));
    for (a, b) in [(1, 5), (3, 7), (4, 6)] {
        arcs.push((a + offset, b + offset));
    }
    arcs
}

/// Triangle-free cubic orientation with a single cut arc: two subdivided
/// cubes joined through their degree-2 vertices.
fn bridged_cubes() -> OrientedGraph {
    let mut arcs = subdivided_cube(0, 8);
    arcs.extend(subdivided_cube(9, 17));
    arcs.push((8, 17));
    OrientedGraph::new(18, &arcs).unwrap()
}

/// Prism over an even cycle with both cycles directed forward and rungs
/// alternating outward/inward; its square is 7-regular.
fn alternating_prism(m: usize) -> OrientedGraph {
    let mut arcs = Vec::new();
    for i in 0..m {
        arcs.push((i, (i + 1) % m));
        arcs.push((m + i, m + (i + 1) % m));
        if i % 2 == 0 {
            arcs.push((i, m + i));
        } else {
            arcs.push((m + i, i));
        }
    }
    OrientedGraph::new(2 * m, &arcs).unwrap()
}

#[test]
fn bridged_fixture_has_the_advertised_shape() {
    let g = bridged_cubes();
    let p = structural_profile(&g);
    assert!(g.is_cubic());
    assert!(p.connected);
    assert!(p.sources.is_empty() && p.sinks.is_empty());
    assert!(p.triangles.is_empty());
    assert_eq!(p.cut_arcs, vec![(8, 17)]);
}

#[test]
fn cut_arc_branch_colours_the_bridged_fixture() {
    let g = bridged_cubes();
    let (col, cert) = colour_triangle_free(&g).unwrap();
    assert!(matches!(
        cert.case,
        EightCase::TriangleFreeCutArc { arc: (8, 17) }
    ));
    assert!(validate_oriented_colouring(&g, &col).unwrap().is_valid());
    assert!(col.palette_size() <= 7);
    let (col2, cert2) = oriented_eight_colouring(&g).unwrap();
    assert!(matches!(cert2.case, EightCase::TriangleFreeCutArc { .. }));
    assert!(validate_oriented_colouring(&g, &col2).unwrap().is_valid());
}

#[test]
fn brooks_branch_fires_on_alternating_prisms() {
    for m in [6usize, 8, 10] {
        let g = alternating_prism(m);
        assert!(build_square(&g).is_regular(7), "m={m}");
        let (col, cert) = two_dipath_seven_colouring(&g).unwrap();
        assert_eq!(cert.components, vec![SevenCase::BrooksSevenRegular]);
        assert!(validate_two_dipath_colouring(&g, &col).unwrap().is_valid());
        assert!(col.palette_size() <= 7);
    }
}

#[test]
fn prisms_also_take_the_eight_colouring_path() {
    for m in [6usize, 8] {
        let g = alternating_prism(m);
        let (col, cert) = oriented_eight_colouring(&g).unwrap();
        assert!(validate_oriented_colouring(&g, &col).unwrap().is_valid());
        assert!(col.palette_size() <= 8);
        // No sources or sinks and the prism has no triangles for m >= 5.
        assert!(matches!(
            cert.case,
            EightCase::TriangleFreeSurgery { .. } | EightCase::TriangleFreeCutArc { .. }
        ));
    }
}

#[test]
fn random_instances_up_to_twenty_vertices() {
    for seed in 0..60u64 {
        let n = [10usize, 14, 20][(seed % 3) as usize];
        let g = random_cubic_orientation(n, seed).unwrap();
        let (c8, _) = oriented_eight_colouring(&g).unwrap();
        assert!(validate_oriented_colouring(&g, &c8).unwrap().is_valid());
        assert!(c8.palette_size() <= 8);
        let (c7, _) = two_dipath_seven_colouring(&g).unwrap();
        assert!(validate_two_dipath_colouring(&g, &c7).unwrap().is_valid());
        assert!(c7.palette_size() <= 7);
        // An oriented colouring is always a valid 2-dipath colouring.
        assert!(validate_two_dipath_colouring(&g, &c8).unwrap().is_valid());
    }
}

/// The 6-vertex catalogue holds K_{3,3} and the prism; the prism is the
/// entry with triangles.
fn prism6() -> ocol::graph::SimpleGraph {
    use ocol::gen::bundled_cubic_catalogue;
    bundled_cubic_catalogue(6)
        .unwrap()
        .into_iter()
        .find(|g| {
            (0..6).any(|a| {
                (a + 1..6).any(|b| {
                    (b + 1..6).any(|c| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))
                })
            })
        })
        .unwrap()
}

#[test]
fn prism_minus_an_edge_always_maps_into_qr7() {
    use ocol::gen::all_orientations;
    use ocol::graph::{SimpleGraph, VertexColouring};
    use ocol::hom::{check_subcubic_target_preconditions, subcubic_qr7, PinSet};

    let prism = prism6();
    let reduced_edges: Vec<(usize, usize)> = prism.edges()[1..].to_vec();
    let reduced = SimpleGraph::new(6, &reduced_edges).unwrap();
    let mut mapped = 0usize;
    for g in all_orientations(&reduced) {
        if check_subcubic_target_preconditions(&g).is_ok() {
            let map = subcubic_qr7(&g, &PinSet::new()).unwrap();
            let col = VertexColouring::new(map);
            assert!(validate_oriented_colouring(&g, &col).unwrap().is_valid());
            mapped += 1;
        }
    }
    assert!(mapped > 0);
}

#[test]
fn triangle_branch_uses_the_extra_colour_at_most_once() {
    use ocol::eight::colour_with_triangle;
    use ocol::gen::all_orientations;

    let prism = prism6();
    let mut exercised = 0usize;
    for g in all_orientations(&prism) {
        if g.sources().is_empty() && g.sinks().is_empty() {
            let (col, _) = colour_with_triangle(&g).unwrap();
            assert!(validate_oriented_colouring(&g, &col).unwrap().is_valid());
            assert!(col.palette_size() <= 8);
            let sevens = col.assignment().iter().filter(|&&c| c == 7).count();
            assert!(sevens <= 1);
            exercised += 1;
        }
    }
    assert!(exercised > 0);
}

#[test]
fn pipelines_never_beat_the_exact_oracles() {
    let cfg = OracleConfig::default();
    for seed in 100..130u64 {
        let g = random_cubic_orientation(8, seed).unwrap();
        let chi_o = exact_oriented_chromatic(&g, &cfg).unwrap().value;
        let chi_2d = exact_two_dipath_chromatic(&g, &cfg).unwrap().value;
        let (c8, _) = oriented_eight_colouring(&g).unwrap();
        let (c7, _) = two_dipath_seven_colouring(&g).unwrap();
        assert!(c8.palette_size() >= chi_o);
        assert!(c7.palette_size() >= chi_2d);
        assert!(chi_o >= chi_2d);
    }
}
