//! The four singular-leaf graphs and their structural facts.

mod support;

use braidtile_core::corpus::{grow_discs, GrowthPlan};
use braidtile_core::fixtures;
use braidtile_core::graphs::{build_graph, graph_report, GraphNode, LoopCheck};
use braidtile_core::tiling::{derive_adjacency, Sign, Tile, Tiling};

#[test]
fn petal_fixture_graphs() {
    let t = fixtures::fig4_3a();
    // All tiles positive: G(+,+) joins the two plus vertices of each
    // tile into the star tree around the center vertex.
    let gpp = build_graph(&t, Sign::Plus, Sign::Plus);
    assert_eq!(gpp.edges.len(), 3);
    assert!(gpp.edges.iter().all(
        |e| e.ends.0 == GraphNode::Vertex(2.into()) || e.ends.1 == GraphNode::Vertex(2.into())
    ));
    // Negative-side graphs see the boundary only: boundary-to-boundary
    // edges in the positive tiles, no vertex nodes at all.
    let gmp = build_graph(&t, Sign::Minus, Sign::Plus);
    assert_eq!(gmp.edges.len(), 3);
    assert!(gmp
        .nodes
        .iter()
        .all(|n| matches!(n, GraphNode::Boundary(_))));
    // No negative tiles: G(+,-) has no edges, every plus vertex idles.
    let gpm = build_graph(&t, Sign::Plus, Sign::Minus);
    assert!(gpm.edges.is_empty());
    assert_eq!(gpm.nodes.len(), 4);
    assert_eq!(gpm.isolated().count(), 4);
}

#[test]
fn pocket_fixture_graph_shapes() {
    let t = fixtures::fig4_3b();
    // The negative pocket tiles hang their minus vertices on the
    // boundary in G(-,-).
    let gmm = build_graph(&t, Sign::Minus, Sign::Minus);
    assert_eq!(gmm.edges.len(), 2);
    for e in &gmm.edges {
        let vertexish = |n: &GraphNode| matches!(n, GraphNode::Vertex(_));
        assert!(vertexish(&e.ends.0) ^ vertexish(&e.ends.1));
    }
    // Plus vertices of the negative tiles pair up in G(+,-).
    let gpm = build_graph(&t, Sign::Plus, Sign::Minus);
    assert_eq!(gpm.edges.len(), 2);
}

#[test]
fn report_on_petal_fixture_is_clean() {
    let t = fixtures::fig4_3a();
    let edges = derive_adjacency(&t).unwrap();
    let report = graph_report(&t, &edges);
    assert!(report.disjointness);
    assert!(report.tile_coverage);
    assert!(report.vertex_coverage);
    assert!(report.no_isolated_interior);
    for f in &report.facts {
        assert!(f.is_forest, "G({},{})", f.eps, f.delta);
        assert_eq!(f.bounding_loops, LoopCheck::NoLoop);
        assert!(f.isolated_interior.is_empty());
        assert!(f.endpoint_interior.is_empty());
    }
}

#[test]
fn empty_tiling_report_is_vacuous() {
    let t = fixtures::trivial_disc(2);
    let edges = derive_adjacency(&t).unwrap();
    let report = graph_report(&t, &edges);
    assert!(report.disjointness && report.tile_coverage && report.vertex_coverage);
    for f in &report.facts {
        assert_eq!(f.component_count, 0);
        assert!(f.is_forest);
    }
}

#[test]
fn one_sign_star_shows_up_as_isolated_interior_vertex() {
    // Free pocket with both saddles positive: its interior minus vertex
    // is isolated in G(-,-).
    let base = fixtures::pocket_pair();
    let t = Tiling::build(
        1,
        0,
        base.vertices().cloned().collect(),
        base.points().cloned().collect(),
        base.tiles()
            .map(|tile| {
                let mut tile = tile.clone();
                tile.sign = Sign::Plus;
                tile
            })
            .collect::<Vec<Tile>>(),
    )
    .unwrap();
    let edges = derive_adjacency(&t).unwrap();
    let report = graph_report(&t, &edges);
    assert!(!report.no_isolated_interior);
    let gmm = &report.facts[3];
    assert_eq!((gmm.eps, gmm.delta), (Sign::Minus, Sign::Minus));
    assert_eq!(gmm.isolated_interior, vec![2.into()]);
}

#[test]
fn edge_counts_match_brute_force_scan() {
    for seed in 300..340u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 6,
                pita_weight: 25,
                ..GrowthPlan::default()
            },
        );
        for eps in [Sign::Plus, Sign::Minus] {
            for delta in [Sign::Plus, Sign::Minus] {
                let g = build_graph(&t, eps, delta);
                let expected = t
                    .tiles()
                    .filter(|tile| tile.kind.is_spanning() && tile.sign == delta)
                    .count();
                assert_eq!(g.edges.len(), expected, "seed {seed} G({eps},{delta})");
            }
        }
    }
}

#[test]
fn coverage_and_disjointness_hold_on_corpus() {
    for seed in 400..440u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 6,
                pita_weight: 25,
                ..GrowthPlan::default()
            },
        );
        let edges = derive_adjacency(&t).unwrap();
        let report = graph_report(&t, &edges);
        assert!(report.disjointness, "seed {seed}");
        assert!(report.tile_coverage, "seed {seed}");
        assert!(report.vertex_coverage, "seed {seed}");
        assert!(report.no_isolated_interior, "seed {seed}");
    }
}

#[test]
fn global_sign_flip_swaps_the_delta_graphs() {
    // Reversing fiber orientation (all tile signs) maps G(e,+) to G(e,-)
    // with identical combinatorics.
    for seed in 500..520u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 5,
                ..GrowthPlan::default()
            },
        );
        let flipped = Tiling::build(
            t.braid_index(),
            t.trivial_discs(),
            t.vertices().cloned().collect(),
            t.points().cloned().collect(),
            t.tiles()
                .map(|tile| {
                    let mut tile = tile.clone();
                    tile.sign = tile.sign.flip();
                    tile
                })
                .collect(),
        )
        .unwrap();
        for eps in [Sign::Plus, Sign::Minus] {
            let a = build_graph(&t, eps, Sign::Plus);
            let b = build_graph(&flipped, eps, Sign::Minus);
            assert_eq!(a.nodes, b.nodes, "seed {seed}");
            assert_eq!(a.edges, b.edges, "seed {seed}");
        }
    }
}

#[test]
fn graph_text_is_stable_and_line_oriented() {
    let t = fixtures::fig4_3a();
    let g = build_graph(&t, Sign::Plus, Sign::Plus);
    let text = g.to_text();
    assert!(text.starts_with("graph eps=+ delta=+\n"));
    assert_eq!(text, g.to_text());
    assert_eq!(text.lines().count(), 1 + g.nodes.len() + g.edges.len());
}

#[test]
fn coverage_facts_hold_under_moves() {
    // Re-check disjointness, coverage and no-isolated-interior across a
    // move chain, not just static instances.
    let mut t = fixtures::fig4_3c();
    for v in [27u32, 31, 15, 19] {
        let edges = derive_adjacency(&t).unwrap();
        let report = graph_report(&t, &edges);
        assert!(report.disjointness && report.tile_coverage && report.vertex_coverage);
        assert!(report.no_isolated_interior);
        let (next, _) = braidtile_core::moves::exchange_bb(&t, v.into()).unwrap();
        t = next;
    }
}
