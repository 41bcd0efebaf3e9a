//! Normalization subroutines, the flattening and reduction pipelines,
//! and the transcript bookkeeping.

mod support;

use braidtile_core::corpus::{grow_all_aa_disc, grow_discs, GrowthPlan};
use braidtile_core::error::ReduceError;
use braidtile_core::fixtures;
use braidtile_core::graphs::build_graph;
use braidtile_core::moves::MoveKind;
use braidtile_core::reduction::{
    eliminate_ab_vertex, eliminate_interior_pm, make_special_markov, reduce_unknot_markov,
    reduce_unlink, PipelineError, Summary, Transcript,
};
use braidtile_core::tiling::{Sign, TileKind, Tiling};
use support::assert_valid;

fn count(steps: &[braidtile_core::moves::MoveRecord], kind: MoveKind) -> usize {
    steps.iter().filter(|s| s.kind == kind).count()
}

// ------------------------------------------------------------------
// eliminate_interior_pm
// ------------------------------------------------------------------

#[test]
fn interior_block_vertex_of_valence_two_takes_one_exchange() {
    let t = fixtures::fig4_3b();
    let (after, moves) = eliminate_interior_pm(&t, 15.into()).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0].kind, MoveKind::ExchangeBb);
    assert!(after.vertex(15.into()).is_none());
    assert!(after.vertex_count() < t.vertex_count());
    assert_valid(&after, "after elimination");
}

/// Grow corpus instances, then deliberately raise the valence of an
/// interior vertex by re-cutting one of its tiles against a same-sign
/// neighbor (a re-cut chord landing on a vertex raises its valence).
fn inflated_interior_site() -> Option<(Tiling, braidtile_core::tiling::VertexId, usize)> {
    use braidtile_core::moves::{change_of_foliation, Variant};
    use braidtile_core::tiling::{derive_adjacency, vertex_star};
    for seed in 0..300u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 7,
                pita_weight: 45,
                ..GrowthPlan::default()
            },
        );
        let Ok(edges) = derive_adjacency(&t) else {
            continue;
        };
        let interiors: Vec<_> = t
            .vertices()
            .map(|v| v.id)
            .filter(|v| {
                vertex_star(&t, &edges, *v)
                    .map(|s| s.is_interior() && s.sign_changes() == 2)
                    .unwrap_or(false)
            })
            .collect();
        for e in &edges.b_edges {
            let (a, b) = (e.out_side.tile, e.in_side.tile);
            if a == b || t.tile(a).unwrap().sign != t.tile(b).unwrap().sign {
                continue;
            }
            for variant in [Variant::First, Variant::Rotated] {
                let Ok((next, _)) = change_of_foliation(&t, a, b, e.ends, variant) else {
                    continue;
                };
                let Ok(next_edges) = derive_adjacency(&next) else {
                    continue;
                };
                for v in &interiors {
                    let Ok(star) = vertex_star(&next, &next_edges, *v) else {
                        continue;
                    };
                    if star.is_interior()
                        && star.sign_changes() == 2
                        && star.valence() > 2
                        && eliminate_interior_pm(&next, *v).is_ok()
                    {
                        return Some((next, *v, star.valence()));
                    }
                }
            }
        }
    }
    None
}

#[test]
fn interior_elimination_merges_like_signs_first() {
    let (t, v, valence) =
        inflated_interior_site().expect("an inflatable interior vertex exists in the corpus");
    assert_valid(&t, "inflated instance");
    let (after, moves) = eliminate_interior_pm(&t, v).unwrap();
    assert_eq!(count(&moves, MoveKind::ChangeOfFoliation), valence - 2);
    assert_eq!(count(&moves, MoveKind::ExchangeBb), 1);
    assert!(after.vertex_count() < t.vertex_count());
    assert!(after.vertex(v).is_none());
    assert_valid(&after, "after elimination");
}

#[test]
fn interior_elimination_rejects_bad_shapes() {
    let t = fixtures::fig4_3a();
    // Vertex 2 is not interior.
    assert!(matches!(
        eliminate_interior_pm(&t, 2.into()),
        Err(ReduceError::IneligibleSite { .. })
    ));
    // An all-plus star (invalid tiling anyway) is not a one-block site.
    let base = fixtures::pocket_pair();
    let bad = Tiling::build(
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
            .collect(),
    )
    .unwrap();
    assert!(matches!(
        eliminate_interior_pm(&bad, 2.into()),
        Err(ReduceError::IneligibleSite { .. })
    ));
}

// ------------------------------------------------------------------
// eliminate_ab_vertex
// ------------------------------------------------------------------

#[test]
fn type_a_vertex_destabilizes_directly() {
    let t = fixtures::fig4_3a();
    let (after, moves) = eliminate_ab_vertex(&t, 1.into()).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0].kind, MoveKind::DestabilizeA);
    assert_eq!(after.braid_index(), 3);
}

#[test]
fn opposite_sign_ab_vertex_exchanges() {
    // Vertex 14 of the pocket fixture has type (a,b), signs (+,-).
    let t = fixtures::fig4_3b();
    let (after, moves) = eliminate_ab_vertex(&t, 14.into()).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0].kind, MoveKind::ExchangeAb);
    assert_eq!(moves[0].delta_n, 0);
    assert_valid(&after, "after exchange");
}

#[test]
fn equal_sign_ab_vertex_collapses_then_destabilizes() {
    // Reuse the hand-built collapse disc from the move tests: vertex 1
    // has type (a,b) and equal signs.
    let t = collapse_site_fixture();
    let (after, moves) = eliminate_ab_vertex(&t, 1.into()).unwrap();
    let kinds: Vec<MoveKind> = moves.iter().map(|m| m.kind).collect();
    assert_eq!(kinds, vec![MoveKind::CfCollapseAb, MoveKind::DestabilizeA]);
    assert_eq!(moves[1].delta_n, -1);
    assert_valid(&after, "after collapse chain");
}

fn collapse_site_fixture() -> Tiling {
    use braidtile_core::tiling::{AxisVertex, BoundaryPoint, Tile};
    let vx = |id: u32, rank: u32, parity| AxisVertex {
        id: id.into(),
        axis_rank: rank,
        parity,
    };
    let pt = |id: u32, rank: u32| BoundaryPoint {
        id: id.into(),
        component: 0,
        link_rank: rank,
    };
    let ab = |id: u32, sign, theta, vs: [u32; 3], e: u32| Tile {
        id: id.into(),
        kind: TileKind::Ab,
        sign,
        theta_rank: theta,
        vertices: vs.iter().map(|v| (*v).into()).collect(),
        endpoints: vec![e.into()],
    };
    Tiling::build(
        2,
        0,
        vec![
            vx(1, 1, Sign::Plus),
            vx(2, 2, Sign::Minus),
            vx(3, 0, Sign::Plus),
            vx(4, 3, Sign::Plus),
        ],
        vec![pt(5, 0), pt(6, 1), pt(7, 2)],
        vec![
            ab(9, Sign::Plus, 0, [4, 2, 1], 6),
            ab(8, Sign::Plus, 1, [1, 2, 3], 5),
            ab(10, Sign::Minus, 2, [3, 2, 4], 7),
        ],
    )
    .unwrap()
}

#[test]
fn multi_a_vertices_are_rejected() {
    let t = fixtures::fig4_3a();
    assert!(matches!(
        eliminate_ab_vertex(&t, 2.into()),
        Err(ReduceError::IneligibleSite { .. })
    ));
}

// ------------------------------------------------------------------
// make_special_markov
// ------------------------------------------------------------------

#[test]
fn flattening_the_pocket_fixture_costs_its_negative_vertices() {
    let t = fixtures::fig4_3b();
    let negatives = t.vertices().filter(|v| v.parity == Sign::Minus).count();
    assert_eq!(negatives, 2);
    let (flat, transcript) = make_special_markov(&t).unwrap();
    assert_eq!(transcript.steps.len(), negatives);
    assert!(transcript
        .steps
        .iter()
        .all(|s| s.kind == MoveKind::StabilizeAb));
    assert!(flat.tiles().all(|tile| tile.kind == TileKind::Aa));
    assert_eq!(flat.braid_index(), t.braid_index() + negatives as u32);
    assert_valid(&flat, "flattened");
}

#[test]
fn flattening_counts_negative_vertices_on_corpus() {
    for seed in 700..760u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 6,
                pita_weight: 30,
                ..GrowthPlan::default()
            },
        );
        let negatives = t.vertices().filter(|v| v.parity == Sign::Minus).count();
        let (flat, transcript) = make_special_markov(&t).unwrap();
        assert_eq!(transcript.steps.len(), negatives, "seed {seed}");
        assert!(
            flat.tiles().all(|tile| tile.kind == TileKind::Aa),
            "seed {seed}"
        );
        assert!(transcript.verify_chain(), "seed {seed}");
    }
}

#[test]
fn flattening_all_aa_input_is_identity() {
    let t = fixtures::fig4_3a();
    let (flat, transcript) = make_special_markov(&t).unwrap();
    assert!(transcript.steps.is_empty());
    assert_eq!(flat, t);
}

#[test]
fn flattening_rejects_closed_components() {
    // A bb tile with no ab tile on its component means the component is
    // closed: two saddles on four vertices glued into a sphere.
    use braidtile_core::tiling::{AxisVertex, Tile};
    let vx = |id: u32, rank: u32, parity| AxisVertex {
        id: id.into(),
        axis_rank: rank,
        parity,
    };
    let bb = |id: u32, sign, theta, vs: [u32; 4]| Tile {
        id: id.into(),
        kind: TileKind::Bb,
        sign,
        theta_rank: theta,
        vertices: vs.iter().map(|v| (*v).into()).collect(),
        endpoints: vec![],
    };
    let sphere = Tiling::build(
        1,
        0,
        vec![
            vx(1, 0, Sign::Plus),
            vx(2, 1, Sign::Minus),
            vx(3, 2, Sign::Plus),
            vx(4, 3, Sign::Minus),
        ],
        vec![],
        vec![
            bb(5, Sign::Plus, 0, [1, 2, 3, 4]),
            bb(6, Sign::Minus, 1, [3, 2, 1, 4]),
        ],
    )
    .unwrap();
    assert!(matches!(
        make_special_markov(&sphere),
        Err(PipelineError::Precondition(ReduceError::ClosedComponent))
    ));
}

// ------------------------------------------------------------------
// reduce_unknot_markov
// ------------------------------------------------------------------

#[test]
fn petal_fixture_reduces_by_destabilizations_only() {
    let (after, transcript) = reduce_unknot_markov(&fixtures::fig4_3a()).unwrap();
    assert_eq!(count(&transcript.steps, MoveKind::StabilizeAb), 0);
    assert_eq!(count(&transcript.steps, MoveKind::DestabilizeA), 3);
    assert_eq!(after.braid_index(), 1);
    assert_eq!(after.trivial_discs(), 1);
}

#[test]
fn trivial_disc_reduces_trivially() {
    let (after, transcript) = reduce_unknot_markov(&fixtures::trivial_disc(1)).unwrap();
    assert!(transcript.steps.is_empty());
    assert_eq!(after.braid_index(), 1);
}

#[test]
fn unknot_pipeline_rejects_multi_component_input() {
    assert!(matches!(
        reduce_unknot_markov(&fixtures::trivial_disc(2)),
        Err(PipelineError::Precondition(ReduceError::NotADisc { .. }))
    ));
}

#[test]
fn all_aa_discs_keep_forest_graphs_through_the_run() {
    for seed in 800..820u64 {
        let mut t = grow_all_aa_disc(seed, 3 + (seed % 4) as usize);
        loop {
            for delta in [Sign::Plus, Sign::Minus] {
                let g = build_graph(&t, Sign::Plus, delta);
                // Forest: edges + components = nodes.
                let pairs: Vec<_> = g.edges.iter().map(|e| e.ends).collect();
                let mut nodes: Vec<_> = g.nodes.iter().copied().collect();
                nodes.sort();
                nodes.dedup();
                let mut parent: Vec<usize> = (0..nodes.len()).collect();
                fn find(p: &mut [usize], i: usize) -> usize {
                    let mut r = i;
                    while p[r] != r {
                        r = p[r];
                    }
                    r
                }
                let mut cycle = false;
                for (a, b) in pairs {
                    let ia = nodes.binary_search(&a).unwrap();
                    let ib = nodes.binary_search(&b).unwrap();
                    let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
                    if ra == rb {
                        cycle = true;
                    } else {
                        parent[ra] = rb;
                    }
                }
                assert!(!cycle, "seed {seed}: cycle in G(+,{delta})");
            }
            // Step one destabilization at a time.
            let site = t
                .vertices()
                .map(|v| v.id)
                .find(|v| braidtile_core::moves::destabilize_a(&t, *v).is_ok());
            match site {
                Some(v) => t = braidtile_core::moves::destabilize_a(&t, v).unwrap().0,
                None => break,
            }
        }
        assert_eq!(t.singularity_count(), 0, "seed {seed}");
    }
}

// ------------------------------------------------------------------
// reduce_unlink
// ------------------------------------------------------------------

#[test]
fn worked_example_transcript_is_exact() {
    let (final_t, transcript) = reduce_unlink(&fixtures::fig4_3c()).unwrap();
    let listed: Vec<(MoveKind, u32)> = transcript
        .steps
        .iter()
        .map(|s| (s.kind, s.site[0]))
        .collect();
    assert_eq!(
        listed,
        vec![
            (MoveKind::ExchangeBb, 27),
            (MoveKind::ExchangeBb, 31),
            (MoveKind::ExchangeBb, 15),
            (MoveKind::ExchangeBb, 19),
            (MoveKind::DestabilizeA, 1),
            (MoveKind::DestabilizeA, 3),
            (MoveKind::DestabilizeA, 4),
        ]
    );
    assert_eq!(final_t.braid_index(), 1);
    assert_eq!(final_t.trivial_discs(), 1);
}

#[test]
fn trivial_unlink_reduces_trivially() {
    let (after, transcript) = reduce_unlink(&fixtures::trivial_disc(3)).unwrap();
    assert!(transcript.steps.is_empty());
    assert_eq!(after.braid_index(), 3);
    assert_eq!(after.trivial_discs(), 3);
}

#[test]
fn unlink_rejects_non_disc_input() {
    assert!(matches!(
        reduce_unlink(&fixtures::bb_torus()),
        Err(PipelineError::Precondition(_))
    ));
}

#[test]
fn unlink_corpus_terminates_with_monotone_vertex_count() {
    for seed in 900..980u64 {
        let plan = GrowthPlan {
            components: 1 + (seed % 2) as u32,
            ops: 4 + (seed % 6) as usize,
            pita_weight: 25,
            ..GrowthPlan::default()
        };
        let t = grow_discs(seed, plan);
        let (final_t, transcript) = match reduce_unlink(&t) {
            Ok(x) => x,
            Err(e) => panic!("seed {seed}: {e:?}"),
        };
        assert_eq!(final_t.singularity_count(), 0, "seed {seed}");
        assert_eq!(
            final_t.braid_index(),
            final_t.trivial_discs(),
            "seed {seed}"
        );
        assert!(transcript.verify_chain(), "seed {seed}");
        // V never increases, and strictly decreases at every exchange
        // and destabilization; no stabilization appears.
        let mut v = i64::from(transcript.initial.vertex_count);
        for step in &transcript.steps {
            assert_ne!(step.kind, MoveKind::StabilizeAb, "seed {seed}");
            let next = v + step.delta_v;
            match step.kind {
                MoveKind::ExchangeAb | MoveKind::ExchangeBb | MoveKind::DestabilizeA => {
                    assert!(next < v, "seed {seed}: non-decreasing step")
                }
                _ => assert_eq!(next, v, "seed {seed}"),
            }
            v = next;
        }
        // Move accounting across the transcript.
        let stabs = count(&transcript.steps, MoveKind::StabilizeAb) as i64;
        let destabs = count(&transcript.steps, MoveKind::DestabilizeA) as i64;
        let exchanges = (count(&transcript.steps, MoveKind::ExchangeAb)
            + count(&transcript.steps, MoveKind::ExchangeBb)) as i64;
        assert_eq!(
            i64::from(transcript.final_state.braid_index),
            i64::from(transcript.initial.braid_index) + stabs - destabs,
            "seed {seed}"
        );
        assert_eq!(
            i64::from(transcript.final_state.vertex_count),
            i64::from(transcript.initial.vertex_count) - stabs - destabs - 2 * exchanges,
            "seed {seed}"
        );
    }
}

#[test]
fn reduction_is_deterministic() {
    for seed in [17u64, 42, 99] {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 7,
                pita_weight: 30,
                ..GrowthPlan::default()
            },
        );
        let (a_t, a) = reduce_unlink(&t).unwrap();
        let (b_t, b) = reduce_unlink(&t).unwrap();
        assert_eq!(a, b);
        assert_eq!(a_t, b_t);
    }
}

// ------------------------------------------------------------------
// Transcript plumbing
// ------------------------------------------------------------------

#[test]
fn transcript_text_round_trips_summaries() {
    let (_, transcript) = reduce_unlink(&fixtures::fig4_3c()).unwrap();
    let text = transcript.to_text();
    assert!(text.starts_with("initial V=12 t=11 n=4"));
    assert!(text.lines().count() == 2 + transcript.steps.len());
    assert!(text.ends_with("final V=1 t=0 n=1 discs=1 components=1 chi=1"));
}

#[test]
fn broken_chains_are_detected() {
    let (_, mut transcript) = reduce_unlink(&fixtures::fig4_3c()).unwrap();
    assert!(transcript.verify_chain());
    transcript.steps[0].delta_v = 0;
    assert!(!transcript.verify_chain());
}

#[test]
fn summary_captures_the_state() {
    let s = Summary::of(&fixtures::fig4_3a());
    assert_eq!(
        (s.vertex_count, s.singularities, s.braid_index, s.components),
        (4, 3, 4, 1)
    );
    assert_eq!(s.chi, vec![1]);
    let t = Transcript {
        initial: s.clone(),
        steps: vec![],
        final_state: s,
    };
    assert!(t.verify_chain());
}
