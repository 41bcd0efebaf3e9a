//! The six moves: per-site examples, the delta table, locality, Euler
//! preservation and the change-of-foliation involution.

mod support;

use std::collections::BTreeMap;

use braidtile_core::corpus::{grow_discs, grow_pita, GrowthPlan, Rng};
use braidtile_core::error::MoveError;
use braidtile_core::fixtures;
use braidtile_core::moves::{
    cf_collapse_ab, change_of_foliation, destabilize_a, exchange_ab, exchange_bb, stabilize_ab,
    MoveKind, MoveRecord, Variant,
};
use braidtile_core::tiling::{
    derive_adjacency, euler_and_classification, vertex_star, BEdge, Tile, TileId, TileKind, Tiling,
};
use support::assert_valid;

fn deltas(r: &MoveRecord) -> (i64, i64, i64) {
    (r.delta_v, r.delta_t, r.delta_n)
}

fn classification(t: &Tiling) -> Vec<(i64, u32)> {
    let mut c: Vec<(i64, u32)> = euler_and_classification(t)
        .unwrap()
        .components
        .iter()
        .map(|c| (c.chi, c.boundary_components))
        .collect();
    c.sort();
    c
}

/// Tiles outside the site must be bit-identical; fresh tiles (the pieces
/// a re-cut produces) must not outnumber the allowance.
fn assert_local(before: &Tiling, after: &Tiling, touched: &[TileId], allow_new: usize) {
    let old: BTreeMap<TileId, &Tile> = before.tiles().map(|t| (t.id, t)).collect();
    let mut new = 0;
    for tile in after.tiles() {
        if touched.contains(&tile.id) {
            continue;
        }
        match old.get(&tile.id) {
            Some(orig) => {
                assert_eq!(orig.kind, tile.kind, "tile {} kind changed", tile.id);
                assert_eq!(orig.sign, tile.sign, "tile {} sign changed", tile.id);
                assert_eq!(
                    orig.vertices, tile.vertices,
                    "tile {} vertices changed",
                    tile.id
                );
                assert_eq!(
                    orig.endpoints, tile.endpoints,
                    "tile {} endpoints changed",
                    tile.id
                );
            }
            None => new += 1,
        }
    }
    assert!(
        new <= allow_new,
        "{new} fresh tiles, expected at most {allow_new}"
    );
}

// ------------------------------------------------------------------
// destabilize_a
// ------------------------------------------------------------------

#[test]
fn destabilize_petals_reaches_the_bare_disc() {
    let t = fixtures::fig4_3a();
    let (t1, r1) = destabilize_a(&t, 1.into()).unwrap();
    assert_eq!(deltas(&r1), (-1, -1, -1));
    assert_eq!(t1.vertex_count(), 3);
    assert_eq!(t1.singularity_count(), 2);
    assert_valid(&t1, "after vertex 1");

    let (t2, _) = destabilize_a(&t1, 3.into()).unwrap();
    let (t3, r3) = destabilize_a(&t2, 4.into()).unwrap();
    assert_eq!(deltas(&r3), (-1, -1, -1));
    assert_eq!(t3.trivial_discs(), 1);
    assert_eq!(t3.singularity_count(), 0);
    assert_eq!(t3.braid_index(), 1);
    assert_eq!(t3.vertex_count(), 1);
}

#[test]
fn destabilize_refuses_higher_valence() {
    let t = fixtures::fig4_3a();
    let err = destabilize_a(&t, 2.into()).unwrap_err();
    assert!(matches!(err, MoveError::StarMismatch { .. }));
}

// ------------------------------------------------------------------
// stabilize_ab
// ------------------------------------------------------------------

#[test]
fn stabilize_pocket_tile_deletes_its_negative_vertex() {
    let t = fixtures::fig4_3b();
    // Tile 20 is the pocket tile at vertex 1; its negative vertex is 15,
    // whose other tile (21, also ab) must become aa.
    let (after, record) = stabilize_ab(&t, 20.into()).unwrap();
    assert_eq!(deltas(&record), (-1, -1, 1));
    assert!(after.vertex(15.into()).is_none());
    assert_eq!(after.tile(21.into()).unwrap().kind, TileKind::Aa);
    assert_eq!(after.braid_index(), 5);
    assert_valid(&after, "after stabilization");
    assert_local(&t, &after, &[20.into(), 21.into()], 0);
}

#[test]
fn stabilize_retypes_bb_neighbors_to_ab() {
    // Grow until some minus vertex carries both an ab and a bb corner,
    // then stabilize along the ab tile and watch the bb tile retype.
    let mut found = false;
    'seeds: for seed in 0..400u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 7,
                pita_weight: 40,
                ..GrowthPlan::default()
            },
        );
        for tile in t.tiles().filter(|tile| tile.kind == TileKind::Ab) {
            let v = tile.vertices[1];
            let neighbors: Vec<&Tile> = t
                .tiles()
                .filter(|o| o.id != tile.id && o.vertices.contains(&v))
                .collect();
            if neighbors.iter().any(|o| o.kind == TileKind::Bb) {
                let bb_ids: Vec<TileId> = neighbors
                    .iter()
                    .filter(|o| o.kind == TileKind::Bb)
                    .map(|o| o.id)
                    .collect();
                let (after, record) = stabilize_ab(&t, tile.id).unwrap();
                assert_eq!(deltas(&record), (-1, -1, 1));
                for id in bb_ids {
                    assert_eq!(after.tile(id).unwrap().kind, TileKind::Ab, "seed {seed}");
                }
                assert_valid(&after, &format!("seed {seed}"));
                found = true;
                break 'seeds;
            }
        }
    }
    assert!(found, "no ab tile with a bb neighbor in the corpus");
}

#[test]
fn stabilize_refuses_non_ab() {
    let t = fixtures::fig4_3a();
    assert!(matches!(
        stabilize_ab(&t, 11.into()),
        Err(MoveError::WrongKind { .. })
    ));
}

#[test]
fn stabilize_with_self_paired_b_sides_deletes_only_the_tile() {
    // An ab tile whose two b-sides glue to each other: nothing else
    // meets its negative vertex, so no retyping happens.  (The shape
    // cannot validate — its valence-1 minus vertex has a one-sign
    // star — but the bookkeeping still follows the table.)
    use braidtile_core::tiling::{AxisVertex, BoundaryPoint, Sign};
    let t = Tiling::build(
        1,
        0,
        vec![
            AxisVertex {
                id: 1.into(),
                axis_rank: 0,
                parity: Sign::Plus,
            },
            AxisVertex {
                id: 2.into(),
                axis_rank: 1,
                parity: Sign::Minus,
            },
        ],
        vec![BoundaryPoint {
            id: 3.into(),
            component: 0,
            link_rank: 0,
        }],
        vec![Tile {
            id: 4.into(),
            kind: TileKind::Ab,
            sign: braidtile_core::tiling::Sign::Plus,
            theta_rank: 0,
            vertices: vec![1.into(), 2.into(), 1.into()],
            endpoints: vec![3.into()],
        }],
    )
    .unwrap();
    let (after, record) = stabilize_ab(&t, 4.into()).unwrap();
    assert_eq!(deltas(&record), (-1, -1, 1));
    assert_eq!(after.singularity_count(), 0);
    assert!(after.vertex(2.into()).is_none());
}

// ------------------------------------------------------------------
// exchange moves
// ------------------------------------------------------------------

#[test]
fn exchange_chain_unwinds_the_nested_fixture() {
    let c = fixtures::fig4_3c();
    let (s1, r1) = exchange_bb(&c, 27.into()).unwrap();
    assert_eq!(deltas(&r1), (-2, -2, 0));
    assert_valid(&s1, "after v3");
    let (s2, _) = exchange_bb(&s1, 31.into()).unwrap();
    // Removing both nested pockets lands exactly on the single-pocket
    // fixture, ranks and all.
    assert_eq!(s2, fixtures::fig4_3b());
    let (s3, _) = exchange_bb(&s2, 15.into()).unwrap();
    let (s4, _) = exchange_bb(&s3, 19.into()).unwrap();
    // The survivor is exactly the petal fixture.
    assert_eq!(s4, fixtures::fig4_3a());
}

#[test]
fn exchange_bb_on_nested_pocket_is_refused_until_cleared() {
    let c = fixtures::fig4_3c();
    let err = exchange_bb(&c, 15.into()).unwrap_err();
    assert!(matches!(err, MoveError::PocketNotClean { .. }));
    let (cleared, _) = exchange_bb(&c, 27.into()).unwrap();
    assert!(exchange_bb(&cleared, 15.into()).is_ok());
}

#[test]
fn exchange_bb_requires_opposite_signs() {
    // Rebuild the free pocket with equal signs: precondition fails
    // before any pocket analysis.
    let t = Tiling::build(
        1,
        0,
        fixtures::pocket_pair().vertices().cloned().collect(),
        fixtures::pocket_pair().points().cloned().collect(),
        fixtures::pocket_pair()
            .tiles()
            .map(|tile| {
                let mut tile = tile.clone();
                tile.sign = braidtile_core::tiling::Sign::Plus;
                tile
            })
            .collect(),
    )
    .unwrap();
    let err = exchange_bb(&t, 2.into()).unwrap_err();
    assert!(matches!(err, MoveError::StarMismatch { .. }));
}

#[test]
fn exchange_bb_pita_case() {
    // Hang a bb pocket on a b-edge of the nested fixture and exchange it
    // away again.
    let mut rng = Rng::new(5);
    let base = fixtures::fig4_3c();
    let grown = grow_pita(&base, &mut rng).expect("fixture has b-edges");
    assert_valid(&grown, "pita grown");
    let v = grown
        .vertices()
        .map(|v| v.id)
        .find(|v| {
            base.vertex(*v).is_none() && {
                grown
                    .tiles()
                    .filter(|t| t.vertices.contains(v))
                    .all(|t| t.kind == TileKind::Bb)
                    && grown.tiles().filter(|t| t.vertices.contains(v)).count() == 2
            }
        })
        .expect("fresh interior vertex");
    let (after, record) = exchange_bb(&grown, v).unwrap();
    assert_eq!(record.kind, MoveKind::ExchangeBb);
    assert_eq!(deltas(&record), (-2, -2, 0));
    assert!(after.isomorphic_up_to_ids(&base));
}

#[test]
fn exchange_ab_at_the_plus_vertex_matches_the_interior_exchange() {
    // The same pocket admits the exchange at its type-(a,b) vertex; the
    // results agree.
    let b = fixtures::fig4_3b();
    let (via_bb, _) = exchange_bb(&b, 15.into()).unwrap();
    let (via_ab, record) = exchange_ab(&b, 14.into()).unwrap();
    assert_eq!(record.kind, MoveKind::ExchangeAb);
    assert_eq!(deltas(&record), (-2, -2, 0));
    assert_eq!(via_ab, via_bb);
}

#[test]
fn exchange_ab_requires_opposite_signs() {
    // An equal-sign type-(a,b) vertex belongs to the collapsing change
    // of foliation, not to the exchange.
    let t = collapse_site_fixture();
    assert!(matches!(
        exchange_ab(&t, 1.into()),
        Err(MoveError::StarMismatch { .. })
    ));
    assert!(cf_collapse_ab(&t, 1.into()).is_ok());
}

#[test]
fn exchange_closing_a_component_absorbs_the_leftover_piercing() {
    let t = fixtures::pocket_pair();
    let (after, record) = exchange_bb(&t, 2.into()).unwrap();
    assert_eq!(deltas(&record), (-2, -2, 0));
    assert_eq!(after.trivial_discs(), 1);
    assert_eq!(after.vertex_count(), 1);
    assert_eq!(after.braid_index(), 1);
}

// ------------------------------------------------------------------
// change of foliation
// ------------------------------------------------------------------

/// A disc whose vertex 1 has type (a,b) with equal signs: two positive
/// pocket tiles at vertex 1 share their minus vertex 2 with a third,
/// negative tile, keeping the interior sign mix legal.
fn collapse_site_fixture() -> Tiling {
    use braidtile_core::tiling::{AxisVertex, BoundaryPoint, Sign};
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
            // Fan at vertex 2 runs [9, 8, 10] in fibration order.
            ab(9, Sign::Plus, 0, [4, 2, 1], 6),
            ab(8, Sign::Plus, 1, [1, 2, 3], 5),
            ab(10, Sign::Minus, 2, [3, 2, 4], 7),
        ],
    )
    .unwrap()
}

#[test]
fn cf_collapse_makes_the_vertex_type_a() {
    let t = collapse_site_fixture();
    assert_valid(&t, "collapse fixture");
    let (after, record) = cf_collapse_ab(&t, 1.into()).unwrap();
    assert_eq!(record.kind, MoveKind::CfCollapseAb);
    assert_eq!(deltas(&record), (0, 0, 0));
    assert_valid(&after, "after collapse");
    let edges = derive_adjacency(&after).unwrap();
    let star = vertex_star(&after, &edges, 1.into()).unwrap();
    assert_eq!((star.valence(), star.type_cycle.clone()), (1, vec!['a']));
    // The freed vertex destabilizes away.
    assert!(destabilize_a(&after, 1.into()).is_ok());
}

#[test]
fn cf_collapse_refuses_opposite_signs() {
    let b = fixtures::fig4_3b();
    let err = cf_collapse_ab(&b, 14.into()).unwrap_err();
    assert!(matches!(err, MoveError::StarMismatch { .. }));
}

fn cf_sites(t: &Tiling) -> Vec<BEdge> {
    let edges = derive_adjacency(t).unwrap();
    edges
        .b_edges
        .iter()
        .filter(|e| {
            e.out_side.tile != e.in_side.tile
                && t.tile(e.out_side.tile).unwrap().sign == t.tile(e.in_side.tile).unwrap().sign
        })
        .cloned()
        .collect()
}

#[test]
fn cf_refuses_opposite_signs() {
    // Every pocket pair has opposite signs, so its shared edges are not
    // change-of-foliation sites.
    let t = fixtures::fig4_3b();
    let err = change_of_foliation(
        &t,
        20.into(),
        21.into(),
        (15.into(), 1.into()),
        Variant::First,
    )
    .unwrap_err();
    assert!(matches!(err, MoveError::SignsDiffer { .. }));
}

#[test]
fn cf_drops_gamma_valences_and_preserves_everything_else() {
    let mut applied = 0usize;
    for seed in 0..200u64 {
        if applied >= 30 {
            break;
        }
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 7,
                pita_weight: 30,
                ..GrowthPlan::default()
            },
        );
        for site in cf_sites(&t) {
            let (v, w) = site.ends;
            let edges = derive_adjacency(&t).unwrap();
            let val_before = (
                vertex_star(&t, &edges, v).unwrap().valence(),
                vertex_star(&t, &edges, w).unwrap().valence(),
            );
            for variant in [Variant::First, Variant::Rotated] {
                let Ok((after, record)) = change_of_foliation(
                    &t,
                    site.out_side.tile,
                    site.in_side.tile,
                    site.ends,
                    variant,
                ) else {
                    continue;
                };
                assert_eq!(deltas(&record), (0, 0, 0), "seed {seed}");
                assert_valid(&after, &format!("seed {seed} variant {variant:?}"));
                assert_eq!(classification(&t), classification(&after), "seed {seed}");
                let edges_after = derive_adjacency(&after).unwrap();
                let val_after = (
                    vertex_star(&after, &edges_after, v).unwrap().valence(),
                    vertex_star(&after, &edges_after, w).unwrap().valence(),
                );
                assert_eq!(val_after.0 + 1, val_before.0, "seed {seed}: valence of {v}");
                assert_eq!(val_after.1 + 1, val_before.1, "seed {seed}: valence of {w}");
                assert_local(&t, &after, &[site.out_side.tile, site.in_side.tile], 2);
                applied += 1;
            }
        }
    }
    assert!(
        applied >= 30,
        "only {applied} change-of-foliation applications found"
    );
}

#[test]
fn cf_output_kinds_follow_the_case_table() {
    // The re-cut's output kinds per adjacency case:
    //   bb/bb -> {bb,bb} under both variants;
    //   bb/ab -> {ab,bb} under one variant and {ab,ab} under the other
    //            (the link arc swallows a vertex);
    //   ab/ab -> {aa,ab} under both variants.
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<(TileKind, TileKind, Vec<TileKind>)> = BTreeSet::new();
    let plans = [
        GrowthPlan {
            ops: 8,
            pita_weight: 45,
            collapse_weight: 0,
            ..GrowthPlan::default()
        },
        GrowthPlan {
            ops: 6,
            collapse_weight: 40,
            pita_weight: 0,
            ..GrowthPlan::default()
        },
    ];
    for seed in 0..400u64 {
        let t = grow_discs(seed, plans[(seed % 2) as usize]);
        for site in cf_sites(&t) {
            let ka = t.tile(site.out_side.tile).unwrap().kind;
            let kb = t.tile(site.in_side.tile).unwrap().kind;
            for variant in [Variant::First, Variant::Rotated] {
                let Ok((after, _)) = change_of_foliation(
                    &t,
                    site.out_side.tile,
                    site.in_side.tile,
                    site.ends,
                    variant,
                ) else {
                    continue;
                };
                let mut out: Vec<TileKind> = after
                    .tiles()
                    .filter(|tile| t.tile(tile.id).is_none())
                    .map(|tile| tile.kind)
                    .collect();
                out.sort();
                let mut pair = [ka, kb];
                pair.sort();
                match pair {
                    [TileKind::Bb, TileKind::Bb] => {
                        assert_eq!(out, vec![TileKind::Bb, TileKind::Bb], "seed {seed}")
                    }
                    [TileKind::Ab, TileKind::Bb] => assert!(
                        out == vec![TileKind::Ab, TileKind::Bb]
                            || out == vec![TileKind::Ab, TileKind::Ab],
                        "seed {seed}: got {out:?}"
                    ),
                    [TileKind::Ab, TileKind::Ab] => {
                        assert_eq!(out, vec![TileKind::Aa, TileKind::Ab], "seed {seed}")
                    }
                    other => panic!("unexpected site kinds {other:?}"),
                }
                seen.insert((pair[0], pair[1], out));
            }
        }
    }
    // All three input cases (and both bb/ab outcomes) must have shown up.
    assert!(seen.contains(&(TileKind::Bb, TileKind::Bb, vec![TileKind::Bb, TileKind::Bb])));
    assert!(seen.contains(&(TileKind::Ab, TileKind::Bb, vec![TileKind::Ab, TileKind::Bb])));
    assert!(seen.contains(&(TileKind::Ab, TileKind::Bb, vec![TileKind::Ab, TileKind::Ab])));
    assert!(seen.contains(&(TileKind::Ab, TileKind::Ab, vec![TileKind::Aa, TileKind::Ab])));
}

#[test]
fn cf_is_involutive_through_the_surviving_edge() {
    // Re-cut, then cut back along the edge the two new tiles share; the
    // original tiling reappears up to tile ids.  Applies whenever the
    // re-cut chord is a b-arc.
    let mut tested = 0usize;
    for seed in 0..300u64 {
        if tested >= 40 {
            break;
        }
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 7,
                pita_weight: 30,
                ..GrowthPlan::default()
            },
        );
        for site in cf_sites(&t) {
            for variant in [Variant::First, Variant::Rotated] {
                let Ok((once, record)) = change_of_foliation(
                    &t,
                    site.out_side.tile,
                    site.in_side.tile,
                    site.ends,
                    variant,
                ) else {
                    continue;
                };
                let new_ids: Vec<TileId> = once
                    .tiles()
                    .filter(|tile| t.tile(tile.id).is_none())
                    .map(|tile| tile.id)
                    .collect();
                assert_eq!(new_ids.len(), 2, "seed {seed}");
                let shared: Vec<BEdge> = derive_adjacency(&once)
                    .unwrap()
                    .b_edges
                    .into_iter()
                    .filter(|e| {
                        let pair = (e.out_side.tile, e.in_side.tile);
                        pair == (new_ids[0], new_ids[1]) || pair == (new_ids[1], new_ids[0])
                    })
                    .collect();
                let Some(back_edge) = shared.first() else {
                    continue; // chord landed on the link; not re-cuttable
                };
                let mut restored = false;
                for back_variant in [Variant::First, Variant::Rotated] {
                    if let Ok((twice, _)) = change_of_foliation(
                        &once,
                        back_edge.out_side.tile,
                        back_edge.in_side.tile,
                        back_edge.ends,
                        back_variant,
                    ) {
                        if twice.isomorphic_up_to_ids(&t) {
                            restored = true;
                            break;
                        }
                    }
                }
                assert!(
                    restored,
                    "seed {seed} variant {variant:?}: no inverse variant restored"
                );
                let _ = record;
                tested += 1;
            }
        }
    }
    assert!(tested >= 40, "only {tested} involution cases found");
}

// ------------------------------------------------------------------
// The delta table over a move corpus
// ------------------------------------------------------------------

#[test]
fn every_move_obeys_the_delta_table_and_preserves_euler() {
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for seed in 0..120u64 {
        let t = grow_discs(
            seed,
            GrowthPlan {
                ops: 6,
                pita_weight: 25,
                ..GrowthPlan::default()
            },
        );
        let before = classification(&t);
        let mut check = |kind: MoveKind, out: Result<(Tiling, MoveRecord), MoveError>| {
            if let Ok((after, record)) = out {
                assert_eq!(record.kind, kind);
                assert_eq!(deltas(&record), kind.delta_table(), "seed {seed} {kind:?}");
                assert_valid(&after, &format!("seed {seed} {kind:?}"));
                assert_eq!(before, classification(&after), "seed {seed} {kind:?}");
                *counts.entry(kind.name()).or_default() += 1;
            }
        };
        for v in t.vertices().map(|v| v.id).collect::<Vec<_>>() {
            check(MoveKind::DestabilizeA, destabilize_a(&t, v));
            check(MoveKind::ExchangeAb, exchange_ab(&t, v));
            check(MoveKind::ExchangeBb, exchange_bb(&t, v));
            check(MoveKind::CfCollapseAb, cf_collapse_ab(&t, v));
        }
        for tile in t.tiles().map(|t| t.id).collect::<Vec<_>>() {
            check(MoveKind::StabilizeAb, stabilize_ab(&t, tile));
        }
    }
    for kind in ["destabilize_a", "stabilize_ab", "exchange_bb"] {
        assert!(
            counts.get(kind).copied().unwrap_or(0) > 0,
            "{kind} never applied"
        );
    }
}

// ------------------------------------------------------------------
// Euler preservation note: stabilization and destabilization change the
// braid, not the surface; exchanges and re-cuts change neither.
// ------------------------------------------------------------------

#[test]
fn moves_preserve_component_classification_on_fixture_chain() {
    let c = fixtures::fig4_3c();
    let mut t = c.clone();
    let base = classification(&c);
    for v in [27u32, 31, 15, 19] {
        let (next, _) = exchange_bb(&t, v.into()).unwrap();
        assert_eq!(classification(&next), base);
        t = next;
    }
}
