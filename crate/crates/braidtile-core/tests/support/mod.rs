//! Shared test support: an independent brute-force re-derivation of the
//! validation conditions, written directly against the raw data with a
//! fibration sweep instead of the library's pairing machinery.

// Each integration test crate compiles its own copy; not every crate
// uses every helper.
#![allow(dead_code)]

use std::collections::BTreeMap;

use braidtile_core::tiling::{Corner, Sign, Tile, TileKind, Tiling, VertexId};

/// Outcome of the naive checks, mirroring validate's (a)-(d).
#[derive(Debug, PartialEq, Eq)]
pub struct NaiveReport {
    pub side_pairing: bool,
    pub b_parity: bool,
    pub tile_patterns: bool,
    pub interior_mixed: bool,
}

fn corners(tile: &Tile) -> Option<[Corner; 4]> {
    tile.corners()
}

/// Simulate the fibration: walk the saddles in cyclic order, consuming
/// each tile's even-side leaves and creating its odd-side leaves, with a
/// stack per vertex pair (parallel leaves nest).  The complex is a
/// surface exactly when the sweep returns to its starting state.
fn sweep_balances(t: &Tiling) -> bool {
    let theta = t.theta_order();
    // Two passes: the first discovers the alive multiset at the start of
    // the cycle (consumptions may borrow from leaves created later).
    let mut borrowed: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut alive: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for tid in &theta {
        let tile = t.tile(*tid).unwrap();
        let Some(cs) = corners(tile) else {
            return false;
        };
        for side in [0usize, 2] {
            if let (Corner::Vertex(a), Corner::Vertex(b)) = (cs[side], cs[(side + 1) % 4]) {
                let key = if a <= b { (a, b) } else { (b, a) };
                let slot = alive.entry(key).or_default();
                if *slot == 0 {
                    *borrowed.entry(key).or_default() += 1;
                } else {
                    *slot -= 1;
                }
            }
        }
        for side in [1usize, 3] {
            if let (Corner::Vertex(a), Corner::Vertex(b)) = (cs[side], cs[(side + 1) % 4]) {
                let key = if a <= b { (a, b) } else { (b, a) };
                *alive.entry(key).or_default() += 1;
            }
        }
    }
    // Wrap: what is left alive must be exactly what was borrowed.
    alive.retain(|_, c| *c > 0);
    borrowed.retain(|_, c| *c > 0);
    if alive != borrowed {
        return false;
    }

    // A-side pairing: each boundary point carries one pre and one post
    // flank; consecutive points on a component must agree on the gap's
    // axis vertex.
    let mut pre: BTreeMap<u32, VertexId> = BTreeMap::new();
    let mut post: BTreeMap<u32, VertexId> = BTreeMap::new();
    for tile in t.tiles() {
        let Some(cs) = corners(tile) else {
            return false;
        };
        for i in 0..4 {
            if let (Corner::Vertex(v), Corner::Boundary(p)) = (cs[i], cs[(i + 1) % 4]) {
                if pre.insert(p.0, v).is_some() {
                    return false;
                }
            }
            if let (Corner::Boundary(p), Corner::Vertex(v)) = (cs[i], cs[(i + 1) % 4]) {
                if post.insert(p.0, v).is_some() {
                    return false;
                }
            }
        }
    }
    for component in t.link_components() {
        let order = t.link_order(component);
        for i in 0..order.len() {
            let a = order[i];
            let b = order[(i + 1) % order.len()];
            match (post.get(&a.0), pre.get(&b.0)) {
                (Some(x), Some(y)) if x == y => {}
                _ => return false,
            }
        }
    }
    true
}

fn b_parity_ok(t: &Tiling) -> bool {
    // Raw check: any two vertices joined by a b-side must have opposite
    // parity (reading sides straight off the tile data).
    for tile in t.tiles() {
        let Some(cs) = corners(tile) else { continue };
        for i in 0..4 {
            if let (Corner::Vertex(a), Corner::Vertex(b)) = (cs[i], cs[(i + 1) % 4]) {
                if t.parity(a) == t.parity(b) {
                    return false;
                }
            }
        }
    }
    true
}

fn tile_patterns_ok(t: &Tiling) -> bool {
    for tile in t.tiles() {
        let expected: &[Sign] = match tile.kind {
            TileKind::Aa => &[Sign::Plus, Sign::Plus],
            TileKind::Ab => &[Sign::Plus, Sign::Minus, Sign::Plus],
            TileKind::Bb => &[Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus],
            TileKind::Bc => &[Sign::Plus, Sign::Minus],
            TileKind::Cc => &[],
        };
        for (v, want) in tile.vertices.iter().zip(expected) {
            if t.parity(*v) != Some(*want) {
                return false;
            }
        }
    }
    true
}

/// Which vertices are interior, read straight off the raw data: a vertex
/// touches an a-arc exactly when it flanks some boundary point.
fn naive_interior(t: &Tiling) -> Vec<VertexId> {
    let mut flank: Vec<VertexId> = Vec::new();
    for tile in t.tiles() {
        match tile.kind {
            TileKind::Aa => flank.extend_from_slice(&tile.vertices),
            TileKind::Ab => {
                flank.push(tile.vertices[0]);
                flank.push(tile.vertices[2]);
            }
            _ => {}
        }
    }
    t.vertices()
        .map(|v| v.id)
        .filter(|v| !flank.contains(v) && t.tiles().any(|tile| tile.vertices.contains(v)))
        .collect()
}

fn interior_mixed_ok(t: &Tiling) -> bool {
    for v in naive_interior(t) {
        let signs: Vec<Sign> = t
            .tiles()
            .filter(|tile| tile.vertices.contains(&v))
            .map(|tile| tile.sign)
            .collect();
        if !(signs.contains(&Sign::Plus) && signs.contains(&Sign::Minus)) {
            return false;
        }
    }
    true
}

pub fn naive_check(t: &Tiling) -> NaiveReport {
    NaiveReport {
        side_pairing: sweep_balances(t),
        b_parity: b_parity_ok(t),
        tile_patterns: tile_patterns_ok(t),
        interior_mixed: interior_mixed_ok(t),
    }
}

/// Pull one named check out of a validation report.
pub fn check_passed(t: &Tiling, name: &str) -> bool {
    t.validate(None)
        .checks
        .iter()
        .find(|c| c.name == name)
        .map(|c| c.passed)
        .unwrap_or(false)
}

/// Assert a tiling passes every validation check.
pub fn assert_valid(t: &Tiling, label: &str) {
    let report = t.validate(None);
    for c in &report.checks {
        assert!(c.passed, "{label}: check {} failed: {}", c.name, c.detail);
    }
}
