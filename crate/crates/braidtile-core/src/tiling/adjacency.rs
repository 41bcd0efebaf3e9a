//! Derived edge complex: b-side pairing, a-side pairing and vertex fans.
//!
//! Two b-sides are identified when they share a vertex pair and their
//! saddles are consecutive in the fibration among the side events on
//! that pair; a leaf ending at a vertex is unique per fiber, so the
//! events on one pair must balance created-against-consumed around the
//! fibration circle.  A-sides are identified across the gap between
//! cyclically consecutive boundary points on the link.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{PointId, Sign, Tile, TileId, TileKind, Tiling, VertexId};
use crate::error::ComplexError;

/// A corner of a generalized square: a plus vertex, a minus vertex, or a
/// link arc carrying one singular-leaf endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Corner {
    Vertex(VertexId),
    Boundary(PointId),
}

/// One of the four sides of a tile, by corner index (side `i` runs from
/// corner `i` to corner `i + 1 mod 4`).  Even sides are consumed by the
/// tile's saddle, odd sides are created by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SideRef {
    pub tile: TileId,
    pub side: u8,
}

impl SideRef {
    pub fn is_outgoing(&self) -> bool {
        !self.side.is_multiple_of(2)
    }
}

/// A corner occurrence of a tile at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CornerRef {
    pub tile: TileId,
    pub corner: u8,
}

impl CornerRef {
    /// The side consumed by the saddle at this corner (even index).
    pub fn in_side(&self) -> SideRef {
        let s = if self.corner.is_multiple_of(2) {
            self.corner
        } else {
            self.corner - 1
        };
        SideRef {
            tile: self.tile,
            side: s,
        }
    }

    /// The side created by the saddle at this corner (odd index).
    pub fn out_side(&self) -> SideRef {
        let s = if self.corner.is_multiple_of(2) {
            (self.corner + 3) % 4
        } else {
            self.corner
        };
        SideRef {
            tile: self.tile,
            side: s,
        }
    }
}

/// A glued pair of b-sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BEdge {
    /// Side that creates the leaf (odd side of its tile).
    pub out_side: SideRef,
    /// Side that consumes it (even side of its tile).
    pub in_side: SideRef,
    /// Endpoints, sorted by id.
    pub ends: (VertexId, VertexId),
}

/// A glued pair of a-sides, spanning the gap between two cyclically
/// consecutive boundary points of one link component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AEdge {
    pub from: PointId,
    pub to: PointId,
    /// Side of `from`'s tile after that point (odd side).
    pub post_side: SideRef,
    /// Side of `to`'s tile before that point (even side).
    pub pre_side: SideRef,
    /// The axis endpoint of the arc.
    pub vertex: VertexId,
}

/// Identifier of a derived edge within an [`EdgeSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeRef {
    B(usize),
    A(usize),
}

/// The derived one-skeleton of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    pub b_edges: Vec<BEdge>,
    pub a_edges: Vec<AEdge>,
    by_side: BTreeMap<SideRef, EdgeRef>,
}

impl EdgeSet {
    pub fn edge_of_side(&self, side: SideRef) -> Option<EdgeRef> {
        self.by_side.get(&side).copied()
    }

    /// Kind of the edge: 'b' or 'a'.
    pub fn kind(&self, e: EdgeRef) -> char {
        match e {
            EdgeRef::B(_) => 'b',
            EdgeRef::A(_) => 'a',
        }
    }
}

/// The cyclic fan of corners around a vertex, in fibration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: VertexId,
    /// Corner occurrences in fibration order around the vertex.
    pub corners: Vec<CornerRef>,
    /// Tile of each corner, in the same order.
    pub cyclic_tiles: Vec<TileId>,
    /// Kind ('a' or 'b') of the shared edge after each corner.
    pub type_cycle: Vec<char>,
    /// Sign of each corner's tile.
    pub sign_cycle: Vec<Sign>,
    /// The derived edge after each corner (between it and the next).
    pub edges: Vec<EdgeRef>,
}

impl Star {
    pub fn valence(&self) -> usize {
        self.corners.len()
    }

    /// Interior vertices touch no a-arc.
    pub fn is_interior(&self) -> bool {
        self.type_cycle.iter().all(|k| *k == 'b')
    }

    /// Number of positions where the sign changes going around (always
    /// even).  Zero means all signs equal; two means one block of each.
    pub fn sign_changes(&self) -> usize {
        let n = self.sign_cycle.len();
        if n <= 1 {
            return 0;
        }
        (0..n)
            .filter(|i| self.sign_cycle[*i] != self.sign_cycle[(*i + 1) % n])
            .count()
    }
}

/// Ordered pair of the vertices along a side, following the tile
/// boundary orientation (even sides run plus-to-minus).
fn side_corners(tile: &Tile, side: u8) -> (Corner, Corner) {
    let corners = tile.corners().expect("side_corners on spanning tile");
    (corners[side as usize], corners[(side as usize + 1) % 4])
}

/// Vertex pair of a b-side, sorted by id.
fn b_side_ends(tile: &Tile, side: u8) -> Option<(VertexId, VertexId)> {
    match side_corners(tile, side) {
        (Corner::Vertex(a), Corner::Vertex(b)) => Some(if a <= b { (a, b) } else { (b, a) }),
        _ => None,
    }
}

/// For an a-side, the vertex and the boundary point it touches, plus
/// whether the side precedes the point along the link (even sides do).
fn a_side_parts(tile: &Tile, side: u8) -> Option<(VertexId, PointId, bool)> {
    match side_corners(tile, side) {
        (Corner::Vertex(v), Corner::Boundary(p)) => Some((v, p, true)),
        (Corner::Boundary(p), Corner::Vertex(v)) => Some((v, p, false)),
        _ => None,
    }
}

/// Derive all side gluings.
///
/// Every b-side is paired with exactly one other b-side on the same
/// vertex pair, consecutively in the fibration; every a-side is paired
/// across a link gap.  Fails when the data is not a surface complex.
pub fn derive_adjacency(t: &Tiling) -> Result<EdgeSet, ComplexError> {
    for tile in t.tiles() {
        if !tile.kind.is_spanning() {
            return Err(ComplexError::ClosedKindPresent { tile: tile.id });
        }
    }

    let mut by_side = BTreeMap::new();
    let mut b_edges = Vec::new();

    // Group b-side events by vertex pair.
    let mut events: BTreeMap<(VertexId, VertexId), Vec<SideRef>> = BTreeMap::new();
    for tile in t.tiles() {
        for side in 0..4u8 {
            if let Some(ends) = b_side_ends(tile, side) {
                events.entry(ends).or_default().push(SideRef {
                    tile: tile.id,
                    side,
                });
            }
        }
    }

    for (ends, mut sides) in events {
        // Event order around the fibration circle: by saddle rank, with a
        // tile's consumed sides just before its saddle and created sides
        // just after; slot index breaks ties inside one tile.
        sides.sort_by_key(|s| {
            let theta = t.tile(s.tile).unwrap().theta_rank;
            (theta, s.is_outgoing() as u8, s.side)
        });
        let outs = sides.iter().filter(|s| s.is_outgoing()).count();
        if outs * 2 != sides.len() {
            return Err(ComplexError::UnpairedBSide {
                vertex_a: ends.0,
                vertex_b: ends.1,
            });
        }
        // Rotate so that prefix sums of (+1 created, -1 consumed) never
        // go negative, then match nested parentheses.
        let n = sides.len();
        let mut depth = 0i32;
        let mut min_depth = 0i32;
        let mut start = 0usize;
        for (i, s) in sides.iter().enumerate() {
            depth += if s.is_outgoing() { 1 } else { -1 };
            if depth < min_depth {
                min_depth = depth;
                start = i + 1;
            }
        }
        let mut stack: Vec<SideRef> = Vec::new();
        for i in 0..n {
            let s = sides[(start + i) % n];
            if s.is_outgoing() {
                stack.push(s);
            } else {
                let out = stack.pop().ok_or(ComplexError::UnpairedBSide {
                    vertex_a: ends.0,
                    vertex_b: ends.1,
                })?;
                let idx = b_edges.len();
                by_side.insert(out, EdgeRef::B(idx));
                by_side.insert(s, EdgeRef::B(idx));
                b_edges.push(BEdge {
                    out_side: out,
                    in_side: s,
                    ends,
                });
            }
        }
        if !stack.is_empty() {
            return Err(ComplexError::UnpairedBSide {
                vertex_a: ends.0,
                vertex_b: ends.1,
            });
        }
    }

    // A-sides: index each point's flanking sides, then pair across gaps.
    // Every point belongs to exactly one tile, which flanks it with one
    // pre-side and one post-side.
    let mut pre_of: BTreeMap<PointId, (SideRef, VertexId)> = BTreeMap::new();
    let mut post_of: BTreeMap<PointId, (SideRef, VertexId)> = BTreeMap::new();
    for tile in t.tiles() {
        for side in 0..4u8 {
            if let Some((v, p, precedes)) = a_side_parts(tile, side) {
                let r = SideRef {
                    tile: tile.id,
                    side,
                };
                let clash = if precedes {
                    pre_of.insert(p, (r, v)).is_some()
                } else {
                    post_of.insert(p, (r, v)).is_some()
                };
                if clash {
                    return Err(ComplexError::PointNotOnOneTile { point: p });
                }
            }
        }
    }
    for p in t.points() {
        if !pre_of.contains_key(&p.id) || !post_of.contains_key(&p.id) {
            return Err(ComplexError::PointNotOnOneTile { point: p.id });
        }
    }

    let mut a_edges = Vec::new();
    for component in t.link_components() {
        let order = t.link_order(component);
        let n = order.len();
        for i in 0..n {
            let from = order[i];
            let to = order[(i + 1) % n];
            let (post_side, post_v) = post_of[&from];
            let (pre_side, pre_v) = pre_of[&to];
            if post_v != pre_v {
                return Err(ComplexError::GapVertexMismatch {
                    from,
                    to,
                    post: post_v,
                    pre: pre_v,
                });
            }
            let idx = a_edges.len();
            by_side.insert(post_side, EdgeRef::A(idx));
            by_side.insert(pre_side, EdgeRef::A(idx));
            a_edges.push(AEdge {
                from,
                to,
                post_side,
                pre_side,
                vertex: post_v,
            });
        }
    }

    Ok(EdgeSet {
        b_edges,
        a_edges,
        by_side,
    })
}

/// All corner occurrences at a vertex, unordered.
pub fn corners_at(t: &Tiling, v: VertexId) -> Vec<CornerRef> {
    let mut out = Vec::new();
    for tile in t.tiles() {
        if !tile.kind.is_spanning() {
            continue;
        }
        let corners = tile.corners().unwrap();
        for (i, c) in corners.iter().enumerate() {
            if *c == Corner::Vertex(v) {
                out.push(CornerRef {
                    tile: tile.id,
                    corner: i as u8,
                });
            }
        }
    }
    out
}

/// Build the fan of corners around `v` by walking the derived gluings,
/// and check that the walk respects the fibration order.
pub fn vertex_star(t: &Tiling, edges: &EdgeSet, v: VertexId) -> Result<Star, ComplexError> {
    let mut remaining = corners_at(t, v);
    if remaining.is_empty() {
        return Err(ComplexError::BareVertex { vertex: v });
    }
    // Start at the corner whose saddle comes first in the fibration.
    remaining.sort_by_key(|c| (t.tile(c.tile).unwrap().theta_rank, c.corner));
    let first = remaining[0];

    let mut corners = Vec::with_capacity(remaining.len());
    let mut edge_cycle = Vec::with_capacity(remaining.len());
    let mut current = first;
    loop {
        corners.push(current);
        let out_edge = edges
            .edge_of_side(current.out_side())
            .ok_or(ComplexError::BrokenFan { vertex: v })?;
        edge_cycle.push(out_edge);
        // The partner side of the out-edge is the in-side of the next
        // corner around the vertex.
        let partner = match out_edge {
            EdgeRef::B(i) => edges.b_edges[i].in_side,
            EdgeRef::A(i) => edges.a_edges[i].pre_side,
        };
        let next_tile = t
            .tile(partner.tile)
            .ok_or(ComplexError::BrokenFan { vertex: v })?;
        let next = corner_from_in_side(next_tile, partner, v)
            .ok_or(ComplexError::BrokenFan { vertex: v })?;
        if next == first {
            break;
        }
        if corners.contains(&next) || corners.len() > remaining.len() {
            return Err(ComplexError::BrokenFan { vertex: v });
        }
        current = next;
    }
    if corners.len() != remaining.len() {
        // The walk closed early: the corners do not form one fan.
        return Err(ComplexError::BrokenFan { vertex: v });
    }

    // Fibration order check: saddle ranks around the fan, started at the
    // minimum, must be cyclically non-decreasing.
    let thetas: Vec<u32> = corners
        .iter()
        .map(|c| t.tile(c.tile).unwrap().theta_rank)
        .collect();
    if corners.len() > 1 {
        let min_pos = (0..thetas.len())
            .min_by_key(|i| (thetas[*i], corners[*i].corner))
            .unwrap();
        for k in 0..thetas.len() - 1 {
            let a = thetas[(min_pos + k) % thetas.len()];
            let b = thetas[(min_pos + k + 1) % thetas.len()];
            if b < a {
                return Err(ComplexError::BrokenFan { vertex: v });
            }
        }
    }

    let cyclic_tiles: Vec<TileId> = corners.iter().map(|c| c.tile).collect();
    let type_cycle: Vec<char> = edge_cycle.iter().map(|e| edges.kind(*e)).collect();
    let sign_cycle: Vec<Sign> = corners
        .iter()
        .map(|c| t.tile(c.tile).unwrap().sign)
        .collect();
    Ok(Star {
        center: v,
        corners,
        cyclic_tiles,
        type_cycle,
        sign_cycle,
        edges: edge_cycle,
    })
}

/// The corner of `tile` at vertex `v` whose in-side is `side`.
fn corner_from_in_side(tile: &Tile, side: SideRef, v: VertexId) -> Option<CornerRef> {
    debug_assert!(!side.is_outgoing());
    let corners = tile.corners()?;
    // An even side i runs corner i -> corner i+1; the corner consuming it
    // at v is whichever of the two equals v.
    for c in [side.side, (side.side + 1) % 4] {
        if corners[c as usize] == Corner::Vertex(v) {
            let r = CornerRef {
                tile: tile.id,
                corner: c,
            };
            if r.in_side() == side {
                return Some(r);
            }
        }
    }
    None
}

/// Kind the tile would need for a b-side at this corner pair; used by
/// validation to cross-check parity patterns.
pub fn expected_corner_parities(kind: TileKind) -> Option<[Option<Sign>; 4]> {
    // Even corners are plus vertices; odd corners are minus vertices when
    // present, link arcs otherwise.
    match kind {
        TileKind::Aa => Some([Some(Sign::Plus), None, Some(Sign::Plus), None]),
        TileKind::Ab => Some([Some(Sign::Plus), Some(Sign::Minus), Some(Sign::Plus), None]),
        TileKind::Bb => Some([
            Some(Sign::Plus),
            Some(Sign::Minus),
            Some(Sign::Plus),
            Some(Sign::Minus),
        ]),
        TileKind::Bc | TileKind::Cc => None,
    }
}
