//! The local foliation moves, as total functions with exact bookkeeping.
//!
//! Every move takes a tiling by reference and returns a fresh tiling
//! plus a [`MoveRecord`] whose (dV, dt, dn) deltas follow a fixed
//! per-kind table:
//!
//! | move                 | dV | dt | dn |
//! |----------------------|----|----|----|
//! | change_of_foliation  |  0 |  0 |  0 |
//! | cf_collapse_ab       |  0 |  0 |  0 |
//! | stabilize_ab         | -1 | -1 | +1 |
//! | destabilize_a        | -1 | -1 | -1 |
//! | exchange_ab          | -2 | -2 |  0 |
//! | exchange_bb          | -2 | -2 |  0 |
//!
//! `V` counts axis piercings including one per radially foliated disc,
//! so deleting the last tile of a component moves its surviving piercing
//! into the trivial-disc count and the deltas stay uniform.
//!
//! New tiles and boundary points receive the smallest ids above every id
//! in use, allocated in a documented order, so transcripts replay
//! byte-identically.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::MoveError;
use crate::tiling::{
    derive_adjacency, vertex_star, AxisVertex, BoundaryPoint, Corner, CornerRef, EdgeRef, PointId,
    Sign, Star, Tile, TileId, TileKind, Tiling, VertexId,
};

/// The move vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    ChangeOfFoliation,
    CfCollapseAb,
    StabilizeAb,
    DestabilizeA,
    ExchangeAb,
    ExchangeBb,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::ChangeOfFoliation => "change_of_foliation",
            MoveKind::CfCollapseAb => "cf_collapse_ab",
            MoveKind::StabilizeAb => "stabilize_ab",
            MoveKind::DestabilizeA => "destabilize_a",
            MoveKind::ExchangeAb => "exchange_ab",
            MoveKind::ExchangeBb => "exchange_bb",
        }
    }

    /// The fixed (dV, dt, dn) row for the kind.
    pub fn delta_table(self) -> (i64, i64, i64) {
        match self {
            MoveKind::ChangeOfFoliation | MoveKind::CfCollapseAb => (0, 0, 0),
            MoveKind::StabilizeAb => (-1, -1, 1),
            MoveKind::DestabilizeA => (-1, -1, -1),
            MoveKind::ExchangeAb | MoveKind::ExchangeBb => (-2, -2, 0),
        }
    }
}

/// Which of the two re-cuts a change of foliation performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    First,
    Rotated,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::First => "first",
            Variant::Rotated => "rotated",
        }
    }
}

/// An applied move: kind, site ids and the realized deltas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// Raw ids identifying the site; their meaning is fixed per kind
    /// (vertex for the vertex moves, tile for stabilization, two tiles
    /// plus the shared edge's vertex pair for a change of foliation).
    pub site: Vec<u32>,
    pub variant: Option<Variant>,
    pub delta_v: i64,
    pub delta_t: i64,
    pub delta_n: i64,
}

impl MoveRecord {
    pub fn site_token(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, id) in self.site.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{id}");
        }
        if let Some(v) = self.variant {
            if !s.is_empty() {
                s.push(',');
            }
            s.push_str(v.name());
        }
        s
    }
}

// ---------------------------------------------------------------------
// Editing scaffold
// ---------------------------------------------------------------------

/// Mutable working copy of a tiling: ranks are maintained as order
/// vectors during an edit and written back at the end.
struct Editor {
    braid_index: u32,
    trivial_discs: u32,
    vertices: BTreeMap<VertexId, AxisVertex>,
    points: BTreeMap<PointId, BoundaryPoint>,
    tiles: BTreeMap<TileId, Tile>,
    axis: Vec<VertexId>,
    theta: Vec<TileId>,
    links: BTreeMap<u32, Vec<PointId>>,
}

impl Editor {
    fn new(t: &Tiling) -> Editor {
        let links = t
            .link_components()
            .into_iter()
            .map(|c| (c, t.link_order(c)))
            .collect();
        Editor {
            braid_index: t.braid_index(),
            trivial_discs: t.trivial_discs(),
            vertices: t.vertices().map(|v| (v.id, v.clone())).collect(),
            points: t.points().map(|p| (p.id, p.clone())).collect(),
            tiles: t.tiles().map(|tl| (tl.id, tl.clone())).collect(),
            axis: t.axis_order(),
            theta: t.theta_order(),
            links,
        }
    }

    fn remove_tile(&mut self, id: TileId) {
        self.tiles.remove(&id);
        self.theta.retain(|t| *t != id);
    }

    fn remove_vertex(&mut self, id: VertexId) {
        self.vertices.remove(&id);
        self.axis.retain(|v| *v != id);
    }

    fn remove_point(&mut self, id: PointId) {
        if let Some(p) = self.points.remove(&id) {
            if let Some(order) = self.links.get_mut(&p.component) {
                order.retain(|q| *q != id);
            }
        }
    }

    fn fresh_point(&mut self, component: u32) -> PointId {
        let id = PointId(self.points.keys().map(|k| k.0).max().map_or(1, |m| m + 1));
        self.points.insert(
            id,
            BoundaryPoint {
                id,
                component,
                link_rank: 0,
            },
        );
        id
    }

    fn fresh_tile_id(&self) -> TileId {
        TileId(self.tiles.keys().map(|k| k.0).max().map_or(1, |m| m + 1))
    }

    /// Any vertex left without a tile corner belongs to a component that
    /// collapsed to a radially foliated disc; fold it into the count.
    fn absorb_bare_vertices(&mut self) {
        let used: alloc::collections::BTreeSet<VertexId> = self
            .tiles
            .values()
            .flat_map(|t| t.vertices.iter().copied())
            .collect();
        let bare: Vec<VertexId> = self
            .vertices
            .keys()
            .copied()
            .filter(|v| !used.contains(v))
            .collect();
        for v in bare {
            self.remove_vertex(v);
            self.trivial_discs += 1;
        }
    }

    fn finish(self) -> Tiling {
        let axis_rank: BTreeMap<VertexId, u32> = self
            .axis
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let theta_rank: BTreeMap<TileId, u32> = self
            .theta
            .iter()
            .enumerate()
            .map(|(i, t)| (*t, i as u32))
            .collect();
        let mut link_rank: BTreeMap<PointId, u32> = BTreeMap::new();
        for order in self.links.values() {
            for (i, p) in order.iter().enumerate() {
                link_rank.insert(*p, i as u32);
            }
        }
        let vertices = self
            .vertices
            .into_values()
            .map(|mut v| {
                v.axis_rank = axis_rank[&v.id];
                v
            })
            .collect();
        let points = self
            .points
            .into_values()
            .map(|mut p| {
                p.link_rank = link_rank[&p.id];
                p
            })
            .collect();
        let tiles = self
            .tiles
            .into_values()
            .map(|mut t| {
                t.theta_rank = theta_rank[&t.id];
                t
            })
            .collect();
        Tiling::build(
            self.braid_index,
            self.trivial_discs,
            vertices,
            points,
            tiles,
        )
        .expect("move produced a structurally valid tiling")
    }
}

fn finish_move(
    before: &Tiling,
    editor: Editor,
    kind: MoveKind,
    site: Vec<u32>,
    variant: Option<Variant>,
) -> (Tiling, MoveRecord) {
    let mut editor = editor;
    editor.absorb_bare_vertices();
    let after = editor.finish();
    let record = MoveRecord {
        kind,
        site,
        variant,
        delta_v: i64::from(after.vertex_count()) - i64::from(before.vertex_count()),
        delta_t: i64::from(after.singularity_count()) - i64::from(before.singularity_count()),
        delta_n: i64::from(after.braid_index()) - i64::from(before.braid_index()),
    };
    debug_assert_eq!(
        (record.delta_v, record.delta_t, record.delta_n),
        kind.delta_table(),
        "move bookkeeping departed from the delta table"
    );
    (after, record)
}

fn star_of(t: &Tiling, v: VertexId) -> Result<Star, MoveError> {
    if t.vertex(v).is_none() {
        return Err(MoveError::UnknownVertex(v));
    }
    let edges = derive_adjacency(t)?;
    Ok(vertex_star(t, &edges, v)?)
}

fn axis_adjacent(t: &Tiling, a: VertexId, b: VertexId) -> bool {
    let order = t.axis_order();
    let n = order.len();
    if n < 2 {
        return true;
    }
    let ia = order.iter().position(|v| *v == a).unwrap();
    let ib = order.iter().position(|v| *v == b).unwrap();
    (ia + 1) % n == ib || (ib + 1) % n == ia
}

// ---------------------------------------------------------------------
// Retyping a minus corner away (the vertex-to-link-arc substitution)
// ---------------------------------------------------------------------

/// Replace the minus corner `k` of `tile` by a link arc carrying the new
/// point `q`.  Returns the retyped tile together with the flank vertices
/// (pre, post) of `q`, used to chain consecutive insertions along the
/// link.
fn drop_minus_corner(tile: &Tile, k: usize, q: PointId) -> (Tile, VertexId, VertexId) {
    let mut out = tile.clone();
    match (tile.kind, k) {
        (TileKind::Bb, 1) => {
            let (x0, x2, x3) = (tile.vertices[0], tile.vertices[2], tile.vertices[3]);
            out.kind = TileKind::Ab;
            out.vertices = vec![x2, x3, x0];
            out.endpoints = vec![q];
            (out, x0, x2)
        }
        (TileKind::Bb, 3) => {
            let (x0, x1, x2) = (tile.vertices[0], tile.vertices[1], tile.vertices[2]);
            out.kind = TileKind::Ab;
            out.vertices = vec![x0, x1, x2];
            out.endpoints = vec![q];
            (out, x2, x0)
        }
        (TileKind::Ab, 1) => {
            let (x0, x2) = (tile.vertices[0], tile.vertices[2]);
            let e = tile.endpoints[0];
            out.kind = TileKind::Aa;
            out.vertices = vec![x0, x2];
            out.endpoints = vec![q, e];
            (out, x0, x2)
        }
        _ => unreachable!("drop_minus_corner on a non-minus corner"),
    }
}

/// The chain partners of a minus corner: the vertices across its in- and
/// out-sides.
fn minus_corner_partners(tile: &Tile, k: usize) -> (VertexId, VertexId) {
    match (tile.kind, k) {
        (TileKind::Bb, 1) => (tile.vertices[0], tile.vertices[2]),
        (TileKind::Bb, 3) => (tile.vertices[2], tile.vertices[0]),
        (TileKind::Ab, 1) => (tile.vertices[0], tile.vertices[2]),
        _ => unreachable!("minus_corner_partners on a non-minus corner"),
    }
}

/// Retype the given fan corners at the minus vertex `v` in order,
/// checking that the flank vertices chain from `start` around to
/// `stop`, and splice the new points into `component`'s link order at
/// `position`.
///
/// The corner list comes from the vertex star of the original tiling; a
/// `bb` tile visiting `v` twice is retyped twice, its second visit
/// finding the survivor at the `ab` minus slot.
fn eliminate_minus_vertex(
    editor: &mut Editor,
    v: VertexId,
    fan: &[CornerRef],
    start: VertexId,
    stop: VertexId,
    component: u32,
    position: usize,
) -> Result<(), MoveError> {
    let mut cv = start;
    let mut inserted: Vec<PointId> = Vec::new();
    for corner in fan {
        let tile = editor
            .tiles
            .get(&corner.tile)
            .ok_or(MoveError::UnknownTile(corner.tile))?
            .clone();
        let k = match tile.kind {
            TileKind::Bb => corner.corner as usize,
            TileKind::Ab => 1,
            _ => {
                return Err(MoveError::StarMismatch {
                    vertex: v,
                    expected: "minus-corner fan of ab and bb tiles",
                })
            }
        };
        if tile.vertices.get(k) != Some(&v) || minus_corner_partners(&tile, k).0 != cv {
            return Err(MoveError::PocketNotClean {
                vertex: v,
                reason: String::from("fan chain does not match the flank vertices"),
            });
        }
        let q = editor.fresh_point(component);
        let (new_tile, pre, post) = drop_minus_corner(&tile, k, q);
        debug_assert_eq!(pre, cv);
        editor.tiles.insert(tile.id, new_tile);
        inserted.push(q);
        cv = post;
    }
    if cv != stop {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("fan chain did not close"),
        });
    }
    let order = editor.links.get_mut(&component).expect("component exists");
    order.splice(position..position, inserted);
    Ok(())
}

// ---------------------------------------------------------------------
// Destabilization and stabilization
// ---------------------------------------------------------------------

/// Delete the trivial loop at a valence-1 type-(a) vertex.
///
/// The incident tile is an `aa` tile with its two sides at `v`
/// identified; the tile, the vertex and the tile's two singular-leaf
/// endpoints disappear and the braid index drops by one.
pub fn destabilize_a(t: &Tiling, v: VertexId) -> Result<(Tiling, MoveRecord), MoveError> {
    let star = star_of(t, v)?;
    if star.valence() != 1 || star.type_cycle != vec!['a'] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "valence 1, type (a)",
        });
    }
    let tid = star.cyclic_tiles[0];
    let tile = t.tile(tid).unwrap().clone();
    if tile.kind != TileKind::Aa {
        return Err(MoveError::WrongKind {
            tile: tid,
            expected: "aa",
        });
    }

    let mut ed = Editor::new(t);
    ed.remove_tile(tid);
    for p in &tile.endpoints {
        ed.remove_point(*p);
    }
    ed.remove_vertex(v);
    ed.braid_index = ed
        .braid_index
        .checked_sub(1)
        .expect("destabilization below one strand");

    Ok(finish_move(t, ed, MoveKind::DestabilizeA, vec![v.0], None))
}

/// Stabilize along an `ab` tile: delete the tile and its negative
/// vertex, retype the other tiles at that vertex (`ab` to `aa`, `bb` to
/// `ab`) and add a trivial loop to the braid.
pub fn stabilize_ab(t: &Tiling, tid: TileId) -> Result<(Tiling, MoveRecord), MoveError> {
    let tile = t.tile(tid).ok_or(MoveError::UnknownTile(tid))?.clone();
    if tile.kind != TileKind::Ab {
        return Err(MoveError::WrongKind {
            tile: tid,
            expected: "ab",
        });
    }
    let v = tile.vertices[1];
    let p = tile.endpoints[0];
    let component = t.point(p).unwrap().component;
    let position = t
        .link_order(component)
        .iter()
        .position(|q| *q == p)
        .unwrap();

    // Fan at v, rotated to start just after the deleted tile's corner.
    let star = star_of(t, v)?;
    let n = star.corners.len();
    let i = star
        .corners
        .iter()
        .position(|c| c.tile == tid)
        .expect("tile sits in its own vertex star");
    let fan: Vec<CornerRef> = (1..n).map(|j| star.corners[(i + j) % n]).collect();

    let mut ed = Editor::new(t);
    ed.remove_tile(tid);
    ed.remove_point(p);
    ed.remove_vertex(v);
    // Chain from the tile's far plus vertex around to its near one.
    eliminate_minus_vertex(
        &mut ed,
        v,
        &fan,
        tile.vertices[2],
        tile.vertices[0],
        component,
        position,
    )?;
    ed.braid_index += 1;

    Ok(finish_move(t, ed, MoveKind::StabilizeAb, vec![tid.0], None))
}

// ---------------------------------------------------------------------
// Exchange moves
// ---------------------------------------------------------------------

/// Exchange move at a valence-2 vertex of type (a,b) and opposite signs.
///
/// The two incident `ab` tiles share the a-edge at `v` and the b-edge
/// from `v` to their common minus vertex `w`; both tiles, both vertices
/// and both singular-leaf endpoints disappear, every other tile at `w`
/// is retyped by the vertex-to-link-arc substitution, and the braid
/// index is unchanged.
pub fn exchange_ab(t: &Tiling, v: VertexId) -> Result<(Tiling, MoveRecord), MoveError> {
    let star = star_of(t, v)?;
    let mut kinds = star.type_cycle.clone();
    kinds.sort_unstable();
    if star.valence() != 2 || kinds != vec!['a', 'b'] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "valence 2, type (a,b)",
        });
    }
    if star.sign_cycle[0] == star.sign_cycle[1] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "opposite signs (equal signs collapse by a change of foliation)",
        });
    }
    let (ta, tb) = (star.cyclic_tiles[0], star.cyclic_tiles[1]);
    if ta == tb {
        return Err(MoveError::SameTile(ta));
    }
    let tile_a = t.tile(ta).unwrap().clone();
    let tile_b = t.tile(tb).unwrap().clone();
    if tile_a.kind != TileKind::Ab || tile_b.kind != TileKind::Ab {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "two ab tiles",
        });
    }
    // Roles: t1 has v at corner 0 (its point precedes around the link),
    // t2 has v at corner 2.
    let (t1, t2) = if tile_a.vertices[0] == v && tile_b.vertices[2] == v {
        (tile_a, tile_b)
    } else if tile_b.vertices[0] == v && tile_a.vertices[2] == v {
        (tile_b, tile_a)
    } else {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "ab tiles sharing the a-edge at v",
        });
    };
    let w = t1.vertices[1];
    if t2.vertices[1] != w {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "a common minus vertex",
        });
    }
    let (p1, p2) = (t1.endpoints[0], t2.endpoints[0]);
    let component = t.point(p1).unwrap().component;
    let order = t.link_order(component);
    let i1 = order.iter().position(|q| *q == p1).unwrap();
    if order[(i1 + 1) % order.len()] != p2 {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "adjacent singular-leaf endpoints across the a-edge",
        });
    }

    // Fan at w runs [t2, t1, others...]; retype the others in order.
    let star_w = star_of(t, w)?;
    let n = star_w.corners.len();
    let i = star_w
        .corners
        .iter()
        .position(|c| c.tile == t1.id)
        .ok_or(MoveError::StarMismatch {
            vertex: v,
            expected: "the pocket tiles at the minus vertex",
        })?;
    if star_w.corners[(i + n - 1) % n].tile != t2.id {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "fibration-adjacent pocket tiles at the minus vertex",
        });
    }
    let fan: Vec<CornerRef> = (1..n - 1).map(|j| star_w.corners[(i + j) % n]).collect();

    let mut ed = Editor::new(t);
    ed.remove_tile(t1.id);
    ed.remove_tile(t2.id);
    ed.remove_point(p2);
    ed.remove_point(p1);
    ed.remove_vertex(v);
    ed.remove_vertex(w);
    let position = ed.links[&component].len().min(i1);
    eliminate_minus_vertex(
        &mut ed,
        w,
        &fan,
        t1.vertices[2],
        t2.vertices[0],
        component,
        position,
    )?;

    Ok(finish_move(t, ed, MoveKind::ExchangeAb, vec![v.0], None))
}

/// Exchange move at an interior valence-2 vertex of type (b,b) and
/// opposite signs.
///
/// Restricted to a clean pocket: the companion vertex across one of the
/// b-edges at `v` must have its whole fan inside the two incident tiles
/// and sit next to `v` on the axis.  Both tiles, `v` and the companion
/// disappear; the rest of the decomposition is untouched and reglues
/// across the removed pocket.
pub fn exchange_bb(t: &Tiling, v: VertexId) -> Result<(Tiling, MoveRecord), MoveError> {
    let star = star_of(t, v)?;
    if star.valence() != 2 || !star.is_interior() {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "interior valence 2, type (b,b)",
        });
    }
    if star.sign_cycle[0] == star.sign_cycle[1] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "opposite signs",
        });
    }
    let (ta, tb) = (star.cyclic_tiles[0], star.cyclic_tiles[1]);
    if ta == tb {
        return Err(MoveError::SameTile(ta));
    }
    let tile_a = t.tile(ta).unwrap().clone();
    let tile_b = t.tile(tb).unwrap().clone();

    match (tile_a.kind, tile_b.kind) {
        (TileKind::Bb, TileKind::Bb) => exchange_bb_pocket(t, v, &tile_a, &tile_b),
        (TileKind::Ab, TileKind::Ab) => exchange_ab_pocket(t, v, &tile_a, &tile_b),
        _ => Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("mixed tile kinds at the vertex"),
        }),
    }
}

/// The two incident tiles are bb: the pocket hangs off an ambient
/// b-edge.
fn exchange_bb_pocket(
    t: &Tiling,
    v: VertexId,
    tile_a: &Tile,
    tile_b: &Tile,
) -> Result<(Tiling, MoveRecord), MoveError> {
    // Companion candidates: the b-edge partners of v.
    let mut partners: Vec<VertexId> = Vec::new();
    for tile in [tile_a, tile_b] {
        for k in 0..4 {
            if tile.vertices[k] == v {
                let prev = tile.vertices[(k + 3) % 4];
                let next = tile.vertices[(k + 1) % 4];
                for w in [prev, next] {
                    if !partners.contains(&w) {
                        partners.push(w);
                    }
                }
            }
        }
    }
    partners.sort();
    let private: Vec<VertexId> = partners
        .iter()
        .copied()
        .filter(|w| {
            *w != v
                && t.tiles_at_vertex(*w)
                    .iter()
                    .all(|tid| *tid == tile_a.id || *tid == tile_b.id)
        })
        .collect();
    if private.len() > 1 {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("pocket closes on itself (no ambient side)"),
        });
    }
    let Some(w) = private.first().copied() else {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("no companion vertex with its fan inside the pocket"),
        });
    };
    if !axis_adjacent(t, v, w) {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: format!("sheets pierce the axis between {v} and {w}"),
        });
    }

    let mut ed = Editor::new(t);
    ed.remove_tile(tile_a.id);
    ed.remove_tile(tile_b.id);
    ed.remove_vertex(v);
    ed.remove_vertex(w);
    Ok(finish_move(t, ed, MoveKind::ExchangeBb, vec![v.0], None))
}

/// The two incident tiles are ab (the vertex is their shared minus
/// corner): the pocket hangs off the link.
fn exchange_ab_pocket(
    t: &Tiling,
    v: VertexId,
    tile_a: &Tile,
    tile_b: &Tile,
) -> Result<(Tiling, MoveRecord), MoveError> {
    if tile_a.vertices[1] != v || tile_b.vertices[1] != v {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "shared minus corner",
        });
    }
    let (pa, pb) = (tile_a.endpoints[0], tile_b.endpoints[0]);
    let component = t.point(pa).unwrap().component;
    if t.point(pb).unwrap().component != component {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("tiles touch different link components"),
        });
    }
    let order = t.link_order(component);
    let n = order.len();
    let ia = order.iter().position(|q| *q == pa).unwrap();
    let ib = order.iter().position(|q| *q == pb).unwrap();

    // Clean pocket: the two endpoints are link-adjacent, closing the fan
    // of one plus vertex inside the pocket.
    let w = if (ia + 1) % n == ib {
        tile_a.vertices[0] // post(pa) == pre(pb)
    } else if (ib + 1) % n == ia {
        tile_b.vertices[0]
    } else {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: String::from("singular-leaf endpoints are not adjacent on the link"),
        });
    };
    if !t
        .tiles_at_vertex(w)
        .iter()
        .all(|tid| *tid == tile_a.id || *tid == tile_b.id)
    {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: format!("vertex {w} keeps incidences outside the pocket"),
        });
    }
    if !axis_adjacent(t, v, w) {
        return Err(MoveError::PocketNotClean {
            vertex: v,
            reason: format!("sheets pierce the axis between {v} and {w}"),
        });
    }

    let mut ed = Editor::new(t);
    ed.remove_tile(tile_a.id);
    ed.remove_tile(tile_b.id);
    ed.remove_point(pa);
    ed.remove_point(pb);
    ed.remove_vertex(v);
    ed.remove_vertex(w);
    Ok(finish_move(t, ed, MoveKind::ExchangeBb, vec![v.0], None))
}

// ---------------------------------------------------------------------
// Change of foliation
// ---------------------------------------------------------------------

/// A corner of the hexagon built from the two tiles, with split
/// bookkeeping for the corner the chord lands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Pre,
    Post,
}

#[derive(Clone, Copy, Debug)]
struct PieceCorner {
    corner: Corner,
    /// Which half of a split link arc this piece receives.
    split: Option<Half>,
}

/// Interchange the two saddles of same-sign tiles adjacent at a b-edge
/// and re-cut their union along the other diagonal selected by
/// `variant`.  The two new tiles occupy the same fibration slots, the
/// valence of both `gamma` endpoints drops by one, and everything
/// outside the pair is untouched.
pub fn change_of_foliation(
    t: &Tiling,
    t1: TileId,
    t2: TileId,
    gamma: (VertexId, VertexId),
    variant: Variant,
) -> Result<(Tiling, MoveRecord), MoveError> {
    let tile1 = t.tile(t1).ok_or(MoveError::UnknownTile(t1))?;
    let tile2 = t.tile(t2).ok_or(MoveError::UnknownTile(t2))?;
    if t1 == t2 {
        return Err(MoveError::SameTile(t1));
    }
    if !tile1.kind.is_spanning() {
        return Err(MoveError::UnsupportedKind(t1));
    }
    if !tile2.kind.is_spanning() {
        return Err(MoveError::UnsupportedKind(t2));
    }
    if tile1.sign != tile2.sign {
        return Err(MoveError::SignsDiffer { t1, t2 });
    }

    let ends = if gamma.0 <= gamma.1 {
        gamma
    } else {
        (gamma.1, gamma.0)
    };
    let edges = derive_adjacency(t)?;
    let edge = edges
        .b_edges
        .iter()
        .find(|e| {
            e.ends == ends && {
                let pair = (e.out_side.tile, e.in_side.tile);
                pair == (t1, t2) || pair == (t2, t1)
            }
        })
        .ok_or(MoveError::NotAdjacent { t1, t2 })?
        .clone();

    let a_id = edge.out_side.tile; // creator of the shared leaf
    let b_id = edge.in_side.tile; // consumer
    let tile_a = t.tile(a_id).unwrap().clone();
    let tile_b = t.tile(b_id).unwrap().clone();
    let theta_a = tile_a.theta_rank;
    let theta_b = tile_b.theta_rank;

    // Window check: no other saddle incident to any vertex of the pair
    // may lie in the forward interval between the two saddles.
    let in_window = |r: u32| -> bool {
        if theta_a < theta_b {
            r > theta_a && r < theta_b
        } else {
            r > theta_a || r < theta_b
        }
    };
    let mut hex_vertices: Vec<VertexId> = tile_a.vertices.clone();
    hex_vertices.extend(tile_b.vertices.iter().copied());
    hex_vertices.sort();
    hex_vertices.dedup();
    for other in t.tiles() {
        if other.id == a_id || other.id == b_id {
            continue;
        }
        if in_window(other.theta_rank) && other.vertices.iter().any(|v| hex_vertices.contains(v)) {
            return Err(MoveError::ThetaWindowObstructed {
                t1,
                t2,
                obstruction: other.id,
            });
        }
    }

    // Hexagon corners [n, b1, b2, p, a1, a2] and their source sides.
    let ca = tile_a.corners().unwrap();
    let cb = tile_b.corners().unwrap();
    let ia = edge.out_side.side as usize;
    let ib = edge.in_side.side as usize;
    let n_corner = ca[ia];
    let p_corner = ca[(ia + 1) % 4];
    debug_assert_eq!(n_corner, cb[(ib + 1) % 4]);
    debug_assert_eq!(p_corner, cb[ib]);
    let beta1 = cb[(ib + 2) % 4];
    let beta2 = cb[(ib + 3) % 4];
    let alpha1 = ca[(ia + 2) % 4];
    let alpha2 = ca[(ia + 3) % 4];

    // The chord re-cutting the hexagon, and the new squares.  The early
    // piece consumes the two leaves already present and creates the
    // chord; the late piece consumes the chord.  Both inherit the source
    // tiles' outer sides in place.
    let plain = |c: Corner| PieceCorner {
        corner: c,
        split: None,
    };
    let split = |c: Corner, h: Half| PieceCorner {
        corner: c,
        split: Some(h),
    };
    let (early, late): ([PieceCorner; 4], [PieceCorner; 4]) = match variant {
        Variant::First => {
            // Chord between beta1 (a vertex) and alpha1.
            match alpha1 {
                Corner::Vertex(_) => (
                    [plain(beta1), plain(beta2), plain(p_corner), plain(alpha1)],
                    [plain(alpha2), plain(n_corner), plain(beta1), plain(alpha1)],
                ),
                Corner::Boundary(_) => (
                    [
                        plain(beta1),
                        plain(beta2),
                        plain(p_corner),
                        split(alpha1, Half::Pre),
                    ],
                    [
                        plain(alpha2),
                        plain(n_corner),
                        plain(beta1),
                        split(alpha1, Half::Post),
                    ],
                ),
            }
        }
        Variant::Rotated => {
            // Chord between beta2 and alpha2 (a vertex).  The early piece
            // inherits the consumer's side before its link corner, the
            // late piece the side after it.
            match beta2 {
                Corner::Vertex(_) => (
                    [plain(alpha2), plain(n_corner), plain(beta1), plain(beta2)],
                    [plain(p_corner), plain(alpha1), plain(alpha2), plain(beta2)],
                ),
                Corner::Boundary(_) => (
                    [
                        plain(alpha2),
                        plain(n_corner),
                        plain(beta1),
                        split(beta2, Half::Pre),
                    ],
                    [
                        plain(p_corner),
                        plain(alpha1),
                        plain(alpha2),
                        split(beta2, Half::Post),
                    ],
                ),
            }
        }
    };

    let mut ed = Editor::new(t);
    let early_id = ed.fresh_tile_id();
    // Materialize early first so its fresh ids precede the late piece's.
    let (early_tile, early_splits) =
        materialize_piece(&mut ed, early, early_id, tile_a.sign, theta_a);
    let late_id = TileId(early_id.0 + 1);
    let (late_tile, late_splits) = materialize_piece(&mut ed, late, late_id, tile_a.sign, theta_b);

    // Splice split halves into the link order in place of the old point.
    let mut splits: BTreeMap<PointId, (Option<PointId>, Option<PointId>)> = BTreeMap::new();
    for (old, new, half) in early_splits.into_iter().chain(late_splits) {
        let entry = splits.entry(old).or_insert((None, None));
        match half {
            Half::Pre => entry.0 = Some(new),
            Half::Post => entry.1 = Some(new),
        }
    }
    for (old, halves) in splits {
        let (Some(pre), Some(post)) = halves else {
            unreachable!("split corner must appear in both pieces");
        };
        let component = t.point(old).unwrap().component;
        let order = ed.links.get_mut(&component).unwrap();
        let at = order.iter().position(|q| *q == old).unwrap();
        order.splice(at..at + 1, [pre, post]);
        ed.points.remove(&old);
    }

    // Replace the two tiles, keeping their fibration slots.
    let slot_a = ed.theta.iter().position(|x| *x == a_id).unwrap();
    ed.theta[slot_a] = early_id;
    let slot_b = ed.theta.iter().position(|x| *x == b_id).unwrap();
    ed.theta[slot_b] = late_id;
    ed.tiles.remove(&a_id);
    ed.tiles.remove(&b_id);
    ed.tiles.insert(early_id, early_tile);
    ed.tiles.insert(late_id, late_tile);

    let site = vec![t1.0, t2.0, gamma.0 .0, gamma.1 .0];
    Ok(finish_move(
        t,
        ed,
        MoveKind::ChangeOfFoliation,
        site,
        Some(variant),
    ))
}

/// Build a tile from a canonical piece square, allocating new points for
/// split link-arc corners.  Returns the tile plus (old point, new point,
/// half) for each split.
fn materialize_piece(
    ed: &mut Editor,
    corners: [PieceCorner; 4],
    id: TileId,
    sign: Sign,
    theta_rank: u32,
) -> (Tile, Vec<(PointId, PointId, Half)>) {
    let mut splits = Vec::new();
    let mut resolved: Vec<Corner> = Vec::with_capacity(4);
    for pc in corners {
        match (pc.corner, pc.split) {
            (c @ Corner::Vertex(_), _) => resolved.push(c),
            (Corner::Boundary(p), None) => resolved.push(Corner::Boundary(p)),
            (Corner::Boundary(p), Some(half)) => {
                let component = ed.points[&p].component;
                let q = ed.fresh_point(component);
                splits.push((p, q, half));
                resolved.push(Corner::Boundary(q));
            }
        }
    }

    // Rotate an ab square so its link corner sits at position 3.
    let boundary_count = resolved
        .iter()
        .filter(|c| matches!(c, Corner::Boundary(_)))
        .count();
    if boundary_count == 1 && matches!(resolved[1], Corner::Boundary(_)) {
        resolved.rotate_left(2);
    }

    let (kind, vertices, endpoints) = match boundary_count {
        0 => (
            TileKind::Bb,
            resolved
                .iter()
                .map(|c| match c {
                    Corner::Vertex(v) => *v,
                    _ => unreachable!(),
                })
                .collect::<Vec<_>>(),
            Vec::new(),
        ),
        1 => {
            let vs = vec![
                as_vertex(resolved[0]),
                as_vertex(resolved[1]),
                as_vertex(resolved[2]),
            ];
            let es = vec![as_point(resolved[3])];
            (TileKind::Ab, vs, es)
        }
        2 => {
            let vs = vec![as_vertex(resolved[0]), as_vertex(resolved[2])];
            let es = vec![as_point(resolved[1]), as_point(resolved[3])];
            (TileKind::Aa, vs, es)
        }
        _ => unreachable!("a piece has at most two link corners"),
    };
    (
        Tile {
            id,
            kind,
            sign,
            theta_rank,
            vertices,
            endpoints,
        },
        splits,
    )
}

fn as_vertex(c: Corner) -> VertexId {
    match c {
        Corner::Vertex(v) => v,
        _ => unreachable!("expected a vertex corner"),
    }
}

fn as_point(c: Corner) -> PointId {
    match c {
        Corner::Boundary(p) => p,
        _ => unreachable!("expected a link corner"),
    }
}

/// Change of foliation at a valence-2 vertex of type (a,b) with equal
/// signs: afterwards the vertex has type (a) and is ready for a
/// destabilization.
pub fn cf_collapse_ab(t: &Tiling, v: VertexId) -> Result<(Tiling, MoveRecord), MoveError> {
    let star = star_of(t, v)?;
    let mut kinds = star.type_cycle.clone();
    kinds.sort_unstable();
    if star.valence() != 2 || kinds != vec!['a', 'b'] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "valence 2, type (a,b)",
        });
    }
    if star.sign_cycle[0] != star.sign_cycle[1] {
        return Err(MoveError::StarMismatch {
            vertex: v,
            expected: "equal signs (opposite signs are an exchange site)",
        });
    }
    let (ta, tb) = (star.cyclic_tiles[0], star.cyclic_tiles[1]);
    if ta == tb {
        return Err(MoveError::SameTile(ta));
    }
    // The shared b-edge at v.
    let edges = derive_adjacency(t)?;
    let gamma = star
        .edges
        .iter()
        .find_map(|e| match e {
            EdgeRef::B(i) => Some(edges.b_edges[*i].ends),
            EdgeRef::A(_) => None,
        })
        .ok_or(MoveError::StarMismatch {
            vertex: v,
            expected: "a shared b-edge",
        })?;

    let (after, record) = change_of_foliation(t, ta, tb, gamma, Variant::First)?;
    let record = MoveRecord {
        kind: MoveKind::CfCollapseAb,
        site: vec![v.0],
        variant: record.variant,
        delta_v: record.delta_v,
        delta_t: record.delta_t,
        delta_n: record.delta_n,
    };
    Ok((after, record))
}
