//! Combinatorial data for tiled spanning surfaces of closed braids.
//!
//! A tiling is stored as the finite data that pins down the embedded
//! surface: axis piercings (`AxisVertex`) with their cyclic order on the
//! axis, singular-leaf endpoints on the link (`BoundaryPoint`) with their
//! cyclic order per link component, and one `Tile` per saddle with its
//! sign and its cyclic position in the fibration.  Everything else —
//! side gluings, vertex stars, Euler characteristic — is derived.
//!
//! Every spanning-surface tile is treated as a *generalized square*:
//! four corners in boundary order, where even corners are plus-parity
//! vertices and odd corners are either minus-parity vertices or link
//! arcs (carrying one singular-leaf endpoint each).  An `aa` tile has
//! two link-arc corners, an `ab` tile one, a `bb` tile none.  The side
//! between corners `i` and `i+1` is a b-side when both corners are
//! vertices and an a-side otherwise; sides with even index are consumed
//! by the tile's saddle as the fibration angle increases, sides with odd
//! index are created by it.  This orientation convention is what makes
//! side pairing derivable from the stored cyclic orders alone.

mod adjacency;
mod surface;
mod validate;

pub use adjacency::{
    corners_at, derive_adjacency, vertex_star, AEdge, BEdge, Corner, CornerRef, EdgeRef, EdgeSet,
    SideRef, Star,
};
pub use surface::{classify_with_edges, euler_and_classification, ComponentInfo, SurfaceReport};
pub use validate::{Check, Expectation, ValidationReport};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Not;

use crate::error::BuildError;

/// Orientation value shared by vertex parities and singularity signs.
///
/// Exactly two values; negation is an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Vertex parity is the same two-valued quantity as a singularity sign.
pub type Parity = Sign;

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Not for Sign {
    type Output = Sign;
    fn not(self) -> Sign {
        self.flip()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl From<u32> for $name {
            fn from(raw: u32) -> Self {
                $name(raw)
            }
        }
    };
}

id_type!(VertexId);
id_type!(PointId);
id_type!(TileId);

/// A piercing of the braid axis by the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisVertex {
    pub id: VertexId,
    /// Cyclic rank of the piercing point on the axis (0-based).
    pub axis_rank: u32,
    pub parity: Parity,
}

/// An endpoint of a singular leaf on the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub id: PointId,
    /// Link component the point lies on.
    pub component: u32,
    /// Cyclic rank among singular-leaf endpoints on that component.
    pub link_rank: u32,
}

/// Region type of a tile, named by the leaf types its saddle surgers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TileKind {
    Aa,
    Ab,
    Bb,
    /// Closed-surface kind: representational only, no derived adjacency.
    Bc,
    /// Closed-surface kind: representational only, no derived adjacency.
    Cc,
}

impl TileKind {
    pub fn name(self) -> &'static str {
        match self {
            TileKind::Aa => "aa",
            TileKind::Ab => "ab",
            TileKind::Bb => "bb",
            TileKind::Bc => "bc",
            TileKind::Cc => "cc",
        }
    }

    /// Required (vertex, endpoint) arity for the kind.
    pub fn arity(self) -> (usize, usize) {
        match self {
            TileKind::Aa => (2, 2),
            TileKind::Ab => (3, 1),
            TileKind::Bb => (4, 0),
            TileKind::Bc => (2, 0),
            TileKind::Cc => (0, 0),
        }
    }

    pub fn is_spanning(self) -> bool {
        matches!(self, TileKind::Aa | TileKind::Ab | TileKind::Bb)
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One region of the decomposition, i.e. the neighborhood of one saddle.
///
/// `vertices` and `endpoints` are ordered: together they spell the
/// generalized square (see the module docs), so the order is meaningful
/// data, not presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub id: TileId,
    pub kind: TileKind,
    /// Sign of the saddle singularity the region contains.
    pub sign: Sign,
    /// Cyclic rank of that singularity in the fibration (0-based).
    pub theta_rank: u32,
    pub vertices: Vec<VertexId>,
    pub endpoints: Vec<PointId>,
}

impl Tile {
    /// The generalized square: four corners in boundary order.
    /// `None` for closed-surface kinds.
    pub fn corners(&self) -> Option<[Corner; 4]> {
        match self.kind {
            TileKind::Aa => Some([
                Corner::Vertex(self.vertices[0]),
                Corner::Boundary(self.endpoints[0]),
                Corner::Vertex(self.vertices[1]),
                Corner::Boundary(self.endpoints[1]),
            ]),
            TileKind::Ab => Some([
                Corner::Vertex(self.vertices[0]),
                Corner::Vertex(self.vertices[1]),
                Corner::Vertex(self.vertices[2]),
                Corner::Boundary(self.endpoints[0]),
            ]),
            TileKind::Bb => Some([
                Corner::Vertex(self.vertices[0]),
                Corner::Vertex(self.vertices[1]),
                Corner::Vertex(self.vertices[2]),
                Corner::Vertex(self.vertices[3]),
            ]),
            TileKind::Bc | TileKind::Cc => None,
        }
    }
}

/// The complete combinatorial datum of a tiled spanning surface.
///
/// `trivial_discs` counts components foliated entirely by a-arcs; such a
/// disc pierces the axis once but leaves no other footprint in the data,
/// so it is a bare count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    braid_index: u32,
    trivial_discs: u32,
    vertices: BTreeMap<VertexId, AxisVertex>,
    points: BTreeMap<PointId, BoundaryPoint>,
    tiles: BTreeMap<TileId, Tile>,
}

impl Tiling {
    /// Assemble a tiling from raw parts.
    ///
    /// Checks references, id uniqueness, rank permutations and per-kind
    /// arity only; surface-level conditions are the business of
    /// [`Tiling::validate`].
    pub fn build(
        braid_index: u32,
        trivial_discs: u32,
        vertices: Vec<AxisVertex>,
        points: Vec<BoundaryPoint>,
        tiles: Vec<Tile>,
    ) -> Result<Tiling, BuildError> {
        if braid_index == 0 {
            return Err(BuildError::ZeroBraidIndex);
        }

        let mut vmap = BTreeMap::new();
        for v in vertices {
            if vmap.insert(v.id, v.clone()).is_some() {
                return Err(BuildError::DuplicateVertexId(v.id));
            }
        }
        let mut pmap = BTreeMap::new();
        for p in points {
            if pmap.insert(p.id, p.clone()).is_some() {
                return Err(BuildError::DuplicatePointId(p.id));
            }
        }
        let mut tmap = BTreeMap::new();
        for t in tiles {
            let (nv, ne) = t.kind.arity();
            if t.vertices.len() != nv || t.endpoints.len() != ne {
                return Err(BuildError::KindMultiplicity {
                    tile: t.id,
                    expected_vertices: nv,
                    expected_endpoints: ne,
                });
            }
            for v in &t.vertices {
                if !vmap.contains_key(v) {
                    return Err(BuildError::DanglingVertex {
                        tile: t.id,
                        vertex: *v,
                    });
                }
            }
            for p in &t.endpoints {
                if !pmap.contains_key(p) {
                    return Err(BuildError::DanglingPoint {
                        tile: t.id,
                        point: *p,
                    });
                }
            }
            if tmap.insert(t.id, t.clone()).is_some() {
                return Err(BuildError::DuplicateTileId(t.id));
            }
        }

        let axis_ranks: BTreeSet<u32> = vmap.values().map(|v| v.axis_rank).collect();
        if axis_ranks.len() != vmap.len()
            || axis_ranks.iter().enumerate().any(|(i, r)| *r != i as u32)
        {
            return Err(BuildError::AxisRanksNotPermutation);
        }
        let theta_ranks: BTreeSet<u32> = tmap.values().map(|t| t.theta_rank).collect();
        if theta_ranks.len() != tmap.len()
            || theta_ranks.iter().enumerate().any(|(i, r)| *r != i as u32)
        {
            return Err(BuildError::ThetaRanksNotPermutation);
        }
        let mut per_component: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for p in pmap.values() {
            if !per_component
                .entry(p.component)
                .or_default()
                .insert(p.link_rank)
            {
                return Err(BuildError::LinkRanksNotPermutation {
                    component: p.component,
                });
            }
        }
        for (c, ranks) in &per_component {
            if ranks.iter().enumerate().any(|(i, r)| *r != i as u32) {
                return Err(BuildError::LinkRanksNotPermutation { component: *c });
            }
        }

        Ok(Tiling {
            braid_index,
            trivial_discs,
            vertices: vmap,
            points: pmap,
            tiles: tmap,
        })
    }

    pub fn braid_index(&self) -> u32 {
        self.braid_index
    }

    pub fn trivial_discs(&self) -> u32 {
        self.trivial_discs
    }

    /// Number of axis piercings, counting one per trivial disc.
    pub fn vertex_count(&self) -> u32 {
        self.vertices.len() as u32 + self.trivial_discs
    }

    /// Number of singularities.
    pub fn singularity_count(&self) -> u32 {
        self.tiles.len() as u32
    }

    pub fn vertices(&self) -> impl Iterator<Item = &AxisVertex> {
        self.vertices.values()
    }

    pub fn points(&self) -> impl Iterator<Item = &BoundaryPoint> {
        self.points.values()
    }

    pub fn tiles(&self) -> impl Iterator<Item = &Tile> {
        self.tiles.values()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&AxisVertex> {
        self.vertices.get(&id)
    }

    pub fn point(&self, id: PointId) -> Option<&BoundaryPoint> {
        self.points.get(&id)
    }

    pub fn tile(&self, id: TileId) -> Option<&Tile> {
        self.tiles.get(&id)
    }

    pub fn parity(&self, id: VertexId) -> Option<Parity> {
        self.vertices.get(&id).map(|v| v.parity)
    }

    /// Link components that carry singular-leaf endpoints, ascending.
    pub fn link_components(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.points.values().map(|p| p.component).collect();
        set.into_iter().collect()
    }

    /// Vertex ids in axis order.
    pub fn axis_order(&self) -> Vec<VertexId> {
        let mut order: Vec<&AxisVertex> = self.vertices.values().collect();
        order.sort_by_key(|v| v.axis_rank);
        order.into_iter().map(|v| v.id).collect()
    }

    /// Tile ids in fibration order.
    pub fn theta_order(&self) -> Vec<TileId> {
        let mut order: Vec<&Tile> = self.tiles.values().collect();
        order.sort_by_key(|t| t.theta_rank);
        order.into_iter().map(|t| t.id).collect()
    }

    /// Point ids of one link component in link order.
    pub fn link_order(&self, component: u32) -> Vec<PointId> {
        let mut order: Vec<&BoundaryPoint> = self
            .points
            .values()
            .filter(|p| p.component == component)
            .collect();
        order.sort_by_key(|p| p.link_rank);
        order.into_iter().map(|p| p.id).collect()
    }

    pub fn fresh_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.keys().map(|k| k.0).max().map_or(1, |m| m + 1))
    }

    pub fn fresh_point_id(&self) -> PointId {
        PointId(self.points.keys().map(|k| k.0).max().map_or(1, |m| m + 1))
    }

    pub fn fresh_tile_id(&self) -> TileId {
        TileId(self.tiles.keys().map(|k| k.0).max().map_or(1, |m| m + 1))
    }

    /// Tiles whose vertex list mentions `v`, in id order.
    pub fn tiles_at_vertex(&self, v: VertexId) -> Vec<TileId> {
        self.tiles
            .values()
            .filter(|t| t.vertices.contains(&v))
            .map(|t| t.id)
            .collect()
    }

    /// Whether the two tilings differ only in tile/point identifiers,
    /// with identical combinatorics (used by the involution tests).
    pub fn isomorphic_up_to_ids(&self, other: &Tiling) -> bool {
        if self.braid_index != other.braid_index
            || self.trivial_discs != other.trivial_discs
            || self.vertices != other.vertices
        {
            return false;
        }
        // Compare tiles as a multiset of shape data with boundary points
        // replaced by their (component, rank) position on the link and
        // squares normalized under their harmless rotations.
        type Shape = (TileKind, Sign, u32, Vec<VertexId>, Vec<(u32, u32)>);
        let shape = |t: &Tiling| -> Vec<Shape> {
            let mut all: Vec<Shape> = t
                .tiles
                .values()
                .map(|tile| {
                    let pts: Vec<(u32, u32)> = tile
                        .endpoints
                        .iter()
                        .map(|p| {
                            let bp = &t.points[p];
                            (bp.component, bp.link_rank)
                        })
                        .collect();
                    let (vs, ps) = canonical_square(tile.kind, &tile.vertices, &pts);
                    (tile.kind, tile.sign, tile.theta_rank, vs, ps)
                })
                .collect();
            all.sort();
            all
        };
        shape(self) == shape(other)
    }
}

/// Normal form of a tile's square data under its harmless symmetry:
/// rotating the square by two corners names the same tile, so `aa` and
/// `bb` lists are normalized to the lexicographically smaller rotation.
pub(crate) fn canonical_square(
    kind: TileKind,
    vs: &[VertexId],
    ps: &[(u32, u32)],
) -> (Vec<VertexId>, Vec<(u32, u32)>) {
    match kind {
        TileKind::Bb => {
            let a = (vs.to_vec(), ps.to_vec());
            let b = (alloc::vec![vs[2], vs[3], vs[0], vs[1]], ps.to_vec());
            if a <= b {
                a
            } else {
                b
            }
        }
        TileKind::Aa => {
            let a = (vs.to_vec(), ps.to_vec());
            let b = (alloc::vec![vs[1], vs[0]], alloc::vec![ps[1], ps[0]]);
            if a <= b {
                a
            } else {
                b
            }
        }
        _ => (vs.to_vec(), ps.to_vec()),
    }
}
