//! Connected components, Euler characteristic and strand count.
//!
//! The complex underlying a tiling has the axis vertices and boundary
//! points as 0-cells, the b-edges, a-edges and link arcs as 1-cells and
//! the tiles as 2-cells, which collapses to `chi = V - E_b - r + t` per
//! component (`r` = boundary points in the component).  A radially
//! foliated disc is one extra component of characteristic 1.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::adjacency::{derive_adjacency, EdgeSet};
use super::{Tiling, VertexId};
use crate::error::ComplexError;

/// One connected component of the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    /// Axis vertices in the component (empty for a trivial disc).
    pub vertices: Vec<VertexId>,
    pub tile_count: u32,
    pub chi: i64,
    /// Number of link components forming this component's boundary.
    pub boundary_components: u32,
    pub trivial_disc: bool,
}

impl ComponentInfo {
    pub fn is_closed(&self) -> bool {
        self.boundary_components == 0
    }

    pub fn is_disc(&self) -> bool {
        self.chi == 1 && self.boundary_components == 1
    }

    /// Genus-zero test: every loop on a planar component with boundary a
    /// single circle (or none) bounds a disc.
    pub fn every_loop_bounds(&self) -> bool {
        self.chi + i64::from(self.boundary_components) == 2
    }
}

/// Classification of the whole surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub components: Vec<ComponentInfo>,
    /// Strand count derived from the a-arc families alive in a generic
    /// fiber, plus one per trivial disc.  `None` when a closed component
    /// makes the count meaningless.
    pub derived_strands: Option<u32>,
}

impl SurfaceReport {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn all_discs(&self) -> bool {
        self.components.iter().all(|c| c.is_disc())
    }

    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                let _ = write!(s, ", ");
            }
            if c.trivial_disc {
                let _ = write!(s, "trivial disc");
            } else {
                let _ = write!(
                    s,
                    "chi={} boundaries={} tiles={}",
                    c.chi, c.boundary_components, c.tile_count
                );
            }
        }
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Euler characteristic and classification per component.
pub fn euler_and_classification(t: &Tiling) -> Result<SurfaceReport, ComplexError> {
    let edges = derive_adjacency(t)?;
    Ok(classify_with_edges(t, &edges))
}

/// Variant that reuses an already derived edge set.
pub fn classify_with_edges(t: &Tiling, edges: &EdgeSet) -> SurfaceReport {
    // Node universe: vertices then points.
    let vertex_ids: Vec<VertexId> = t.vertices().map(|v| v.id).collect();
    let vidx: BTreeMap<VertexId, usize> = vertex_ids
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let point_ids: Vec<_> = t.points().map(|p| p.id).collect();
    let pidx: BTreeMap<_, usize> = point_ids
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i + vertex_ids.len()))
        .collect();
    let mut uf = UnionFind::new(vertex_ids.len() + point_ids.len());

    for tile in t.tiles() {
        if tile.vertices.is_empty() && tile.endpoints.is_empty() {
            continue;
        }
        let anchor = tile
            .vertices
            .first()
            .map(|v| vidx[v])
            .or_else(|| tile.endpoints.first().map(|p| pidx[p]))
            .unwrap();
        for v in &tile.vertices {
            uf.union(anchor, vidx[v]);
        }
        for p in &tile.endpoints {
            uf.union(anchor, pidx[p]);
        }
    }
    // Link components connect their points along the boundary circle.
    for component in t.link_components() {
        let order = t.link_order(component);
        for w in order.windows(2) {
            uf.union(pidx[&w[0]], pidx[&w[1]]);
        }
    }

    // Tally per root.
    #[derive(Default)]
    struct Tally {
        vertices: Vec<VertexId>,
        points: u32,
        tiles: u32,
        b_edges: u32,
        link_components: alloc::collections::BTreeSet<u32>,
    }
    let mut tallies: BTreeMap<usize, Tally> = BTreeMap::new();
    for v in &vertex_ids {
        let root = uf.find(vidx[v]);
        tallies.entry(root).or_default().vertices.push(*v);
    }
    for p in t.points() {
        let root = uf.find(pidx[&p.id]);
        let tl = tallies.entry(root).or_default();
        tl.points += 1;
        tl.link_components.insert(p.component);
    }
    for tile in t.tiles() {
        let anchor = tile
            .vertices
            .first()
            .map(|v| vidx[v])
            .or_else(|| tile.endpoints.first().map(|p| pidx[p]));
        if let Some(a) = anchor {
            tallies.entry(uf.find(a)).or_default().tiles += 1;
        }
    }
    for e in &edges.b_edges {
        let root = uf.find(vidx[&e.ends.0]);
        tallies.entry(root).or_default().b_edges += 1;
    }

    let mut components: Vec<ComponentInfo> = tallies
        .into_values()
        .map(|tl| ComponentInfo {
            chi: tl.vertices.len() as i64 - i64::from(tl.b_edges) - i64::from(tl.points)
                + i64::from(tl.tiles),
            vertices: tl.vertices,
            tile_count: tl.tiles,
            boundary_components: tl.link_components.len() as u32,
            trivial_disc: false,
        })
        .collect();
    components.sort_by_key(|c| c.vertices.first().copied());
    for _ in 0..t.trivial_discs() {
        components.push(ComponentInfo {
            vertices: Vec::new(),
            tile_count: 0,
            chi: 1,
            boundary_components: 1,
            trivial_disc: true,
        });
    }

    let any_closed = components.iter().any(|c| c.is_closed());
    let derived_strands = if any_closed {
        None
    } else {
        Some(count_strands(t, edges))
    };

    SurfaceReport {
        components,
        derived_strands,
    }
}

/// Number of a-arc leaves alive in the fiber between saddle ranks 0 and
/// 1, plus one per trivial disc.  Saddles preserve this count, so it is
/// the braid index of the boundary.
fn count_strands(t: &Tiling, edges: &EdgeSet) -> u32 {
    let mut alive = 0u32;
    for e in &edges.a_edges {
        let created = t.tile(e.post_side.tile).unwrap().theta_rank;
        let consumed = t.tile(e.pre_side.tile).unwrap().theta_rank;
        // The leaf family lives in the forward interval (created,
        // consumed); probe the slot between ranks 0 and 1.  Equal ranks
        // mean the family survives the whole way around.
        let alive_here = match created.cmp(&consumed) {
            core::cmp::Ordering::Equal => true,
            core::cmp::Ordering::Less => created == 0,
            core::cmp::Ordering::Greater => consumed > 0,
        };
        if alive_here {
            alive += 1;
        }
    }
    alive + t.trivial_discs()
}
