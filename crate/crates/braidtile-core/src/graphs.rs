//! The four singular-leaf graphs `G(eps, delta)` of a tiling.
//!
//! For a fixed vertex parity `eps` and singularity sign `delta`, the
//! graph collects the subarcs of singular leaves running through
//! `eps`-parity vertices of tiles whose sign is `delta`.  With `eps`
//! positive every qualifying tile contributes the arc joining its two
//! plus vertices.  With `eps` negative the boundary of the surface acts
//! like a negative vertex: a `bb` tile joins its two minus vertices, an
//! `ab` tile joins its minus vertex to the boundary, and an `aa` tile
//! joins boundary to boundary; boundary attachments are keyed by the
//! singular-leaf endpoint they represent.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::tiling::{vertex_star, EdgeSet, PointId, Sign, TileId, TileKind, Tiling, VertexId};

/// Node of a leaf graph: a tiling vertex or a boundary attachment.
///
/// A boundary attachment stands for the piece of the surface boundary at
/// one singular-leaf endpoint; the owning tile is recoverable from the
/// point, which keeps provenance for mapping graph findings to moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GraphNode {
    Vertex(VertexId),
    Boundary(PointId),
}

/// One edge per qualifying tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub tile: TileId,
    pub ends: (GraphNode, GraphNode),
}

/// The graph `G(eps, delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafGraph {
    pub eps: Sign,
    pub delta: Sign,
    pub nodes: BTreeSet<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl LeafGraph {
    pub fn degree(&self, n: GraphNode) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == n) as usize + (e.ends.1 == n) as usize)
            .sum()
    }

    pub fn isolated(&self) -> impl Iterator<Item = GraphNode> + '_ {
        self.nodes.iter().copied().filter(|n| self.degree(*n) == 0)
    }

    /// Stable line-oriented text form: one node or edge per line.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "graph eps={} delta={}", self.eps, self.delta);
        for n in &self.nodes {
            let _ = writeln!(s, "node {}", node_token(*n));
        }
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| e.tile);
        for e in edges {
            let _ = writeln!(
                s,
                "edge t{} {} {}",
                e.tile,
                node_token(e.ends.0),
                node_token(e.ends.1)
            );
        }
        s
    }
}

pub fn node_token(n: GraphNode) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    match n {
        GraphNode::Vertex(v) => {
            let _ = write!(s, "v{v}");
        }
        GraphNode::Boundary(p) => {
            let _ = write!(s, "L{p}");
        }
    }
    s
}

/// Edge contributed by one tile to `G(eps, tile.sign)`.
fn tile_edge(t: &Tiling, tile: TileId, eps: Sign) -> Option<(GraphNode, GraphNode)> {
    let tl = t.tile(tile)?;
    match (eps, tl.kind) {
        (Sign::Plus, TileKind::Aa) => Some((
            GraphNode::Vertex(tl.vertices[0]),
            GraphNode::Vertex(tl.vertices[1]),
        )),
        (Sign::Plus, TileKind::Ab) => Some((
            GraphNode::Vertex(tl.vertices[0]),
            GraphNode::Vertex(tl.vertices[2]),
        )),
        (Sign::Plus, TileKind::Bb) => Some((
            GraphNode::Vertex(tl.vertices[0]),
            GraphNode::Vertex(tl.vertices[2]),
        )),
        (Sign::Minus, TileKind::Aa) => Some((
            GraphNode::Boundary(tl.endpoints[0]),
            GraphNode::Boundary(tl.endpoints[1]),
        )),
        (Sign::Minus, TileKind::Ab) => Some((
            GraphNode::Vertex(tl.vertices[1]),
            GraphNode::Boundary(tl.endpoints[0]),
        )),
        (Sign::Minus, TileKind::Bb) => Some((
            GraphNode::Vertex(tl.vertices[1]),
            GraphNode::Vertex(tl.vertices[3]),
        )),
        _ => None,
    }
}

/// Build `G(eps, delta)`.
///
/// The node set is the edge endpoints together with every `eps`-parity
/// vertex not adjacent to any singularity of sign `delta`.
pub fn build_graph(t: &Tiling, eps: Sign, delta: Sign) -> LeafGraph {
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for tile in t.tiles() {
        if !tile.kind.is_spanning() || tile.sign != delta {
            continue;
        }
        if let Some(ends) = tile_edge(t, tile.id, eps) {
            nodes.insert(ends.0);
            nodes.insert(ends.1);
            edges.push(GraphEdge {
                tile: tile.id,
                ends,
            });
        }
    }
    // Isolated vertices: right parity, no delta-sign tile in the star.
    for v in t.vertices() {
        if v.parity != eps {
            continue;
        }
        let adjacent_delta = t
            .tiles()
            .any(|tile| tile.sign == delta && tile.vertices.contains(&v.id));
        if !adjacent_delta {
            nodes.insert(GraphNode::Vertex(v.id));
        }
    }
    LeafGraph {
        eps,
        delta,
        nodes,
        edges,
    }
}

/// Tri-state answer for loop-bounding queries: exact on components where
/// every loop bounds a disc, unknown on higher-genus components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopCheck {
    NoLoop,
    BoundingLoop,
    Unknown,
}

/// Structure report for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFacts {
    pub eps: Sign,
    pub delta: Sign,
    pub component_count: usize,
    pub is_forest: bool,
    /// Interior tiling vertices isolated in this graph (must be empty on
    /// a valid tiling).
    pub isolated_interior: Vec<VertexId>,
    /// Interior tiling vertices of graph degree one.
    pub endpoint_interior: Vec<VertexId>,
    /// Loops entirely in this graph that bound a disc on the surface.
    pub bounding_loops: LoopCheck,
    /// For negative `eps`: loops closed by a single boundary subarc
    /// (a path between two distinct boundary attachments).
    pub boundary_chords: LoopCheck,
}

/// Joint report over all four graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphReport {
    pub facts: Vec<GraphFacts>,
    /// Node and edge sets of `G(e,d)` and `G(-e,-d)` are disjoint.
    pub disjointness: bool,
    /// Every tile's edge lies in exactly one of `G(+,+)`/`G(-,-)` and in
    /// exactly one of `G(+,-)`/`G(-,+)`.
    pub tile_coverage: bool,
    /// Every tiling vertex is a node of `G(+,+)` or `G(-,-)`, and of
    /// `G(+,-)` or `G(-,+)`.
    pub vertex_coverage: bool,
    /// No graph has an isolated interior vertex.
    pub no_isolated_interior: bool,
    /// Mixed loops: a cycle in `G(eps,+) union G(eps,-)` per eps, with
    /// the same planarity caveat.
    pub mixed_loops: [LoopCheck; 2],
    /// Mixed boundary chords in `G(-,+) union G(-,-)`.
    pub mixed_boundary_chords: LoopCheck,
}

fn interior_vertices(t: &Tiling, edges: &EdgeSet) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for v in t.vertices() {
        if let Ok(star) = vertex_star(t, edges, v.id) {
            if star.is_interior() {
                out.insert(v.id);
            }
        }
    }
    out
}

/// Union-find cycle scan over a node/edge list.  Returns (components,
/// has_cycle, per-node component root).
fn scan(
    nodes: &BTreeSet<GraphNode>,
    edges: &[(GraphNode, GraphNode)],
) -> (usize, bool, BTreeMap<GraphNode, usize>) {
    let index: BTreeMap<GraphNode, usize> =
        nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let n = parent[c];
            parent[c] = r;
            c = n;
        }
        r
    }
    let mut cycle = false;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
        if ra == rb {
            cycle = true;
        } else {
            parent[ra] = rb;
        }
    }
    let mut roots = BTreeSet::new();
    let mut comp = BTreeMap::new();
    for n in nodes {
        let r = find(&mut parent, index[n]);
        roots.insert(r);
        comp.insert(*n, r);
    }
    (roots.len(), cycle, comp)
}

/// Whether every node of the graph sits on a surface component where
/// every loop bounds a disc.
fn loops_decidable(t: &Tiling, nodes: &BTreeSet<GraphNode>) -> bool {
    let report = match crate::tiling::euler_and_classification(t) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let mut vertex_comp: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, c) in report.components.iter().enumerate() {
        for v in &c.vertices {
            vertex_comp.insert(*v, i);
        }
    }
    nodes.iter().all(|n| {
        let v = match n {
            GraphNode::Vertex(v) => Some(*v),
            GraphNode::Boundary(p) => {
                // Use the owning tile's first vertex.
                t.tiles()
                    .find(|tl| tl.endpoints.contains(p))
                    .and_then(|tl| tl.vertices.first().copied())
            }
        };
        match v.and_then(|v| vertex_comp.get(&v)) {
            Some(i) => report.components[*i].every_loop_bounds(),
            None => true,
        }
    })
}

fn loop_check(has_cycle: bool, decidable: bool) -> LoopCheck {
    match (has_cycle, decidable) {
        (false, _) => LoopCheck::NoLoop,
        (true, true) => LoopCheck::BoundingLoop,
        (true, false) => LoopCheck::Unknown,
    }
}

/// Paths between two distinct boundary attachments (closable into a loop
/// by one link subarc).
fn boundary_chord(
    nodes: &BTreeSet<GraphNode>,
    edges: &[(GraphNode, GraphNode)],
    decidable: bool,
) -> LoopCheck {
    let (_, _, comp) = scan(nodes, edges);
    let mut per_comp: BTreeMap<usize, usize> = BTreeMap::new();
    for n in nodes {
        if let GraphNode::Boundary(_) = n {
            *per_comp.entry(comp[n]).or_default() += 1;
        }
    }
    let exists = per_comp.values().any(|c| *c >= 2);
    loop_check(exists, decidable)
}

/// Build all four graphs and evaluate the joint structural facts.
pub fn graph_report(t: &Tiling, edges: &EdgeSet) -> GraphReport {
    let signs = [Sign::Plus, Sign::Minus];
    let interior = interior_vertices(t, edges);

    let graphs: Vec<LeafGraph> = signs
        .iter()
        .flat_map(|eps| signs.iter().map(|delta| build_graph(t, *eps, *delta)))
        .collect();

    let mut facts = Vec::new();
    for g in &graphs {
        let pairs: Vec<(GraphNode, GraphNode)> = g.edges.iter().map(|e| e.ends).collect();
        let (components, has_cycle, _) = scan(&g.nodes, &pairs);
        let decidable = loops_decidable(t, &g.nodes);
        let isolated_interior: Vec<VertexId> = g
            .isolated()
            .filter_map(|n| match n {
                GraphNode::Vertex(v) if interior.contains(&v) => Some(v),
                _ => None,
            })
            .collect();
        let endpoint_interior: Vec<VertexId> = g
            .nodes
            .iter()
            .filter_map(|n| match n {
                GraphNode::Vertex(v) if interior.contains(v) && g.degree(*n) == 1 => Some(*v),
                _ => None,
            })
            .collect();
        let boundary_chords = if g.eps == Sign::Minus {
            boundary_chord(&g.nodes, &pairs, decidable)
        } else {
            LoopCheck::NoLoop
        };
        facts.push(GraphFacts {
            eps: g.eps,
            delta: g.delta,
            component_count: components,
            is_forest: !has_cycle,
            isolated_interior,
            endpoint_interior,
            bounding_loops: loop_check(has_cycle, decidable),
            boundary_chords,
        });
    }

    // Disjointness of G(e,d) and G(-e,-d): nodes and edge tiles.
    let idx = |eps: Sign, delta: Sign| -> usize {
        (eps == Sign::Minus) as usize * 2 + (delta == Sign::Minus) as usize
    };
    let mut disjointness = true;
    for (eps, delta) in [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus)] {
        let g = &graphs[idx(eps, delta)];
        let h = &graphs[idx(eps.flip(), delta.flip())];
        if g.nodes.intersection(&h.nodes).next().is_some() {
            disjointness = false;
        }
        let gt: BTreeSet<TileId> = g.edges.iter().map(|e| e.tile).collect();
        let ht: BTreeSet<TileId> = h.edges.iter().map(|e| e.tile).collect();
        if gt.intersection(&ht).next().is_some() {
            disjointness = false;
        }
    }

    // Tile coverage: each tile appears once in {G(+,+), G(-,-)} and once
    // in {G(+,-), G(-,+)}.
    let mut tile_coverage = true;
    for tile in t.tiles() {
        if !tile.kind.is_spanning() {
            continue;
        }
        let in_g = |eps: Sign, delta: Sign| {
            graphs[idx(eps, delta)]
                .edges
                .iter()
                .filter(|e| e.tile == tile.id)
                .count()
        };
        let same = in_g(Sign::Plus, Sign::Plus) + in_g(Sign::Minus, Sign::Minus);
        let cross = in_g(Sign::Plus, Sign::Minus) + in_g(Sign::Minus, Sign::Plus);
        if same != 1 || cross != 1 {
            tile_coverage = false;
        }
    }

    // Vertex coverage.
    let mut vertex_coverage = true;
    for v in t.vertices() {
        let node = GraphNode::Vertex(v.id);
        let same = graphs[idx(Sign::Plus, Sign::Plus)].nodes.contains(&node)
            || graphs[idx(Sign::Minus, Sign::Minus)].nodes.contains(&node);
        let cross = graphs[idx(Sign::Plus, Sign::Minus)].nodes.contains(&node)
            || graphs[idx(Sign::Minus, Sign::Plus)].nodes.contains(&node);
        if !(same && cross) {
            vertex_coverage = false;
        }
    }

    let no_isolated_interior = facts.iter().all(|f| f.isolated_interior.is_empty());

    // Mixed unions per eps.
    let mut mixed_loops = [LoopCheck::NoLoop; 2];
    let mut mixed_boundary_chords = LoopCheck::NoLoop;
    for (i, eps) in signs.iter().enumerate() {
        let g = &graphs[idx(*eps, Sign::Plus)];
        let h = &graphs[idx(*eps, Sign::Minus)];
        let nodes: BTreeSet<GraphNode> = g.nodes.union(&h.nodes).copied().collect();
        let pairs: Vec<(GraphNode, GraphNode)> = g
            .edges
            .iter()
            .chain(h.edges.iter())
            .map(|e| e.ends)
            .collect();
        let (_, has_cycle, _) = scan(&nodes, &pairs);
        let decidable = loops_decidable(t, &nodes);
        mixed_loops[i] = loop_check(has_cycle, decidable);
        if *eps == Sign::Minus {
            mixed_boundary_chords = boundary_chord(&nodes, &pairs, decidable);
        }
    }

    GraphReport {
        facts,
        disjointness,
        tile_coverage,
        vertex_coverage,
        no_isolated_interior,
        mixed_loops,
        mixed_boundary_chords,
    }
}
