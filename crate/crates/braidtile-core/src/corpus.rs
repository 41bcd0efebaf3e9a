//! Deterministic seeded generators for randomized test corpora.
//!
//! Tilings are grown from trivial discs by inverse moves — adding a
//! petal (inverse destabilization), pushing in a pocket of two `ab`
//! tiles (inverse exchange at the link) or a pocket of two `bb` tiles
//! hung on an existing b-edge (inverse interior exchange) — plus random
//! changes of foliation for variety.  Every op keeps the surface a union
//! of discs and keeps exchange pockets clean, so grown instances reduce.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::moves::{change_of_foliation, Variant};
use crate::tiling::{
    derive_adjacency, AxisVertex, BoundaryPoint, PointId, Sign, Tile, TileId, TileKind, Tiling,
    VertexId,
};

/// SplitMix64: tiny deterministic generator, plenty for corpus seeding.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn sign(&mut self) -> Sign {
        if self.next_u64() & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.next_u64() % 100 < percent
    }
}

/// Mutable raw form of a tiling during growth.
struct Parts {
    braid_index: u32,
    trivial_discs: u32,
    vertices: BTreeMap<VertexId, Sign>,
    axis: Vec<VertexId>,
    points: BTreeMap<PointId, u32>,
    links: BTreeMap<u32, Vec<PointId>>,
    tiles: BTreeMap<TileId, (TileKind, Sign, Vec<VertexId>, Vec<PointId>)>,
    theta: Vec<TileId>,
    next_id: u32,
}

impl Parts {
    fn of(t: &Tiling) -> Parts {
        let links = t
            .link_components()
            .into_iter()
            .map(|c| (c, t.link_order(c)))
            .collect();
        let next_id = t
            .vertices()
            .map(|v| v.id.0)
            .chain(t.points().map(|p| p.id.0))
            .chain(t.tiles().map(|tl| tl.id.0))
            .max()
            .map_or(1, |m| m + 1);
        Parts {
            braid_index: t.braid_index(),
            trivial_discs: t.trivial_discs(),
            vertices: t.vertices().map(|v| (v.id, v.parity)).collect(),
            axis: t.axis_order(),
            points: t.points().map(|p| (p.id, p.component)).collect(),
            links,
            tiles: t
                .tiles()
                .map(|tl| {
                    (
                        tl.id,
                        (tl.kind, tl.sign, tl.vertices.clone(), tl.endpoints.clone()),
                    )
                })
                .collect(),
            theta: t.theta_order(),
            next_id,
        }
    }

    fn fresh(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn build(&self) -> Tiling {
        let vertices = self
            .axis
            .iter()
            .enumerate()
            .map(|(rank, v)| AxisVertex {
                id: *v,
                axis_rank: rank as u32,
                parity: self.vertices[v],
            })
            .collect();
        let mut points = Vec::new();
        for (component, order) in &self.links {
            for (rank, p) in order.iter().enumerate() {
                debug_assert_eq!(self.points[p], *component);
                points.push(BoundaryPoint {
                    id: *p,
                    component: *component,
                    link_rank: rank as u32,
                });
            }
        }
        let tiles = self
            .theta
            .iter()
            .enumerate()
            .map(|(rank, id)| {
                let (kind, sign, vs, ps) = self.tiles[id].clone();
                Tile {
                    id: *id,
                    kind,
                    sign,
                    theta_rank: rank as u32,
                    vertices: vs,
                    endpoints: ps,
                }
            })
            .collect();
        Tiling::build(
            self.braid_index,
            self.trivial_discs,
            vertices,
            points,
            tiles,
        )
        .expect("grown tiling is structurally valid")
    }
}

/// The gaps of the link order: (point, successor, component, index).
fn gaps(t: &Tiling) -> Vec<(PointId, PointId, u32, usize)> {
    let mut out = Vec::new();
    for c in t.link_components() {
        let order = t.link_order(c);
        let n = order.len();
        for i in 0..n {
            out.push((order[i], order[(i + 1) % n], c, i));
        }
    }
    out
}

/// Theta slots (insertion indices) lying inside the forward window of
/// the a-edge across the given gap.
fn slots_in_gap_window(t: &Tiling, from: PointId, to: PointId) -> Vec<usize> {
    let edges = derive_adjacency(t).expect("growth states derive");
    let e = edges
        .a_edges
        .iter()
        .find(|e| e.from == from && e.to == to)
        .expect("gap edge exists");
    let f = t.tile(e.post_side.tile).unwrap().theta_rank as usize;
    let g = t.tile(e.pre_side.tile).unwrap().theta_rank as usize;
    let len = t.singularity_count() as usize;
    let mut slots = Vec::new();
    if f == g {
        // Self-gap: the leaf family survives the whole circle.
        slots.extend(0..=len);
    } else if f < g {
        slots.extend(f + 1..=g);
    } else {
        slots.extend(0..=g);
        slots.extend(f + 1..=len);
    }
    slots
}

/// Inverse destabilization: a fresh petal tile at a gap, or a fresh
/// two-vertex bubble on a trivial disc.  Raises the braid index.
pub fn grow_petal(t: &Tiling, rng: &mut Rng) -> Tiling {
    let all_gaps = gaps(t);
    if all_gaps.is_empty() || (t.trivial_discs() > 0 && rng.chance(30)) {
        return grow_bubble(t, rng);
    }
    let (from, to, component, index) = all_gaps[rng.below(all_gaps.len())];
    let slots = slots_in_gap_window(t, from, to);
    let slot = slots[rng.below(slots.len())];
    let edges = derive_adjacency(t).unwrap();
    let u = edges
        .a_edges
        .iter()
        .find(|e| e.from == from && e.to == to)
        .unwrap()
        .vertex;

    let mut parts = Parts::of(t);
    parts.braid_index += 1;
    let w = VertexId(parts.fresh());
    let ea = PointId(parts.fresh());
    let eb = PointId(parts.fresh());
    let tid = TileId(parts.fresh());
    parts.vertices.insert(w, Sign::Plus);
    let axis_slot = rng.below(parts.axis.len() + 1);
    parts.axis.insert(axis_slot, w);
    parts.points.insert(ea, component);
    parts.points.insert(eb, component);
    let order = parts.links.get_mut(&component).unwrap();
    order.splice(index + 1..index + 1, [ea, eb]);
    parts.tiles.insert(
        tid,
        (
            TileKind::Aa,
            rng.sign(),
            alloc::vec![u, w],
            alloc::vec![ea, eb],
        ),
    );
    parts.theta.insert(slot, tid);
    parts.build()
}

/// A fresh 4-braid-style bubble: one `aa` tile on its own component,
/// converting a trivial disc (or widening the braid).
pub fn grow_bubble(t: &Tiling, rng: &mut Rng) -> Tiling {
    let mut parts = Parts::of(t);
    if parts.trivial_discs == 0 {
        // Nothing to convert; grow the unlink instead.
        parts.trivial_discs += 1;
        parts.braid_index += 1;
        let grown = parts.build();
        return grow_bubble(&grown, rng);
    }
    parts.trivial_discs -= 1;
    parts.braid_index += 1;
    let a = VertexId(parts.fresh());
    let b = VertexId(parts.fresh());
    let ea = PointId(parts.fresh());
    let eb = PointId(parts.fresh());
    let tid = TileId(parts.fresh());
    let component = parts.links.keys().max().map_or(0, |m| m + 1);
    parts.vertices.insert(a, Sign::Plus);
    parts.vertices.insert(b, Sign::Plus);
    let slot = rng.below(parts.axis.len() + 1);
    parts.axis.insert(slot, a);
    parts.axis.insert(slot + 1, b);
    parts.points.insert(ea, component);
    parts.points.insert(eb, component);
    parts.links.insert(component, alloc::vec![ea, eb]);
    parts.tiles.insert(
        tid,
        (
            TileKind::Aa,
            rng.sign(),
            alloc::vec![a, b],
            alloc::vec![ea, eb],
        ),
    );
    let tslot = rng.below(parts.theta.len() + 1);
    parts.theta.insert(tslot, tid);
    parts.build()
}

/// Inverse link-side exchange: push a clean pocket of two opposite-sign
/// `ab` tiles into a gap.
pub fn grow_pocket(t: &Tiling, rng: &mut Rng) -> Option<Tiling> {
    let all_gaps = gaps(t);
    if all_gaps.is_empty() {
        return None;
    }
    let (from, to, component, index) = all_gaps[rng.below(all_gaps.len())];
    let slots = slots_in_gap_window(t, from, to);
    let slot = slots[rng.below(slots.len())];
    let edges = derive_adjacency(t).unwrap();
    let u = edges
        .a_edges
        .iter()
        .find(|e| e.from == from && e.to == to)
        .unwrap()
        .vertex;

    let mut parts = Parts::of(t);
    let x = VertexId(parts.fresh());
    let m = VertexId(parts.fresh());
    let ea = PointId(parts.fresh());
    let eb = PointId(parts.fresh());
    let t1 = TileId(parts.fresh());
    let t2 = TileId(parts.fresh());
    parts.vertices.insert(x, Sign::Plus);
    parts.vertices.insert(m, Sign::Minus);
    let axis_slot = rng.below(parts.axis.len() + 1);
    if rng.chance(50) {
        parts.axis.insert(axis_slot, x);
        parts.axis.insert(axis_slot + 1, m);
    } else {
        parts.axis.insert(axis_slot, m);
        parts.axis.insert(axis_slot + 1, x);
    }
    parts.points.insert(ea, component);
    parts.points.insert(eb, component);
    let order = parts.links.get_mut(&component).unwrap();
    order.splice(index + 1..index + 1, [ea, eb]);
    let s = rng.sign();
    parts
        .tiles
        .insert(t1, (TileKind::Ab, s, alloc::vec![x, m, u], alloc::vec![ea]));
    parts.tiles.insert(
        t2,
        (
            TileKind::Ab,
            s.flip(),
            alloc::vec![u, m, x],
            alloc::vec![eb],
        ),
    );
    parts.theta.insert(slot, t1);
    parts.theta.insert(slot + 1, t2);
    Some(parts.build())
}

/// Inverse interior exchange: hang a clean pocket of two opposite-sign
/// `bb` tiles off an existing b-edge.
pub fn grow_pita(t: &Tiling, rng: &mut Rng) -> Option<Tiling> {
    let edges = derive_adjacency(t).ok()?;
    if edges.b_edges.is_empty() {
        return None;
    }
    let e = &edges.b_edges[rng.below(edges.b_edges.len())];
    let (wa, wb) = e.ends;
    let (wp, wn) = if t.parity(wa) == Some(Sign::Plus) {
        (wa, wb)
    } else {
        (wb, wa)
    };
    let f = t.tile(e.out_side.tile).unwrap().theta_rank as usize;
    let g = t.tile(e.in_side.tile).unwrap().theta_rank as usize;
    let len = t.singularity_count() as usize;
    let mut slots = Vec::new();
    if f < g {
        slots.extend(f + 1..=g);
    } else {
        slots.extend(0..=g);
        slots.extend(f + 1..=len);
    }
    let slot = slots[rng.below(slots.len())];

    let mut parts = Parts::of(t);
    let w1 = VertexId(parts.fresh());
    let v = VertexId(parts.fresh());
    let t1 = TileId(parts.fresh());
    let t2 = TileId(parts.fresh());
    parts.vertices.insert(w1, Sign::Plus);
    parts.vertices.insert(v, Sign::Minus);
    let axis_slot = rng.below(parts.axis.len() + 1);
    if rng.chance(50) {
        parts.axis.insert(axis_slot, w1);
        parts.axis.insert(axis_slot + 1, v);
    } else {
        parts.axis.insert(axis_slot, v);
        parts.axis.insert(axis_slot + 1, w1);
    }
    let s = rng.sign();
    parts.tiles.insert(
        t1,
        (TileKind::Bb, s, alloc::vec![w1, v, wp, wn], Vec::new()),
    );
    parts.tiles.insert(
        t2,
        (
            TileKind::Bb,
            s.flip(),
            alloc::vec![wp, v, w1, wn],
            Vec::new(),
        ),
    );
    parts.theta.insert(slot, t1);
    parts.theta.insert(slot + 1, t2);
    Some(parts.build())
}

/// Attach a fresh disc component carrying a collapse site: a vertex of
/// type (a,b) with equal signs, whose shared minus vertex keeps a third,
/// opposite-signed tile.  Two strands join the braid.
pub fn grow_collapse_component(t: &Tiling, rng: &mut Rng) -> Tiling {
    let mut parts = Parts::of(t);
    parts.braid_index += 2;
    let w = VertexId(parts.fresh());
    let m = VertexId(parts.fresh());
    let z1 = VertexId(parts.fresh());
    let z2 = VertexId(parts.fresh());
    let p1 = PointId(parts.fresh());
    let p2 = PointId(parts.fresh());
    let q = PointId(parts.fresh());
    let t1 = TileId(parts.fresh());
    let t2 = TileId(parts.fresh());
    let r = TileId(parts.fresh());
    let component = parts.links.keys().max().map_or(0, |c| c + 1);
    let s = rng.sign();

    parts.vertices.insert(w, Sign::Plus);
    parts.vertices.insert(m, Sign::Minus);
    parts.vertices.insert(z1, Sign::Plus);
    parts.vertices.insert(z2, Sign::Plus);
    let slot = rng.below(parts.axis.len() + 1);
    parts.axis.splice(slot..slot, [z1, w, m, z2]);
    parts.points.insert(p1, component);
    parts.points.insert(p2, component);
    parts.points.insert(q, component);
    parts.links.insert(component, alloc::vec![p1, p2, q]);
    // Fibration order: t2, t1, r; the whole block lands at the end so it
    // interleaves with nothing.
    parts.tiles.insert(
        t2,
        (TileKind::Ab, s, alloc::vec![z2, m, w], alloc::vec![p2]),
    );
    parts.tiles.insert(
        t1,
        (TileKind::Ab, s, alloc::vec![w, m, z1], alloc::vec![p1]),
    );
    parts.tiles.insert(
        r,
        (
            TileKind::Ab,
            s.flip(),
            alloc::vec![z1, m, z2],
            alloc::vec![q],
        ),
    );
    parts.theta.push(t2);
    parts.theta.push(t1);
    parts.theta.push(r);
    parts.build()
}

/// A random admissible change of foliation, if any applies.
pub fn shuffle_foliation(t: &Tiling, rng: &mut Rng) -> Option<Tiling> {
    let edges = derive_adjacency(t).ok()?;
    let mut sites: Vec<(TileId, TileId, (VertexId, VertexId))> = Vec::new();
    for e in &edges.b_edges {
        let (a, b) = (e.out_side.tile, e.in_side.tile);
        if a != b && t.tile(a).unwrap().sign == t.tile(b).unwrap().sign {
            sites.push((a, b, e.ends));
        }
    }
    if sites.is_empty() {
        return None;
    }
    let start = rng.below(sites.len());
    let variant = if rng.chance(50) {
        Variant::First
    } else {
        Variant::Rotated
    };
    for k in 0..sites.len() {
        let (a, b, gamma) = sites[(start + k) % sites.len()];
        for var in [
            variant,
            if variant == Variant::First {
                Variant::Rotated
            } else {
                Variant::First
            },
        ] {
            if let Ok((next, _)) = change_of_foliation(t, a, b, gamma, var) {
                return Some(next);
            }
        }
    }
    None
}

/// Growth recipe for a random union of disc components.
#[derive(Debug, Clone, Copy)]
pub struct GrowthPlan {
    pub components: u32,
    pub ops: usize,
    /// Percent weights for petals / pockets / pitas / collapse
    /// components (rest: shuffles).  Thresholds against a roll in
    /// 0..100, in that order: weights summing past 100 starve the
    /// later ops.
    pub petal_weight: u64,
    pub pocket_weight: u64,
    pub pita_weight: u64,
    pub collapse_weight: u64,
}

impl Default for GrowthPlan {
    fn default() -> Self {
        GrowthPlan {
            components: 1,
            ops: 6,
            petal_weight: 35,
            pocket_weight: 32,
            pita_weight: 15,
            collapse_weight: 8,
        }
    }
}

/// Grow a valid tiling of disc components (collapse ops may add more).
pub fn grow_discs(seed: u64, plan: GrowthPlan) -> Tiling {
    let mut rng = Rng::new(seed);
    let mut t = crate::fixtures::trivial_disc(plan.components.max(1));
    for _ in 0..plan.ops {
        let roll = rng.next_u64() % 100;
        t = if roll < plan.petal_weight {
            grow_petal(&t, &mut rng)
        } else if roll < plan.petal_weight + plan.pocket_weight {
            grow_pocket(&t, &mut rng).unwrap_or_else(|| grow_petal(&t, &mut rng))
        } else if roll < plan.petal_weight + plan.pocket_weight + plan.pita_weight {
            grow_pita(&t, &mut rng)
                .or_else(|| grow_pocket(&t, &mut rng))
                .unwrap_or_else(|| grow_petal(&t, &mut rng))
        } else if roll
            < plan.petal_weight + plan.pocket_weight + plan.pita_weight + plan.collapse_weight
        {
            grow_collapse_component(&t, &mut rng)
        } else {
            shuffle_foliation(&t, &mut rng).unwrap_or_else(|| grow_petal(&t, &mut rng))
        };
    }
    t
}

/// Grow an all-`aa` disc (petals only).
pub fn grow_all_aa_disc(seed: u64, petals: usize) -> Tiling {
    let mut rng = Rng::new(seed);
    let mut t = crate::fixtures::trivial_disc(1);
    for _ in 0..petals {
        t = grow_petal(&t, &mut rng);
    }
    t
}
