//! Bundled fixtures: the three-stage unknot disc family and friends.
//!
//! The family starts from a 4-braid unknot bounding a disc tiled by
//! three `aa` tiles around a central vertex (`fig4_3a`).  Each later
//! stage pushes a pocket of two opposite-sign `ab` tiles into the disc:
//! `fig4_3b` has one pocket at vertex 1 and one at vertex 2, `fig4_3c`
//! nests a second pocket inside each.  Exchange moves at the pockets'
//! interior vertices unwind the nesting, and three destabilizations
//! finish the reduction to the radially foliated disc.

use alloc::vec;
use alloc::vec::Vec;

use crate::braid::BraidWord;
use crate::tiling::{AxisVertex, BoundaryPoint, Sign, Tile, TileKind, Tiling};

/// Fixture names in the order `list` reports them.
pub const NAMES: [&str; 7] = [
    "fig4_3a",
    "fig4_3b",
    "fig4_3c",
    "trivial_disc",
    "trivial_unlink_2",
    "bb_torus",
    "pocket_pair",
];

/// Look a fixture up by name.
pub fn by_name(name: &str) -> Option<Tiling> {
    match name {
        "fig4_3a" => Some(fig4_3a()),
        "fig4_3b" => Some(fig4_3b()),
        "fig4_3c" => Some(fig4_3c()),
        "trivial_disc" => Some(trivial_disc(1)),
        "trivial_unlink_2" => Some(trivial_disc(2)),
        "bb_torus" => Some(bb_torus()),
        "pocket_pair" => Some(pocket_pair()),
        _ => None,
    }
}

fn vx(id: u32, axis_rank: u32, parity: Sign) -> AxisVertex {
    AxisVertex {
        id: id.into(),
        axis_rank,
        parity,
    }
}

fn pt(id: u32, component: u32, link_rank: u32) -> BoundaryPoint {
    BoundaryPoint {
        id: id.into(),
        component,
        link_rank,
    }
}

fn tile(
    id: u32,
    kind: TileKind,
    sign: Sign,
    theta_rank: u32,
    vertices: &[u32],
    endpoints: &[u32],
) -> Tile {
    Tile {
        id: id.into(),
        kind,
        sign,
        theta_rank,
        vertices: vertices.iter().map(|v| (*v).into()).collect(),
        endpoints: endpoints.iter().map(|p| (*p).into()).collect(),
    }
}

/// `r` radially foliated discs: the standard trivial `r`-braid.
pub fn trivial_disc(r: u32) -> Tiling {
    Tiling::build(r, r, Vec::new(), Vec::new(), Vec::new()).unwrap()
}

/// The all-`aa` disc of the 4-braid unknot: three petals around a
/// central vertex.
///
/// Vertices 1..4 pierce the axis in the order 1, 2, 4, 3; the six
/// singular-leaf endpoints run 5, 6, 7, 8, 9, 10 around the unknot.
/// Tiles 11, 12, 13 are positive, in that fibration order.
pub fn fig4_3a() -> Tiling {
    Tiling::build(
        4,
        0,
        vec![
            vx(1, 0, Sign::Plus),
            vx(2, 1, Sign::Plus),
            vx(3, 3, Sign::Plus),
            vx(4, 2, Sign::Plus),
        ],
        vec![
            pt(5, 0, 0),
            pt(6, 0, 1),
            pt(7, 0, 2),
            pt(8, 0, 3),
            pt(9, 0, 4),
            pt(10, 0, 5),
        ],
        vec![
            tile(11, TileKind::Aa, Sign::Plus, 0, &[2, 1], &[9, 10]),
            tile(12, TileKind::Aa, Sign::Plus, 1, &[2, 3], &[5, 6]),
            tile(13, TileKind::Aa, Sign::Plus, 2, &[2, 4], &[7, 8]),
        ],
    )
    .unwrap()
}

/// One pocket (vertices 14 plus, 15 minus) pushed into the petal at
/// vertex 1, and one (18 plus, 19 minus) into the central gap at
/// vertex 2.
pub fn fig4_3b() -> Tiling {
    Tiling::build(
        4,
        0,
        vec![
            vx(1, 0, Sign::Plus),
            vx(2, 3, Sign::Plus),
            vx(3, 7, Sign::Plus),
            vx(4, 6, Sign::Plus),
            vx(14, 1, Sign::Plus),
            vx(15, 2, Sign::Minus),
            vx(18, 4, Sign::Plus),
            vx(19, 5, Sign::Minus),
        ],
        vec![
            pt(5, 0, 0),
            pt(6, 0, 1),
            pt(24, 0, 2),
            pt(25, 0, 3),
            pt(7, 0, 4),
            pt(8, 0, 5),
            pt(9, 0, 6),
            pt(16, 0, 7),
            pt(17, 0, 8),
            pt(10, 0, 9),
        ],
        vec![
            tile(11, TileKind::Aa, Sign::Plus, 0, &[2, 1], &[9, 10]),
            tile(12, TileKind::Aa, Sign::Plus, 1, &[2, 3], &[5, 6]),
            tile(22, TileKind::Ab, Sign::Plus, 2, &[18, 19, 2], &[24]),
            tile(23, TileKind::Ab, Sign::Minus, 3, &[2, 19, 18], &[25]),
            tile(13, TileKind::Aa, Sign::Plus, 4, &[2, 4], &[7, 8]),
            tile(20, TileKind::Ab, Sign::Plus, 5, &[14, 15, 1], &[16]),
            tile(21, TileKind::Ab, Sign::Minus, 6, &[1, 15, 14], &[17]),
        ],
    )
    .unwrap()
}

/// A second pocket nested inside each pocket of `fig4_3b`: vertices 26
/// plus and 27 minus hang off vertex 14, vertices 30 plus and 31 minus
/// off vertex 18.
pub fn fig4_3c() -> Tiling {
    Tiling::build(
        4,
        0,
        vec![
            vx(1, 0, Sign::Plus),
            vx(2, 5, Sign::Plus),
            vx(3, 11, Sign::Plus),
            vx(4, 10, Sign::Plus),
            vx(14, 1, Sign::Plus),
            vx(15, 4, Sign::Minus),
            vx(18, 6, Sign::Plus),
            vx(19, 9, Sign::Minus),
            vx(26, 2, Sign::Plus),
            vx(27, 3, Sign::Minus),
            vx(30, 7, Sign::Plus),
            vx(31, 8, Sign::Minus),
        ],
        vec![
            pt(5, 0, 0),
            pt(6, 0, 1),
            pt(24, 0, 2),
            pt(36, 0, 3),
            pt(37, 0, 4),
            pt(25, 0, 5),
            pt(7, 0, 6),
            pt(8, 0, 7),
            pt(9, 0, 8),
            pt(16, 0, 9),
            pt(32, 0, 10),
            pt(33, 0, 11),
            pt(17, 0, 12),
            pt(10, 0, 13),
        ],
        vec![
            tile(11, TileKind::Aa, Sign::Plus, 0, &[2, 1], &[9, 10]),
            tile(12, TileKind::Aa, Sign::Plus, 1, &[2, 3], &[5, 6]),
            tile(22, TileKind::Ab, Sign::Plus, 2, &[18, 19, 2], &[24]),
            tile(34, TileKind::Ab, Sign::Plus, 3, &[30, 31, 18], &[36]),
            tile(35, TileKind::Ab, Sign::Minus, 4, &[18, 31, 30], &[37]),
            tile(23, TileKind::Ab, Sign::Minus, 5, &[2, 19, 18], &[25]),
            tile(13, TileKind::Aa, Sign::Plus, 6, &[2, 4], &[7, 8]),
            tile(20, TileKind::Ab, Sign::Plus, 7, &[14, 15, 1], &[16]),
            tile(28, TileKind::Ab, Sign::Plus, 8, &[26, 27, 14], &[32]),
            tile(29, TileKind::Ab, Sign::Minus, 9, &[14, 27, 26], &[33]),
            tile(21, TileKind::Ab, Sign::Minus, 10, &[1, 15, 14], &[17]),
        ],
    )
    .unwrap()
}

/// Two vertices, two `bb` tiles glued along all four side pairs: a
/// closed surface of Euler characteristic zero; exercises the derived
/// complex on data no move touches.
pub fn bb_torus() -> Tiling {
    Tiling::build(
        1,
        0,
        vec![vx(1, 0, Sign::Plus), vx(2, 1, Sign::Minus)],
        Vec::new(),
        vec![
            tile(3, TileKind::Bb, Sign::Plus, 0, &[1, 2, 1, 2], &[]),
            tile(4, TileKind::Bb, Sign::Minus, 1, &[1, 2, 1, 2], &[]),
        ],
    )
    .unwrap()
}

/// The minimal exchange site: a free-standing pocket of two `ab` tiles
/// of opposite sign, a 1-braid disc whose interior vertex admits the
/// exchange.
pub fn pocket_pair() -> Tiling {
    Tiling::build(
        1,
        0,
        vec![
            vx(1, 0, Sign::Plus),
            vx(2, 1, Sign::Minus),
            vx(3, 2, Sign::Plus),
        ],
        vec![pt(4, 0, 0), pt(5, 0, 1)],
        vec![
            tile(6, TileKind::Ab, Sign::Plus, 0, &[1, 2, 3], &[4]),
            tile(7, TileKind::Ab, Sign::Minus, 1, &[3, 2, 1], &[5]),
        ],
    )
    .unwrap()
}

/// The 4-braid unknot word bounding the petal disc: the closure of
/// `s2 s1 s3 s2 s3^-1`.
pub fn fig4_1a_word() -> BraidWord {
    BraidWord::new(4, vec![2, 1, 3, 2, -3]).unwrap()
}
