//! Error types for construction, derivation, moves and pipelines.

use alloc::string::String;
use core::fmt;

use crate::tiling::{PointId, TileId, VertexId};

/// Errors raised while assembling a [`crate::tiling::Tiling`] from raw parts.
///
/// Construction checks references, id uniqueness, rank permutations and
/// per-kind arity; the surface-level conditions are left to `validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    DuplicateVertexId(VertexId),
    DuplicatePointId(PointId),
    DuplicateTileId(TileId),
    DanglingVertex {
        tile: TileId,
        vertex: VertexId,
    },
    DanglingPoint {
        tile: TileId,
        point: PointId,
    },
    AxisRanksNotPermutation,
    ThetaRanksNotPermutation,
    LinkRanksNotPermutation {
        component: u32,
    },
    KindMultiplicity {
        tile: TileId,
        expected_vertices: usize,
        expected_endpoints: usize,
    },
    ZeroBraidIndex,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::DuplicateVertexId(v) => write!(f, "duplicate vertex id {v}"),
            BuildError::DuplicatePointId(p) => write!(f, "duplicate boundary point id {p}"),
            BuildError::DuplicateTileId(t) => write!(f, "duplicate tile id {t}"),
            BuildError::DanglingVertex { tile, vertex } => {
                write!(f, "tile {tile} references unknown vertex {vertex}")
            }
            BuildError::DanglingPoint { tile, point } => {
                write!(f, "tile {tile} references unknown boundary point {point}")
            }
            BuildError::AxisRanksNotPermutation => {
                write!(f, "axis ranks are not a permutation of 0..V-1")
            }
            BuildError::ThetaRanksNotPermutation => {
                write!(f, "theta ranks are not a permutation of 0..t-1")
            }
            BuildError::LinkRanksNotPermutation { component } => {
                write!(f, "link ranks on component {component} are not a permutation")
            }
            BuildError::KindMultiplicity { tile, expected_vertices, expected_endpoints } => write!(
                f,
                "tile {tile}: kind requires {expected_vertices} vertices and {expected_endpoints} endpoints"
            ),
            BuildError::ZeroBraidIndex => write!(f, "braid index must be positive"),
        }
    }
}

/// Errors raised while deriving the edge complex (side pairing, fans).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    /// A b-side could not be paired: the event sequence on its vertex
    /// pair does not balance, so the data is not a surface complex.
    UnpairedBSide {
        vertex_a: VertexId,
        vertex_b: VertexId,
    },
    /// A b-side pair would join two vertices of equal parity.
    EqualParityBEdge {
        vertex_a: VertexId,
        vertex_b: VertexId,
    },
    /// Consecutive boundary points disagree about the axis vertex of the
    /// a-arc between them.
    GapVertexMismatch {
        from: PointId,
        to: PointId,
        post: VertexId,
        pre: VertexId,
    },
    /// The corners around a vertex do not close into a single cycle
    /// consistent with the fibration order.
    BrokenFan { vertex: VertexId },
    /// A vertex carries no tile corner at all (only radially foliated
    /// discs may pierce the axis without tiles, and those carry no ids).
    BareVertex { vertex: VertexId },
    /// A boundary point is not flanked by exactly one tile's a-sides.
    PointNotOnOneTile { point: PointId },
    /// Adjacency derivation is only defined for spanning-surface tiles.
    ClosedKindPresent { tile: TileId },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::UnpairedBSide { vertex_a, vertex_b } => {
                write!(f, "unpaired b-side on vertex pair ({vertex_a}, {vertex_b})")
            }
            ComplexError::EqualParityBEdge { vertex_a, vertex_b } => {
                write!(f, "b-edge ({vertex_a}, {vertex_b}) joins equal parities")
            }
            ComplexError::GapVertexMismatch { from, to, post, pre } => write!(
                f,
                "a-sides between points {from} and {to} attach to different vertices ({post} vs {pre})"
            ),
            ComplexError::BrokenFan { vertex } => {
                write!(f, "corners around vertex {vertex} do not form a fibration-ordered fan")
            }
            ComplexError::BareVertex { vertex } => write!(f, "vertex {vertex} has no incident tile"),
            ComplexError::PointNotOnOneTile { point } => {
                write!(f, "boundary point {point} is not flanked by exactly one tile")
            }
            ComplexError::ClosedKindPresent { tile } => {
                write!(f, "tile {tile} has a closed-surface kind (bc/cc), no derived adjacency")
            }
        }
    }
}

/// Errors raised by the foliation moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveError {
    UnknownVertex(VertexId),
    UnknownTile(TileId),
    /// The star at the move site does not have the required shape.
    StarMismatch {
        vertex: VertexId,
        expected: &'static str,
    },
    /// Change of foliation requires two distinct same-sign tiles.
    SignsDiffer {
        t1: TileId,
        t2: TileId,
    },
    SameTile(TileId),
    /// The two tiles are not adjacent along a b-edge with the given ends.
    NotAdjacent {
        t1: TileId,
        t2: TileId,
    },
    WrongKind {
        tile: TileId,
        expected: &'static str,
    },
    /// Another singularity interrupts the fibration interval swept by the
    /// move, so the local rewrite would change the complex elsewhere.
    ThetaWindowObstructed {
        t1: TileId,
        t2: TileId,
        obstruction: TileId,
    },
    /// The pocket at an exchange site is not clean: other sheets pierce
    /// the axis inside it, or the companion vertex keeps incidences.
    PocketNotClean {
        vertex: VertexId,
        reason: String,
    },
    /// Closed-surface kinds (bc/cc) take part in no move.
    UnsupportedKind(TileId),
    Complex(ComplexError),
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            MoveError::UnknownTile(t) => write!(f, "unknown tile {t}"),
            MoveError::StarMismatch { vertex, expected } => {
                write!(f, "star of vertex {vertex} is not {expected}")
            }
            MoveError::SignsDiffer { t1, t2 } => {
                write!(f, "tiles {t1} and {t2} have opposite signs")
            }
            MoveError::SameTile(t) => write!(f, "move needs two distinct tiles, got {t} twice"),
            MoveError::NotAdjacent { t1, t2 } => {
                write!(
                    f,
                    "tiles {t1} and {t2} share no b-edge at the given vertices"
                )
            }
            MoveError::WrongKind { tile, expected } => {
                write!(f, "tile {tile} is not of kind {expected}")
            }
            MoveError::ThetaWindowObstructed {
                t1,
                t2,
                obstruction,
            } => write!(
                f,
                "singularity of tile {obstruction} lies in the fibration window of ({t1}, {t2})"
            ),
            MoveError::PocketNotClean { vertex, reason } => {
                write!(f, "pocket at vertex {vertex} is not clean: {reason}")
            }
            MoveError::UnsupportedKind(t) => {
                write!(f, "tile {t} has a closed-surface kind, moves are undefined")
            }
            MoveError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl From<ComplexError> for MoveError {
    fn from(e: ComplexError) -> Self {
        MoveError::Complex(e)
    }
}

/// Errors raised by the reduction pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    /// Input fails validation; the pipeline refuses to run.
    InvalidInput(String),
    /// The pipeline requires every component to be a disc.
    NotADisc { detail: String },
    /// Flattening requires a spanning surface; a closed component exists.
    ClosedComponent,
    /// A vertex elimination subroutine was asked for a site it cannot
    /// reduce.
    IneligibleSite { vertex: VertexId, reason: String },
    /// A move failed mid-subroutine; carries the move error.
    MoveFailed { vertex: VertexId, error: MoveError },
    /// No applicable move remains although tiles are left.  Carries the
    /// serialized ids of the surviving tiles for diagnosis.
    Stuck { remaining_tiles: usize },
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::InvalidInput(d) => write!(f, "input does not validate: {d}"),
            ReduceError::NotADisc { detail } => {
                write!(f, "input is not a union of discs: {detail}")
            }
            ReduceError::ClosedComponent => write!(f, "input contains a closed component"),
            ReduceError::IneligibleSite { vertex, reason } => {
                write!(f, "vertex {vertex} is not an eligible site: {reason}")
            }
            ReduceError::MoveFailed { vertex, error } => {
                write!(f, "move at vertex {vertex} failed: {error}")
            }
            ReduceError::Stuck { remaining_tiles } => {
                write!(f, "reduction stuck with {remaining_tiles} tiles remaining")
            }
        }
    }
}

/// Errors raised by braid-word operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    LetterOutOfRange {
        letter: i32,
        strands: u32,
    },
    ZeroLetter,
    ZeroStrands,
    /// Destabilization needs a terminal letter on the last strand and no
    /// other use of that strand.
    NotDestabilizable,
    /// The word does not have the `b1 s b2 s^-1` block shape at the given
    /// split.
    ExchangeShapeMismatch,
    BadConjugator {
        letter: i32,
    },
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::LetterOutOfRange { letter, strands } => {
                write!(f, "letter {letter} out of range for {strands} strands")
            }
            BraidError::ZeroLetter => write!(f, "letter 0 is not a generator"),
            BraidError::ZeroStrands => write!(f, "a braid word needs at least one strand"),
            BraidError::NotDestabilizable => write!(f, "word is not in destabilizable form"),
            BraidError::ExchangeShapeMismatch => {
                write!(
                    f,
                    "word does not match the exchange block shape at that split"
                )
            }
            BraidError::BadConjugator { letter } => {
                write!(f, "invalid conjugating letter {letter}")
            }
        }
    }
}
