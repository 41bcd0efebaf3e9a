//! Combinatorial engine for braid-foliated spanning surfaces.
//!
//! A closed braid around an axis induces a singular foliation on any
//! spanning surface it bounds: the leaves are the intersections with the
//! half-plane fibers through the axis.  After normalization every
//! non-singular leaf is an arc from the axis to the link (an a-arc) or an
//! arc from the axis to itself (a b-arc), and the surface decomposes into
//! tiles of type `aa`, `ab` and `bb`, one saddle singularity each.  The
//! whole embedded picture is determined by finite combinatorial data:
//! which axis piercings and link points each tile touches, and the cyclic
//! order of the singularities in the fibration.
//!
//! This crate stores exactly that data and makes it executable:
//!
//! * [`tiling`] — the data model, derived adjacency, vertex stars, Euler
//!   characteristic and a validation report for the necessary
//!   realizability conditions;
//! * [`graphs`] — the four singular-leaf graphs `G(eps, delta)` and the
//!   structural queries on them;
//! * [`moves`] — the local foliation rewrites: change of foliation,
//!   stabilization along an `ab`-tile, destabilization at a type-(a)
//!   vertex, and the two exchange moves, all as total functions with
//!   exact bookkeeping;
//! * [`reduction`] — normalization subroutines and the pipelines that
//!   flatten a surface to all-`aa` form or reduce an unlink
//!   representative to the trivial braid, producing a transcript;
//! * [`braid`] — an independent braid-word oracle (Markov and exchange
//!   moves on words, closure invariants, a bounded triviality search)
//!   used to cross-check the tiling-level bookkeeping;
//! * [`fixtures`] — the bundled example tilings and words;
//! * [`corpus`] — deterministic seeded generators for randomized test
//!   corpora.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `braidtile-cli` crate.  All values are immutable
//! after construction and every operation is a pure function, so values
//! may be freely shared between threads.

#![no_std]

extern crate alloc;

pub mod braid;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod graphs;
pub mod moves;
pub mod reduction;
pub mod tiling;

pub use error::{BraidError, BuildError, ComplexError, MoveError, ReduceError};
pub use tiling::{
    AxisVertex, BoundaryPoint, Parity, PointId, Sign, Tile, TileId, TileKind, Tiling, VertexId,
};
