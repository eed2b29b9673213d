//! Construction, verification and exhaustive exploration of k-fan-crossing
//! free graph drawings.
//!
//! A drawing is k-fan-crossing free when no edge crosses k edges that share
//! a common endpoint. The crate provides
//!
//! * exact crossing computation and k-fan detection ([`crossings`]),
//! * the m-star arrow puzzle and its exhaustive search ([`star`]),
//! * the planar-subgraph decomposition and per-face arrow audit
//!   ([`decompose`]),
//! * generators for the extremal and lower-bound families
//!   ([`constructions`]),
//! * closed-form edge bounds ([`bounds`]),
//! * JSON I/O ([`io`]) and the reproduction battery ([`repro`]).

pub mod bounds;
pub mod constructions;
pub mod crossings;
pub mod decompose;
mod geom;
pub mod io;
pub mod model;
pub mod random;
pub mod repro;
pub mod star;

pub use model::{
    validate_graph, AbstractDrawing, CrossingRelation, Drawing, Embedding, FanWitness, Graph, GraphViolation, Point,
    StraightLineDrawing,
};
