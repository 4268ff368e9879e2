//! Finite machinery for the generic digraph and its reducts: digraph values
//! with three-valued pair relations, extension-property builders and
//! certification, the switching/rotation transformation family with
//! inverse-problem detectors, the definable-relation vocabulary, the
//! eleven-element reduct lattice with map classification, and the behaviour
//! tables of canonical functions.
//!
//! The enumeration-heavy entry points run data-parallel on rayon by default;
//! build with `--no-default-features` for the sequential fallback, or pass
//! [`exec::Parallelism::Sequential`] to the `_with` variants.

pub mod behavior;
pub mod digraph;
pub mod ep;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod relations;
pub mod transform;
pub mod verify;

pub use digraph::{Digraph, Graph, PairType, TriangleCode};
pub use error::{Error, Result};
pub use exec::Parallelism;
pub use transform::Transform;
