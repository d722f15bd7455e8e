//! Exact lattice and root-graph computations for Coble surfaces with finite
//! automorphism group.

pub mod arith;
pub mod catalog;
pub mod fibrations;
pub mod lattice;
pub mod rootgraph;

pub use arith::{IntMatrix, RatMatrix, Signature};
pub use catalog::{BlowupModel, CatalogEntry, CatalogError, Table1Row};
pub use fibrations::{CharClass, KodairaFiber};
pub use lattice::{Embedded, Lattice, LatticeError, QVec, RInvariant};
pub use rootgraph::{DiagramType, GraphError, ParabolicSubdiagram, RootGraph, VertexKind, VertexSet};
