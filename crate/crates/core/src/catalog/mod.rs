//! Built-in dual graphs, their blow-up models, and the classification table.

mod graphs;
mod model;
mod rinv;
mod table;
mod witness;

use std::path::Path;

use crate::lattice::LatticeError;
use crate::rootgraph::{GraphError, RootGraph};

pub use graphs::{duad_label, grid_label, perm_label, s4_elements, syntheme_label, synthemes, triad_label, triads};
pub use model::{
    blowup_ambient, coble_mukai, f3_incidence, valuation, verify_realization, BlowupModel, PairMismatch,
    RealizationReport,
};
pub use rinv::{r_invariant_check, row_r_invariant, RContext, RInvariantReport};
pub use table::{table1, Table1Row, TABLE1};
pub use witness::{witnesses, Witness};

/// Names accepted by [`build_graph`].
pub const BUILTIN_GRAPHS: [&str; 7] = ["I", "I1", "II", "VI", "VI5", "MI", "MII"];

/// Names accepted by [`build_model`].
pub const BUILTIN_MODELS: [&str; 2] = ["MI", "MII"];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("inconsistent construction: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `I` and `VI` are the variants with (-1)-roots (two and five boundary
/// components); `I1` and `VI5` have a single boundary and only curves.
pub fn build_graph(name: &str) -> Result<RootGraph, CatalogError> {
    graphs::by_name(name).ok_or_else(|| {
        CatalogError::UnknownName(format!("`{name}`; built-in graphs are {}", BUILTIN_GRAPHS.join(", ")))
    })
}

pub fn load_graph(path: &Path) -> Result<RootGraph, CatalogError> {
    Ok(RootGraph::load(path)?)
}

pub fn build_model(name: &str) -> Result<BlowupModel, CatalogError> {
    model::by_name(name)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: RootGraph,
    pub model: Option<BlowupModel>,
    pub row: &'static Table1Row,
    /// Order of the graph automorphism group where it is known independently.
    pub aut_order: Option<u64>,
}

pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let graph = build_graph(name)?;
    let row = table1(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let model = if BUILTIN_MODELS.contains(&name) {
        Some(build_model(name)?)
    } else {
        None
    };
    let aut_order = match name {
        "MI" => Some(1440),
        "MII" => Some(1152),
        _ => None,
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        graph,
        model,
        row,
        aut_order,
    })
}

impl CatalogEntry {
    /// `None` when the entry has no model.
    pub fn verify_realization(&self) -> Option<RealizationReport> {
        self.model.as_ref().map(|m| verify_realization(&self.graph, m))
    }
}
