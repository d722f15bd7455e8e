//! Fixtures shared by the benchmarks.

use coble_core::catalog::build_graph;
use coble_core::RootGraph;

/// Built-in graphs exercised by the benchmarks.
pub const FIXTURES: [&str; 5] = ["I", "II", "VI", "MI", "MII"];

pub fn fixture(name: &str) -> RootGraph {
    build_graph(name).expect("built-in graph")
}
