//! Maximum Betweenness Centrality: group betweenness evaluation, greedy
//! approximation, an exact dynamic program for trees, adversarial instance
//! families and a brute-force reference solver.

pub mod coverage;
pub mod exact;
pub mod gbc;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod solution;
pub mod tree;

pub use gbc::{brandes_bc, gbc_direct, gbc_modified, GbcOracle, OracleError};
pub use graph::{apsp, CostedInstance, Graph, GraphError, PathCounts};
pub use solution::{Algorithm, Solution};

/// Relative tolerance under which two objective values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `a` beats `b` by more than rounding noise. Infinite values tie with each other.
pub(crate) fn beats(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a > b;
    }
    a > b + TIE_TOLERANCE * b.abs().max(1.0)
}
