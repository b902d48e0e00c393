use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Unit,
    Ratio,
    Modified,
    Tree,
    Exact,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Unit => "unit",
            Algorithm::Ratio => "ratio",
            Algorithm::Modified => "modified",
            Algorithm::Tree => "tree",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A feasible node set and how it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Chosen nodes, ascending.
    pub nodes: Vec<usize>,
    /// Chosen nodes in the order the algorithm picked them.
    pub selection: Vec<usize>,
    /// Sum of node costs, accumulated in selection order.
    pub cost: f64,
    /// Group betweenness centrality in ordered-pair units.
    pub gbc: f64,
    pub algorithm: Algorithm,
    /// The initialization of the winning modified-greedy run.
    pub init_seed: Option<Vec<usize>>,
}

impl Solution {
    pub(crate) fn new(selection: Vec<usize>, cost: f64, gbc: f64, algorithm: Algorithm) -> Self {
        let mut nodes = selection.clone();
        nodes.sort_unstable();
        Solution {
            nodes,
            selection,
            cost,
            gbc,
            algorithm,
            init_seed: None,
        }
    }
}
