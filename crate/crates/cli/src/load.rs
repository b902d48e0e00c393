use std::fs;
use std::path::Path;

use mbc_core::graph::{parse_costs, parse_instance, InstanceDoc};
use mbc_core::{CostedInstance, Graph};

use crate::error::{invalid, CliError, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn document(path: &Path) -> Result<InstanceDoc> {
    parse_instance(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Loads graph, costs and budget. A cost file overrides costs embedded in a JSON
/// instance, and an explicit budget overrides an embedded one.
pub fn instance(graph: &Path, costs: Option<&Path>, budget: Option<f64>) -> Result<CostedInstance> {
    let doc = document(graph)?;
    let cost = match costs {
        Some(p) => parse_costs(&read(p)?, &doc.graph).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?,
        None => doc.costs.unwrap_or_else(|| vec![1.0; doc.graph.n()]),
    };
    let budget = budget
        .or(doc.budget)
        .ok_or_else(|| CliError::Usage("no budget given and none in the instance file".into()))?;
    CostedInstance::new(doc.graph, cost, budget).map_err(invalid)
}

/// Resolves a comma-separated label list.
pub fn node_list(graph: &Graph, list: &str) -> Result<Vec<usize>> {
    let labels: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut ids = graph.resolve(&labels).map_err(invalid)?;
    ids.sort_unstable();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::Validation(format!("node list `{list}` repeats a node")));
    }
    Ok(ids)
}
