use mbc_core::{gbc_direct, CostedInstance, PathCounts, Solution};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Rounds to 12 significant digits; printing the result gives at most 12.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> Value {
    json!(sig12(x))
}

/// Recomputes the GBC of `sol` from scratch and refuses to report a mismatch.
pub fn audit(inst: &CostedInstance, pc: &PathCounts, sol: &Solution) -> Result<()> {
    let fresh = gbc_direct(&inst.graph, pc, &sol.nodes);
    let n = inst.n() as f64;
    if (fresh - sol.gbc).abs() > 1e-9 * (n * n).max(1.0) {
        return Err(CliError::Fault(format!(
            "{} reported GBC {} but direct evaluation gives {fresh}",
            sol.algorithm, sol.gbc
        )));
    }
    if sol.cost > inst.budget {
        return Err(CliError::Fault(format!(
            "{} exceeded the budget: {} > {}",
            sol.algorithm, sol.cost, inst.budget
        )));
    }
    Ok(())
}

/// The solve report, with keys in a fixed order.
pub fn run_report(inst: &CostedInstance, sol: &Solution, time_ms: Option<f64>, seed: u64) -> String {
    let g = &inst.graph;
    let nodes: Vec<&str> = sol.nodes.iter().map(|&v| g.label(v)).collect();
    let fields = [
        ("n", json!(g.n())),
        ("m", json!(g.m())),
        ("budget", num(inst.budget)),
        ("algo", json!(sol.algorithm.as_str())),
        ("nodes", json!(nodes)),
        ("cost", num(sol.cost)),
        ("gbc", num(sol.gbc)),
        ("time_ms", time_ms.map_or(Value::Null, num)),
        ("seed", json!(seed)),
    ];
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  \"{k}\": {v}")).collect();
    format!("{{\n{}\n}}", body.join(",\n"))
}
