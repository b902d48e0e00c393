//! Benchmark suites.
//!
//! A suite is a JSON file listing instances; paths are relative to the suite file:
//!
//! ```json
//! {"instances": [
//!   {"name": "c4", "graph": "c4.txt", "costs": "c4.costs", "budget": 2,
//!    "algos": ["unit", "modified"], "opt": true}
//! ]}
//! ```
//!
//! `costs` and `budget` are optional when the graph file is a JSON instance that
//! carries them. With `"opt": true` the exact optimum is computed as well and
//! every row reports the achieved fraction of it.

use std::path::Path;
use std::time::Instant;

use mbc_core::apsp;
use mbc_core::exact::solve_exact;
use serde_json::Value;

use crate::error::{invalid, CliError, Result};
use crate::load;
use crate::report::{audit, num};
use crate::solve::{self, Algo};

struct Entry {
    name: String,
    graph: String,
    costs: Option<String>,
    budget: Option<f64>,
    algos: Vec<Algo>,
    opt: bool,
}

fn field<'a>(entry: &'a Value, key: &str) -> Option<&'a Value> {
    entry.get(key).filter(|v| !v.is_null())
}

fn parse_suite(text: &str) -> Result<Vec<Entry>> {
    let bad = |m: String| CliError::Validation(format!("suite: {m}"));
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let list = doc
        .get("instances")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `instances` array".into()))?;
    list.iter()
        .enumerate()
        .map(|(i, e)| {
            let graph = field(e, "graph")
                .and_then(Value::as_str)
                .ok_or_else(|| bad(format!("instance {i} has no `graph` path")))?
                .to_string();
            let algos = match field(e, "algos") {
                None => vec![Algo::Modified],
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| x.as_str().ok_or_else(|| bad(format!("instance {i}: algorithm names are strings"))))
                    .map(|name| name.and_then(Algo::parse))
                    .collect::<Result<_>>()?,
                Some(_) => return Err(bad(format!("instance {i}: `algos` must be an array"))),
            };
            Ok(Entry {
                name: field(e, "name").and_then(Value::as_str).unwrap_or(&graph).to_string(),
                costs: field(e, "costs").and_then(Value::as_str).map(str::to_string),
                budget: field(e, "budget").and_then(Value::as_f64),
                opt: field(e, "opt").and_then(Value::as_bool).unwrap_or(false),
                graph,
                algos,
            })
        })
        .collect()
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| num(v).to_string()).unwrap_or_default()
}

/// Runs the suite and returns the CSV text.
pub fn run(suite: &Path, timing: bool) -> Result<String> {
    let entries = parse_suite(&load::read(suite)?)?;
    let base = suite.parent().unwrap_or(Path::new("."));
    let mut out = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Fault(e.to_string());
    out.write_record(["instance", "algo", "gbc", "opt", "ratio", "time_ms"]).map_err(fail)?;
    for entry in entries {
        let costs = entry.costs.as_ref().map(|c| base.join(c));
        let inst = load::instance(&base.join(&entry.graph), costs.as_deref(), entry.budget)?;
        let pc = apsp(&inst.graph);
        let opt = if entry.opt {
            Some(solve_exact(&inst, &pc, None).map_err(invalid)?.gbc)
        } else {
            None
        };
        for algo in &entry.algos {
            let start = Instant::now();
            let sol = solve::run(&inst, &pc, *algo, None)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            audit(&inst, &pc, &sol)?;
            let ratio = opt.map(|o| if o > 0.0 { sol.gbc / o } else { 1.0 });
            out.write_record([
                entry.name.clone(),
                sol.algorithm.to_string(),
                cell(Some(sol.gbc)),
                cell(opt),
                cell(ratio),
                cell(timing.then_some(elapsed)),
            ])
            .map_err(fail)?;
        }
    }
    let bytes = out.into_inner().map_err(|e| CliError::Fault(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Fault(e.to_string()))
}
