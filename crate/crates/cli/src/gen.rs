use std::path::{Path, PathBuf};

use mbc_core::generate::{
    default_sides, gen_apx, gen_random, gen_random_costs, gen_random_tree, gen_tight, ApxInstanceMeta, Replication,
    TightInstanceMeta, DEFAULT_NODE_CAP,
};
use mbc_core::graph::instance_to_json;
use mbc_core::Graph;
use serde_json::{json, Value};

use crate::error::{invalid, CliError, Result};
use crate::load;

fn labels(g: &Graph, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&v| g.label(v).to_string()).collect()
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `PREFIX.json` and `PREFIX.meta.json`; returns the two paths.
fn emit(prefix: &Path, instance: &Value, meta: &Value) -> Result<(PathBuf, PathBuf)> {
    let inst_path = with_suffix(prefix, ".json");
    let meta_path = with_suffix(prefix, ".meta.json");
    load::write(&inst_path, &format!("{instance:#}\n"))?;
    load::write(&meta_path, &format!("{meta:#}\n"))?;
    Ok((inst_path, meta_path))
}

fn tight_meta(g: &Graph, meta: &TightInstanceMeta) -> Value {
    json!({
        "family": "tight",
        "k": meta.k,
        "ls": meta.ls,
        "lt": meta.lt,
        "budget": meta.budget,
        "row_nodes": labels(g, &meta.row_nodes),
        "col_nodes": labels(g, &meta.col_nodes),
        "split_nodes": labels(g, &meta.split_nodes),
        "source_side": labels(g, &meta.source_side),
        "sink_side": labels(g, &meta.sink_side),
        "alpha": meta.alpha,
        "opt_rows": labels(g, &meta.opt_rows),
        "candidates": labels(g, &meta.candidates()),
    })
}

fn apx_meta(h: &Graph, meta: &ApxInstanceMeta) -> Value {
    let copies: serde_json::Map<String, Value> = meta
        .originals
        .iter()
        .map(|&v| (h.label(v).to_string(), json!(labels(h, &meta.copies[v]))))
        .collect();
    let intermediates: Vec<Value> = meta
        .intermediates
        .iter()
        .map(|&(u, v, z)| json!({"u": h.label(u), "v": h.label(v), "z": h.label(z)}))
        .collect();
    let pairs: Vec<[&str; 2]> = meta.essential_pairs.iter().map(|&(x, y)| [h.label(x), h.label(y)]).collect();
    json!({
        "family": "apx",
        "k": meta.k,
        "l": meta.l,
        "inessential_constant": meta.inessential_constant,
        "originals": labels(h, &meta.originals),
        "copies": copies,
        "intermediates": intermediates,
        "essential_pairs": pairs,
    })
}

pub fn tight(k: usize, ls: Option<usize>, lt: Option<usize>, prefix: &Path) -> Result<Value> {
    let (dls, dlt) = default_sides(k);
    let (g, meta) = gen_tight(k, ls.unwrap_or(dls), lt.unwrap_or(dlt), DEFAULT_NODE_CAP).map_err(invalid)?;
    let instance = instance_to_json(&g, None, Some(meta.budget as f64));
    let (i, m) = emit(prefix, &instance, &tight_meta(&g, &meta))?;
    Ok(summary(&g, &i, &m))
}

pub fn apx(graph: &Path, k: usize, l: Option<usize>, epsilon: Option<f64>, prefix: &Path) -> Result<Value> {
    let replication = match (l, epsilon) {
        (Some(l), None) => Replication::Fixed(l),
        (None, Some(epsilon)) => Replication::Auto { epsilon },
        _ => return Err(CliError::Usage("give exactly one of --l and --epsilon".into())),
    };
    let g = load::document(graph)?.graph;
    let (h, meta) = gen_apx(&g, k, replication, DEFAULT_NODE_CAP).map_err(invalid)?;
    let instance = instance_to_json(&h, None, Some(k as f64));
    let (i, m) = emit(prefix, &instance, &apx_meta(&h, &meta))?;
    Ok(summary(&h, &i, &m))
}

pub struct RandomSpec {
    pub n: usize,
    pub p: f64,
    pub tree: bool,
    pub costs: Option<(u32, u32)>,
    pub budget: Option<f64>,
    pub seed: u64,
}

pub fn random(spec: &RandomSpec, prefix: &Path) -> Result<Value> {
    if spec.n < 2 {
        return Err(CliError::Validation(format!("need at least two nodes, got {}", spec.n)));
    }
    if !(0.0..=1.0).contains(&spec.p) {
        return Err(CliError::Validation(format!("edge probability {} is outside [0, 1]", spec.p)));
    }
    let g = if spec.tree {
        gen_random_tree(spec.n, spec.seed)
    } else {
        gen_random(spec.n, spec.p, spec.seed)
    };
    let cost = match spec.costs {
        Some((lo, hi)) if lo <= hi => Some(gen_random_costs(&g, lo, hi, spec.seed.wrapping_add(1))),
        Some((lo, hi)) => return Err(CliError::Validation(format!("empty cost range {lo}:{hi}"))),
        None => None,
    };
    let instance = instance_to_json(&g, cost.as_deref(), spec.budget);
    let meta = json!({
        "family": if spec.tree { "random-tree" } else { "random" },
        "n": spec.n,
        "p": spec.p,
        "seed": spec.seed,
        "costs": spec.costs.map(|(lo, hi)| [lo, hi]),
    });
    let (i, m) = emit(prefix, &instance, &meta)?;
    Ok(summary(&g, &i, &m))
}

fn summary(g: &Graph, instance: &Path, meta: &Path) -> Value {
    json!({
        "n": g.n(),
        "m": g.m(),
        "instance": instance.display().to_string(),
        "meta": meta.display().to_string(),
    })
}
