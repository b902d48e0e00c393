//! Cross-check suites run against a single input graph.

use mbc_core::coverage::{reduce_to_coverage, DEFAULT_ELEMENT_CAP};
use mbc_core::exact::{solve_exact, MAX_CANDIDATES};
use mbc_core::greedy::{greedy_modified, greedy_ratio, greedy_unit};
use mbc_core::tree::tree_solve;
use mbc_core::{brandes_bc, gbc_direct, CostedInstance, GbcOracle, PathCounts};
use serde_json::{json, Value};

use crate::error::{invalid, CliError, Result};

const ONE_MINUS_INV_E: f64 = 0.632_120_558_828_557_7;
const ONE_MINUS_INV_SQRT_E: f64 = 0.393_469_340_287_366_6;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, suite: &str) -> (Value, Result<()>) {
        let report = json!({
            "suite": suite,
            "checks": self.checks,
            "failures": self.failures.len(),
            "first_failure": self.failures.first(),
        });
        let status = if self.failures.is_empty() {
            Ok(())
        } else {
            Err(CliError::Fault(format!("{} of {} {suite} checks failed", self.failures.len(), self.checks)))
        };
        (report, status)
    }
}

fn tol(n: usize) -> f64 {
    1e-9 * (n * n).max(1) as f64
}

/// Node sets to test: all of them for small graphs, otherwise all sets of at most
/// two nodes.
fn test_sets(n: usize) -> Vec<Vec<usize>> {
    if n <= 12 {
        (0u32..1 << n).map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect()).collect()
    } else {
        let mut sets = vec![Vec::new()];
        for u in 0..n {
            sets.push(vec![u]);
            for v in u + 1..n {
                sets.push(vec![u, v]);
            }
        }
        sets
    }
}

pub fn reduction(inst: &CostedInstance, pc: &PathCounts) -> Result<(Value, Result<()>)> {
    let g = &inst.graph;
    let n = g.n();
    let ci = reduce_to_coverage(inst, pc, DEFAULT_ELEMENT_CAP).map_err(invalid)?;
    let mut t = Tally::default();
    for set in test_sets(n) {
        let (w, d) = (ci.coverage_weight(&set), gbc_direct(g, pc, &set));
        t.check((w - d).abs() <= tol(n), || format!("C={set:?}: coverage weight {w}, GBC {d}"));
    }
    for k in 1..=n.min(3) {
        let unit = CostedInstance::unit(g.clone(), k);
        let (a, b) = (greedy_unit(&unit, pc, k).selection, ci.greedy_unit(k).order);
        t.check(a == b, || format!("unit greedy k={k}: {a:?} vs {b:?}"));
    }
    let (a, b) = (greedy_ratio(inst, pc).selection, ci.greedy_budgeted().order);
    t.check(a == b, || format!("ratio greedy: {a:?} vs {b:?}"));
    Ok(t.finish("reduction"))
}

pub fn oracle(inst: &CostedInstance, pc: &PathCounts) -> Result<(Value, Result<()>)> {
    let g = &inst.graph;
    let n = g.n();
    let mut t = Tally::default();
    let bc = brandes_bc(g);
    for (v, &bc_v) in bc.iter().enumerate() {
        let (d, b) = (gbc_direct(g, pc, &[v]), bc_v + 2.0 * (n as f64 - 1.0));
        t.check((d - b).abs() <= tol(n), || format!("node {}: GBC {d}, BC + 2(n-1) = {b}", g.label(v)));
    }
    let k = n.min(5);
    let trajectories = [
        greedy_unit(&CostedInstance::unit(g.clone(), k), pc, k).selection,
        greedy_ratio(inst, pc).selection,
        (0..n).collect(),
    ];
    for selection in &trajectories {
        let mut oracle = GbcOracle::new(pc);
        for (i, &v) in selection.iter().enumerate() {
            let before = gbc_direct(g, pc, &selection[..i]);
            let after = gbc_direct(g, pc, &selection[..=i]);
            let gain = oracle.gain(v);
            t.check((gain - (after - before)).abs() <= tol(n), || {
                format!("gain of {} after {:?}: {gain} vs {}", g.label(v), &selection[..i], after - before)
            });
            if let Err(e) = oracle.add(v) {
                return Err(CliError::Fault(e.to_string()));
            }
            let value = oracle.value();
            t.check((value - after).abs() <= tol(n), || format!("value after {:?}: {value} vs {after}", &selection[..=i]));
        }
    }
    Ok(t.finish("oracle"))
}

fn require_exact_size(inst: &CostedInstance) -> Result<()> {
    if inst.n() > MAX_CANDIDATES {
        return Err(CliError::Validation(format!(
            "{} nodes is too many for the exact comparison (at most {MAX_CANDIDATES})",
            inst.n()
        )));
    }
    Ok(())
}

pub fn tree(inst: &CostedInstance, pc: &PathCounts) -> Result<(Value, Result<()>)> {
    if !inst.graph.is_tree() {
        return Err(CliError::Validation("graph is not a tree".into()));
    }
    require_exact_size(inst)?;
    let total = inst.total_cost();
    let mut t = Tally::default();
    for budget in [inst.budget, 0.0, total / 4.0, total / 2.0, total] {
        let case = CostedInstance { budget, ..inst.clone() };
        let dp = tree_solve(&case).map_err(invalid)?;
        let opt = solve_exact(&case, pc, None).map_err(invalid)?;
        let direct = gbc_direct(&case.graph, pc, &dp.nodes);
        t.check(dp.gbc == opt.gbc && direct == dp.gbc && dp.cost <= budget, || {
            format!("budget {budget}: tree {} (direct {direct}, cost {}), exact {}", dp.gbc, dp.cost, opt.gbc)
        });
    }
    Ok(t.finish("tree"))
}

pub fn ratio(inst: &CostedInstance, pc: &PathCounts) -> Result<(Value, Result<()>)> {
    require_exact_size(inst)?;
    let opt = solve_exact(inst, pc, None).map_err(invalid)?.gbc;
    let mut t = Tally::default();
    let mut bound = |name: &str, got: f64, factor: f64| {
        t.check(got >= factor * opt - 1e-9 * opt.max(1.0), || format!("{name}: {got} < {factor:.4} * {opt}"));
    };
    if inst.has_unit_costs() && inst.budget.fract() == 0.0 {
        bound("unit", greedy_unit(inst, pc, inst.budget as usize).gbc, ONE_MINUS_INV_E);
    }
    bound("ratio", greedy_ratio(inst, pc).gbc, ONE_MINUS_INV_SQRT_E);
    bound("modified", greedy_modified(inst, pc).gbc, ONE_MINUS_INV_E);
    Ok(t.finish("ratio"))
}

pub fn default_budget(n: usize) -> f64 {
    (n / 2).max(1) as f64
}
