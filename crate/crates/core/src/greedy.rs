//! Greedy approximation algorithms.
//!
//! * [`greedy_unit`]: unit costs, repeatedly add the node with the largest gain.
//! * [`greedy_ratio`]: arbitrary costs, scan nodes by gain per unit cost and keep
//!   those that still fit the budget.
//! * [`greedy_modified`]: run the ratio scan from every affordable initialization
//!   of at most three nodes and keep the best outcome.
//!
//! Ties are broken towards the smallest node id everywhere.

use rayon::prelude::*;

use crate::gbc::{gbc_direct, GbcOracle};
use crate::graph::{CostedInstance, PathCounts};
use crate::solution::{Algorithm, Solution};
use crate::beats;

/// Gain per unit cost. Free nodes with positive gain rank above everything else.
pub fn ratio(gain: f64, cost: f64) -> f64 {
    if cost == 0.0 {
        if gain > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        gain / cost
    }
}

/// Picks `min(k, n)` nodes, each maximizing the marginal gain.
pub fn greedy_unit(inst: &CostedInstance, pc: &PathCounts, k: usize) -> Solution {
    let n = inst.n();
    let mut oracle = GbcOracle::new(pc);
    let mut cost = 0.0;
    for _ in 0..k.min(n) {
        let mut best: Option<(usize, f64)> = None;
        for v in (0..n).filter(|&v| !oracle.contains(v)) {
            let g = oracle.gain(v);
            if best.is_none_or(|(_, bg)| beats(g, bg)) {
                best = Some((v, g));
            }
        }
        let (v, _) = best.expect("fewer than n members");
        oracle.add(v).expect("fresh candidate");
        cost += inst.cost[v];
    }
    finish(inst, pc, oracle.members().to_vec(), cost, Algorithm::Unit)
}

/// Ratio-greedy augmentation of `oracle` over `candidates`.
///
/// Every candidate is examined once, in order of decreasing gain/cost; it is kept
/// when it fits the remaining budget and discarded otherwise. Returns the spent
/// budget, `spent` included.
fn augment(inst: &CostedInstance, oracle: &mut GbcOracle<'_>, candidates: &[usize], mut spent: f64) -> f64 {
    let mut pool: Vec<usize> = candidates.iter().copied().filter(|&v| !oracle.contains(v)).collect();
    while !pool.is_empty() {
        if pool.iter().all(|&v| spent + inst.cost[v] > inst.budget) {
            break;
        }
        let mut best = 0;
        let mut best_ratio = f64::NEG_INFINITY;
        for (i, &v) in pool.iter().enumerate() {
            let r = ratio(oracle.gain(v), inst.cost[v]);
            if beats(r, best_ratio) {
                best = i;
                best_ratio = r;
            }
        }
        let u = pool.remove(best);
        if spent + inst.cost[u] <= inst.budget {
            oracle.add(u).expect("pool excludes members");
            spent += inst.cost[u];
        }
    }
    spent
}

/// The plain ratio greedy started from the empty set.
pub fn greedy_ratio(inst: &CostedInstance, pc: &PathCounts) -> Solution {
    let candidates: Vec<usize> = (0..inst.n()).collect();
    let mut oracle = GbcOracle::new(pc);
    let spent = augment(inst, &mut oracle, &candidates, 0.0);
    finish(inst, pc, oracle.members().to_vec(), spent, Algorithm::Ratio)
}

/// All subsets of `candidates` with at most three elements and cost within budget,
/// ordered by size and then lexicographically.
pub fn initializations(inst: &CostedInstance, candidates: &[usize]) -> Vec<Vec<usize>> {
    let c = |v: usize| inst.cost[v];
    let b = inst.budget;
    let mut out = vec![Vec::new()];
    let len = candidates.len();
    for &u in candidates {
        if c(u) <= b {
            out.push(vec![u]);
        }
    }
    for i in 0..len {
        for j in i + 1..len {
            let (u, v) = (candidates[i], candidates[j]);
            if c(u) + c(v) <= b {
                out.push(vec![u, v]);
            }
        }
    }
    for i in 0..len {
        for j in i + 1..len {
            for l in j + 1..len {
                let (u, v, w) = (candidates[i], candidates[j], candidates[l]);
                if c(u) + c(v) + c(w) <= b {
                    out.push(vec![u, v, w]);
                }
            }
        }
    }
    out
}

/// Budgeted greedy with all initializations of at most three nodes.
pub fn greedy_modified(inst: &CostedInstance, pc: &PathCounts) -> Solution {
    let candidates: Vec<usize> = (0..inst.n()).collect();
    greedy_modified_over(inst, pc, &candidates)
}

/// [`greedy_modified`] with both initializations and augmentation restricted to
/// `candidates` (ascending node ids).
pub fn greedy_modified_over(inst: &CostedInstance, pc: &PathCounts, candidates: &[usize]) -> Solution {
    let inits = initializations(inst, candidates);
    let runs: Vec<(Vec<usize>, f64, f64)> = inits
        .par_iter()
        .map(|init| {
            let mut oracle = GbcOracle::with_set(pc, init).expect("distinct nodes");
            let spent = init.iter().map(|&v| inst.cost[v]).sum();
            let spent = augment(inst, &mut oracle, candidates, spent);
            (oracle.members().to_vec(), spent, oracle.value())
        })
        .collect();

    let mut best = 0;
    for (i, run) in runs.iter().enumerate().skip(1) {
        if beats(run.2, runs[best].2) {
            best = i;
        }
    }
    let (selection, spent, _) = runs[best].clone();
    let mut sol = finish(inst, pc, selection, spent, Algorithm::Modified);
    sol.init_seed = Some(inits[best].clone());
    sol
}

fn finish(inst: &CostedInstance, pc: &PathCounts, selection: Vec<usize>, cost: f64, algorithm: Algorithm) -> Solution {
    let gbc = gbc_direct(&inst.graph, pc, &selection);
    Solution::new(selection, cost, gbc, algorithm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apsp, parse_edge_list, Graph};

    fn star3() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn c4() -> Graph {
        parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap()
    }

    #[test]
    fn unit_greedy_examples() {
        let inst = CostedInstance::unit(star3(), 1);
        let pc = apsp(&inst.graph);
        let sol = greedy_unit(&inst, &pc, 1);
        assert_eq!(sol.nodes, vec![0]);
        assert_eq!(sol.gbc, 12.0);

        let inst = CostedInstance::unit(c4(), 2);
        let pc = apsp(&inst.graph);
        let sol = greedy_unit(&inst, &pc, 2);
        assert_eq!(sol.nodes, vec![0, 2]);
        assert_eq!(sol.gbc, 12.0);

        let sol = greedy_unit(&inst, &pc, 4);
        assert_eq!(sol.nodes, vec![0, 1, 2, 3]);
        assert_eq!(sol.gbc, 12.0);
        assert_eq!(greedy_unit(&inst, &pc, 9).nodes.len(), 4);
    }

    #[test]
    fn ratio_greedy_skips_unaffordable_center() {
        let g = parse_edge_list("a b\nb c").unwrap();
        let inst = CostedInstance::new(g, vec![1.0, 10.0, 1.0], 2.0).unwrap();
        let pc = apsp(&inst.graph);
        let sol = greedy_ratio(&inst, &pc);
        assert_eq!(sol.nodes, vec![0, 2]);
        // {a, c} touches every pair of P3
        assert_eq!(sol.gbc, 6.0);
        assert_eq!(sol.cost, 2.0);
        let opt = crate::exact::solve_exact(&inst, &pc, None).unwrap();
        assert_eq!(opt.gbc, 6.0);
    }

    #[test]
    fn zero_budget_selects_nothing() {
        let g = c4();
        let inst = CostedInstance::new(g, vec![1.0, 2.0, 0.5, 3.0], 0.0).unwrap();
        let pc = apsp(&inst.graph);
        for sol in [greedy_ratio(&inst, &pc), greedy_modified(&inst, &pc)] {
            assert!(sol.nodes.is_empty());
            assert_eq!(sol.gbc, 0.0);
        }
    }

    #[test]
    fn free_nodes_are_taken_first() {
        let g = parse_edge_list("a b\nb c\nc d").unwrap();
        let inst = CostedInstance::new(g, vec![0.0, 5.0, 5.0, 1.0], 1.0).unwrap();
        let pc = apsp(&inst.graph);
        let sol = greedy_ratio(&inst, &pc);
        assert_eq!(sol.selection, vec![0, 3]);
    }

    #[test]
    fn ratio_matches_unit_under_unit_costs() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 0\n0 2\n1 5").unwrap();
        let pc = apsp(&g);
        for k in 0..=6 {
            let inst = CostedInstance::unit(g.clone(), k);
            let a = greedy_unit(&inst, &pc, k);
            let b = greedy_ratio(&inst, &pc);
            assert_eq!(a.selection, b.selection, "k = {k}");
        }
    }

    #[test]
    fn initializations_respect_budget() {
        let g = c4();
        let inst = CostedInstance::new(g, vec![1.0, 2.0, 3.0, 4.0], 5.0).unwrap();
        let inits = initializations(&inst, &[0, 1, 2, 3]);
        assert_eq!(inits[0], Vec::<usize>::new());
        assert!(inits.iter().all(|s| inst.set_cost(s) <= 5.0));
        // empty, four singles, {0,1} {0,2} {0,3} {1,2}
        assert_eq!(inits.len(), 9);
    }

    #[test]
    fn modified_dominates_ratio() {
        let g = parse_edge_list("a b\nb c\nc d\nd e\nb f\nf g").unwrap();
        let inst = CostedInstance::new(g, vec![1.0, 4.0, 2.0, 3.0, 1.0, 2.0, 1.0], 5.0).unwrap();
        let pc = apsp(&inst.graph);
        let r = greedy_ratio(&inst, &pc);
        let m = greedy_modified(&inst, &pc);
        assert!(m.gbc >= r.gbc);
        assert!(m.cost <= inst.budget);
        assert!(m.init_seed.is_some());
    }
}
