//! Brute-force optimum by subset enumeration.

use thiserror::Error;

use crate::gbc::{gbc_direct, GbcOracle};
use crate::graph::{CostedInstance, PathCounts};
use crate::solution::{Algorithm, Solution};
use crate::beats;

/// Largest candidate count [`solve_exact`] accepts.
pub const MAX_CANDIDATES: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} candidates exceed the enumeration cap of {MAX_CANDIDATES}")]
    TooManyCandidates(usize),
}

struct Search<'i> {
    inst: &'i CostedInstance,
    candidates: Vec<usize>,
    ceiling: f64,
    best: (f64, Vec<usize>),
}

impl Search<'_> {
    /// Keeps the larger value; ties go to the smaller set, then the
    /// lexicographically smaller one.
    fn offer(&mut self, value: f64, set: &[usize]) {
        let (best_value, best_set) = &self.best;
        let better = if beats(value, *best_value) {
            true
        } else if beats(*best_value, value) {
            false
        } else {
            (set.len(), set) < (best_set.len(), best_set.as_slice())
        };
        if better {
            self.best = (value, set.to_vec());
        }
    }

    fn saturated(&self) -> bool {
        !beats(self.ceiling, self.best.0)
    }

    fn explore(&mut self, oracle: &GbcOracle<'_>, from: usize, spent: f64, chosen: &mut Vec<usize>) {
        for i in from..self.candidates.len() {
            let v = self.candidates[i];
            let cost = spent + self.inst.cost[v];
            if cost > self.inst.budget {
                continue;
            }
            // Nothing larger can beat a set that already covers every pair.
            if self.saturated() && chosen.len() + 1 > self.best.1.len() {
                return;
            }
            chosen.push(v);
            let value = oracle.value() + oracle.gain(v);
            self.offer(value, chosen);
            let extendable = self.candidates[i + 1..]
                .iter()
                .any(|&w| cost + self.inst.cost[w] <= self.inst.budget);
            if extendable {
                let mut next = oracle.clone();
                next.add(v).expect("candidates are distinct");
                self.explore(&next, i + 1, cost, chosen);
            }
            chosen.pop();
        }
    }
}

/// The optimal feasible set over all nodes, or over `whitelist` when given.
///
/// Ties are broken by smaller cardinality, then lexicographically smaller ids.
pub fn solve_exact(
    inst: &CostedInstance,
    pc: &PathCounts,
    whitelist: Option<&[usize]>,
) -> Result<Solution, ExactError> {
    let mut candidates: Vec<usize> = match whitelist {
        Some(w) => w.to_vec(),
        None => (0..inst.n()).collect(),
    };
    candidates.sort_unstable();
    candidates.dedup();
    if candidates.len() > MAX_CANDIDATES {
        return Err(ExactError::TooManyCandidates(candidates.len()));
    }
    let n = inst.n() as f64;
    let mut search = Search {
        inst,
        candidates,
        ceiling: n * (n - 1.0),
        best: (0.0, Vec::new()),
    };
    let root = GbcOracle::new(pc);
    search.explore(&root, 0, 0.0, &mut Vec::new());

    let set = search.best.1;
    let cost = inst.set_cost(&set);
    let gbc = gbc_direct(&inst.graph, pc, &set);
    Ok(Solution::new(set, cost, gbc, Algorithm::Exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apsp, parse_edge_list, Graph};

    /// Independent route: every subset as a bitmask, evaluated from scratch.
    fn brute_force(inst: &CostedInstance, pc: &PathCounts) -> f64 {
        let n = inst.n();
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|set| inst.set_cost(set) <= inst.budget)
            .map(|set| gbc_direct(&inst.graph, pc, &set))
            .fold(0.0, f64::max)
    }

    #[test]
    fn c4_singletons_tie_to_lowest_id() {
        let inst = CostedInstance::unit(parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap(), 1);
        let pc = apsp(&inst.graph);
        let sol = solve_exact(&inst, &pc, None).unwrap();
        assert_eq!(sol.nodes, vec![0]);
        assert_eq!(sol.gbc, 7.0);
    }

    #[test]
    fn star_center_is_optimal() {
        let inst = CostedInstance::unit(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), 1);
        let pc = apsp(&inst.graph);
        let sol = solve_exact(&inst, &pc, None).unwrap();
        assert_eq!(sol.nodes, vec![0]);
        assert_eq!(sol.gbc, 12.0);
    }

    #[test]
    fn full_budget_prefers_smallest_covering_set() {
        let inst = CostedInstance::unit(parse_edge_list("a b\nb c").unwrap(), 3);
        let pc = apsp(&inst.graph);
        let sol = solve_exact(&inst, &pc, None).unwrap();
        assert_eq!(sol.nodes, vec![1]);
        assert_eq!(sol.gbc, 6.0);
    }

    #[test]
    fn whitelist_restricts_candidates() {
        let inst = CostedInstance::unit(parse_edge_list("a b\nb c").unwrap(), 1);
        let pc = apsp(&inst.graph);
        let sol = solve_exact(&inst, &pc, Some(&[0, 2])).unwrap();
        assert_eq!(sol.nodes, vec![0]);
        assert_eq!(sol.gbc, 4.0);
    }

    #[test]
    fn cap_is_enforced() {
        let edges: Vec<(usize, usize)> = (1..30).map(|v| (v - 1, v)).collect();
        let inst = CostedInstance::unit(Graph::from_edges(30, &edges).unwrap(), 2);
        let pc = apsp(&inst.graph);
        assert_eq!(solve_exact(&inst, &pc, None), Err(ExactError::TooManyCandidates(30)));
    }

    #[test]
    fn agrees_with_bitmask_enumeration() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 4\n4 5\n5 2").unwrap();
        let pc = apsp(&g);
        for (cost, budget) in [
            (vec![1.0; 6], 2.0),
            (vec![2.0, 1.0, 3.0, 1.0, 0.0, 2.0], 3.0),
            (vec![0.5, 0.5, 4.0, 1.0, 1.5, 1.0], 2.5),
        ] {
            let inst = CostedInstance::new(g.clone(), cost, budget).unwrap();
            let sol = solve_exact(&inst, &pc, None).unwrap();
            assert!((sol.gbc - brute_force(&inst, &pc)).abs() < 1e-9);
            assert!(sol.cost <= budget);
        }
    }
}
