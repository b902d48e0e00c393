//! Explicit Budgeted Maximum Coverage view of an MBC instance.
//!
//! Every shortest path between an unordered pair `{s, t}` becomes a ground element
//! of weight `2 / sigma(s, t)` (both orientations folded into one element), and
//! every node `v` becomes the set of paths through it, priced at `c(v)`. The
//! weight covered by a node set equals its group betweenness centrality.
//!
//! The instance can be exponentially large; it is meant for cross-checking small
//! graphs only and refuses to grow past its element cap.

use thiserror::Error;

use crate::beats;
use crate::graph::{enumerate_shortest_paths, CostedInstance, GraphError, PathCounts};
use crate::greedy::ratio;

/// Default cap on the number of ground elements.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverageError {
    #[error("reduction needs {needed} ground elements, cap is {cap}")]
    TooLarge { needed: f64, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub pair: (usize, usize),
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageInstance {
    pub elements: Vec<Element>,
    /// `sets[v]`: ascending indices of the elements containing `v`.
    pub sets: Vec<Vec<usize>>,
    pub set_cost: Vec<f64>,
    pub budget: f64,
}

/// Builds the coverage instance. Elements are ordered by pair, then by path.
pub fn reduce_to_coverage(
    inst: &CostedInstance,
    pc: &PathCounts,
    cap: usize,
) -> Result<CoverageInstance, CoverageError> {
    let n = inst.n();
    let needed: f64 = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .map(|(s, t)| pc.sigma(s, t))
        .sum();
    if needed > cap as f64 {
        return Err(CoverageError::TooLarge { needed, cap });
    }
    let mut elements = Vec::with_capacity(needed as usize);
    let mut sets = vec![Vec::new(); n];
    for s in 0..n {
        for t in s + 1..n {
            let weight = 2.0 / pc.sigma(s, t);
            for path in enumerate_shortest_paths(&inst.graph, pc, s, t, cap as f64)? {
                let id = elements.len();
                for v in path {
                    sets[v].push(id);
                }
                elements.push(Element { pair: (s, t), weight });
            }
        }
    }
    Ok(CoverageInstance {
        elements,
        sets,
        set_cost: inst.cost.clone(),
        budget: inst.budget,
    })
}

impl CoverageInstance {
    pub fn total_weight(&self) -> f64 {
        self.elements.iter().map(|e| e.weight).sum()
    }

    fn covered_mask(&self, chosen: &[usize]) -> Vec<bool> {
        let mut covered = vec![false; self.elements.len()];
        for &v in chosen {
            for &e in &self.sets[v] {
                covered[e] = true;
            }
        }
        covered
    }

    /// Weight of the union of the chosen sets.
    pub fn coverage_weight(&self, chosen: &[usize]) -> f64 {
        self.covered_mask(chosen)
            .iter()
            .zip(&self.elements)
            .filter(|(&c, _)| c)
            .map(|(_, e)| e.weight)
            .sum()
    }

    fn marginal(&self, covered: &[bool], v: usize) -> f64 {
        self.sets[v]
            .iter()
            .filter(|&&e| !covered[e])
            .map(|&e| self.elements[e].weight)
            .sum()
    }

    fn take(&self, covered: &mut [bool], v: usize) {
        for &e in &self.sets[v] {
            covered[e] = true;
        }
    }

    /// Unit-cost greedy: `k` times, take the set with the largest uncovered weight.
    pub fn greedy_unit(&self, k: usize) -> CoverageSolution {
        let mut covered = vec![false; self.elements.len()];
        let mut picked = vec![false; self.sets.len()];
        let mut order = Vec::new();
        for _ in 0..k.min(self.sets.len()) {
            let mut best: Option<(usize, f64)> = None;
            for v in (0..self.sets.len()).filter(|&v| !picked[v]) {
                let g = self.marginal(&covered, v);
                if best.is_none_or(|(_, bg)| beats(g, bg)) {
                    best = Some((v, g));
                }
            }
            let (v, _) = best.expect("an unpicked set remains");
            picked[v] = true;
            self.take(&mut covered, v);
            order.push(v);
        }
        self.solution(order)
    }

    /// Budgeted greedy: scan sets by uncovered weight per cost, keeping those that
    /// fit and discarding the rest.
    pub fn greedy_budgeted(&self) -> CoverageSolution {
        let mut covered = vec![false; self.elements.len()];
        let mut pool: Vec<usize> = (0..self.sets.len()).collect();
        let mut spent = 0.0;
        let mut order = Vec::new();
        while !pool.is_empty() {
            if pool.iter().all(|&v| spent + self.set_cost[v] > self.budget) {
                break;
            }
            let mut best = 0;
            let mut best_ratio = f64::NEG_INFINITY;
            for (i, &v) in pool.iter().enumerate() {
                let r = ratio(self.marginal(&covered, v), self.set_cost[v]);
                if beats(r, best_ratio) {
                    best = i;
                    best_ratio = r;
                }
            }
            let u = pool.remove(best);
            if spent + self.set_cost[u] <= self.budget {
                self.take(&mut covered, u);
                spent += self.set_cost[u];
                order.push(u);
            }
        }
        self.solution(order)
    }

    fn solution(&self, order: Vec<usize>) -> CoverageSolution {
        let weight = self.coverage_weight(&order);
        CoverageSolution { order, weight }
    }

    /// The external JSON form: elements, sets keyed by node label, costs, budget.
    pub fn to_json(&self, labels: &[String]) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let elements: Vec<Value> = self
            .elements
            .iter()
            .map(|e| json!({"pair": [e.pair.0, e.pair.1], "weight": e.weight}))
            .collect();
        let sets: Map<String, Value> = self
            .sets
            .iter()
            .enumerate()
            .map(|(v, s)| (labels[v].clone(), json!(s)))
            .collect();
        let costs: Map<String, Value> = self
            .set_cost
            .iter()
            .enumerate()
            .map(|(v, &c)| (labels[v].clone(), json!(c)))
            .collect();
        json!({"elements": elements, "sets": sets, "costs": costs, "budget": self.budget})
    }
}

/// Chosen sets (by defining node) in selection order, with the covered weight.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSolution {
    pub order: Vec<usize>,
    pub weight: f64,
}
