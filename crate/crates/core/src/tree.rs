//! Exact budgeted MBC on trees.
//!
//! On a tree every pair has exactly one path, so the GBC of a set (in unordered
//! units) is the number of pairs whose path meets the set. The dynamic program
//! runs bottom-up over a binarized copy of the rooted tree and fills, for every
//! node `x`, the table
//!
//! ```text
//! E[x][sigma][m] = cheapest set inside T_x covering exactly `sigma` pairs of T_x
//!                  and leaving exactly `m` top nodes
//! ```
//!
//! where a top node is a node of `T_x` whose path to `x` avoids the set (`x`
//! itself included when unchosen). The "at least" table `B` is the suffix minimum
//! of `E` over both `sigma` and `m`; the optimum is the largest `sigma` with
//! `B[root][sigma][0] <= budget`.
//!
//! A node with `k >= 3` children is replaced by a chain `u_1 .. u_{k-1}`: `u_i`
//! has children `v_i` and `u_{i+1}`, and `u_{k-1}` has children `v_{k-1}` and
//! `v_k`. The last chain node carries the cost and the chosen/unchosen decision;
//! the others merely join subtrees and inherit that decision, so a chain is either
//! chosen as a whole or not at all.

use thiserror::Error;

use crate::graph::{CostedInstance, Graph};
use crate::solution::{Algorithm, Solution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph with {n} nodes and {m} edges is not a tree")]
    NotATree { n: usize, m: usize },
}

/// A rooted tree, possibly containing chain nodes from [`binarize`].
///
/// Every node stands for one original node, its `origin`. Real nodes are their own
/// origin; the chain nodes of an expanded node `v` all have origin `v` and
/// `chain_group == Some(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub cost: Vec<f64>,
    /// Distinct origins in the subtree; an expanded node counts once.
    pub subtree_size: Vec<usize>,
    pub real: Vec<bool>,
    pub origin: Vec<usize>,
    pub chain_group: Vec<Option<usize>>,
}

impl RootedTree {
    /// Roots `g` at `root`. Children are listed in ascending id order.
    pub fn from_graph(g: &Graph, cost: &[f64], root: usize) -> Result<Self, TreeError> {
        if !g.is_tree() {
            return Err(TreeError::NotATree { n: g.n(), m: g.m() });
        }
        let n = g.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    order.push(w);
                }
            }
        }
        let mut tree = RootedTree {
            root,
            parent,
            children,
            cost: cost.to_vec(),
            subtree_size: vec![0; n],
            real: vec![true; n],
            origin: (0..n).collect(),
            chain_group: vec![None; n],
        };
        tree.recompute_sizes();
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Whether `x` carries the chosen/unchosen decision for its origin.
    pub fn owns_origin(&self, x: usize) -> bool {
        self.real[x]
            || !self.children[x]
                .iter()
                .any(|&c| self.chain_group[c].is_some() && self.chain_group[c] == self.chain_group[x])
    }

    /// Nodes with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.children[x].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    fn recompute_sizes(&mut self) {
        for x in self.postorder() {
            let own = usize::from(self.owns_origin(x));
            self.subtree_size[x] = own + self.children[x].iter().map(|&c| self.subtree_size[c]).sum::<usize>();
        }
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Splits every node with `k >= 3` children into a chain of `k - 1` binary nodes.
///
/// The chain head `u_1` keeps the expanded node's id; `u_2 .. u_{k-1}` are appended.
/// `u_{k-1}` carries the node's cost, the other chain nodes cost nothing.
pub fn binarize(t: &RootedTree) -> RootedTree {
    let mut out = t.clone();
    for v in 0..t.len() {
        let kids = t.children[v].clone();
        let k = kids.len();
        if k < 3 || !t.real[v] {
            continue;
        }
        let mut chain = vec![v];
        for _ in 1..k - 1 {
            let id = out.parent.len();
            out.parent.push(None);
            out.children.push(Vec::new());
            out.cost.push(0.0);
            out.subtree_size.push(0);
            out.real.push(false);
            out.origin.push(v);
            out.chain_group.push(Some(v));
            chain.push(id);
        }
        out.real[v] = false;
        out.chain_group[v] = Some(v);
        for (i, &u) in chain.iter().enumerate() {
            let (a, b) = if i + 1 < chain.len() {
                (kids[i], chain[i + 1])
            } else {
                (kids[k - 2], kids[k - 1])
            };
            out.children[u] = vec![a, b];
            out.parent[a] = Some(u);
            out.parent[b] = Some(u);
            out.cost[u] = 0.0;
        }
        out.cost[chain[k - 2]] = t.cost[v];
    }
    out.recompute_sizes();
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Back {
    first: (u32, u32),
    second: (u32, u32),
    chosen: bool,
}

/// Exact-count table for one node: `(pairs + 1) x (size + 1)` costs.
#[derive(Debug, Clone)]
struct Table {
    size: usize,
    cost: Vec<f64>,
    back: Vec<Back>,
}

impl Table {
    fn new(size: usize) -> Self {
        let len = (pairs(size) + 1) * (size + 1);
        Table {
            size,
            cost: vec![f64::INFINITY; len],
            back: vec![Back::default(); len],
        }
    }

    #[inline]
    fn idx(&self, sigma: usize, m: usize) -> usize {
        sigma * (self.size + 1) + m
    }

    fn relax(&mut self, sigma: usize, m: usize, cost: f64, back: Back) {
        let i = self.idx(sigma, m);
        if cost < self.cost[i] {
            self.cost[i] = cost;
            self.back[i] = back;
        }
    }

    fn entries(&self) -> Vec<(usize, usize, f64)> {
        let w = self.size + 1;
        self.cost
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_finite())
            .map(|(i, &c)| (i / w, i % w, c))
            .collect()
    }

    fn max_sigma(&self) -> usize {
        pairs(self.size)
    }
}

fn pairs(size: usize) -> usize {
    size * size.saturating_sub(1) / 2
}

/// The filled dynamic program over a binarized tree.
#[derive(Debug, Clone)]
pub struct DpTable {
    tree: RootedTree,
    tables: Vec<Table>,
}

impl DpTable {
    pub fn build(tree: RootedTree) -> Self {
        let mut tables: Vec<Option<Table>> = vec![None; tree.len()];
        for x in tree.postorder() {
            let table = fill(&tree, x, &tables);
            tables[x] = Some(table);
        }
        DpTable {
            tables: tables.into_iter().map(|t| t.expect("postorder covers all nodes")).collect(),
            tree,
        }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    /// Cheapest cost covering exactly `sigma` pairs with exactly `m` top nodes.
    pub fn exact(&self, x: usize, sigma: usize, m: usize) -> f64 {
        let t = &self.tables[x];
        if sigma > t.max_sigma() || m > t.size {
            return f64::INFINITY;
        }
        t.cost[t.idx(sigma, m)]
    }

    /// `B[x][sigma][m]`: cheapest cost covering at least `sigma` pairs with at
    /// least `m` top nodes, for every `sigma` and `m` of node `x`.
    pub fn at_least(&self, x: usize) -> Vec<Vec<f64>> {
        let t = &self.tables[x];
        let (ps, ms) = (t.max_sigma() + 1, t.size + 1);
        let mut b = vec![vec![f64::INFINITY; ms]; ps];
        for s in (0..ps).rev() {
            for m in (0..ms).rev() {
                let mut v = t.cost[t.idx(s, m)];
                if s + 1 < ps {
                    v = v.min(b[s + 1][m]);
                }
                if m + 1 < ms {
                    v = v.min(b[s][m + 1]);
                }
                b[s][m] = v;
            }
        }
        b
    }

    /// Feasible root entries `(sigma, m, cost)`, best coverage first, then
    /// cheapest, then fewest top nodes.
    fn ranked_root_entries(&self, budget: f64) -> Vec<(usize, usize, f64)> {
        let mut entries: Vec<_> = self.tables[self.tree.root]
            .entries()
            .into_iter()
            .filter(|&(_, _, c)| c <= budget)
            .collect();
        entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.total_cmp(&b.2)).then(a.1.cmp(&b.1)));
        entries
    }

    /// Follows the back-pointers from `(root, sigma, m)`.
    pub fn reconstruct(&self, sigma: usize, m: usize) -> Reconstruction {
        let len = self.tree.len();
        let mut state = vec![(0usize, 0usize); len];
        let mut chosen = vec![false; len];
        let mut stack = vec![(self.tree.root, sigma, m)];
        while let Some((x, s, m)) = stack.pop() {
            state[x] = (s, m);
            let t = &self.tables[x];
            let back = t.back[t.idx(s, m)];
            chosen[x] = back.chosen;
            let kids = &self.tree.children[x];
            if let Some(&a) = kids.first() {
                stack.push((a, back.first.0 as usize, back.first.1 as usize));
            }
            if let Some(&b) = kids.get(1) {
                stack.push((b, back.second.0 as usize, back.second.1 as usize));
            }
        }
        let mut nodes: Vec<usize> = (0..len)
            .filter(|&x| chosen[x] && self.tree.owns_origin(x))
            .map(|x| self.tree.origin[x])
            .collect();
        nodes.sort_unstable();
        Reconstruction { nodes, state, chosen }
    }
}

/// A solution traced back through the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    /// Chosen original nodes, ascending.
    pub nodes: Vec<usize>,
    /// `(sigma, m)` used at every node of the binarized tree.
    pub state: Vec<(usize, usize)>,
    /// Per binarized node: whether its origin is chosen in this branch.
    pub chosen: Vec<bool>,
}

fn fill(tree: &RootedTree, x: usize, tables: &[Option<Table>]) -> Table {
    let mut out = Table::new(tree.subtree_size[x]);
    let kids: Vec<&Table> = tree.children[x]
        .iter()
        .map(|&c| tables[c].as_ref().expect("children filled first"))
        .collect();
    let own_cost = tree.cost[x];
    let at = |s: usize, m: usize| (s as u32, m as u32);

    if !tree.owns_origin(x) {
        // Chain join: the second child continues the chain and fixes the decision.
        let (a, b) = (kids[0], kids[1]);
        let cross = a.size * b.size;
        let eb = b.entries();
        for (s1, m1, c1) in a.entries() {
            for &(s2, m2, c2) in &eb {
                let back = Back {
                    first: at(s1, m1),
                    second: at(s2, m2),
                    chosen: m2 == 0,
                };
                if m2 == 0 {
                    out.relax(s1 + s2 + cross, 0, c1 + c2, back);
                } else {
                    out.relax(s1 + s2 + cross - m1 * m2, m1 + m2, c1 + c2, back);
                }
            }
        }
        return out;
    }

    match kids.as_slice() {
        [] => {
            out.relax(0, 1, 0.0, Back::default());
            out.relax(0, 0, own_cost, Back { chosen: true, ..Back::default() });
        }
        [a] => {
            for (s1, m1, c1) in a.entries() {
                let first = at(s1, m1);
                out.relax(s1 + a.size - m1, m1 + 1, c1, Back { first, ..Back::default() });
                out.relax(s1 + a.size, 0, c1 + own_cost, Back { first, chosen: true, ..Back::default() });
            }
        }
        [a, b] => {
            let cross = (a.size + 1) * (b.size + 1) - 1;
            let eb = b.entries();
            for (s1, m1, c1) in a.entries() {
                for &(s2, m2, c2) in &eb {
                    let (first, second) = (at(s1, m1), at(s2, m2));
                    let uncovered = (m1 + 1) * (m2 + 1) - 1;
                    out.relax(
                        s1 + s2 + cross - uncovered,
                        m1 + m2 + 1,
                        c1 + c2,
                        Back { first, second, chosen: false },
                    );
                    out.relax(s1 + s2 + cross, 0, c1 + c2 + own_cost, Back { first, second, chosen: true });
                }
            }
        }
        _ => unreachable!("binarized trees have at most two children"),
    }
    out
}

/// Optimal budgeted MBC on a tree. The reported GBC is in ordered-pair units.
pub fn tree_solve(inst: &CostedInstance) -> Result<Solution, TreeError> {
    let rooted = RootedTree::from_graph(&inst.graph, &inst.cost, 0)?;
    let dp = DpTable::build(binarize(&rooted));
    for (sigma, m, _) in dp.ranked_root_entries(inst.budget) {
        let rec = dp.reconstruct(sigma, m);
        let cost = inst.set_cost(&rec.nodes);
        if cost <= inst.budget {
            return Ok(Solution::new(rec.nodes, cost, 2.0 * sigma as f64, Algorithm::Tree));
        }
    }
    unreachable!("the empty set is always feasible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbc::gbc_direct;
    use crate::graph::{apsp, parse_edge_list};

    fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
        Graph::from_edges(k + 1, &edges).unwrap()
    }

    #[test]
    fn star3_binarizes_into_two_chain_nodes() {
        let g = star(3);
        let cost = vec![7.0, 1.0, 1.0, 1.0];
        let t = RootedTree::from_graph(&g, &cost, 0).unwrap();
        let b = binarize(&t);
        assert_eq!(b.len(), 5);
        assert_eq!(b.chain_group[0], Some(0));
        assert_eq!(b.chain_group[4], Some(0));
        assert!(!b.real[0] && !b.real[4]);
        assert_eq!(b.children[0], vec![1, 4]);
        assert_eq!(b.children[4], vec![2, 3]);
        assert_eq!(b.cost[0], 0.0);
        assert_eq!(b.cost[4], 7.0);
        assert_eq!(b.subtree_size[0], 4);
        assert_eq!(b.subtree_size[4], 3);
        assert!(b.owns_origin(4) && !b.owns_origin(0));
        assert!(b.max_children() <= 2);
    }

    #[test]
    fn binary_trees_and_paths_are_unchanged() {
        let path = parse_edge_list("a b\nb c\nc d\nd e").unwrap();
        let binary = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        for g in [path, binary] {
            let t = RootedTree::from_graph(&g, &vec![1.0; g.n()], 0).unwrap();
            assert_eq!(binarize(&t), t);
        }
    }

    #[test]
    fn node_count_at_most_doubles() {
        let g = star(9);
        let t = RootedTree::from_graph(&g, &vec![1.0; 10], 0).unwrap();
        let b = binarize(&t);
        assert_eq!(b.len(), 10 + 7);
        assert!(b.len() <= 2 * t.len());
    }

    #[test]
    fn rejects_non_trees() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        let inst = CostedInstance::unit(g, 1);
        assert_eq!(tree_solve(&inst), Err(TreeError::NotATree { n: 3, m: 3 }));
    }

    #[test]
    fn p4_single_node() {
        let g = parse_edge_list("a b\nb c\nc d").unwrap();
        let sol = tree_solve(&CostedInstance::unit(g, 1)).unwrap();
        assert!(sol.nodes == vec![1] || sol.nodes == vec![2]);
        assert_eq!(sol.gbc, 10.0);
    }

    #[test]
    fn star3_center() {
        let sol = tree_solve(&CostedInstance::unit(star(3), 1)).unwrap();
        assert_eq!(sol.nodes, vec![0]);
        assert_eq!(sol.gbc, 12.0);
    }

    #[test]
    fn budget_extremes() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap();
        let cost = vec![2.0, 1.0, 3.0, 1.0, 0.5, 4.0];
        let total: f64 = cost.iter().sum();
        let sol = tree_solve(&CostedInstance::new(g.clone(), cost.clone(), total).unwrap()).unwrap();
        assert_eq!(sol.gbc, 30.0);
        let sol = tree_solve(&CostedInstance::new(g, cost, 0.0).unwrap()).unwrap();
        assert!(sol.nodes.is_empty());
        assert_eq!(sol.gbc, 0.0);
    }

    #[test]
    fn chosen_leaf_is_representable() {
        // Center too expensive: the best single pick is a leaf of the path.
        let g = parse_edge_list("a b\nb c").unwrap();
        let sol = tree_solve(&CostedInstance::new(g, vec![1.0, 10.0, 1.0], 1.0).unwrap()).unwrap();
        assert_eq!(sol.gbc, 4.0);
        assert_eq!(sol.nodes.len(), 1);
    }

    #[test]
    fn reported_value_matches_direct_evaluation() {
        let g = Graph::from_edges(9, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7), (7, 8)]).unwrap();
        let pc = apsp(&g);
        for budget in 0..5 {
            let sol = tree_solve(&CostedInstance::unit(g.clone(), budget)).unwrap();
            assert_eq!(sol.gbc, gbc_direct(&g, &pc, &sol.nodes));
        }
    }
}
