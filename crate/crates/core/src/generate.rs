//! Instance generators: tight examples for the greedy algorithms, the vertex
//! cover gadget graphs, seeded random graphs and trees, and an exhaustive catalog
//! of small connected graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Default cap on generated node counts.
pub const DEFAULT_NODE_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("instance would need {needed} nodes, cap is {cap}")]
    TooLarge { needed: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` made connected by joining each further component to the first one
/// with a single random edge.
pub fn gen_random(n: usize, edge_prob: f64, seed: u64) -> Graph {
    assert!(n >= 1, "need at least one node");
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        let mut y = x;
        while comp[y] != r {
            let next = comp[y];
            comp[y] = r;
            y = next;
        }
        r
    }
    for &(u, v) in &edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a.max(b)] = a.min(b);
    }
    let mut joined: Vec<usize> = (0..n).filter(|&v| find(&mut comp, v) == find(&mut comp, 0)).collect();
    for v in 0..n {
        let root = find(&mut comp, v);
        if root == find(&mut comp, 0) || root != v {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&w| find(&mut comp, w) == root).collect();
        let a = *members.choose(&mut rng).unwrap();
        let b = *joined.choose(&mut rng).unwrap();
        edges.push((a.min(b), a.max(b)));
        comp[root] = find(&mut comp, 0);
        joined.extend(members);
    }
    Graph::from_edges(n, &edges).expect("generated graph is simple and connected")
}

/// Uniform random labelled tree (Prüfer decoding).
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 2, "a tree needs two nodes");
    let mut rng = rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Integer-valued costs drawn uniformly from `lo..=hi`.
pub fn gen_random_costs(g: &Graph, lo: u32, hi: u32, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    (0..g.n()).map(|_| rng.gen_range(lo..=hi) as f64).collect()
}

/// Every connected graph on `1..=max_n` nodes, one per isomorphism class.
///
/// Graphs are grown one vertex at a time from all graphs on one vertex fewer and
/// deduplicated by a brute-force canonical form, so `max_n` beyond 8 is slow.
pub fn connected_catalog(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut layer: Vec<u64> = vec![0]; // all graphs on one vertex
    for n in 1..=max_n {
        if n > 1 {
            let perms = permutations(n);
            let mut next = std::collections::BTreeSet::new();
            for &mask in &layer {
                for nbrs in 0u64..1 << (n - 1) {
                    let mut m = mask;
                    for u in 0..n - 1 {
                        if nbrs >> u & 1 == 1 {
                            m |= 1 << pair_bit(u, n - 1);
                        }
                    }
                    next.insert(canonical(m, n, &perms));
                }
            }
            layer = next.into_iter().collect();
        }
        for &mask in &layer {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|v| (0..v).map(move |u| (u, v)))
                .filter(|&(u, v)| mask >> pair_bit(u, v) & 1 == 1)
                .collect();
            if let Ok(g) = Graph::from_edges(n, &edges) {
                out.push(g);
            }
        }
    }
    out
}

/// Bit of the pair `{u, v}`, `u < v`, in a triangular adjacency mask.
fn pair_bit(u: usize, v: usize) -> usize {
    v * (v - 1) / 2 + u
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical(mask: u64, n: usize, perms: &[Vec<usize>]) -> u64 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| mask >> pair_bit(u, v) & 1 == 1)
        .collect();
    perms
        .iter()
        .map(|p| {
            edges.iter().fold(0u64, |acc, &(u, v)| {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                acc | 1 << pair_bit(a, b)
            })
        })
        .min()
        .unwrap()
}

/// Node roles and parameters of a tight instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightInstanceMeta {
    pub k: usize,
    pub ls: usize,
    pub lt: usize,
    /// Row nodes `b_1 .. b_{k+3}`.
    pub row_nodes: Vec<usize>,
    /// Column nodes `a_1 .. a_k`.
    pub col_nodes: Vec<usize>,
    /// Per-row copies `a_{k+1,i}` of the last column.
    pub split_nodes: Vec<usize>,
    pub source_side: Vec<usize>,
    pub sink_side: Vec<usize>,
    /// `alpha[i][j]`: number of shortest paths between column `j` and row `i`.
    pub alpha: Vec<Vec<u64>>,
    /// The row set, optimal for the intended budget.
    pub opt_rows: Vec<usize>,
    /// Number of nodes the instance is designed to select, `k + 3`.
    pub budget: usize,
}

impl TightInstanceMeta {
    /// Column and row nodes, ascending: the only sensible candidates.
    pub fn candidates(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.col_nodes.iter().chain(&self.row_nodes).copied().collect();
        c.sort_unstable();
        c
    }
}

/// Path multiplicity between column `j` (1-based, up to `k + 1`) and any row.
pub fn alpha(k: usize, j: usize) -> u64 {
    let (k64, km1) = (k as u64, k as u64 - 1);
    if j <= k {
        k64.pow((k - j) as u32) * km1.pow((j - 1) as u32)
    } else {
        km1.pow(k as u32)
    }
}

/// Branch counts of the diamond chain realizing `alpha(k, j)`. Every chain has
/// `k - 1` diamonds, so all column-row connections have the same length.
pub fn diamond_factors(k: usize, j: usize) -> Vec<usize> {
    if j <= k {
        let mut f = vec![k; k - j];
        f.extend(std::iter::repeat_n(k - 1, j - 1));
        f
    } else {
        let mut f = vec![(k - 1) * (k - 1)];
        f.extend(std::iter::repeat_n(k - 1, k - 2));
        f
    }
}

struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn node(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }
}

/// The tight family for the greedy algorithms, with `k + 3` rows and `k + 1`
/// columns. Source-side nodes `s_*` are a clique joined to every column node,
/// sink-side nodes `t_*` a clique joined to every row node, and column `k + 1`
/// is split into one node per row.
pub fn gen_tight(k: usize, ls: usize, lt: usize, node_cap: usize) -> Result<(Graph, TightInstanceMeta), GenError> {
    if k < 2 {
        return Err(GenError::Parameters(format!("k must be at least 2, got {k}")));
    }
    if !(ls > lt && lt >= 1) {
        return Err(GenError::Parameters(format!("need ls > lt >= 1, got ls = {ls}, lt = {lt}")));
    }
    if k > 12 {
        return Err(GenError::Parameters(format!("k = {k} is too large")));
    }
    let rows = k + 3;
    let chain_nodes: usize = (1..=k + 1)
        .map(|j| diamond_factors(k, j).iter().sum::<usize>() + (k - 2))
        .sum();
    let needed = k + 2 * rows + ls + lt + rows * chain_nodes;
    if needed > node_cap {
        return Err(GenError::TooLarge { needed, cap: node_cap });
    }

    let mut b = Builder {
        labels: Vec::with_capacity(needed),
        edges: Vec::new(),
    };
    let col_nodes: Vec<usize> = (1..=k).map(|j| b.node(format!("a{j}"))).collect();
    let row_nodes: Vec<usize> = (1..=rows).map(|i| b.node(format!("b{i}"))).collect();
    let split_nodes: Vec<usize> = (1..=rows).map(|i| b.node(format!("a{}_{i}", k + 1))).collect();
    let source_side: Vec<usize> = (1..=ls).map(|i| b.node(format!("s{i}"))).collect();
    let sink_side: Vec<usize> = (1..=lt).map(|i| b.node(format!("t{i}"))).collect();

    for (x, &s) in source_side.iter().enumerate() {
        for &s2 in &source_side[x + 1..] {
            b.edges.push((s, s2));
        }
        for &a in col_nodes.iter().chain(&split_nodes) {
            b.edges.push((s, a));
        }
    }
    for (y, &t) in sink_side.iter().enumerate() {
        for &t2 in &sink_side[y + 1..] {
            b.edges.push((t, t2));
        }
        for &r in &row_nodes {
            b.edges.push((t, r));
        }
    }
    for (i, &row) in row_nodes.iter().enumerate() {
        for j in 1..=k + 1 {
            let start = if j <= k { col_nodes[j - 1] } else { split_nodes[i] };
            let factors = diamond_factors(k, j);
            let mut joint = start;
            for (g, &branches) in factors.iter().enumerate() {
                let next = if g + 1 == factors.len() {
                    row
                } else {
                    b.node(format!("y{}_{j}_{}", i + 1, g + 1))
                };
                for r in 1..=branches {
                    let mid = b.node(format!("x{}_{j}_{}_{r}", i + 1, g + 1));
                    b.edges.push((joint, mid));
                    b.edges.push((mid, next));
                }
                joint = next;
            }
        }
    }

    let alpha_matrix = (0..rows).map(|_| (1..=k + 1).map(|j| alpha(k, j)).collect()).collect();
    let graph = Graph::with_labels(b.labels, &b.edges)?;
    let meta = TightInstanceMeta {
        k,
        ls,
        lt,
        opt_rows: row_nodes.clone(),
        row_nodes,
        col_nodes,
        split_nodes,
        source_side,
        sink_side,
        alpha: alpha_matrix,
        budget: k + 3,
    };
    Ok((graph, meta))
}

/// Default source/sink replication for [`gen_tight`].
pub fn default_sides(k: usize) -> (usize, usize) {
    (40 * k, 20 * k)
}

/// How many copies per node [`gen_apx`] creates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Replication {
    Fixed(usize),
    /// Large enough that inessential pairs shift GBC by at most `epsilon` times the
    /// optimum of the restricted measure, for sets of up to `k` nodes.
    Auto { epsilon: f64 },
}

/// Node roles of a vertex-cover gadget graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApxInstanceMeta {
    pub k: usize,
    pub l: usize,
    /// Original nodes keep their ids `0..n`.
    pub originals: Vec<usize>,
    /// `copies[v]`: the `l` copies of original node `v`.
    pub copies: Vec<Vec<usize>>,
    /// `(u, v, z)`: intermediate node for each non-adjacent original pair `u < v`.
    pub intermediates: Vec<(usize, usize, usize)>,
    /// Ordered pairs of copies of distinct original nodes.
    pub essential_pairs: Vec<(usize, usize)>,
    /// Constant `c` bounding the inessential contribution by `c * m^2 * l`.
    pub inessential_constant: f64,
}

/// Upper bound constant `c` with `GBC(C) - GBC'(C) <= c * m^2 * l` for `|C| <= k`.
///
/// Pairs of copies of one node are joined directly, so each member of `C` covers at
/// most `l - 1` of them per orientation. Every other inessential pair involves one
/// of the `n + z` non-copy nodes.
fn inessential_constant(n: usize, m: usize, z: usize, k: usize) -> f64 {
    let base = (n + z) as f64;
    let bound = 2.0 * k as f64 + base * (base - 1.0) + 2.0 * base * n as f64;
    bound / (m * m).max(1) as f64
}

/// The gadget graph `G'` reducing vertex cover on `g` to MBC.
pub fn gen_apx(g: &Graph, k: usize, replication: Replication, node_cap: usize) -> Result<(Graph, ApxInstanceMeta), GenError> {
    let n = g.n();
    let m = g.m();
    let non_adjacent: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let constant = inessential_constant(n, m, non_adjacent.len(), k);
    let l = match replication {
        Replication::Fixed(l) => l,
        Replication::Auto { epsilon } => {
            if !(epsilon > 0.0 && epsilon.is_finite()) {
                return Err(GenError::Parameters(format!("epsilon must be positive, got {epsilon}")));
            }
            (constant * (m * m) as f64 / epsilon).ceil() as usize
        }
    };
    if l == 0 {
        return Err(GenError::Parameters("l must be at least 1".into()));
    }
    let needed = n * (l + 1) + non_adjacent.len();
    if needed > node_cap {
        return Err(GenError::TooLarge { needed, cap: node_cap });
    }

    let mut b = Builder {
        labels: g.labels().to_vec(),
        edges: g.edges().collect(),
    };
    let copies: Vec<Vec<usize>> = (0..n)
        .map(|v| (1..=l).map(|i| b.node(format!("{}_{i}", g.label(v)))).collect())
        .collect();
    for (v, cs) in copies.iter().enumerate() {
        let clique: Vec<usize> = std::iter::once(v).chain(cs.iter().copied()).collect();
        for (x, &p) in clique.iter().enumerate() {
            for &q in &clique[x + 1..] {
                b.edges.push((p, q));
            }
        }
    }
    let mut intermediates = Vec::with_capacity(non_adjacent.len());
    for &(u, v) in &non_adjacent {
        let z = b.node(format!("z_{}_{}", g.label(u), g.label(v)));
        for &c in copies[u].iter().chain(&copies[v]) {
            b.edges.push((z, c));
        }
        intermediates.push((u, v, z));
    }
    let mut essential_pairs = Vec::with_capacity(n * (n - 1) * l * l);
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            for &x in &copies[u] {
                for &y in &copies[v] {
                    essential_pairs.push((x, y));
                }
            }
        }
    }
    let graph = Graph::with_labels(b.labels, &b.edges)?;
    let meta = ApxInstanceMeta {
        k,
        l,
        originals: (0..n).collect(),
        copies,
        intermediates,
        essential_pairs,
        inessential_constant: constant,
    };
    Ok((graph, meta))
}

/// Number of edges of `g` with at least one endpoint in `set`.
pub fn edges_covered(g: &Graph, set: &[usize]) -> usize {
    g.edges().filter(|&(u, v)| set.contains(&u) || set.contains(&v)).count()
}
