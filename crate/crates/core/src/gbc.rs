//! Group betweenness centrality.
//!
//! All values are in ordered-pair units: every unordered pair `{s, t}` contributes
//! twice, so `GBC(V) = n(n - 1)`. Paths contain their endpoints, hence a node always
//! covers every pair it belongs to.

use thiserror::Error;

use crate::graph::{bfs_order, Graph, PathCounts};

/// Relative size below which a negative uncovered-path count is rounding noise.
pub const CLAMP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("node {0} is already in the set")]
    AlreadyMember(usize),
    #[error("uncovered path count for ({x}, {y}) fell to {value}")]
    ConsistencyFault { x: usize, y: usize, value: f64 },
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut in_set = vec![false; n];
    for &v in set {
        in_set[v] = true;
    }
    in_set
}

/// Counts, for one source, the shortest paths to every node that avoid the set.
fn avoiding_counts(g: &Graph, pc: &PathCounts, in_set: &[bool], s: usize, order: &[usize], out: &mut [f64]) {
    let dist = pc.dist_row(s);
    out[s] = if in_set[s] { 0.0 } else { 1.0 };
    for &t in &order[1..] {
        out[t] = if in_set[t] {
            0.0
        } else {
            let dt = dist[t];
            g.neighbors(t)
                .iter()
                .filter(|&&w| dist[w] + 1 == dt)
                .map(|&w| out[w])
                .sum()
        };
    }
}

/// GBC of `set`, by counting set-avoiding paths on each shortest-path DAG.
pub fn gbc_direct(g: &Graph, pc: &PathCounts, set: &[usize]) -> f64 {
    let n = g.n();
    if set.is_empty() {
        return 0.0;
    }
    let in_set = membership(n, set);
    let mut avoid = vec![0.0; n];
    let mut total = 0.0;
    for s in 0..n {
        let order = bfs_order(g, s);
        avoiding_counts(g, pc, &in_set, s, &order, &mut avoid);
        let sigma = pc.sigma_row(s);
        total += (0..n)
            .filter(|&t| t != s)
            .map(|t| (sigma[t] - avoid[t]) / sigma[t])
            .sum::<f64>();
    }
    total
}

/// GBC restricted to the given ordered pairs.
pub fn gbc_modified(g: &Graph, pc: &PathCounts, pairs: &[(usize, usize)], set: &[usize]) -> f64 {
    let n = g.n();
    if set.is_empty() || pairs.is_empty() {
        return 0.0;
    }
    let mut targets = vec![Vec::new(); n];
    for &(s, t) in pairs {
        debug_assert!(s != t);
        targets[s].push(t);
    }
    let in_set = membership(n, set);
    let mut avoid = vec![0.0; n];
    let mut total = 0.0;
    for (s, ts) in targets.iter().enumerate() {
        if ts.is_empty() {
            continue;
        }
        let order = bfs_order(g, s);
        avoiding_counts(g, pc, &in_set, s, &order, &mut avoid);
        total += ts
            .iter()
            .map(|&t| (pc.sigma(s, t) - avoid[t]) / pc.sigma(s, t))
            .sum::<f64>();
    }
    total
}

/// Single-node betweenness over ordered pairs, endpoints excluded (Brandes).
pub fn brandes_bc(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut bc = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![u32::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::with_capacity(n);
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(u32::MAX);
        delta.fill(0.0);
        stack.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in g.neighbors(w) {
                if dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    bc
}

/// Incremental GBC over a growing node set.
///
/// Keeps, for every ordered pair `(x, y)`, the number of shortest `x`-`y` paths that
/// avoid the current set. The diagonal holds 1 for non-members (the trivial path)
/// and 0 for members. A gain query costs `O(n^2)`, as does an addition.
#[derive(Debug, Clone)]
pub struct GbcOracle<'a> {
    pc: &'a PathCounts,
    members: Vec<usize>,
    in_set: Vec<bool>,
    uncovered: Vec<f64>,
    value: f64,
}

impl<'a> GbcOracle<'a> {
    pub fn new(pc: &'a PathCounts) -> Self {
        let n = pc.n();
        GbcOracle {
            pc,
            members: Vec::new(),
            in_set: vec![false; n],
            uncovered: pc.sigma_matrix().to_vec(),
            value: 0.0,
        }
    }

    /// Oracle seeded with `set`, added in the given order.
    pub fn with_set(pc: &'a PathCounts, set: &[usize]) -> Result<Self, OracleError> {
        let mut oracle = Self::new(pc);
        for &v in set {
            oracle.add(v)?;
        }
        Ok(oracle)
    }

    /// GBC of the current set.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Members in insertion order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_set[v]
    }

    /// Number of shortest `x`-`y` paths avoiding the current set.
    pub fn uncovered(&self, x: usize, y: usize) -> f64 {
        self.uncovered[x * self.pc.n() + y]
    }

    /// `GBC(C + v) - GBC(C)`; zero for members.
    pub fn gain(&self, v: usize) -> f64 {
        if self.in_set[v] {
            return 0.0;
        }
        let n = self.pc.n();
        let dist_v = self.pc.dist_row(v);
        let through_v = &self.uncovered[v * n..(v + 1) * n];
        let mut total = 0.0;
        for x in 0..n {
            let head = self.uncovered[x * n + v];
            if head == 0.0 {
                continue;
            }
            let dxv = dist_v[x];
            let dist_x = self.pc.dist_row(x);
            let inv_x = self.pc.inv_sigma_row(x);
            let mut row = 0.0;
            for y in 0..n {
                if dist_x[y] == dxv + dist_v[y] && y != x {
                    row += through_v[y] * inv_x[y];
                }
            }
            total += head * row;
        }
        total
    }

    /// Adds `v` and returns its gain.
    ///
    /// A consistency fault leaves the oracle in an unspecified state.
    pub fn add(&mut self, v: usize) -> Result<f64, OracleError> {
        if self.in_set[v] {
            return Err(OracleError::AlreadyMember(v));
        }
        let gain = self.gain(v);
        let n = self.pc.n();
        let dist_v = self.pc.dist_row(v);
        let tail: Vec<f64> = self.uncovered[v * n..(v + 1) * n].to_vec();
        // Symmetric, so column v equals row v.
        let head = tail.clone();
        for x in 0..n {
            let hx = head[x];
            if hx == 0.0 {
                continue;
            }
            let dxv = dist_v[x];
            let dist_x = self.pc.dist_row(x);
            let sigma_x = self.pc.sigma_row(x);
            let row = &mut self.uncovered[x * n..(x + 1) * n];
            for y in 0..n {
                if dist_x[y] == dxv + dist_v[y] {
                    let mut left = row[y] - hx * tail[y];
                    if left < 0.0 {
                        if -left <= CLAMP_TOLERANCE * sigma_x[y] {
                            left = 0.0;
                        } else {
                            return Err(OracleError::ConsistencyFault { x, y, value: left });
                        }
                    }
                    row[y] = left;
                }
            }
        }
        self.in_set[v] = true;
        self.members.push(v);
        self.value += gain;
        Ok(gain)
    }
}
