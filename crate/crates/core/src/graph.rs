//! Undirected simple graphs, instance parsing and all-pairs shortest-path counting.
//!
//! Node ids are dense integers `0..n`; the textual label of every node is kept so
//! results can be reported in the caller's vocabulary. All shortest paths are
//! hop-count paths.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde_json::Value;
use thiserror::Error;

/// Default cap on the number of paths [`enumerate_shortest_paths`] will produce.
pub const DEFAULT_PATH_CAP: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON instance: {0}")]
    Json(String),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("unknown node label `{0}`")]
    UnknownLabel(String),
    #[error("cost of `{label}` must be a finite nonnegative number, got {cost}")]
    InvalidCost { label: String, cost: f64 },
    #[error("budget must be a finite nonnegative number, got {0}")]
    InvalidBudget(f64),
    #[error("graph has no nodes")]
    Empty,
    #[error("{sigma} shortest paths between the pair exceed the cap of {cap}")]
    PathCapExceeded { sigma: f64, cap: f64 },
}

/// An undirected, connected, simple graph with dense node ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list over ids `0..n`, labelling node `i` as `"i"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph with explicit labels. Rejects self-loops, parallel edges and
    /// disconnected inputs.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(labels[u].clone(), labels[w[0]].clone()));
            }
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let g = Graph {
            adj,
            labels,
            index,
            edge_count: edges.len(),
        };
        let components = g.component_count();
        if components > 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n()
    }

    /// Resolves a list of labels to node ids.
    pub fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, GraphError> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| GraphError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    fn component_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// A graph together with node costs and a budget.
#[derive(Debug, Clone, PartialEq)]
pub struct CostedInstance {
    pub graph: Graph,
    pub cost: Vec<f64>,
    pub budget: f64,
}

impl CostedInstance {
    pub fn new(graph: Graph, cost: Vec<f64>, budget: f64) -> Result<Self, GraphError> {
        assert_eq!(cost.len(), graph.n(), "one cost per node");
        for (v, &c) in cost.iter().enumerate() {
            if !(c.is_finite() && c >= 0.0) {
                return Err(GraphError::InvalidCost {
                    label: graph.label(v).to_string(),
                    cost: c,
                });
            }
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(GraphError::InvalidBudget(budget));
        }
        Ok(CostedInstance { graph, cost, budget })
    }

    /// Unit costs with budget `k`.
    pub fn unit(graph: Graph, k: usize) -> Self {
        let n = graph.n();
        CostedInstance {
            graph,
            cost: vec![1.0; n],
            budget: k as f64,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn set_cost(&self, set: &[usize]) -> f64 {
        set.iter().map(|&v| self.cost[v]).sum()
    }

    pub fn total_cost(&self) -> f64 {
        self.cost.iter().sum()
    }

    pub fn has_unit_costs(&self) -> bool {
        self.cost.iter().all(|&c| c == 1.0)
    }
}

/// A parsed instance document. Edge lists carry neither costs nor a budget.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceDoc {
    pub graph: Graph,
    pub costs: Option<Vec<f64>>,
    pub budget: Option<f64>,
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_instance(text: &str) -> Result<InstanceDoc, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_json_instance(text)
    } else {
        Ok(InstanceDoc {
            graph: parse_edge_list(text)?,
            costs: None,
            budget: None,
        })
    }
}

/// Parses a graph from either an edge list or a JSON instance.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    parse_instance(text).map(|doc| doc.graph)
}

#[derive(Default)]
struct LabelTable {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelTable {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }
}

/// Parses a whitespace-separated edge list: one `u v` pair per line, `#` starts a
/// comment. Ids are assigned in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut table = LabelTable::default();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [u, v] => {
                let (u, v) = (table.intern(u), table.intern(v));
                edges.push((u, v));
            }
            _ => {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    msg: format!("expected two labels, found {}", fields.len()),
                })
            }
        }
    }
    Graph::with_labels(table.labels, &edges)
}

/// Parses a cost file (`label cost` per line). Nodes not listed cost 1.0.
pub fn parse_costs(text: &str, graph: &Graph) -> Result<Vec<f64>, GraphError> {
    let mut cost = vec![1.0; graph.n()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [label, value] => {
                let v = graph
                    .index_of(label)
                    .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))?;
                let c: f64 = value.parse().map_err(|_| GraphError::Parse {
                    line: lineno + 1,
                    msg: format!("invalid cost `{value}`"),
                })?;
                if !(c.is_finite() && c >= 0.0) {
                    return Err(GraphError::InvalidCost {
                        label: label.to_string(),
                        cost: c,
                    });
                }
                cost[v] = c;
            }
            _ => {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    msg: format!("expected `label cost`, found {} fields", fields.len()),
                })
            }
        }
    }
    Ok(cost)
}

fn json_label(value: &Value) -> Result<String, GraphError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(GraphError::Json(format!("node label must be a string or number, got {other}"))),
    }
}

/// Parses `{"edges": [[u,v],...], "costs": {label: number}, "budget": number}`.
/// `costs` and `budget` are optional; absent labels cost 1.0.
pub fn parse_json_instance(text: &str) -> Result<InstanceDoc, GraphError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let edges_json = doc
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| GraphError::Json("missing `edges` array".into()))?;
    let mut table = LabelTable::default();
    let mut edges = Vec::with_capacity(edges_json.len());
    for e in edges_json {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| GraphError::Json(format!("edge must be a two-element array, got {e}")))?;
        let u = table.intern(&json_label(&pair[0])?);
        let v = table.intern(&json_label(&pair[1])?);
        edges.push((u, v));
    }
    let graph = Graph::with_labels(table.labels, &edges)?;

    let costs = match doc.get("costs") {
        None | Some(Value::Null) => None,
        Some(Value::Object(map)) => {
            let mut cost = vec![1.0; graph.n()];
            for (label, value) in map {
                let v = graph
                    .index_of(label)
                    .ok_or_else(|| GraphError::UnknownLabel(label.clone()))?;
                let c = value
                    .as_f64()
                    .ok_or_else(|| GraphError::Json(format!("cost of `{label}` is not a number")))?;
                if !(c.is_finite() && c >= 0.0) {
                    return Err(GraphError::InvalidCost {
                        label: label.clone(),
                        cost: c,
                    });
                }
                cost[v] = c;
            }
            Some(cost)
        }
        Some(other) => return Err(GraphError::Json(format!("`costs` must be an object, got {other}"))),
    };

    let budget = match doc.get("budget") {
        None | Some(Value::Null) => None,
        Some(value) => {
            let b = value
                .as_f64()
                .ok_or_else(|| GraphError::Json("`budget` is not a number".into()))?;
            if !(b.is_finite() && b >= 0.0) {
                return Err(GraphError::InvalidBudget(b));
            }
            Some(b)
        }
    };
    Ok(InstanceDoc { graph, costs, budget })
}

/// Serializes an instance in the JSON instance format.
pub fn instance_to_json(graph: &Graph, cost: Option<&[f64]>, budget: Option<f64>) -> Value {
    let edges: Vec<Value> = graph
        .edges()
        .map(|(u, v)| Value::from(vec![graph.label(u), graph.label(v)]))
        .collect();
    let mut doc = serde_json::Map::new();
    doc.insert("edges".into(), Value::Array(edges));
    if let Some(cost) = cost {
        let map: serde_json::Map<String, Value> = cost
            .iter()
            .enumerate()
            .map(|(v, &c)| (graph.label(v).to_string(), Value::from(c)))
            .collect();
        doc.insert("costs".into(), Value::Object(map));
    }
    if let Some(b) = budget {
        doc.insert("budget".into(), Value::from(b));
    }
    Value::Object(doc)
}

/// Hop distances and shortest-path counts for every ordered pair.
#[derive(Debug, Clone)]
pub struct PathCounts {
    n: usize,
    dist: Vec<u32>,
    sigma: Vec<f64>,
    inv_sigma: Vec<f64>,
}

impl PathCounts {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, s: usize, t: usize) -> u32 {
        self.dist[s * self.n + t]
    }

    #[inline]
    pub fn sigma(&self, s: usize, t: usize) -> f64 {
        self.sigma[s * self.n + t]
    }

    #[inline]
    pub fn dist_row(&self, s: usize) -> &[u32] {
        &self.dist[s * self.n..(s + 1) * self.n]
    }

    #[inline]
    pub fn sigma_row(&self, s: usize) -> &[f64] {
        &self.sigma[s * self.n..(s + 1) * self.n]
    }

    #[inline]
    pub(crate) fn inv_sigma_row(&self, s: usize) -> &[f64] {
        &self.inv_sigma[s * self.n..(s + 1) * self.n]
    }

    pub(crate) fn sigma_matrix(&self) -> &[f64] {
        &self.sigma
    }

    /// True iff `v` lies on at least one shortest `s`-`t` path (endpoints included).
    #[inline]
    pub fn on_shortest_path(&self, s: usize, v: usize, t: usize) -> bool {
        self.dist(s, v) + self.dist(v, t) == self.dist(s, t)
    }
}

/// Nodes ordered by BFS discovery from `s`, i.e. by nondecreasing distance.
pub(crate) fn bfs_order(g: &Graph, s: usize) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    seen[s] = true;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

/// All-pairs distances and path counts, one BFS per source.
pub fn apsp(g: &Graph) -> PathCounts {
    let n = g.n();
    let mut dist = vec![u32::MAX; n * n];
    let mut sigma = vec![0.0f64; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let d = &mut dist[s * n..(s + 1) * n];
        let sg = &mut sigma[s * n..(s + 1) * n];
        d[s] = 0;
        sg[s] = 1.0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if d[w] == u32::MAX {
                    d[w] = d[u] + 1;
                    queue.push_back(w);
                }
                if d[w] == d[u] + 1 {
                    sg[w] += sg[u];
                }
            }
        }
    }
    let inv_sigma = sigma.iter().map(|&x| 1.0 / x).collect();
    PathCounts {
        n,
        dist,
        sigma,
        inv_sigma,
    }
}

/// Every shortest `s`-`t` path as a node sequence, in lexicographic order.
///
/// Fails without allocating when `sigma(s, t)` exceeds `cap`.
pub fn enumerate_shortest_paths(
    g: &Graph,
    pc: &PathCounts,
    s: usize,
    t: usize,
    cap: f64,
) -> Result<Vec<Vec<usize>>, GraphError> {
    let sigma = pc.sigma(s, t);
    if sigma > cap {
        return Err(GraphError::PathCapExceeded { sigma, cap });
    }
    let mut out = Vec::with_capacity(sigma as usize);
    let mut path = vec![s];
    extend_paths(g, pc, t, &mut path, &mut out);
    Ok(out)
}

fn extend_paths(g: &Graph, pc: &PathCounts, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let u = *path.last().unwrap();
    if u == t {
        out.push(path.clone());
        return;
    }
    let remaining = pc.dist(u, t);
    for &w in g.neighbors(u) {
        if pc.dist(w, t) + 1 == remaining {
            path.push(w);
            extend_paths(g, pc, t, path, out);
            path.pop();
        }
    }
}
