use std::collections::VecDeque;

use mbc_core::graph::enumerate_shortest_paths;
use mbc_core::generate::gen_random;
use mbc_core::{apsp, brandes_bc, gbc_direct, GbcOracle, Graph};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, 0.1f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| gen_random(n, p, seed))
}

fn graph_and_set() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n).prop_shuffle())
    })
}

/// Exact shortest-path counts from one source, in integers.
fn exact_counts(g: &Graph, s: usize) -> (Vec<u32>, Vec<u128>) {
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0u128; n];
    dist[s] = 0;
    sigma[s] = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                sigma[w] += sigma[u];
            }
        }
    }
    (dist, sigma)
}

/// Ordered-pair GBC by checking every pair and every path explicitly.
fn gbc_by_enumeration(g: &Graph, set: &[usize]) -> f64 {
    let pc = apsp(g);
    let n = g.n();
    let mut total = 0.0;
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = enumerate_shortest_paths(g, &pc, s, t, 1e6).unwrap();
            let hit = paths.iter().filter(|p| p.iter().any(|v| set.contains(v))).count();
            total += hit as f64 / paths.len() as f64;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_satisfies_predecessor_recurrence(g in graph()) {
        let pc = apsp(&g);
        let n = g.n();
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    prop_assert_eq!(pc.sigma(s, t), 1.0);
                    continue;
                }
                let d = pc.dist(s, t);
                let sum: f64 = g
                    .neighbors(t)
                    .iter()
                    .filter(|&&u| pc.dist(s, u) + 1 == d)
                    .map(|&u| pc.sigma(s, u))
                    .sum();
                prop_assert_eq!(pc.sigma(s, t), sum);
                prop_assert_eq!(pc.sigma(s, t), pc.sigma(t, s));
            }
        }
    }

    #[test]
    fn enumeration_matches_sigma(g in graph()) {
        let pc = apsp(&g);
        for s in 0..g.n() {
            for t in 0..g.n() {
                let paths = enumerate_shortest_paths(&g, &pc, s, t, 1e6).unwrap();
                prop_assert_eq!(paths.len() as f64, pc.sigma(s, t));
                for p in &paths {
                    prop_assert_eq!(p.len() as u32, pc.dist(s, t) + 1);
                    prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
                }
            }
        }
    }

    #[test]
    fn direct_gbc_matches_path_enumeration((g, set) in graph_and_set()) {
        let pc = apsp(&g);
        let n = g.n();
        let direct = gbc_direct(&g, &pc, &set);
        prop_assert!((direct - gbc_by_enumeration(&g, &set)).abs() <= 1e-9 * (n * n) as f64);
    }

    #[test]
    fn oracle_tracks_direct_evaluation((g, order) in graph_and_set()) {
        let pc = apsp(&g);
        let tol = 1e-9 * (g.n() * g.n()) as f64;
        let mut oracle = GbcOracle::new(&pc);
        for (i, &v) in order.iter().enumerate() {
            let before = gbc_direct(&g, &pc, &order[..i]);
            let after = gbc_direct(&g, &pc, &order[..=i]);
            prop_assert!((oracle.gain(v) - (after - before)).abs() <= tol);
            oracle.add(v).unwrap();
            prop_assert!((oracle.value() - after).abs() <= tol);
        }
        for x in 0..g.n() {
            for y in 0..g.n() {
                prop_assert!(oracle.uncovered(x, y) >= 0.0);
            }
        }
    }

    #[test]
    fn insertion_order_does_not_matter((g, order) in graph_and_set()) {
        let pc = apsp(&g);
        let forward = GbcOracle::with_set(&pc, &order).unwrap().value();
        let reversed: Vec<usize> = order.iter().rev().copied().collect();
        let backward = GbcOracle::with_set(&pc, &reversed).unwrap().value();
        prop_assert!((forward - backward).abs() <= 1e-9 * (g.n() * g.n()) as f64);
    }

    #[test]
    fn monotone_and_submodular((g, order) in graph_and_set(), split in 0usize..10, v in 0usize..10) {
        let pc = apsp(&g);
        let n = g.n();
        let v = v % n;
        let b: Vec<usize> = order.iter().copied().filter(|&x| x != v).collect();
        let a = &b[..split.min(b.len())];
        let f = |s: &[usize]| gbc_direct(&g, &pc, s);
        let with = |s: &[usize]| {
            let mut t = s.to_vec();
            t.push(v);
            f(&t)
        };
        let tol = 1e-9 * (n * n) as f64;
        prop_assert!(f(a) <= f(&b) + tol);
        prop_assert!(with(a) - f(a) + tol >= with(&b) - f(&b));
        prop_assert!(f(&b) <= (n * (n - 1)) as f64 + tol);
    }

    #[test]
    fn singleton_is_betweenness_plus_endpoints(g in graph()) {
        let pc = apsp(&g);
        let bc = brandes_bc(&g);
        let n = g.n();
        for v in 0..n {
            let expected = bc[v] + 2.0 * (n as f64 - 1.0);
            prop_assert!((gbc_direct(&g, &pc, &[v]) - expected).abs() <= 1e-9 * (n * n) as f64);
        }
    }
}

#[test]
fn sigma_is_integer_exact_up_to_thirty_nodes() {
    for (i, n) in [12usize, 20, 25, 30].into_iter().enumerate() {
        for p in [0.1, 0.3, 0.6] {
            let g = gen_random(n, p, 1000 + i as u64);
            let pc = apsp(&g);
            for s in 0..n {
                let (dist, sigma) = exact_counts(&g, s);
                for t in 0..n {
                    assert_eq!(pc.dist(s, t), dist[t]);
                    assert!(sigma[t] < 1u128 << 53);
                    assert_eq!(pc.sigma(s, t), sigma[t] as f64, "n={n} p={p} s={s} t={t}");
                }
            }
        }
    }
}

#[test]
fn grid_path_counts_are_binomial() {
    // 4x4 grid: corner to corner has C(6, 3) = 20 shortest paths
    let idx = |r: usize, c: usize| r * 4 + c;
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            if c + 1 < 4 {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < 4 {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    let g = Graph::from_edges(16, &edges).unwrap();
    let pc = apsp(&g);
    assert_eq!(pc.sigma(0, 15), 20.0);
    assert_eq!(pc.dist(0, 15), 6);
    // the centre-adjacent node (1,1) lies on C(2,1) * C(4,2) = 12 of them
    assert!(pc.on_shortest_path(0, idx(1, 1), 15));
    let paths = enumerate_shortest_paths(&g, &pc, 0, 15, 1e6).unwrap();
    assert_eq!(paths.iter().filter(|p| p.contains(&idx(1, 1))).count(), 12);
}
