//! Shared corpora and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid the library's distance and flow code:
//! geodesics are enumerated by plain BFS + DFS and disjoint families are
//! found by exhaustive packing.
#![allow(dead_code)]

use std::collections::VecDeque;

use ftmv::generators::{generate_str, seeded_connected};
use ftmv::{Graph, VertexSet};

pub fn bfs(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Every shortest `u,v`-path.
pub fn geodesics(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let du = bfs(g, u);
    let dv = bfs(g, v);
    let d = du[v].expect("connected");
    let mut out = Vec::new();
    let mut path = vec![u];
    fn walk(g: &Graph, dv: &[Option<usize>], v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path.clone());
            return;
        }
        let remaining = dv[last].unwrap();
        for &w in g.neighbors(last) {
            if dv[w] == Some(remaining - 1) {
                path.push(w);
                walk(g, dv, v, path, out);
                path.pop();
            }
        }
    }
    walk(g, &dv, v, &mut path, &mut out);
    assert!(out.iter().all(|p| p.len() == d + 1));
    out
}

/// Largest family of internally disjoint shortest `u,v`-paths avoiding `x`
/// internally, by exhaustive packing.
pub fn oracle_max_disjoint(g: &Graph, x: &VertexSet, u: usize, v: usize) -> usize {
    let paths: Vec<Vec<usize>> =
        geodesics(g, u, v).into_iter().filter(|p| p[1..p.len() - 1].iter().all(|&w| !x.contains(w))).collect();
    fn pack(paths: &[Vec<usize>], i: usize, used: &mut Vec<bool>) -> usize {
        if i == paths.len() {
            return 0;
        }
        let skip = pack(paths, i + 1, used);
        let inner = &paths[i][1..paths[i].len() - 1];
        if inner.iter().any(|&w| used[w]) {
            return skip;
        }
        inner.iter().for_each(|&w| used[w] = true);
        let take = 1 + pack(paths, i + 1, used);
        inner.iter().for_each(|&w| used[w] = false);
        skip.max(take)
    }
    pack(&paths, 0, &mut vec![false; g.order()])
}

pub fn oracle_is_ftmv(g: &Graph, x: &VertexSet, k: usize) -> bool {
    let xs = x.to_vec();
    xs.iter()
        .enumerate()
        .all(|(i, &a)| xs[i + 1..].iter().all(|&b| g.has_edge(a, b) || oracle_max_disjoint(g, x, a, b) > k))
}

/// μ^k by checking all 2^n subsets with the oracle predicate.
pub fn oracle_mu(g: &Graph, k: usize) -> usize {
    let n = g.order();
    assert!(n <= 12);
    (0u32..1 << n)
        .filter(|mask| {
            let x = VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            oracle_is_ftmv(g, &x, k)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

/// Family representatives at their smallest sizes, all on at most 8 vertices.
pub const SMALL_FAMILY_SPECS: &[&str] = &[
    "path:1",
    "path:2",
    "path:3",
    "path:5",
    "cycle:3",
    "cycle:4",
    "cycle:5",
    "cycle:8",
    "complete:2",
    "complete:4",
    "kbip:2,2",
    "kbip:2,3",
    "kbip:3,3",
    "star:4",
    "grid:2x2",
    "grid:2x3",
    "grid:2x4",
    "cylinder:2x3",
    "cylinder:2x4",
    "hamming:2,2",
    "hamming:2,3",
    "hamming:2,4",
    "dcomplete:2,3",
    "dcomplete:2,4",
    "cmn:4,4",
    "cmn:4,5",
    "cmn:5,5",
    "gmn:3,4",
    "gmn:4,4",
    "gmn:3,5",
    "k33e",
    "hfam:4,1,seed=1",
    "hfam:6,1,seed=2",
    "hfam:8,1,seed=3",
    "hfam:5,2,seed=4",
    "hfam:8,2,seed=5",
    "cart(path:2,cycle:3)",
    "dir(path:2,complete:4)",
];

/// Additional family members on 9 to 10 vertices.
pub const MEDIUM_FAMILY_SPECS: &[&str] = &[
    "torus:3x3",
    "grid:3x3",
    "petersen",
    "hml:4,2",
    "cmn:6,6",
    "gmn:3,8",
    "hamming:3,3",
    "dcomplete:3,3",
    "cylinder:3x3",
    "hfam:10,2,seed=6",
];

pub fn named(specs: &[&str]) -> Vec<(String, Graph)> {
    specs.iter().map(|s| (s.to_string(), generate_str(s).unwrap())).collect()
}

/// `count` seeded random connected graphs on 2..=max_n vertices.
pub fn random_graphs(count: u64, max_n: usize, seed_base: u64) -> Vec<(String, Graph)> {
    (0..count)
        .map(|i| {
            let n = 2 + (i as usize % (max_n - 1));
            let p = [0.2, 0.35, 0.5, 0.7][(i / 7) as usize % 4];
            let seed = seed_base + i;
            (format!("random(n={n},p={p},seed={seed})"), seeded_connected(n, p, seed))
        })
        .collect()
}

/// The fixed small corpus: families at minimum sizes plus 100 random graphs, all n <= 8.
pub fn small_corpus() -> Vec<(String, Graph)> {
    let mut c = named(SMALL_FAMILY_SPECS);
    c.extend(random_graphs(100, 8, 1000));
    assert!(c.iter().all(|(_, g)| g.order() <= 8 && g.is_connected()));
    c
}

/// The small corpus plus family members and random graphs up to 10 vertices.
pub fn medium_corpus() -> Vec<(String, Graph)> {
    let mut c = small_corpus();
    c.extend(named(MEDIUM_FAMILY_SPECS));
    c.extend(random_graphs(30, 10, 5000).into_iter().filter(|(_, g)| g.order() >= 9));
    c
}
