//! k-fault-tolerant visibility of vertex pairs and sets.
//!
//! Two vertices `u, v` of a set `X` see each other `k`-fault-tolerantly
//! when they are adjacent, or when there are `k + 1` internally disjoint
//! shortest `u,v`-paths none of whose internal vertices lie in `X`. Such
//! paths are exactly the vertex-disjoint `u → v` paths of the interval DAG
//! (arcs `a → b` with `d(u,b) = d(u,a) + 1` inside `I(u,v)`), so the count
//! is a unit-vertex-capacity maximum flow on that DAG.

use std::cell::RefCell;
use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, DistanceMatrix, Graph, VertexSet, UNREACHABLE};

/// The shortest-path DAG of a pair with some vertices forbidden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDag {
    pub u: usize,
    pub v: usize,
    pub distance: u32,
    /// Interval vertices that may be used (endpoints always included).
    pub allowed: VertexSet,
    /// Arcs `a → b`, sorted.
    pub arcs: Vec<(usize, usize)>,
}

impl IntervalDag {
    pub fn build(g: &Graph, u: usize, v: usize, forbidden: &VertexSet) -> Result<IntervalDag> {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        let du = bfs_distances(g, u);
        let dv = bfs_distances(g, v);
        let d = du.dist[v];
        if d == UNREACHABLE {
            return Err(Error::Disconnected(u, v));
        }
        let mut allowed = VertexSet::new(g.order());
        for w in 0..g.order() {
            let on_geodesic = du.dist[w] != UNREACHABLE && dv.dist[w] != UNREACHABLE && du.dist[w] + dv.dist[w] == d;
            if on_geodesic && (w == u || w == v || !forbidden.contains(w)) {
                allowed.insert(w);
            }
        }
        let mut arcs = Vec::new();
        for a in allowed.iter() {
            for &b in g.neighbors(a) {
                if allowed.contains(b) && du.dist[b] == du.dist[a] + 1 {
                    arcs.push((a, b));
                }
            }
        }
        Ok(IntervalDag { u, v, distance: d, allowed, arcs })
    }
}

/// Internally disjoint shortest paths witnessing that `u` and `v` see each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VisibilityCertificate {
    pub pair: (usize, usize),
    pub paths: Vec<Vec<usize>>,
}

impl VisibilityCertificate {
    /// Re-checks the certificate from scratch: each path is a shortest
    /// `u,v`-path of `g`, paths pairwise share no internal vertex, no internal
    /// vertex is in `x`, and there are at least `need` paths.
    pub fn validate(&self, g: &Graph, x: &VertexSet, need: usize) -> bool {
        let (u, v) = self.pair;
        if u >= g.order() || v >= g.order() || self.paths.len() < need {
            return false;
        }
        let d = bfs_distances(g, u).dist[v];
        if d == UNREACHABLE {
            return false;
        }
        let mut used = VertexSet::new(g.order());
        for p in &self.paths {
            if p.len() != d as usize + 1 || p.first() != Some(&u) || p.last() != Some(&v) {
                return false;
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            for &w in &p[1..p.len() - 1] {
                if x.contains(w) || !used.insert(w) {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of checking whether a set is k-ftmv.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtmvVerdict {
    pub ok: bool,
    /// Lexicographically smallest non-adjacent pair lacking `k + 1` clear paths.
    pub failing_pair: Option<(usize, usize)>,
    /// Number of clear paths found for the failing pair.
    pub max_disjoint: Option<usize>,
    /// Certificates for every non-adjacent pair checked (only when requested
    /// and the set passed).
    pub certificates: Option<BTreeMap<(usize, usize), VisibilityCertificate>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Arc {
    to: usize,
    cap: u8,
    rev: usize,
}

/// Reusable buffers for the flow computation.
#[derive(Debug, Default)]
pub(crate) struct FlowScratch {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
}

const NONE: usize = usize::MAX;

impl FlowScratch {
    fn reset(&mut self, nodes: usize) {
        self.arcs.clear();
        if self.head.len() < nodes {
            self.head.resize_with(nodes, Vec::new);
        }
        for h in &mut self.head[..nodes] {
            h.clear();
        }
        self.parent.clear();
        self.parent.resize(nodes, NONE);
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        let i = self.arcs.len();
        self.arcs.push(Arc { to, cap: 1, rev: i + 1 });
        self.arcs.push(Arc { to: from, cap: 0, rev: i });
        self.head[from].push(i);
        self.head[to].push(i + 1);
    }

    // One BFS augmentation; returns false when the sink is unreachable.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.queue.clear();
        self.queue.push_back(source);
        let mut found = false;
        'bfs: while let Some(x) = self.queue.pop_front() {
            for &ai in &self.head[x] {
                let a = self.arcs[ai];
                if a.cap > 0 && a.to != source && self.parent[a.to] == NONE {
                    self.parent[a.to] = ai;
                    if a.to == sink {
                        found = true;
                        break 'bfs;
                    }
                    self.queue.push_back(a.to);
                }
            }
        }
        if !found {
            return false;
        }
        let mut node = sink;
        while node != source {
            let ai = self.parent[node];
            self.arcs[ai].cap -= 1;
            let rev = self.arcs[ai].rev;
            self.arcs[rev].cap += 1;
            node = self.arcs[rev].to;
        }
        true
    }
}

thread_local! {
    static SCRATCH: RefCell<FlowScratch> = RefCell::new(FlowScratch::default());
}

/// Counts clear internally disjoint shortest `u,v`-paths, truncated at `cap`.
///
/// `du` gives distances from `u`; `interval` is `I(u,v)`; `d` is `d(u,v) >= 2`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn count_clear_paths(
    g: &Graph,
    du: &dyn Fn(usize) -> u32,
    interval: &VertexSet,
    d: u32,
    x: &VertexSet,
    (u, v): (usize, usize),
    cap: usize,
    extract: bool,
    scratch: &mut FlowScratch,
) -> (usize, Vec<Vec<usize>>) {
    debug_assert!(d >= 2);
    let usable = |w: usize| w != u && w != v && interval.contains(w) && !x.contains(w);
    if d == 2 {
        // Every clear common neighbor is its own path.
        if !extract {
            return (g.neighbor_set(u).count_and_not(g.neighbor_set(v), x).min(cap), Vec::new());
        }
        let mids = interval.iter().filter(|&w| usable(w));
        let paths: Vec<Vec<usize>> = mids.take(cap).map(|w| vec![u, w, v]).collect();
        return (paths.len(), paths);
    }

    let n = g.order();
    // node 2w = w_in, 2w + 1 = w_out; source u_out, sink v_in
    scratch.reset(2 * n);
    for a in interval.iter() {
        if a != u && !usable(a) {
            continue;
        }
        if a != u {
            scratch.add_arc(2 * a, 2 * a + 1);
        }
        let da = du(a);
        for &b in g.neighbors(a) {
            if du(b) == da + 1 && (b == v || usable(b)) {
                scratch.add_arc(2 * a + 1, 2 * b);
            }
        }
    }
    let (source, sink) = (2 * u + 1, 2 * v);
    let mut flow = 0;
    while flow < cap && scratch.augment(source, sink) {
        flow += 1;
    }
    if !extract {
        return (flow, Vec::new());
    }
    let mut paths = Vec::with_capacity(flow);
    // Follow saturated forward arcs out of the source; each is consumed once.
    for _ in 0..flow {
        let mut path = vec![u];
        let mut node = source;
        while node != sink {
            let ai = scratch.head[node]
                .iter()
                .copied()
                .find(|&ai| ai % 2 == 0 && scratch.arcs[ai].cap == 0)
                .expect("flow conservation");
            scratch.arcs[ai].cap = 2; // consumed
            node = scratch.arcs[ai].to;
            if node % 2 == 0 {
                path.push(node / 2);
            }
        }
        paths.push(path);
    }
    (flow, paths)
}

/// Maximum number (truncated at `cap`) of internally disjoint shortest
/// `u,v`-paths whose internal vertices avoid `x`, with the paths themselves.
///
/// Adjacent pairs have exactly one shortest path, the edge.
pub fn clear_paths(g: &Graph, x: &VertexSet, u: usize, v: usize, cap: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument("u and v must differ".into()));
    }
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let from_u = bfs_distances(g, u);
    let d = from_u.dist[v];
    if d == UNREACHABLE {
        return Err(Error::Disconnected(u, v));
    }
    if d == 1 {
        return Ok((1, vec![vec![u, v]]));
    }
    let from_v = bfs_distances(g, v);
    let interval = VertexSet::from_vertices(
        g.order(),
        (0..g.order()).filter(|&w| {
            from_u.dist[w] != UNREACHABLE && from_v.dist[w] != UNREACHABLE && from_u.dist[w] + from_v.dist[w] == d
        }),
    );
    let du = |w: usize| from_u.dist[w];
    Ok(SCRATCH.with(|s| count_clear_paths(g, &du, &interval, d, x, (u, v), cap, true, &mut s.borrow_mut())))
}

/// Count-only form of [`clear_paths`].
pub fn max_disjoint_clear_paths(g: &Graph, x: &VertexSet, u: usize, v: usize, cap: usize) -> Result<usize> {
    clear_paths(g, x, u, v, cap).map(|(c, _)| c)
}

/// Whether `u` and `v` see each other `k`-fault-tolerantly with respect to `x`.
pub fn is_pair_visible(g: &Graph, x: &VertexSet, u: usize, v: usize, k: usize) -> Result<bool> {
    if g.has_edge(u, v) {
        return Ok(true);
    }
    Ok(max_disjoint_clear_paths(g, x, u, v, k + 1)? > k)
}

/// Pair-visibility queries against one connected graph, backed by an
/// all-pairs distance matrix.
#[derive(Debug, Clone)]
pub struct VisibilityOracle<'g> {
    g: &'g Graph,
    dm: DistanceMatrix,
}

impl<'g> VisibilityOracle<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        g.require_connected()?;
        Ok(VisibilityOracle { g, dm: DistanceMatrix::new(g) })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dm
    }

    pub(crate) fn count_with(&self, x: &VertexSet, u: usize, v: usize, cap: usize, scratch: &mut FlowScratch) -> usize {
        let d = self.dm.dist(u, v);
        if d <= 1 {
            return d as usize;
        }
        let du = |w: usize| self.dm.dist(u, w);
        count_clear_paths(self.g, &du, self.dm.interval(u, v), d, x, (u, v), cap, false, scratch).0
    }

    /// Same as [`max_disjoint_clear_paths`] for `u ≠ v`.
    pub fn count(&self, x: &VertexSet, u: usize, v: usize, cap: usize) -> usize {
        SCRATCH.with(|s| self.count_with(x, u, v, cap, &mut s.borrow_mut()))
    }

    pub fn paths(&self, x: &VertexSet, u: usize, v: usize, cap: usize) -> Vec<Vec<usize>> {
        let d = self.dm.dist(u, v);
        if d == 1 {
            return vec![vec![u, v]];
        }
        let du = |w: usize| self.dm.dist(u, w);
        SCRATCH.with(|s| {
            count_clear_paths(self.g, &du, self.dm.interval(u, v), d, x, (u, v), cap, true, &mut s.borrow_mut()).1
        })
    }

    /// Checks every non-adjacent pair of `x`; see [`is_ftmv_set`].
    pub fn check_set(&self, x: &VertexSet, k: usize, want_certificates: bool) -> FtmvVerdict {
        let members = x.to_vec();
        let pairs: Vec<(usize, usize)> = members
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| members[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !self.g.has_edge(a, b))
            .collect();
        let need = k + 1;
        let failing = |p: &(usize, usize)| {
            let c = self.count(x, p.0, p.1, need);
            (c < need).then_some((*p, c))
        };
        // find_first keeps the lexicographically smallest failure under parallelism
        let failure =
            if pairs.len() > 512 { pairs.par_iter().find_map_first(failing) } else { pairs.iter().find_map(failing) };
        if let Some((pair, c)) = failure {
            return FtmvVerdict { ok: false, failing_pair: Some(pair), max_disjoint: Some(c), certificates: None };
        }
        let certificates = want_certificates.then(|| {
            pairs
                .par_iter()
                .map(|&(a, b)| ((a, b), VisibilityCertificate { pair: (a, b), paths: self.paths(x, a, b, need) }))
                .collect()
        });
        FtmvVerdict { ok: true, failing_pair: None, max_disjoint: None, certificates }
    }
}

/// Decides whether `x` is a `k`-ftmv set of the connected graph `g`.
pub fn is_ftmv_set(g: &Graph, x: &VertexSet, k: usize, want_certificates: bool) -> Result<FtmvVerdict> {
    if x.universe() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "vertex set over {} vertices used with a graph of order {}",
            x.universe(),
            g.order()
        )));
    }
    Ok(VisibilityOracle::new(g)?.check_set(x, k, want_certificates))
}

/// Pairs to re-verify after adding `w ∉ x` to `x`: every non-adjacent
/// `(w, y)` with `y ∈ x`, and every non-adjacent `(a, b) ⊆ x` whose
/// interval contains `w`. Pairs are `(min, max)`, sorted.
pub fn incremental_recheck_targets(g: &Graph, x: &VertexSet, w: usize) -> Result<Vec<(usize, usize)>> {
    g.check_vertex(w)?;
    if x.contains(w) {
        return Err(Error::InvalidArgument(format!("vertex {w} is already in the set")));
    }
    let dm = DistanceMatrix::new(g);
    Ok(recheck_targets_with(g, &dm, x, w))
}

pub(crate) fn recheck_targets_with(g: &Graph, dm: &DistanceMatrix, x: &VertexSet, w: usize) -> Vec<(usize, usize)> {
    let members = x.to_vec();
    let mut out: Vec<(usize, usize)> =
        members.iter().filter(|&&y| !g.has_edge(w, y)).map(|&y| (w.min(y), w.max(y))).collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !g.has_edge(a, b) && dm.interval(a, b).contains(w) {
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cartesian, complete, cycle, generate_str, path};

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn cycles() {
        let c4 = cycle(4);
        assert_eq!(max_disjoint_clear_paths(&c4, &VertexSet::new(4), 0, 2, 3), Ok(2));
        let c5 = cycle(5);
        assert_eq!(max_disjoint_clear_paths(&c5, &VertexSet::new(5), 0, 2, 2), Ok(1));
    }

    #[test]
    fn hamming_non_adjacent_pairs_have_two_geodesics() {
        let g = cartesian(&complete(3), &complete(4));
        assert_eq!(max_disjoint_clear_paths(&g, &VertexSet::new(12), 0, 1, 3), Ok(1));
        assert_eq!(max_disjoint_clear_paths(&g, &VertexSet::new(12), 0, 6, 3), Ok(2));
        assert_eq!(max_disjoint_clear_paths(&g, &VertexSet::new(12), 0, 5, 3), Ok(2));
    }

    #[test]
    fn pair_visibility() {
        let p5 = path(5);
        assert!(is_pair_visible(&p5, &set(5, &[0, 1, 2, 3, 4]), 1, 2, 7).unwrap());
        assert!(!is_pair_visible(&p5, &set(5, &[0, 2, 4]), 0, 4, 0).unwrap());
        let t = generate_str("torus:4x4").unwrap();
        assert!(is_pair_visible(&t, &VertexSet::new(16), 0, 10, 3).unwrap());
        assert!(!is_pair_visible(&t, &VertexSet::new(16), 0, 10, 4).unwrap());
    }

    #[test]
    fn argument_errors() {
        let split = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(max_disjoint_clear_paths(&split, &VertexSet::new(3), 0, 2, 1), Err(Error::Disconnected(0, 2)));
        assert!(max_disjoint_clear_paths(&path(3), &VertexSet::new(3), 1, 1, 1).is_err());
        assert!(max_disjoint_clear_paths(&path(3), &VertexSet::new(3), 0, 2, 0).is_err());
        assert_eq!(is_ftmv_set(&split, &VertexSet::new(3), 0, false), Err(Error::NotConnected));
    }

    #[test]
    fn ftmv_sets_from_constructions() {
        // a clique passes for every k
        let k5 = complete(5);
        assert!(is_ftmv_set(&k5, &VertexSet::full(5), 9, false).unwrap().ok);
        // diagonal of P_3 □ P_5
        let grid = generate_str("grid:3x5").unwrap();
        assert!(is_ftmv_set(&grid, &set(15, &[0, 6, 12]), 1, false).unwrap().ok);
        // C_3 □ C_3 with coordinates (0,2), (1,0), (1,1), (2,2)
        let t = generate_str("torus:3x3").unwrap();
        let v = is_ftmv_set(&t, &set(9, &[2, 3, 4, 8]), 1, true).unwrap();
        assert!(v.ok);
        for cert in v.certificates.unwrap().values() {
            assert!(cert.validate(&t, &set(9, &[2, 3, 4, 8]), 2));
        }
    }

    #[test]
    fn failing_pair_is_lexicographically_smallest() {
        let c5 = cycle(5);
        let v = is_ftmv_set(&c5, &set(5, &[0, 2]), 1, false).unwrap();
        assert_eq!((v.ok, v.failing_pair, v.max_disjoint), (false, Some((0, 2)), Some(1)));
        let p5 = path(5);
        let v = is_ftmv_set(&p5, &set(5, &[0, 1, 3, 4]), 0, false).unwrap();
        assert_eq!(v.failing_pair, Some((0, 3)));
    }

    #[test]
    fn recheck_targets() {
        let p3 = path(3);
        assert!(incremental_recheck_targets(&p3, &VertexSet::new(3), 1).unwrap().is_empty());
        assert_eq!(incremental_recheck_targets(&p3, &set(3, &[0]), 2).unwrap(), vec![(0, 2)]);
        assert_eq!(incremental_recheck_targets(&p3, &set(3, &[0, 2]), 1).unwrap(), vec![(0, 2)]);
        assert!(incremental_recheck_targets(&p3, &set(3, &[0]), 0).is_err());
    }

    #[test]
    fn extracted_paths_are_valid_certificates() {
        let t = generate_str("torus:4x5").unwrap();
        let x = set(20, &[0, 7, 13]);
        let (c, paths) = clear_paths(&t, &x, 0, 13, 10).unwrap();
        let cert = VisibilityCertificate { pair: (0, 13), paths };
        assert!(cert.validate(&t, &x, c));
        assert!(c >= 1);
    }

    #[test]
    fn interval_dag_layers() {
        let g = generate_str("grid:3x3").unwrap();
        let dag = IntervalDag::build(&g, 0, 8, &set(9, &[4])).unwrap();
        assert_eq!(dag.distance, 4);
        assert_eq!(dag.allowed.len(), 8);
        assert_eq!(dag.arcs.len(), 8);
    }
}
