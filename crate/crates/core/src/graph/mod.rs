//! Immutable simple undirected graphs and the structural primitives built on
//! them: distances, intervals, convexity, blocks, cliques and modules.
//!
//! Vertices are the dense integers `0..n`.

mod blocks;
mod clique;
mod format;
mod metric;
mod modules;
mod set;

use std::collections::VecDeque;

pub use blocks::{blocks, BlockDecomposition};
pub use clique::{clique_number, independence_number, max_clique, max_independent_set};
pub use format::{parse_graph, write_graph, FORMAT_HEADER};
pub use metric::{bfs_distances, convex_hull, diameter, interval, is_convex, DistanceMatrix, DistanceRow, UNREACHABLE};
pub use modules::{is_cut_module, is_module};
pub use set::VertexSet;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    adj_sets: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if b.has_edge(u, v)? {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a set.
    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adj_sets[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj_sets[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order() })
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&VertexSet::new(self.order()))
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            queue.push_back(s);
            let mut comp = vec![s];
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if seen.insert(y) {
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for the graph on one vertex and for every connected graph.
    /// The null graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    /// Subgraph induced by `keep`. Returns the subgraph and, for each of its
    /// vertices, the original vertex id (increasing order).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j > i {
                    b.add_edge(i, j).expect("induced edge in range");
                }
            }
        }
        (b.build(), map)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    b.add_edge(u, v).expect("in range");
                }
            }
        }
        b.build()
    }

    /// Whether the graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count + 1 == self.order()
    }

    /// Whether the graph is 2-colorable.
    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("order", &self.order()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Incremental constructor for [`Graph`]. Adding an existing edge is a no-op.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj_sets: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj_sets: (0..n).map(|_| VertexSet::new(n)).collect() }
    }

    pub fn order(&self) -> usize {
        self.adj_sets.len()
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, order: n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.check(u, v)?;
        Ok(self.adj_sets[u].contains(v))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u, v)?;
        self.adj_sets[u].insert(v);
        self.adj_sets[v].insert(u);
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u, v)?;
        self.adj_sets[u].remove(v);
        self.adj_sets[v].remove(u);
        Ok(self)
    }

    pub fn build(self) -> Graph {
        let adj: Vec<Vec<usize>> = self.adj_sets.iter().map(VertexSet::to_vec).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, adj_sets: self.adj_sets, edge_count }
    }
}
