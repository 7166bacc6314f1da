use std::collections::VecDeque;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Distance marker for vertices not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Hop distances from one source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    /// Distance to `v`, or `None` if unreachable.
    pub fn get(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn eccentricity(&self) -> Option<u32> {
        self.dist.iter().try_fold(0, |acc, &d| (d != UNREACHABLE).then(|| acc.max(d)))
    }
}

pub fn bfs_distances(g: &Graph, source: usize) -> DistanceRow {
    assert!(source < g.order(), "bfs source {source} out of range");
    let mut dist = vec![UNREACHABLE; g.order()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x];
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHABLE {
                dist[y] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    DistanceRow { source, dist }
}

/// Largest distance between two vertices. Fails on disconnected graphs.
pub fn diameter(g: &Graph) -> Result<u32> {
    g.require_connected()?;
    (0..g.order())
        .map(|s| bfs_distances(g, s).eccentricity().ok_or(Error::NotConnected))
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
}

fn interval_from_rows(from_u: &DistanceRow, from_v: &DistanceRow) -> VertexSet {
    let n = from_u.dist.len();
    let d = from_u.dist[from_v.source];
    let mut s = VertexSet::new(n);
    for w in 0..n {
        let (a, b) = (from_u.dist[w], from_v.dist[w]);
        if a != UNREACHABLE && b != UNREACHABLE && a + b == d {
            s.insert(w);
        }
    }
    s
}

/// All vertices lying on some shortest `u,v`-path, endpoints included.
pub fn interval(g: &Graph, u: usize, v: usize) -> Result<VertexSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let from_u = bfs_distances(g, u);
    if from_u.dist[v] == UNREACHABLE {
        return Err(Error::Disconnected(u, v));
    }
    let from_v = bfs_distances(g, v);
    Ok(interval_from_rows(&from_u, &from_v))
}

/// Whether every shortest path between two members of `s` stays inside `s`.
pub fn is_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.require_connected()?;
    let dm = DistanceMatrix::new(g);
    let members = s.to_vec();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !dm.interval(u, v).is_subset(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest convex vertex set containing `s`.
pub fn convex_hull(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.require_connected()?;
    let dm = DistanceMatrix::new(g);
    Ok(dm.convex_hull(s))
}

/// All-pairs distances with precomputed intervals, for repeated queries on
/// one connected graph.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    intervals: Vec<VertexSet>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let rows: Vec<DistanceRow> = (0..n).map(|s| bfs_distances(g, s)).collect();
        let mut dist = Vec::with_capacity(n * n);
        for r in &rows {
            dist.extend_from_slice(&r.dist);
        }
        let mut intervals = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                if rows[u].dist[v] == UNREACHABLE {
                    intervals.push(VertexSet::new(n));
                } else {
                    intervals.push(interval_from_rows(&rows[u], &rows[v]));
                }
            }
        }
        DistanceMatrix { n, dist, intervals }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Raw distance; [`UNREACHABLE`] for disconnected pairs.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn interval(&self, u: usize, v: usize) -> &VertexSet {
        &self.intervals[u * self.n + v]
    }

    pub fn diameter(&self) -> Option<u32> {
        self.dist.iter().try_fold(0, |acc, &d| (d != UNREACHABLE).then(|| acc.max(d)))
    }

    pub fn convex_hull(&self, s: &VertexSet) -> VertexSet {
        let mut hull = s.clone();
        let mut frontier: Vec<usize> = hull.to_vec();
        let mut settled: Vec<usize> = Vec::new();
        // Every new vertex is paired with everything already in the hull.
        while let Some(x) = frontier.pop() {
            let mut added = Vec::new();
            for &y in settled.iter().chain(frontier.iter()) {
                for w in self.interval(x, y).iter() {
                    if hull.insert(w) {
                        added.push(w);
                    }
                }
            }
            settled.push(x);
            frontier.extend(added);
        }
        hull
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn bfs_on_basic_families() {
        assert_eq!(bfs_distances(&path(4), 0).dist, vec![0, 1, 2, 3]);
        assert_eq!(bfs_distances(&cycle(6), 0).dist, vec![0, 1, 2, 3, 2, 1]);
        let k5 = bfs_distances(&complete(5), 2);
        assert_eq!(k5.dist, vec![1, 1, 0, 1, 1]);
        let split = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&split, 0).get(2), None);
    }

    #[test]
    fn diameter_and_connectivity() {
        assert_eq!(diameter(&cycle(6)), Ok(3));
        assert_eq!(diameter(&Graph::empty(2)), Err(Error::NotConnected));
    }

    #[test]
    fn intervals_on_cycles() {
        assert_eq!(interval(&cycle(6), 0, 3).unwrap().len(), 6);
        assert_eq!(interval(&cycle(5), 0, 2).unwrap().to_vec(), vec![0, 1, 2]);
        let split = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(interval(&split, 0, 2), Err(Error::Disconnected(0, 2)));
    }

    #[test]
    fn convexity_on_c4() {
        let c4 = cycle(4);
        assert!(!is_convex(&c4, &VertexSet::from_vertices(4, [0, 2])).unwrap());
        assert!(is_convex(&c4, &VertexSet::from_vertices(4, [0, 1])).unwrap());
        let hull = convex_hull(&c4, &VertexSet::from_vertices(4, [0, 2])).unwrap();
        assert_eq!(hull.len(), 4);
        let single = convex_hull(&c4, &VertexSet::from_vertices(4, [3])).unwrap();
        assert_eq!(single.to_vec(), vec![3]);
        assert!(is_convex(&complete(5), &VertexSet::from_vertices(5, [0, 3, 4])).unwrap());
    }
}
