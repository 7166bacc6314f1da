use super::{Graph, VertexSet};

// Greedy sequential coloring of `cand`; returns vertices in nondecreasing
// color order together with their color (1-based). The color of a vertex
// bounds the clique size reachable from the vertices up to it.
fn color_sort(g: &Graph, cand: &VertexSet) -> Vec<(usize, usize)> {
    let mut uncolored = cand.clone();
    let mut out = Vec::with_capacity(cand.len());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = class.first() {
            class.remove(v);
            uncolored.remove(v);
            class.difference_with(g.neighbor_set(v));
            out.push((v, color));
        }
    }
    out
}

fn expand(g: &Graph, current: &mut Vec<usize>, mut cand: VertexSet, best: &mut Vec<usize>) {
    let order = color_sort(g, &cand);
    for &(v, color) in order.iter().rev() {
        if current.len() + color <= best.len() {
            return;
        }
        current.push(v);
        let next = cand.intersection(g.neighbor_set(v));
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(g, current, next, best);
        }
        current.pop();
        cand.remove(v);
    }
}

/// A maximum clique, found by branch and bound with a coloring bound.
pub fn max_clique(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut best = Vec::new();
    if n > 0 {
        expand(g, &mut Vec::new(), VertexSet::full(n), &mut best);
    }
    VertexSet::from_vertices(n, best)
}

/// ω(G).
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// A maximum independent set (a maximum clique of the complement).
pub fn max_independent_set(g: &Graph) -> VertexSet {
    max_clique(&g.complement())
}

/// α(G).
pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete(7)), 7);
        assert_eq!(clique_number(&cycle(5)), 2);
        assert_eq!(clique_number(&Graph::empty(3)), 1);
        assert_eq!(clique_number(&Graph::empty(0)), 0);
    }

    #[test]
    fn independence_numbers() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(independence_number(&p3), 2);
        assert_eq!(independence_number(&cycle(5)), 2);
        assert_eq!(independence_number(&complete(6)), 1);
    }

    #[test]
    fn witness_is_a_clique() {
        let g = cycle(7).complement();
        let c = max_clique(&g);
        let vs = c.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(vs.len(), 3);
    }
}
