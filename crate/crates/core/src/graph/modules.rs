use super::{Graph, VertexSet};
use crate::error::Result;

/// Whether all members of `s` have the same neighbors outside `s`.
pub fn is_module(g: &Graph, s: &VertexSet) -> bool {
    let mut members = s.iter();
    let Some(first) = members.next() else {
        return true;
    };
    let outside = g.neighbor_set(first).difference(s);
    members.all(|x| g.neighbor_set(x).difference(s) == outside)
}

/// A module whose removal leaves at least two components.
pub fn is_cut_module(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.require_connected()?;
    Ok(is_module(g, s) && g.components_avoiding(s).len() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn modules_in_paths() {
        let p4 = path(4);
        assert!(!is_module(&p4, &VertexSet::from_vertices(4, [0, 1])));
        assert!(is_module(&p4, &VertexSet::from_vertices(4, [2])));
        assert!(is_module(&p4, &VertexSet::new(4)));
        // endpoints of P_3 share the middle vertex
        assert!(is_module(&path(3), &VertexSet::from_vertices(3, [0, 2])));
    }

    #[test]
    fn cut_modules() {
        let p3 = path(3);
        assert!(is_cut_module(&p3, &VertexSet::from_vertices(3, [1])).unwrap());
        assert!(!is_cut_module(&p3, &VertexSet::from_vertices(3, [0])).unwrap());
        assert!(is_cut_module(&Graph::empty(2), &VertexSet::new(2)).is_err());
    }
}
