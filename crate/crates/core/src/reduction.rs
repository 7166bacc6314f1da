//! The gadget graph G′ that turns an independent-set instance `(G, t)` into
//! a k-ftmv instance `(G′, t′)`.
//!
//! Vertex layout: `V(G)`, then `A`, then one `A_e` block per edge of `G` in
//! [`Graph::edges`] order, then `B`, then `T`, then one `T_e` block per edge.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// A vertex of the source graph.
    Original(usize),
    A,
    /// Attached to the endpoints of the source edge.
    AEdge(usize, usize),
    B,
    T,
    TEdge(usize, usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Original(v) => write!(f, "V({v})"),
            Role::A => f.write_str("A"),
            Role::AEdge(u, v) => write!(f, "A_e({u},{v})"),
            Role::B => f.write_str("B"),
            Role::T => f.write_str("T"),
            Role::TEdge(u, v) => write!(f, "T_e({u},{v})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub g_prime: Graph,
    pub t_prime: usize,
    pub k: usize,
    pub roles: Vec<Role>,
    /// `embedding[v]` is the vertex of G′ standing for `v`.
    pub embedding: Vec<usize>,
}

impl ReductionOutput {
    pub fn role_set(&self, pred: impl Fn(Role) -> bool) -> VertexSet {
        VertexSet::from_vertices(self.roles.len(), (0..self.roles.len()).filter(|&v| pred(self.roles[v])))
    }

    /// `A` followed by every `A_e`.
    pub fn cut_module_sets(&self) -> Vec<VertexSet> {
        let mut out = vec![self.role_set(|r| r == Role::A)];
        let mut edges: Vec<(usize, usize)> = self
            .roles
            .iter()
            .filter_map(|r| match *r {
                Role::AEdge(u, v) => Some((u, v)),
                _ => None,
            })
            .collect();
        edges.dedup();
        out.extend(edges.into_iter().map(|e| self.role_set(|r| r == Role::AEdge(e.0, e.1))));
        out
    }

    /// The roles sidecar: `<vertex-id> <role>` per line.
    pub fn roles_text(&self) -> String {
        self.roles.iter().enumerate().map(|(v, r)| format!("{v} {r}\n")).collect()
    }
}

pub fn build_reduction(g: &Graph, t: usize, k: usize) -> Result<ReductionOutput> {
    if k == 0 {
        return Err(Error::InvalidArgument("the construction needs k >= 1".into()));
    }
    if t < 2 {
        return Err(Error::InvalidArgument(format!("the construction needs t >= 2, got {t}")));
    }
    g.require_connected()?;
    let n = g.order();
    if g.edge_count() == n * (n - 1) / 2 {
        return Err(Error::Construction("source graph must not be complete".into()));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();

    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    let block = |roles: &mut Vec<Role>, size: usize, role: Role| -> std::ops::Range<usize> {
        let start = roles.len();
        roles.extend(std::iter::repeat_n(role, size));
        start..roles.len()
    };
    let a = block(&mut roles, k + 1, Role::A);
    let a_e: Vec<_> = edges.iter().map(|&(u, v)| block(&mut roles, k + 1, Role::AEdge(u, v))).collect();
    let b = block(&mut roles, k, Role::B);
    let t_set = block(&mut roles, n + k, Role::T);
    let t_e: Vec<_> = edges.iter().map(|&(u, v)| block(&mut roles, n + k, Role::TEdge(u, v))).collect();

    let mut gb = GraphBuilder::new(roles.len());
    for (u, v) in &edges {
        gb.add_edge(*u, *v)?;
    }
    let join = |gb: &mut GraphBuilder, xs: std::ops::Range<usize>, ys: std::ops::Range<usize>| -> Result<()> {
        for x in xs {
            for y in ys.clone() {
                gb.add_edge(x, y)?;
            }
        }
        Ok(())
    };
    join(&mut gb, a.clone(), 0..n)?;
    for (e, &(u, v)) in edges.iter().enumerate() {
        join(&mut gb, a_e[e].clone(), u..u + 1)?;
        join(&mut gb, a_e[e].clone(), v..v + 1)?;
        for f in e + 1..m {
            join(&mut gb, a_e[e].clone(), a_e[f].clone())?;
        }
        join(&mut gb, t_e[e].clone(), a_e[e].clone())?;
        join(&mut gb, b.clone(), a_e[e].clone())?;
    }
    join(&mut gb, b.clone(), a.clone())?;
    join(&mut gb, t_set, a)?;

    Ok(ReductionOutput { g_prime: gb.build(), t_prime: (m + 1) * (n + k) + t, k, roles, embedding: (0..n).collect() })
}

/// `I ∪ T ∪ ⋃ T_e`, the k-ftmv set of G′ built from an independent set `i`
/// of the source graph.
pub fn witness_from_independent_set(r: &ReductionOutput, source: &Graph, i: &VertexSet) -> Result<VertexSet> {
    if i.universe() != source.order() || source.order() != r.embedding.len() {
        return Err(Error::InvalidArgument("independent set does not match the source graph".into()));
    }
    let members = i.to_vec();
    for (j, &u) in members.iter().enumerate() {
        if let Some(&v) = members[j + 1..].iter().find(|&&v| source.has_edge(u, v)) {
            return Err(Error::InvalidArgument(format!("{u} and {v} are adjacent; the set is not independent")));
        }
    }
    let mut x = r.role_set(|role| matches!(role, Role::T | Role::TEdge(..)));
    for u in members {
        x.insert(r.embedding[u]);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use crate::graph::{diameter, max_independent_set};
    use crate::visibility::is_ftmv_set;

    #[test]
    fn p3_sizes() {
        let r = build_reduction(&path(3), 2, 1).unwrap();
        assert_eq!(r.g_prime.order(), 22);
        assert_eq!(r.t_prime, 14);
        assert_eq!(diameter(&r.g_prime), Ok(4));
        let count = |want: fn(&Role) -> bool| r.roles.iter().filter(|x| want(x)).count();
        assert_eq!(count(|x| *x == Role::A), 2);
        assert_eq!(count(|x| matches!(x, Role::AEdge(..))), 4);
        assert_eq!(count(|x| *x == Role::B), 1);
        assert_eq!(count(|x| *x == Role::T), 4);
        assert_eq!(count(|x| matches!(x, Role::TEdge(..))), 8);
    }

    #[test]
    fn p3_witness() {
        let p3 = path(3);
        let r = build_reduction(&p3, 2, 1).unwrap();
        let x = witness_from_independent_set(&r, &p3, &VertexSet::from_vertices(3, [0, 2])).unwrap();
        assert_eq!(x.len(), 14);
        assert!(is_ftmv_set(&r.g_prime, &x, 1, false).unwrap().ok);
        let empty = witness_from_independent_set(&r, &p3, &VertexSet::new(3)).unwrap();
        assert_eq!(empty.len(), 12);
        assert!(witness_from_independent_set(&r, &p3, &VertexSet::from_vertices(3, [0, 1])).is_err());
    }

    #[test]
    fn c4_witness() {
        let c4 = cycle(4);
        let r = build_reduction(&c4, 2, 1).unwrap();
        assert_eq!(r.g_prime.order(), 40);
        let x = witness_from_independent_set(&r, &c4, &max_independent_set(&c4)).unwrap();
        assert_eq!(x.len(), 27);
        assert!(is_ftmv_set(&r.g_prime, &x, 1, false).unwrap().ok);
    }

    #[test]
    fn rejects_bad_sources() {
        assert!(build_reduction(&complete(4), 2, 1).is_err());
        assert!(build_reduction(&Graph::from_edges(3, [(0, 1)]).unwrap(), 2, 1).is_err());
        assert!(build_reduction(&path(3), 1, 1).is_err());
        assert!(build_reduction(&path(3), 2, 0).is_err());
    }

    #[test]
    fn sidecar() {
        let r = build_reduction(&path(3), 2, 1).unwrap();
        let text = r.roles_text();
        assert!(text.starts_with("0 V(0)\n1 V(1)\n2 V(2)\n3 A\n4 A\n5 A_e(0,1)\n"));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn gadget_sets_are_qualifying_cut_modules() {
        use crate::solver::{cut_modules_with, preprocess_cut_modules, LemmaReading};
        let r = build_reduction(&path(3), 2, 1).unwrap();
        let found = preprocess_cut_modules(&r.g_prime, 1).unwrap();
        for s in r.cut_module_sets() {
            assert!(found.contains(&s), "missing {s}");
        }
        // read per component, the isolated T vertices break the hypothesis for A
        let strict = cut_modules_with(&r.g_prime, 1, LemmaReading::PerComponent).unwrap();
        assert!(!strict.contains(&r.role_set(|x| x == Role::A)));
    }
}
