//! Closed forms for μ^k on the families where it is known, and structural
//! tests for the largest possible values.
//!
//! Anything outside a theorem's hypotheses comes back as
//! [`FormulaAnswer::unresolved`] rather than an extrapolated number. Every
//! answer carries a short source tag naming the result and case used.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{clique_number, Graph, VertexSet};
use crate::solver::{binomial, zarankiewicz_z22};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaAnswer {
    /// `None` when the case is open.
    pub value: Option<usize>,
    pub source: String,
}

impl FormulaAnswer {
    pub fn known(value: usize, source: impl Into<String>) -> Self {
        FormulaAnswer { value: Some(value), source: source.into() }
    }

    pub fn unresolved(source: impl Into<String>) -> Self {
        FormulaAnswer { value: None, source: source.into() }
    }
}

impl fmt::Display for FormulaAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "UNRESOLVED ({})", self.source),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Tree,
    Grid,
    Cylinder,
    Torus,
    Hamming,
    DirectComplete,
}

impl Family {
    /// Number of integer parameters the family takes.
    pub fn arity(self) -> usize {
        match self {
            Family::Path | Family::Cycle | Family::Tree => 1,
            _ => 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "tree" => Family::Tree,
            "grid" => Family::Grid,
            "cylinder" => Family::Cylinder,
            "torus" => Family::Torus,
            "hamming" => Family::Hamming,
            "direct_complete" | "dcomplete" => Family::DirectComplete,
            _ => return Err(Error::InvalidArgument(format!("unknown formula family `{s}`"))),
        })
    }
}

/// A closed-form query. Parameters: `path`/`cycle`: `[n]`; `tree`:
/// `[leaves]`; the products: `[m, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaQuery {
    pub family: Family,
    pub params: Vec<usize>,
    pub k: usize,
}

pub fn evaluate(q: &FormulaQuery) -> Result<FormulaAnswer> {
    if q.params.len() != q.family.arity() {
        return Err(Error::InvalidArgument(format!(
            "{:?} takes {} parameter(s), got {}",
            q.family,
            q.family.arity(),
            q.params.len()
        )));
    }
    let p = &q.params;
    let k = q.k;
    match q.family {
        Family::Path => {
            let n = p[0];
            if n == 0 {
                return Err(Error::InvalidArgument("path needs n >= 1".into()));
            }
            Ok(FormulaAnswer::known(mu_grid(1, n, k)?, if n == 1 { "single vertex" } else { "tree: paths" }))
        }
        Family::Cycle => Ok(FormulaAnswer::known(mu_cycle(p[0], k)?, if k == 0 { "cycle k=0" } else { "cycle k>=1" })),
        Family::Tree => {
            if p[0] < 2 {
                return Err(Error::InvalidArgument("a tree with n >= 2 has at least two leaves".into()));
            }
            Ok(if k == 0 {
                FormulaAnswer::known(p[0], "tree k=0: leaf count")
            } else {
                FormulaAnswer::known(2, "tree k>=1")
            })
        }
        Family::Grid => Ok(FormulaAnswer::known(mu_grid(p[0], p[1], k)?, grid_case(p[0], p[1], k))),
        Family::Cylinder => mu_cylinder(p[0], p[1], k),
        Family::Torus => {
            let (m, n) = (p[0].min(p[1]), p[0].max(p[1]));
            if m == 3 {
                Ok(FormulaAnswer::known(mu_torus_c3(n, k)?, "torus C3xCn"))
            } else {
                mu_torus(m, n, k)
            }
        }
        Family::Hamming => mu_hamming(p[0], p[1], k),
        Family::DirectComplete => mu_direct_complete(p[0], p[1], k),
    }
}

pub fn mu_cycle(n: usize, k: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(if k == 0 || n == 3 { 3 } else { 2 })
}

fn grid_case(m: usize, n: usize, k: usize) -> &'static str {
    match (m.min(n), k) {
        (1, _) if m.max(n) == 1 => "single vertex",
        (1, _) => "tree: paths",
        (_, 0) => "grid k=0",
        (_, 1) => "grid k=1",
        _ => "grid k>=2",
    }
}

/// μ^k(P_m □ P_n); argument order does not matter.
pub fn mu_grid(m: usize, n: usize, k: usize) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
    }
    let (m, n) = (m.min(n), m.max(n));
    Ok(match (m, n, k) {
        (1, 1, _) => 1,
        (1, _, _) => 2,
        (_, _, 0) => 2 * m,
        (_, _, 1) => m,
        _ => 2,
    })
}

/// μ^k(P_m □ C_n) for `k >= 1`; `k = 0` is open.
pub fn mu_cylinder(m: usize, n: usize, k: usize) -> Result<FormulaAnswer> {
    if m < 2 || n < 3 {
        return Err(Error::InvalidArgument(format!("cylinder needs m >= 2 and n >= 3, got {m}x{n}")));
    }
    Ok(match k {
        0 => FormulaAnswer::unresolved("cylinder k=0 is open"),
        _ if n == 3 => FormulaAnswer::known(3, "cylinder n=3"),
        1 if n.is_multiple_of(2) => FormulaAnswer::known((2 * m).min(n), "cylinder k=1, n even"),
        1 => FormulaAnswer::known(3.max(m.min(n)), "cylinder k=1, n odd"),
        _ => FormulaAnswer::known(2, "cylinder k>=2"),
    })
}

/// μ^k(C_3 □ C_n).
pub fn mu_torus_c3(n: usize, k: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("C3 x Cn needs n >= 3, got {n}")));
    }
    Ok(match k {
        0 if n >= 6 => 9,
        0 if n >= 4 => 7,
        0 => 6,
        1 if n.is_multiple_of(2) => 6,
        1 => 4,
        _ => 3,
    })
}

/// μ^k(C_m □ C_n) for `m, n >= 4` (either order); `k = 0` is open.
pub fn mu_torus(m: usize, n: usize, k: usize) -> Result<FormulaAnswer> {
    let (m, n) = (m.min(n), m.max(n));
    if m < 4 {
        return Err(Error::InvalidArgument(format!(
            "torus formula needs both cycles of length >= 4 (got {m}); use mu_torus_c3 for C3 or the solver"
        )));
    }
    let even = |x: usize| x.is_multiple_of(2);
    Ok(match k {
        0 => FormulaAnswer::unresolved("torus k=0 is open"),
        1 => {
            // cases are tried in order; the first match wins
            let v = if m == 4 && !even(n) {
                6
            } else if m >= 5 && !even(n) {
                m
            } else if !even(m) && even(n) && n < 2 * m {
                n
            } else {
                2 * m
            };
            FormulaAnswer::known(v, "torus k=1")
        }
        2 => FormulaAnswer::known(
            match (even(m), even(n)) {
                (true, true) => 4,
                (false, false) => 2,
                _ => 3,
            },
            "torus k=2",
        ),
        _ => FormulaAnswer::known(2, "torus k>=3"),
    })
}

/// μ^k(K_m □ K_n).
pub fn mu_hamming(m: usize, n: usize, k: usize) -> Result<FormulaAnswer> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("Hamming graph needs m, n >= 2, got {m},{n}")));
    }
    Ok(match k {
        0 => match zarankiewicz_z22(m, n) {
            Ok(z) => FormulaAnswer::known(z, "hamming k=0: z(m,n;2,2)"),
            Err(_) => FormulaAnswer::unresolved("hamming k=0: z(m,n;2,2) beyond exact search"),
        },
        1 => FormulaAnswer::known(m + n - 2, "hamming k=1"),
        _ => FormulaAnswer::known(m.max(n), "hamming k>=2"),
    })
}

/// Published values of μ^k(K_m × K_n) for 3 ≤ m ≤ n ≤ 5, indexed by k;
/// the last entry holds for every larger k. `ftmv table1` recomputes them.
pub const TABLE1: [(usize, usize, &[usize]); 6] = [
    (3, 3, &[6, 4, 3]),
    (3, 4, &[9, 8, 6, 4, 3]),
    (4, 4, &[12, 12, 10, 9, 6, 4]),
    (3, 5, &[12, 10, 10, 8, 5, 5, 3]),
    (4, 5, &[16, 16, 15, 13, 12, 10, 8, 6, 5, 4]),
    (5, 5, &[21, 20, 20, 17, 17, 16, 13, 12, 10, 9, 6, 5]),
];

pub fn table1_row(m: usize, n: usize) -> Option<&'static [usize]> {
    let (m, n) = (m.min(n), m.max(n));
    TABLE1.iter().find(|&&(a, b, _)| (a, b) == (m, n)).map(|&(_, _, row)| row)
}

/// μ^k(K_m × K_n).
pub fn mu_direct_complete(m: usize, n: usize, k: usize) -> Result<FormulaAnswer> {
    if m < 2 || n < 2 || (m, n) == (2, 2) {
        return Err(Error::InvalidArgument(format!(
            "K_m x K_n needs m, n >= 2 and is disconnected for 2x2, got {m}x{n}"
        )));
    }
    if m >= k + 5 && n >= k + 5 {
        return Ok(FormulaAnswer::known(m * n - 4 - k, "direct complete: mn-4-k"));
    }
    if let Some(row) = table1_row(m, n) {
        let v = row[k.min(row.len() - 1)];
        return Ok(FormulaAnswer::known(v, format!("table1 K{}xK{}", m.min(n), m.max(n))));
    }
    Ok(FormulaAnswer::unresolved("direct complete with min(m,n) <= k+4 is open"))
}

/// μ^k of a tree.
pub fn mu_tree(t: &Graph, k: usize) -> Result<usize> {
    if !t.is_tree() || t.order() < 2 {
        return Err(Error::InvalidArgument("expected a tree on at least 2 vertices".into()));
    }
    Ok(if k == 0 { (0..t.order()).filter(|&v| t.degree(v) == 1).count() } else { 2 })
}

/// For `k >= ℓ`, μ^k(G) = n − ℓ exactly when ω(G) = n − ℓ; this evaluates
/// the right-hand side.
pub fn classify_large(g: &Graph, k: usize, l: usize) -> Result<bool> {
    if k < l {
        return Err(Error::InvalidArgument(format!("needs k >= l, got k = {k}, l = {l}")));
    }
    g.require_connected()?;
    Ok(g.order().checked_sub(l) == Some(clique_number(g)))
}

/// Membership in the family of graphs with μ^k = n − k − 1: ω ≤ n − k − 1
/// and some (k+1)-set `W` is adjacent to every non-universal vertex of
/// `G − W`.
pub fn is_in_h_family(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("the family is defined for k >= 1".into()));
    }
    g.require_connected()?;
    let n = g.order();
    if n < k + 2 {
        return Err(Error::InvalidArgument(format!("needs n >= k + 2, got n = {n}, k = {k}")));
    }
    if k >= 2 && n > 20 {
        return Err(Error::TooLarge(format!("subset enumeration guarded at n <= 20, got {n}")));
    }
    if binomial(n, k + 1) > 5_000_000 {
        return Err(Error::TooLarge(format!("too many {}-subsets of {n} vertices", k + 1)));
    }
    if clique_number(g) > n - k - 1 {
        return Ok(false);
    }
    let size = k + 1;
    let mut comb: Vec<usize> = (0..size).collect();
    loop {
        let w = VertexSet::from_vertices(n, comb.iter().copied());
        let rest = w.complement();
        let h_order = rest.len();
        let fits = rest.iter().all(|v| {
            let inside = g.neighbor_set(v).intersection_len(&rest);
            inside + 1 == h_order || w.is_subset(g.neighbor_set(v))
        });
        if fits {
            return Ok(true);
        }
        let Some(i) = (0..size).rev().find(|&i| comb[i] < n - size + i) else { break };
        comb[i] += 1;
        for j in i + 1..size {
            comb[j] = comb[j - 1] + 1;
        }
    }
    Ok(false)
}
