//! Deterministic constructors for the graph families used throughout the
//! toolkit, and the textual spec grammar the CLI accepts.
//!
//! Labelings (all 0-based):
//!
//! * `path:n`: `0 - 1 - … - (n-1)`.
//! * `cycle:n`: the path plus the edge `(n-1) - 0`.
//! * `kbip:m,n`: sides `0..m` and `m..m+n`; `star:n` is `kbip:1,n` (center `0`).
//! * `petersen`: outer 5-cycle on `0..5`, inner pentagram `5+i ~ 5+(i+2)%5`,
//!   spokes `i ~ 5+i`.
//! * Products over factors of orders `a` and `b`: vertex `(i, j)` is `i·b + j`
//!   (row-major). `grid:m×n` is `P_m □ P_n`, `cylinder:m×n` is `P_m □ C_n`,
//!   `torus:m×n` is `C_m □ C_n`, `hamming:m,n` is `K_m □ K_n` and
//!   `dcomplete:m,n` is `K_m × K_n`. A 1-based coordinate `(i, j)` from the
//!   literature is vertex `(i-1)·b + (j-1)`.
//! * `hml:m,l`: `x = 0`, `y = 1`, copy `c` of `P_m` on `2 + c·m .. 2 + (c+1)·m`.
//! * `cmn:m,n` / `gmn:m,n`: the first factor (`C_m` resp. `K_m`) on `0..m`,
//!   the second cycle `0, 1, m, m+1, …, m+n-3`; the shared edge is `0 - 1`.
//! * `k33e`: `K_{3,3}` on sides `{0,1,2}` and `{3,4,5}` without the edge `0 - 3`.
//! * `hfam:n,k,seed=s`: see [`generate_h_family`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{clique_number, parse_graph, Graph, GraphBuilder, VertexSet};

/// A parsed graph-family descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Petersen,
    Cartesian(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Direct(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Grid(usize, usize),
    Cylinder(usize, usize),
    Torus(usize, usize),
    Hamming(usize, usize),
    DirectComplete(usize, usize),
    Hml(usize, usize),
    Cmn(usize, usize),
    Gmn(usize, usize),
    HFamily { n: usize, k: usize, seed: u64 },
    K33MinusE,
    File(String),
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        match self {
            Path(n) => write!(f, "path:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(m, n) => write!(f, "kbip:{m},{n}"),
            Star(n) => write!(f, "star:{n}"),
            Petersen => write!(f, "petersen"),
            Cartesian(a, b) => write!(f, "cart({a},{b})"),
            Direct(a, b) => write!(f, "dir({a},{b})"),
            Grid(m, n) => write!(f, "grid:{m}x{n}"),
            Cylinder(m, n) => write!(f, "cylinder:{m}x{n}"),
            Torus(m, n) => write!(f, "torus:{m}x{n}"),
            Hamming(m, n) => write!(f, "hamming:{m},{n}"),
            DirectComplete(m, n) => write!(f, "dcomplete:{m},{n}"),
            Hml(m, l) => write!(f, "hml:{m},{l}"),
            Cmn(m, n) => write!(f, "cmn:{m},{n}"),
            Gmn(m, n) => write!(f, "gmn:{m},{n}"),
            HFamily { n, k, seed } => write!(f, "hfam:{n},{k},seed={seed}"),
            K33MinusE => write!(f, "k33e"),
            File(p) => write!(f, "file:{p}"),
        }
    }
}

fn spec_err(spec: &str, message: impl Into<String>) -> Error {
    Error::InvalidSpec { spec: spec.to_string(), message: message.into() }
}

fn parse_params(spec: &str, body: &str, sep: char, count: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = body.split(sep).collect();
    if parts.len() != count {
        return Err(spec_err(spec, format!("expected {count} parameter(s) separated by `{sep}`")));
    }
    parts.iter().map(|p| p.trim().parse::<usize>().map_err(|_| spec_err(spec, format!("bad integer `{p}`")))).collect()
}

impl std::str::FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for (prefix, is_cart) in [("cart(", true), ("dir(", false)] {
            if let Some(inner) = s.strip_prefix(prefix) {
                let inner = inner.strip_suffix(')').ok_or_else(|| spec_err(s, "missing `)`"))?;
                let (a, b) = split_product_args(inner).ok_or_else(|| spec_err(s, "expected two factor specs"))?;
                return Ok(if is_cart {
                    GeneratorSpec::Cartesian(Box::new(a), Box::new(b))
                } else {
                    GeneratorSpec::Direct(Box::new(a), Box::new(b))
                });
            }
        }
        match s {
            "petersen" => return Ok(GeneratorSpec::Petersen),
            "k33e" => return Ok(GeneratorSpec::K33MinusE),
            _ => {}
        }
        let (name, body) = s.split_once(':').ok_or_else(|| spec_err(s, "unknown family"))?;
        let one = |sep| parse_params(s, body, sep, 1).map(|v| v[0]);
        let two = |sep| parse_params(s, body, sep, 2).map(|v| (v[0], v[1]));
        use GeneratorSpec::*;
        Ok(match name {
            "path" => Path(one(',')?),
            "cycle" => Cycle(one(',')?),
            "complete" => Complete(one(',')?),
            "star" => Star(one(',')?),
            "kbip" => two(',').map(|(m, n)| CompleteBipartite(m, n))?,
            "grid" => two('x').map(|(m, n)| Grid(m, n))?,
            "cylinder" => two('x').map(|(m, n)| Cylinder(m, n))?,
            "torus" => two('x').map(|(m, n)| Torus(m, n))?,
            "hamming" => two(',').map(|(m, n)| Hamming(m, n))?,
            "dcomplete" => two(',').map(|(m, n)| DirectComplete(m, n))?,
            "hml" => two(',').map(|(m, l)| Hml(m, l))?,
            "cmn" => two(',').map(|(m, n)| Cmn(m, n))?,
            "gmn" => two(',').map(|(m, n)| Gmn(m, n))?,
            "hfam" => parse_hfam(s, body)?,
            "file" if !body.is_empty() => File(body.to_string()),
            _ => return Err(spec_err(s, "unknown family")),
        })
    }
}

fn parse_hfam(spec: &str, body: &str) -> Result<GeneratorSpec> {
    let parts: Vec<&str> = body.split(',').collect();
    let [n, k, seed] = parts.as_slice() else {
        return Err(spec_err(spec, "expected `hfam:<n>,<k>,seed=<s>`"));
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| spec_err(spec, format!("bad integer `{t}`")));
    let seed = seed
        .trim()
        .strip_prefix("seed=")
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or_else(|| spec_err(spec, "expected `seed=<integer>`"))?;
    Ok(GeneratorSpec::HFamily { n: num(n)?, k: num(k)?, seed })
}

// Tries every comma at parenthesis depth zero and keeps the first split where
// both sides parse, so factors like `kbip:3,3` need no quoting.
fn split_product_args(inner: &str) -> Option<(GeneratorSpec, GeneratorSpec)> {
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if let (Ok(a), Ok(b)) = (inner[..i].parse(), inner[i + 1..].parse()) {
                    return Some((a, b));
                }
            }
            _ => {}
        }
    }
    None
}

fn require(cond: bool, spec: &GeneratorSpec, message: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(spec_err(&spec.to_string(), message))
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    use GeneratorSpec::*;
    match spec {
        Path(n) => {
            require(*n >= 1, spec, "path needs n >= 1")?;
            Ok(path(*n))
        }
        Cycle(n) => {
            require(*n >= 3, spec, "cycle needs n >= 3")?;
            Ok(cycle(*n))
        }
        Complete(n) => {
            require(*n >= 1, spec, "complete graph needs n >= 1")?;
            Ok(complete(*n))
        }
        CompleteBipartite(m, n) => {
            require(*m >= 1 && *n >= 1, spec, "complete bipartite graph needs m, n >= 1")?;
            Ok(complete_bipartite(*m, *n))
        }
        Star(n) => {
            require(*n >= 1, spec, "star needs n >= 1")?;
            Ok(complete_bipartite(1, *n))
        }
        Petersen => Ok(petersen()),
        Cartesian(a, b) => Ok(cartesian(&generate(a)?, &generate(b)?)),
        Direct(a, b) => {
            let g = direct(&generate(a)?, &generate(b)?);
            require(g.is_connected(), spec, "direct product is disconnected")?;
            Ok(g)
        }
        Grid(m, n) => {
            require(*m >= 1 && *n >= 1, spec, "grid needs m, n >= 1")?;
            Ok(cartesian(&path(*m), &path(*n)))
        }
        Cylinder(m, n) => {
            require(*m >= 1 && *n >= 3, spec, "cylinder needs m >= 1, n >= 3")?;
            Ok(cartesian(&path(*m), &cycle(*n)))
        }
        Torus(m, n) => {
            require(*m >= 3 && *n >= 3, spec, "torus needs m, n >= 3")?;
            Ok(cartesian(&cycle(*m), &cycle(*n)))
        }
        Hamming(m, n) => {
            require(*m >= 1 && *n >= 1, spec, "Hamming graph needs m, n >= 1")?;
            Ok(cartesian(&complete(*m), &complete(*n)))
        }
        DirectComplete(m, n) => {
            require(
                *m >= 2 && *n >= 2 && (*m, *n) != (2, 2),
                spec,
                "K_m x K_n is connected only for m, n >= 2, not both 2",
            )?;
            Ok(direct(&complete(*m), &complete(*n)))
        }
        Hml(m, l) => generate_h_ml(*m, *l),
        Cmn(m, n) => generate_c_mn(*m, *n),
        Gmn(m, n) => generate_g_mn(*m, *n),
        HFamily { n, k, seed } => generate_h_family(*n, *k, *seed),
        K33MinusE => Ok(generate_k33_minus_e()),
        File(p) => parse_graph(&std::fs::read_to_string(p)?),
    }
}

/// Parses and builds in one step.
pub fn generate_str(spec: &str) -> Result<Graph> {
    generate(&spec.parse()?)
}

pub fn path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 1..n {
        b.add_edge(i - 1, i).unwrap();
    }
    b.build()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        b.add_edge(i, (i + 1) % n).unwrap();
    }
    b.build()
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut b = GraphBuilder::new(m + n);
    for u in 0..m {
        for v in m..m + n {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

pub fn petersen() -> Graph {
    let mut b = GraphBuilder::new(10);
    for i in 0..5 {
        b.add_edge(i, (i + 1) % 5).unwrap();
        b.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        b.add_edge(i, 5 + i).unwrap();
    }
    b.build()
}

/// `G □ H` with vertex `(i, j)` labeled `i·|H| + j`.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    let (a, bn) = (g.order(), h.order());
    let mut b = GraphBuilder::new(a * bn);
    for i in 0..a {
        for (j, jj) in h.edges() {
            b.add_edge(i * bn + j, i * bn + jj).unwrap();
        }
    }
    for (i, ii) in g.edges() {
        for j in 0..bn {
            b.add_edge(i * bn + j, ii * bn + j).unwrap();
        }
    }
    b.build()
}

/// `G × H` with vertex `(i, j)` labeled `i·|H| + j`.
pub fn direct(g: &Graph, h: &Graph) -> Graph {
    let bn = h.order();
    let mut b = GraphBuilder::new(g.order() * bn);
    for (i, ii) in g.edges() {
        for (j, jj) in h.edges() {
            b.add_edge(i * bn + j, ii * bn + jj).unwrap();
            b.add_edge(i * bn + jj, ii * bn + j).unwrap();
        }
    }
    b.build()
}

/// `H_{m,ℓ}`: a clique cut-set `{x, y} = {0, 1}` joined to `ℓ` disjoint copies of `P_m`.
pub fn generate_h_ml(m: usize, l: usize) -> Result<Graph> {
    if m < 4 || l < 2 {
        return Err(Error::InvalidArgument(format!("H_{{m,l}} needs m >= 4 and l >= 2, got m = {m}, l = {l}")));
    }
    let mut b = GraphBuilder::new(2 + l * m);
    b.add_edge(0, 1)?;
    for c in 0..l {
        let base = 2 + c * m;
        for i in 0..m {
            b.add_edge(0, base + i)?;
            b.add_edge(1, base + i)?;
            if i > 0 {
                b.add_edge(base + i - 1, base + i)?;
            }
        }
    }
    Ok(b.build())
}

// Appends a cycle of length n through the edge 0-1: 0, 1, m, m+1, ..., m+n-3.
fn glue_cycle_on_edge(b: &mut GraphBuilder, m: usize, n: usize) {
    let mut prev = 1;
    for v in m..m + n - 2 {
        b.add_edge(prev, v).unwrap();
        prev = v;
    }
    b.add_edge(prev, 0).unwrap();
}

/// `C_{m,n}`: cycles `C_m` and `C_n` sharing the edge `0 - 1`.
pub fn generate_c_mn(m: usize, n: usize) -> Result<Graph> {
    if m < 4 || n < 4 {
        return Err(Error::InvalidArgument(format!("C_{{m,n}} needs m, n >= 4, got m = {m}, n = {n}")));
    }
    let mut b = GraphBuilder::new(m + n - 2);
    for i in 0..m {
        b.add_edge(i, (i + 1) % m)?;
    }
    glue_cycle_on_edge(&mut b, m, n);
    Ok(b.build())
}

/// `G_{m,n}`: `K_m` and `C_n` sharing the edge `0 - 1`.
pub fn generate_g_mn(m: usize, n: usize) -> Result<Graph> {
    if m < 3 || n < 4 {
        return Err(Error::InvalidArgument(format!("G_{{m,n}} needs m >= 3, n >= 4, got m = {m}, n = {n}")));
    }
    let mut b = GraphBuilder::new(m + n - 2);
    for u in 0..m {
        for v in u + 1..m {
            b.add_edge(u, v)?;
        }
    }
    glue_cycle_on_edge(&mut b, m, n);
    Ok(b.build())
}

/// `K_{3,3}` minus the edge between the first vertex of each side.
pub fn generate_k33_minus_e() -> Graph {
    let mut b = GraphBuilder::new(6);
    for u in 0..3 {
        for v in 3..6 {
            if (u, v) != (0, 3) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Edges added between the `k + 1` new vertices `W` and the rest when
/// building a member of the `n,k` large-visibility family from a base graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HatExtras {
    /// Pairs `(i, j)` of indices into `W` (`0..=k`).
    pub within_w: Vec<(usize, usize)>,
    /// Pairs `(w, a)`: index into `W` and a universal vertex of the base graph.
    pub w_to_universal: Vec<(usize, usize)>,
}

/// Joins `k + 1` new vertices `W` (labeled `|H|..|H|+k+1`) to every
/// non-universal vertex of `base`, then adds the optional extra edges.
/// Checks that the result is connected and has clique number at most `|H|`.
pub fn h_hat(base: &Graph, k: usize, extras: &HatExtras) -> Result<Graph> {
    let h = base.order();
    let w = k + 1;
    let mut b = GraphBuilder::new(h + w);
    for (u, v) in base.edges() {
        b.add_edge(u, v)?;
    }
    let universal = universal_vertices(base);
    for v in 0..h {
        if !universal.contains(v) {
            for i in 0..w {
                b.add_edge(v, h + i)?;
            }
        }
    }
    for &(i, j) in &extras.within_w {
        if i >= w || j >= w {
            return Err(Error::InvalidArgument(format!("W index out of range in ({i}, {j})")));
        }
        b.add_edge(h + i, h + j)?;
    }
    for &(i, a) in &extras.w_to_universal {
        if i >= w || a >= h || !universal.contains(a) {
            return Err(Error::InvalidArgument(format!("({i}, {a}) is not a W-to-universal pair")));
        }
        b.add_edge(h + i, a)?;
    }
    let g = b.build();
    if !g.is_connected() {
        return Err(Error::Construction("result is not connected".into()));
    }
    if clique_number(&g) > h {
        return Err(Error::Construction(format!("clique number exceeds n - k - 1 = {h}")));
    }
    Ok(g)
}

/// Vertices adjacent to every other vertex.
pub fn universal_vertices(g: &Graph) -> VertexSet {
    let n = g.order();
    VertexSet::from_vertices(n, (0..n).filter(|&v| g.degree(v) + 1 == n))
}

const H_FAMILY_ATTEMPTS: u64 = 256;

/// Sub-seed for retry `attempt` of [`generate_h_family`].
pub fn derived_seed(seed: u64, attempt: u64) -> u64 {
    seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Pseudo-random member of the `n,k` family characterizing graphs with
/// `μ^k = n - k - 1`.
///
/// Each attempt seeds a ChaCha8 stream (`rand_chacha::ChaCha8Rng` through
/// `SeedableRng::seed_from_u64`) with [`derived_seed`]`(seed, attempt)`, then:
/// every pair of the `n - k - 1` base vertices becomes an edge with
/// probability 1/2 (pairs in lexicographic order); `W` is joined to all
/// non-universal base vertices; each `W-W` pair and each `W`-universal pair
/// (lexicographic order) is added with probability 1/2. The first attempt that
/// is connected with clique number at most `n - k - 1` is returned.
pub fn generate_h_family(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k < 1 || n < k + 2 {
        return Err(Error::InvalidArgument(format!("h_family needs k >= 1 and n >= k + 2, got n = {n}, k = {k}")));
    }
    let h = n - k - 1;
    let mut last = String::new();
    for attempt in 0..H_FAMILY_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, attempt));
        let mut b = GraphBuilder::new(h);
        for u in 0..h {
            for v in u + 1..h {
                if rng.gen_bool(0.5) {
                    b.add_edge(u, v)?;
                }
            }
        }
        let base = b.build();
        let universal = universal_vertices(&base);
        let mut extras = HatExtras::default();
        for i in 0..=k {
            for j in i + 1..=k {
                if rng.gen_bool(0.5) {
                    extras.within_w.push((i, j));
                }
            }
        }
        for i in 0..=k {
            for a in universal.iter() {
                if rng.gen_bool(0.5) {
                    extras.w_to_universal.push((i, a));
                }
            }
        }
        match h_hat(&base, k, &extras) {
            Ok(g) => return Ok(g),
            Err(Error::Construction(msg)) => last = msg,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Construction(format!("h_family({n}, {k}, seed = {seed}): retry budget exhausted; last failure: {last}")))
}

/// Connected graph on `n` vertices for seeded test corpora: a uniformly
/// random spanning tree (random attachment) plus each remaining pair with
/// probability `p`.
pub fn seeded_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        b.add_edge(u, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}
