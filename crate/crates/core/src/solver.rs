//! Exact μ^k by branch and bound, plus an exhaustive oracle and exact
//! Zarankiewicz numbers z(m,n;2,2).
//!
//! The search is the usual include/exclude enumeration over a fixed vertex
//! order. Because k-ftmv sets form a hereditary family, a candidate that
//! cannot be added to the current set can never be added to any superset,
//! so candidates are filtered eagerly (forward checking) and the bound
//! `|current| + |candidates|` stays tight.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{blocks, is_cut_module, max_clique, DistanceMatrix, Graph, VertexSet};
use crate::visibility::{FlowScratch, VisibilityOracle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub k: usize,
    pub time_limit: Option<Duration>,
    pub worker_count: usize,
    /// For `k >= 1`, solve each block separately and take the maximum.
    pub use_block_decomposition: bool,
    /// Never branch on vertices of qualifying minimal cut-modules
    /// (see [`preprocess_cut_modules`]).
    pub use_cut_module_preprocessing: bool,
    /// A known lower bound on the optimum; lets the search prune earlier.
    /// An invalid bound costs a second search but never a wrong answer.
    pub initial_lower_bound: Option<usize>,
    /// Caller asserts the graph is vertex-transitive, so some optimal set
    /// contains the first vertex of the branching order.
    pub assume_vertex_transitive: bool,
}

impl SolveConfig {
    pub fn new(k: usize) -> Self {
        SolveConfig {
            k,
            time_limit: None,
            worker_count: 1,
            use_block_decomposition: true,
            use_cut_module_preprocessing: false,
            initial_lower_bound: None,
            assume_vertex_transitive: false,
        }
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub bound_prunes: u64,
    pub violation_prunes: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
    pub stats: SolveStats,
    /// False only when the time limit stopped the search; `value` is then a
    /// lower bound.
    pub optimal: bool,
}

/// Computes μ^k(G) with a witness set.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveResult> {
    if cfg.worker_count == 0 {
        return Err(Error::InvalidArgument("worker_count must be at least 1".into()));
    }
    g.require_connected()?;
    let start = Instant::now();
    let deadline = cfg.time_limit.map(|t| start + t);
    let mut stats = SolveStats::default();

    let run = |floor: usize, stats: &mut SolveStats| -> Result<(Vec<usize>, bool)> {
        if cfg.k >= 1 && cfg.use_block_decomposition {
            solve_by_blocks(g, cfg, deadline, floor, stats)
        } else {
            solve_connected(g, cfg, deadline, floor, stats)
        }
    };
    let floor = cfg.initial_lower_bound.map_or(0, |lb| lb.saturating_sub(1));
    let (mut witness, mut optimal) = run(floor, &mut stats)?;
    if optimal && witness.len() <= floor {
        // the supplied bound was too high
        (witness, optimal) = run(0, &mut stats)?;
    }
    stats.elapsed = start.elapsed();
    let witness = VertexSet::from_vertices(g.order(), witness);
    assert!(
        VisibilityOracle::new(g)?.check_set(&witness, cfg.k, false).ok,
        "solver produced an invalid witness {witness}"
    );
    Ok(SolveResult { value: witness.len(), witness, stats, optimal })
}

fn solve_by_blocks(
    g: &Graph,
    cfg: &SolveConfig,
    deadline: Option<Instant>,
    floor: usize,
    stats: &mut SolveStats,
) -> Result<(Vec<usize>, bool)> {
    let decomposition = blocks(g)?;
    if decomposition.blocks.len() == 1 {
        return solve_connected(g, cfg, deadline, floor, stats);
    }
    let mut parts = decomposition.blocks;
    parts.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let mut best: Vec<usize> = Vec::new();
    let mut optimal = true;
    for block in parts {
        let threshold = floor.max(best.len());
        if block.len() <= threshold {
            continue;
        }
        let (h, map) = g.induced_subgraph(&block);
        let (w, opt) = solve_connected(&h, cfg, deadline, threshold, stats)?;
        optimal &= opt;
        if w.len() > best.len() {
            best = w.into_iter().map(|i| map[i]).collect();
        }
    }
    Ok((best, optimal))
}

fn branching_order(g: &Graph, excluded: &VertexSet) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).filter(|&v| !excluded.contains(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

// Exact search on a connected graph; only sets larger than `floor` matter.
fn solve_connected(
    g: &Graph,
    cfg: &SolveConfig,
    deadline: Option<Instant>,
    floor: usize,
    stats: &mut SolveStats,
) -> Result<(Vec<usize>, bool)> {
    let clique = max_clique(g).to_vec();
    if cfg.k >= g.max_degree() || clique.len() == g.order() {
        return Ok((clique, true));
    }
    let excluded = if cfg.use_cut_module_preprocessing {
        preprocess_cut_modules(g, cfg.k)?.iter().fold(VertexSet::new(g.order()), |acc, s| acc.union(s))
    } else {
        VertexSet::new(g.order())
    };
    let oracle = VisibilityOracle::new(g)?;
    let search = Search {
        g,
        oracle: &oracle,
        dm: oracle.distances(),
        k: cfg.k,
        symmetric: cfg.assume_vertex_transitive,
        parallel_depth: if cfg.worker_count > 1 { 2 } else { 0 },
        deadline,
        best: AtomicUsize::new(floor.max(clique.len())),
        incumbent: Mutex::new(clique),
        aborted: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        bound_prunes: AtomicU64::new(0),
        violation_prunes: AtomicU64::new(0),
    };
    let order = branching_order(g, &excluded);
    let root = VertexSet::new(g.order());
    if cfg.worker_count > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start workers: {e}")))?;
        pool.install(|| search.expand(&root, &[], &order, 0));
    } else {
        search.expand(&root, &[], &order, 0);
    }
    stats.nodes += search.nodes.into_inner();
    stats.bound_prunes += search.bound_prunes.into_inner();
    stats.violation_prunes += search.violation_prunes.into_inner();
    let optimal = !search.aborted.into_inner();
    Ok((search.incumbent.into_inner().unwrap(), optimal))
}

struct Search<'a> {
    g: &'a Graph,
    oracle: &'a VisibilityOracle<'a>,
    dm: &'a DistanceMatrix,
    k: usize,
    symmetric: bool,
    parallel_depth: usize,
    deadline: Option<Instant>,
    best: AtomicUsize,
    incumbent: Mutex<Vec<usize>>,
    aborted: AtomicBool,
    nodes: AtomicU64,
    bound_prunes: AtomicU64,
    violation_prunes: AtomicU64,
}

#[derive(Default)]
struct Local {
    scratch: FlowScratch,
    nodes: u64,
    bound_prunes: u64,
    violation_prunes: u64,
}

impl Search<'_> {
    fn flush(&self, local: &mut Local) {
        self.nodes.fetch_add(std::mem::take(&mut local.nodes), Ordering::Relaxed);
        self.bound_prunes.fetch_add(std::mem::take(&mut local.bound_prunes), Ordering::Relaxed);
        self.violation_prunes.fetch_add(std::mem::take(&mut local.violation_prunes), Ordering::Relaxed);
    }

    fn offer(&self, set: &[usize]) {
        if set.len() <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut inc = self.incumbent.lock().unwrap();
        if set.len() > self.best.load(Ordering::Relaxed) {
            self.best.store(set.len(), Ordering::Relaxed);
            inc.clear();
            inc.extend_from_slice(set);
        }
    }

    fn expand(&self, x: &VertexSet, xs: &[usize], cand: &[usize], depth: usize) {
        let branches = if self.symmetric && depth == 0 { cand.len().min(1) } else { cand.len() };
        if depth < self.parallel_depth {
            (0..branches).into_par_iter().for_each(|i| {
                let mut local = Local::default();
                self.branch(&mut local, x, xs, cand, i, depth);
                self.flush(&mut local);
            });
        } else {
            let mut local = Local::default();
            for i in 0..branches {
                if !self.branch(&mut local, x, xs, cand, i, depth) {
                    break;
                }
            }
            self.flush(&mut local);
        }
    }

    // Explores "include cand[i], exclude cand[..i]". Returns false once no
    // later sibling can improve on the incumbent.
    fn branch(&self, local: &mut Local, x: &VertexSet, xs: &[usize], cand: &[usize], i: usize, depth: usize) -> bool {
        if xs.len() + cand.len() - i <= self.best.load(Ordering::Relaxed) {
            local.bound_prunes += 1;
            return false;
        }
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        local.nodes += 1;
        if local.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        let c = cand[i];
        let mut next_x = x.clone();
        next_x.insert(c);
        let mut next_xs = xs.to_vec();
        next_xs.push(c);
        self.offer(&next_xs);

        let tight = self.tight_pairs(local, &next_x, xs, c);
        let rest = &cand[i + 1..];
        let mut probe = next_x.clone();
        let next_cand: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&w| {
                let ok = self.compatible(local, &next_x, &mut probe, xs, c, w, &tight);
                if !ok {
                    local.violation_prunes += 1;
                }
                ok
            })
            .collect();
        if next_xs.len() + next_cand.len() > self.best.load(Ordering::Relaxed) {
            if depth + 1 < self.parallel_depth {
                self.expand(&next_x, &next_xs, &next_cand, depth + 1);
            } else {
                self.expand_local(local, &next_x, &next_xs, &next_cand);
            }
        } else {
            local.bound_prunes += 1;
        }
        true
    }

    fn expand_local(&self, local: &mut Local, x: &VertexSet, xs: &[usize], cand: &[usize]) {
        for i in 0..cand.len() {
            if !self.branch(local, x, xs, cand, i, usize::MAX / 2) {
                break;
            }
        }
    }

    fn count(&self, local: &mut Local, forb: &VertexSet, a: usize, b: usize, cap: usize) -> usize {
        self.oracle.count_with(forb, a, b, cap, &mut local.scratch)
    }

    fn inside(&self, w: usize, a: usize, b: usize) -> bool {
        w != a && w != b && self.dm.interval(a, b).contains(w)
    }

    // Non-adjacent pairs of x' = x + c whose clear-path count may have just
    // dropped and which now have no slack: one more blocked interval vertex
    // could break them.
    fn tight_pairs(&self, local: &mut Local, next_x: &VertexSet, xs: &[usize], c: usize) -> Vec<(usize, usize)> {
        let need = self.k + 1;
        let mut tight = Vec::new();
        let g = self.g;
        for (j, &a) in xs.iter().enumerate() {
            if !g.has_edge(a, c) && self.count(local, next_x, a, c, need + 1) == need {
                tight.push((a, c));
            }
            for &b in &xs[j + 1..] {
                if !g.has_edge(a, b) && self.inside(c, a, b) && self.count(local, next_x, a, b, need + 1) == need {
                    tight.push((a, b));
                }
            }
        }
        tight
    }

    // Whether x' + w is k-ftmv, given that x' = x + c is and that x + w is.
    #[allow(clippy::too_many_arguments)]
    fn compatible(
        &self,
        local: &mut Local,
        next_x: &VertexSet,
        probe: &mut VertexSet,
        xs: &[usize],
        c: usize,
        w: usize,
        tight: &[(usize, usize)],
    ) -> bool {
        let need = self.k + 1;
        let g = self.g;
        if !g.has_edge(c, w) && self.count(local, next_x, c, w, need) < need {
            return false;
        }
        for &y in xs {
            if !g.has_edge(w, y) && self.inside(c, w, y) && self.count(local, next_x, w, y, need) < need {
                return false;
            }
        }
        for &(a, b) in tight {
            if self.inside(w, a, b) {
                if self.dm.dist(a, b) == 2 {
                    return false;
                }
                probe.insert(w);
                let enough = self.count(local, probe, a, b, need) >= need;
                probe.remove(w);
                if !enough {
                    return false;
                }
            }
        }
        true
    }
}

/// μ^k by exhaustive enumeration; the independent oracle for [`solve`].
pub fn solve_brute(g: &Graph, k: usize) -> Result<usize> {
    solve_brute_witness(g, k).map(|w| w.len())
}

/// Like [`solve_brute`], returning the lexicographically first optimal set.
pub fn solve_brute_witness(g: &Graph, k: usize) -> Result<VertexSet> {
    if g.order() > 20 {
        return Err(Error::TooLarge(format!("exhaustive search needs n <= 20, got {}", g.order())));
    }
    let oracle = VisibilityOracle::new(g)?;
    fn dfs(o: &VisibilityOracle, k: usize, from: usize, x: &mut VertexSet, best: &mut VertexSet) {
        if x.len() > best.len() {
            *best = x.clone();
        }
        for v in from..o.graph().order() {
            x.insert(v);
            // supersets of a violating set violate too
            if o.check_set(x, k, false).ok {
                dfs(o, k, v + 1, x, best);
            }
            x.remove(v);
        }
    }
    let mut best = VertexSet::new(g.order());
    dfs(&oracle, k, 0, &mut VertexSet::new(g.order()), &mut best);
    Ok(best)
}

/// z(m,n;2,2): the most ones in an `m × n` 0/1 matrix with no all-ones
/// 2×2 submatrix.
pub fn zarankiewicz_z22(m: usize, n: usize) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
    }
    if m > 7 || n > 7 {
        return Err(Error::TooLarge(format!("exact search supports m, n <= 7, got {m} x {n}")));
    }
    // Column pairs are bits of a u32 (at most 21 pairs).
    let mut pair_index = [[0u32; 7]; 7];
    let mut idx = 0;
    for (a, row) in pair_index.iter_mut().enumerate().take(n) {
        for slot in &mut row[a + 1..n] {
            *slot = idx;
            idx += 1;
        }
    }
    let total_pairs = idx as usize;
    let rows: Vec<(u32, u32, usize)> = (0u32..1 << n)
        .map(|r| {
            let cols: Vec<usize> = (0..n).filter(|&c| r >> c & 1 == 1).collect();
            let mut pairs = 0u32;
            for (i, &a) in cols.iter().enumerate() {
                for &b in &cols[i + 1..] {
                    pairs |= 1 << pair_index[a][b];
                }
            }
            (r, pairs, cols.len())
        })
        .collect();
    // cap[r][p]: most ones in r rows using at most p column pairs
    let mut cap = vec![vec![0usize; total_pairs + 1]; m + 1];
    for r in 1..=m {
        for p in 0..=total_pairs {
            cap[r][p] = (0..=n)
                .filter(|w| w * w.saturating_sub(1) / 2 <= p)
                .map(|w| w + cap[r - 1][p - w * w.saturating_sub(1) / 2])
                .max()
                .unwrap();
        }
    }

    struct Z<'a> {
        rows: &'a [(u32, u32, usize)],
        cap: &'a [Vec<usize>],
        m: usize,
        total_pairs: usize,
        best: usize,
    }
    impl Z<'_> {
        // Rows are placed in nonincreasing slot order, so each multiset of
        // rows is visited once.
        fn go(&mut self, placed: usize, max_slot: usize, used: u32, ones: usize) {
            self.best = self.best.max(ones);
            if placed == self.m {
                return;
            }
            let free = self.total_pairs - used.count_ones() as usize;
            if ones + self.cap[self.m - placed][free] <= self.best {
                return;
            }
            for s in (0..=max_slot).rev() {
                let (_, pairs, w) = self.rows[s];
                if pairs & used == 0 {
                    self.go(placed + 1, s, used | pairs, ones + w);
                }
            }
        }
    }
    let mut best = 0;
    // Permuting columns, a heaviest row (weight w) may be assumed to fill the
    // top w columns; every other row then has weight at most w and a smaller
    // or equal pattern.
    for w in (0..=n).rev() {
        let top = ((1u32 << w) - 1) << (n - w);
        let lighter: Vec<(u32, u32, usize)> = rows.iter().copied().filter(|&(_, _, rw)| rw <= w).collect();
        let slot = lighter.iter().position(|&(r, _, _)| r == top).unwrap();
        let mut z = Z { rows: &lighter, cap: &cap, m, total_pairs, best };
        z.go(1, slot, lighter[slot].1, w);
        best = z.best;
    }
    Ok(best)
}

/// How the neighbourhood condition on cut-modules is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaReading {
    /// Every component `H` of `G − S` has more than `k` vertices in `N(S)`.
    PerComponent,
    /// For every component `H` of `G − S`, more than `k` vertices of `N(S)`
    /// lie outside `H`: whichever component a set avoids, enough replacement
    /// vertices remain in the others.
    Complement,
}

/// Whether the cut-module `s` satisfies the neighbourhood hypothesis.
pub fn satisfies_lemma_hypothesis(g: &Graph, s: &VertexSet, k: usize, reading: LemmaReading) -> Result<bool> {
    g.require_connected()?;
    let mut nbhd = VertexSet::new(g.order());
    for v in s.iter() {
        nbhd.union_with(g.neighbor_set(v));
    }
    nbhd.difference_with(s);
    Ok(g.components_avoiding(s).iter().all(|h| {
        let inside = h.iter().filter(|&&v| nbhd.contains(v)).count();
        match reading {
            LemmaReading::PerComponent => inside > k,
            LemmaReading::Complement => nbhd.len() - inside > k,
        }
    }))
}

/// Minimal cut-modules of size `k + 1` satisfying the neighbourhood
/// hypothesis under [`LemmaReading::Complement`].
pub fn preprocess_cut_modules(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    cut_modules_with(g, k, LemmaReading::Complement)
}

pub fn cut_modules_with(g: &Graph, k: usize, reading: LemmaReading) -> Result<Vec<VertexSet>> {
    g.require_connected()?;
    let n = g.order();
    let size = k + 1;
    if size >= n {
        return Ok(Vec::new());
    }
    if binomial(n, size) > 2_000_000 {
        return Err(Error::TooLarge(format!("too many {size}-subsets of {n} vertices to enumerate")));
    }
    let mut out = Vec::new();
    let mut comb: Vec<usize> = (0..size).collect();
    loop {
        let s = VertexSet::from_vertices(n, comb.iter().copied());
        if is_cut_module(g, &s)? && is_minimal(g, &comb)? && satisfies_lemma_hypothesis(g, &s, k, reading)? {
            out.push(s);
        }
        // next combination in lexicographic order
        let Some(i) = (0..size).rev().find(|&i| comb[i] < n - size + i) else { break };
        comb[i] += 1;
        for j in i + 1..size {
            comb[j] = comb[j - 1] + 1;
        }
    }
    Ok(out)
}

fn is_minimal(g: &Graph, members: &[usize]) -> Result<bool> {
    let full = (1u64 << members.len()) - 1;
    for mask in 1..full {
        let sub = VertexSet::from_vertices(
            g.order(),
            members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v),
        );
        if is_cut_module(g, &sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}
