mod common;

use common::*;
use ftmv::formulas::{classify_large, is_in_h_family, mu_tree};
use ftmv::generators::{generate_h_ml, generate_str, seeded_connected};
use ftmv::graph::{clique_number, convex_hull, diameter};
use ftmv::reduction::build_reduction;
use ftmv::solver::{preprocess_cut_modules, solve, solve_brute, zarankiewicz_z22, SolveConfig};
use ftmv::visibility::{incremental_recheck_targets, is_ftmv_set, max_disjoint_clear_paths};
use ftmv::{Graph, GraphBuilder, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mu(g: &Graph, k: usize) -> usize {
    solve(g, &SolveConfig::new(k)).unwrap().value
}

fn random_subset(n: usize, rng: &mut ChaCha8Rng, p: f64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|_| rng.gen_bool(p)))
}

#[test]
fn clear_path_counts_match_geodesic_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in small_corpus() {
        let n = g.order();
        let mut forbidden = vec![VertexSet::new(n), VertexSet::full(n)];
        forbidden.extend((0..3).map(|_| random_subset(n, &mut rng, 0.3)));
        for x in &forbidden {
            for u in 0..n {
                for v in u + 1..n {
                    let want = oracle_max_disjoint(&g, x, u, v);
                    for cap in [1, 2, 3, 4, n.max(1)] {
                        let got = max_disjoint_clear_paths(&g, x, u, v, cap).unwrap();
                        assert_eq!(got, want.min(cap), "{name}: x={x} pair ({u},{v}) cap {cap}");
                    }
                }
            }
        }
    }
}

#[test]
fn brute_force_matches_subset_enumeration() {
    for (name, g) in small_corpus().into_iter().filter(|(_, g)| g.order() <= 7) {
        for k in 0..3 {
            assert_eq!(solve_brute(&g, k).unwrap(), oracle_mu(&g, k), "{name}, k={k}");
        }
    }
}

#[test]
fn solver_matches_brute_force_up_to_ten_vertices() {
    for (name, g) in medium_corpus() {
        for k in 0..=3 {
            let r = solve(&g, &SolveConfig::new(k)).unwrap();
            assert!(r.optimal);
            assert_eq!(r.value, solve_brute(&g, k).unwrap(), "{name}, k={k}");
            assert_eq!(r.witness.len(), r.value);
            assert!(is_ftmv_set(&g, &r.witness, k, false).unwrap().ok);
        }
    }
}

#[test]
fn solver_bounds_and_monotonicity() {
    for (name, g) in medium_corpus() {
        let omega = clique_number(&g);
        assert_eq!(omega, brute_clique_number(&g), "{name}");
        let values: Vec<usize> = (0..=4).map(|k| mu(&g, k)).collect();
        for k in 0..values.len() {
            assert!(values[k] >= omega, "{name}: clique bound at k={k}");
            assert!(values[k] <= g.order());
            if k > 0 {
                assert!(values[k] <= values[k - 1], "{name}: not monotone at k={k}");
            }
        }
        // k >= Δ forces the clique number; check against the oracle, not the shortcut
        let delta = g.max_degree();
        assert_eq!(solve_brute(&g, delta).unwrap(), omega, "{name}: k = Δ");
    }
}

#[test]
fn block_decomposition_does_not_change_values() {
    let mut corpus = medium_corpus();
    corpus.extend(named(&["hml:4,3", "gmn:4,6", "cmn:4,7", "star:6"]));
    for (name, g) in corpus {
        for k in 1..=3 {
            let mut off = SolveConfig::new(k);
            off.use_block_decomposition = false;
            assert_eq!(mu(&g, k), solve(&g, &off).unwrap().value, "{name}, k={k}");
        }
    }
}

#[test]
fn worker_count_does_not_change_values() {
    for (name, g) in medium_corpus().into_iter().step_by(3) {
        for k in 0..=2 {
            let one = solve(&g, &SolveConfig::new(k)).unwrap();
            let again = solve(&g, &SolveConfig::new(k)).unwrap();
            assert_eq!(one.witness, again.witness, "{name}: witness not deterministic");
            let many = solve(&g, &SolveConfig::new(k).workers(3)).unwrap();
            assert_eq!(one.value, many.value, "{name}, k={k}");
        }
    }
}

#[test]
fn symmetry_flag_agrees_with_plain_search() {
    let transitive = [
        "cycle:5",
        "cycle:12",
        "complete:6",
        "kbip:3,3",
        "kbip:5,5",
        "petersen",
        "torus:3x3",
        "torus:3x4",
        "hamming:3,3",
        "hamming:3,4",
        "hamming:2,6",
        "dcomplete:3,3",
        "dcomplete:3,4",
        "cart(cycle:3,cycle:4)",
        "cart(complete:2,cycle:6)",
    ];
    for (name, g) in named(&transitive) {
        assert!(g.order() <= 12);
        for k in 0..=4 {
            let mut sym = SolveConfig::new(k);
            sym.assume_vertex_transitive = true;
            assert_eq!(solve(&g, &sym).unwrap().value, mu(&g, k), "{name}, k={k}");
        }
    }
}

#[test]
fn cut_module_preprocessing_keeps_the_optimum() {
    let mut corpus = medium_corpus();
    corpus.extend(named(&["star:6", "hml:4,3", "kbip:2,5", "hfam:9,1,seed=11"]));
    for (name, g) in corpus {
        for k in 0..=3 {
            if preprocess_cut_modules(&g, k).unwrap().is_empty() {
                continue;
            }
            let mut on = SolveConfig::new(k);
            on.use_cut_module_preprocessing = true;
            assert_eq!(solve(&g, &on).unwrap().value, mu(&g, k), "{name}, k={k}");
        }
    }
}

#[test]
fn convex_subgraphs_bound_the_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, g) in medium_corpus().into_iter().step_by(2) {
        let n = g.order();
        for k in 0..=2 {
            let whole = mu(&g, k);
            // a cover of V by hulls of small random seed sets
            let mut covered = VertexSet::new(n);
            let mut total = 0;
            while covered.len() < n {
                let start = (0..n).find(|&v| !covered.contains(v)).unwrap();
                let mut seeds = VertexSet::from_vertices(n, [start]);
                if rng.gen_bool(0.5) {
                    seeds.insert(rng.gen_range(0..n));
                }
                let hull = convex_hull(&g, &seeds).unwrap();
                let (h, _) = g.induced_subgraph(&hull);
                let part = mu(&h, k);
                assert!(part <= whole, "{name}: hull {hull} has larger value at k={k}");
                total += part;
                covered.union_with(&hull);
            }
            assert!(whole <= total, "{name}: cover bound fails at k={k}");
        }
    }
}

#[test]
fn two_vertex_clique_cut_sets() {
    for (m, l) in [(4, 2), (5, 2), (4, 3)] {
        let g = generate_h_ml(m, l).unwrap();
        assert_eq!(mu(&g, 1), l * m, "H_{{{m},{l}}}");
        for k in 2..=3 {
            let best_side = (0..l)
                .map(|c| {
                    let side =
                        VertexSet::from_vertices(g.order(), [0, 1].into_iter().chain(2 + c * m..2 + (c + 1) * m));
                    mu(&g.induced_subgraph(&side).0, k)
                })
                .max()
                .unwrap();
            assert_eq!(mu(&g, k), best_side, "H_{{{m},{l}}}, k={k}");
        }
    }
    for spec in ["cmn:4,4", "cmn:5,6"] {
        assert_eq!(mu(&generate_str(spec).unwrap(), 1), 2, "{spec}");
    }
    for (m, n) in [(3, 4), (4, 5), (5, 4)] {
        assert_eq!(mu(&generate_str(&format!("gmn:{m},{n}")).unwrap(), 1), m);
    }
}

#[test]
fn zarankiewicz_matches_matrix_enumeration() {
    fn brute(m: usize, n: usize) -> usize {
        let cells = m * n;
        (0u32..1 << cells)
            .filter(|mask| {
                let one = |r: usize, c: usize| mask >> (r * n + c) & 1 == 1;
                (0..m).all(|r1| (r1 + 1..m).all(|r2| (0..n).filter(|&c| one(r1, c) && one(r2, c)).count() <= 1))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }
    for m in 1..=4 {
        for n in 1..=5 {
            if m * n <= 20 {
                assert_eq!(zarankiewicz_z22(m, n).unwrap(), brute(m, n), "z({m},{n})");
            }
        }
    }
    assert_eq!(zarankiewicz_z22(5, 5), Ok(12));
    for m in 1..=7 {
        for n in 1..=7 {
            assert_eq!(zarankiewicz_z22(m, n), zarankiewicz_z22(n, m));
        }
    }
}

fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(rng.gen_range(0..v), v).unwrap();
    }
    b.build()
}

#[test]
fn tree_formula_matches_solver() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 9);
        let t = random_tree(n, seed);
        for k in 0..=2 {
            assert_eq!(mu_tree(&t, k).unwrap(), mu(&t, k), "tree n={n} seed={seed} k={k}");
        }
    }
}

#[test]
fn h_family_membership_matches_solver_on_random_graphs() {
    for i in 0..50u64 {
        let n = 4 + (i as usize % 6);
        let g = seeded_connected(n, [0.3, 0.5, 0.7][i as usize % 3], 300 + i);
        for k in 1..=2 {
            if n < k + 2 {
                continue;
            }
            assert_eq!(is_in_h_family(&g, k).unwrap(), mu(&g, k) == n - k - 1, "random graph {i}, k={k}");
        }
    }
    for k in 1..=2 {
        // a single base vertex cannot keep the clique number at n - k - 1 = 1
        for n in k + 3..=12 {
            let g = generate_str(&format!("hfam:{n},{k},seed={}", n * 10 + k)).unwrap();
            assert!(is_in_h_family(&g, k).unwrap());
            assert_eq!(mu(&g, k), n - k - 1);
        }
    }
}

#[test]
fn classify_large_matches_solver() {
    for (name, g) in random_graphs(50, 9, 700) {
        let n = g.order();
        for l in 0..=2usize.min(n - 1) {
            for k in l..=3 {
                assert_eq!(classify_large(&g, k, l).unwrap(), mu(&g, k) == n - l, "{name}, k={k}, l={l}");
            }
        }
    }
}

#[test]
fn reduction_shape() {
    for spec in ["path:3", "path:4", "cycle:4", "cycle:5", "kbip:1,3", "path:5"] {
        let g = generate_str(spec).unwrap();
        let (n, m) = (g.order(), g.edge_count());
        for k in 1..=2 {
            let r = build_reduction(&g, 2, k).unwrap();
            assert_eq!(r.g_prime.order(), n + (k + 1) * (1 + m) + k + (n + k) * (m + 1), "{spec}");
            assert_eq!(diameter(&r.g_prime), Ok(4), "{spec}");
            assert_eq!(r.t_prime, (m + 1) * (n + k) + 2);
            let found = preprocess_cut_modules(&r.g_prime, k).unwrap();
            for s in r.cut_module_sets() {
                assert_eq!(s.len(), k + 1);
                assert!(ftmv::graph::is_cut_module(&r.g_prime, &s).unwrap());
                assert!(found.contains(&s), "{spec}, k={k}: {s} not reported");
            }
        }
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, 0.15f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| seeded_connected(n, p, seed))
}

fn arb_case() -> impl Strategy<Value = (Graph, VertexSet, usize)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), proptest::collection::vec(any::<bool>(), n), 0usize..=3).prop_map(|(g, bits, k)| {
            let x = VertexSet::from_vertices(g.order(), (0..g.order()).filter(|&v| bits[v]));
            (g, x, k)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdict_matches_oracle((g, x, k) in arb_case()) {
        let v = is_ftmv_set(&g, &x, k, true).unwrap();
        prop_assert_eq!(v.ok, oracle_is_ftmv(&g, &x, k));
        if let Some((a, b)) = v.failing_pair {
            // the reported pair is the first failure in lexicographic order
            let xs = x.to_vec();
            let first = xs.iter().enumerate()
                .flat_map(|(i, &p)| xs[i + 1..].iter().map(move |&q| (p, q)))
                .find(|&(p, q)| !g.has_edge(p, q) && oracle_max_disjoint(&g, &x, p, q) <= k);
            prop_assert_eq!(Some((a, b)), first);
            prop_assert_eq!(v.max_disjoint, Some(oracle_max_disjoint(&g, &x, a, b)));
        } else {
            for cert in v.certificates.unwrap().values() {
                prop_assert!(cert.validate(&g, &x, k + 1));
            }
        }
    }

    #[test]
    fn ftmv_sets_are_hereditary_and_monotone((g, x, k) in arb_case(), drop in any::<u64>()) {
        if is_ftmv_set(&g, &x, k, false).unwrap().ok {
            let mut rng = ChaCha8Rng::seed_from_u64(drop);
            let y = VertexSet::from_vertices(g.order(), x.iter().filter(|_| rng.gen_bool(0.6)));
            prop_assert!(is_ftmv_set(&g, &y, k, false).unwrap().ok);
            if k > 0 {
                prop_assert!(is_ftmv_set(&g, &x, k - 1, false).unwrap().ok);
            }
        }
    }

    #[test]
    fn clear_paths_bounded_by_degrees(g in arb_graph()) {
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                let c = max_disjoint_clear_paths(&g, &VertexSet::new(n), u, v, n).unwrap();
                prop_assert!(c <= g.degree(u).min(g.degree(v)));
            }
        }
    }

    #[test]
    fn recheck_targets_decide_extensions((g, x, k) in arb_case(), w_pick in any::<usize>()) {
        let n = g.order();
        let outside: Vec<usize> = (0..n).filter(|&v| !x.contains(v)).collect();
        if outside.is_empty() || !is_ftmv_set(&g, &x, k, false).unwrap().ok {
            return Ok(());
        }
        let w = outside[w_pick % outside.len()];
        let mut bigger = x.clone();
        bigger.insert(w);
        let targets_ok = incremental_recheck_targets(&g, &x, w)
            .unwrap()
            .into_iter()
            .all(|(a, b)| oracle_max_disjoint(&g, &bigger, a, b) > k);
        prop_assert_eq!(targets_ok, is_ftmv_set(&g, &bigger, k, false).unwrap().ok);
    }
}

/// Both directions of the reduction on instances small enough to solve exactly.
#[test]
fn reduction_is_an_equivalence_on_small_instances() {
    use ftmv::graph::independence_number;
    for spec in ["path:3", "path:4", "cycle:4"] {
        let g = generate_str(spec).unwrap();
        let alpha = independence_number(&g);
        for t in [alpha, alpha + 1] {
            for k in 1..=2 {
                let r = build_reduction(&g, t, k).unwrap();
                let mu = solve(&r.g_prime, &SolveConfig::new(k)).unwrap().value;
                assert_eq!(mu >= r.t_prime, alpha >= t, "{spec} t={t} k={k}: μ = {mu}, t' = {}", r.t_prime);
            }
        }
    }
}
