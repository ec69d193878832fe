mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::subsequence;

use common::*;
use matchbound::bounds::{integral_log_poly, integral_log_poly_closed_k2, DEFAULT_TOL};
use matchbound::constructions::{
    incidence_hypergraph, kdd_union, ls_to_hypergraph, pruned_hypergraph, transversal_free_entries,
    CellSet, LatinSquare, UniformHypergraph, DEFAULT_MAX_ORDER,
};
use matchbound::enumeration::{
    count_a_perfect_matchings, count_proper_colorings, count_proper_colorings_direct,
    count_transversals, enumerate_matchings, per_entry_transversal_counts, CountOptions,
};
use matchbound::hypercore::{
    bad_edge_sets, degree_stats, incidence_exponent, BipartiteHypergraph, Edge, Matching,
};
use matchbound::verify::{verify_bound_dominance, verify_lemma31, verify_lemma33, VerifyOptions};
use matchbound::Error;

fn opts() -> CountOptions {
    CountOptions::default()
}

/// Small random bipartite hypergraphs: every A-vertex gets 1..=3 edges.
fn hypergraph() -> impl Strategy<Value = BipartiteHypergraph> {
    (1usize..=3, 1usize..=4)
        .prop_flat_map(|(k, a)| {
            let b = k * a..=k * a + 3;
            (Just(k), Just(a), b)
        })
        .prop_flat_map(|(k, a, b)| {
            let pool: Vec<usize> = (0..b).collect();
            let edge = subsequence(pool, k);
            let per_a = proptest::collection::vec(edge, 1..=3);
            (Just(k), Just(a), Just(b), proptest::collection::vec(per_a, a))
        })
        .prop_map(|(k, a, b, lists)| {
            let edges: BTreeSet<(usize, Vec<usize>)> = lists
                .into_iter()
                .enumerate()
                .flat_map(|(ai, es)| es.into_iter().map(move |e| (ai, e)))
                .collect();
            let edges = edges.into_iter().map(|(ai, e)| Edge::new(ai, e)).collect();
            BipartiteHypergraph::new(k, a, b, edges).unwrap()
        })
}

/// Isotopes (row, column and symbol relabelings) of a fixture square.
fn square(max_order: usize) -> impl Strategy<Value = LatinSquare> {
    let squares: Vec<LatinSquare> = square_fixtures()
        .into_iter()
        .map(|(_, l)| l)
        .filter(|l| l.order() <= max_order)
        .collect();
    proptest::sample::select(squares).prop_flat_map(|l| {
        let n = l.order();
        let perm = || Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(l), perm(), perm(), perm()).prop_map(|(l, r, c, s)| {
            let rows = (0..l.order())
                .map(|i| (0..l.order()).map(|j| s[l.get(r[i], c[j])]).collect())
                .collect();
            LatinSquare::new(rows).unwrap()
        })
    })
}

fn all_matchings(h: &BipartiteHypergraph) -> Vec<Matching> {
    let mut out = Vec::new();
    enumerate_matchings(h, &opts(), |x| out.push(Matching::from_assignment(h, x).unwrap())).unwrap();
    out
}

fn relabel(h: &BipartiteHypergraph, pa: &[usize], pb: &[usize], rev: bool) -> BipartiteHypergraph {
    let mut edges: Vec<Edge> = h
        .edges()
        .iter()
        .map(|e| Edge::new(pa[e.a], e.b.iter().map(|&v| pb[v]).collect::<Vec<_>>()))
        .collect();
    if rev {
        edges.reverse();
    }
    BipartiteHypergraph::new(h.k(), h.a_count(), h.b_count(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bad_edge_sums_and_exponents(h in hypergraph()) {
        for x in all_matchings(&h) {
            let r = bad_edge_sets(&h, &x).unwrap();
            prop_assert_eq!(r.per_a_s.iter().sum::<usize>(), r.s_edges.len());
            prop_assert_eq!(r.per_a_t.iter().sum::<usize>(), r.t_edges.len());
            let assignment = x.assignment(&h);
            for (i, e) in h.edges().iter().enumerate() {
                let own = assignment[e.a].unwrap();
                if i == own || r.s_edges.contains(&i) || r.t_edges.contains(&i) {
                    continue;
                }
                let m = incidence_exponent(&h, &x, e.a, i).unwrap();
                // B-vertices shared with the edge's own X_a do not count.
                let shared = e.b.iter().filter(|v| h.edge(own).b.contains(v)).count();
                prop_assert_eq!(m, h.k() - shared);
            }
        }
    }

    #[test]
    fn stats_ignore_labels(
        h in hypergraph(),
        seed in any::<u64>(),
        rev in any::<bool>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pa: Vec<usize> = (0..h.a_count()).collect();
        let mut pb: Vec<usize> = (0..h.b_count()).collect();
        pa.shuffle(&mut rng);
        pb.shuffle(&mut rng);
        let g = relabel(&h, &pa, &pb, rev);
        prop_assert_eq!(degree_stats(&h), degree_stats(&g));
        prop_assert_eq!(
            count_a_perfect_matchings(&h, &opts()).unwrap().count,
            count_a_perfect_matchings(&g, &opts()).unwrap().count
        );
    }

    #[test]
    fn square_encoding_matches_oracle(l in square(7)) {
        let h = ls_to_hypergraph(&l, &CellSet::new()).unwrap();
        prop_assert_eq!(degree_stats(&h).delta2, 1);
        let oracle = BigUint::from(brute_transversals(&l.rows()));
        prop_assert_eq!(&count_transversals(&l, &opts()).unwrap().count, &oracle);
        prop_assert_eq!(&count_a_perfect_matchings(&h, &opts()).unwrap().count, &oracle);
        if l.order() <= 6 {
            let n = l.order();
            enumerate_matchings(&h, &opts(), |x| {
                let cells: Vec<(usize, usize)> =
                    x.iter().map(|&i| (h.edge(i).a, h.edge(i).b[0])).collect();
                let cols: BTreeSet<usize> = cells.iter().map(|c| c.1).collect();
                let syms: BTreeSet<usize> = cells.iter().map(|&(r, c)| l.get(r, c)).collect();
                assert_eq!(cols.len(), n);
                assert_eq!(syms.len(), n);
            }).unwrap();
        }
    }

    #[test]
    fn per_entry_lines_sum_to_count(l in square(7)) {
        let total = count_transversals(&l, &opts()).unwrap().count;
        let m = per_entry_transversal_counts(&l, &opts()).unwrap();
        let n = l.order();
        for (i, row) in m.iter().enumerate() {
            prop_assert_eq!(&row.iter().sum::<BigUint>(), &total);
            prop_assert_eq!(&(0..n).map(|r| m[r][i].clone()).sum::<BigUint>(), &total);
        }
    }

    #[test]
    fn pruning_keeps_count_and_removal_never_adds(
        l in square(7),
        drop in proptest::collection::vec((0usize..7, 0usize..7), 0..6),
    ) {
        let n = l.order();
        let full = ls_to_hypergraph(&l, &CellSet::new()).unwrap();
        let before = count_a_perfect_matchings(&full, &opts()).unwrap().count;
        let pruned = pruned_hypergraph(&l, DEFAULT_MAX_ORDER, &opts()).unwrap();
        prop_assert_eq!(&count_a_perfect_matchings(&pruned, &opts()).unwrap().count, &before);
        let free = transversal_free_entries(&l, DEFAULT_MAX_ORDER, &opts()).unwrap();
        prop_assert_eq!(pruned.edges().len(), n * n - free.len());
        let excluded: CellSet = drop.into_iter().filter(|&(r, c)| r < n && c < n).collect();
        let smaller = ls_to_hypergraph(&l, &excluded).unwrap();
        prop_assert!(count_a_perfect_matchings(&smaller, &opts()).unwrap().count <= before);
    }

    #[test]
    fn excluded_subrectangle_degree_bound(t in 1usize..=5, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = 3 * t;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut r: Vec<usize> = (0..n).collect();
        let mut c: Vec<usize> = (0..n).collect();
        r.shuffle(&mut rng);
        c.shuffle(&mut rng);
        let l = LatinSquare::new(cyclic_rows(n).iter().enumerate()
            .map(|(i, _)| (0..n).map(|j| (r[i] + c[j]) % n).collect()).collect()).unwrap();
        let rect = CellSet::rectangle(0, 0, n / 3 - 1, n / 3);
        let h = ls_to_hypergraph(&l, &rect).unwrap();
        let q = degree_stats(&h).q_avg;
        let bound = Ratio::new(8 * n as u64 + 3, 9);
        prop_assert!(q <= bound, "q_avg {} > {}", q, bound);
    }

    #[test]
    fn incidence_stats_of_regular_graphs(d in 1usize..=4, copies in 1usize..=2, q in 1usize..=5) {
        let g = kdd_union(d, copies).unwrap();
        let gs = g.stats();
        let h = incidence_hypergraph(&g, q).unwrap();
        let s = degree_stats(&h);
        prop_assert_eq!(s.min_a_degree as usize, q);
        prop_assert_eq!(s.q_avg, Ratio::from_integer(q as u64));
        prop_assert_eq!(s.d_max_b as usize, d);
        prop_assert!(s.delta2 as usize <= gs.delta2.max(1));
        prop_assert_eq!(s.rho, Ratio::new((q * gs.k) as u64, d as u64));
    }

    #[test]
    fn coloring_methods_agree(
        k in 2usize..=3,
        nv in 3usize..=6,
        picks in proptest::collection::vec(proptest::collection::btree_set(0usize..6, 3), 1..=6),
        q in 1usize..=4,
    ) {
        let edges: BTreeSet<Vec<usize>> = picks
            .into_iter()
            .map(|s| s.into_iter().map(|v| v % nv).collect::<BTreeSet<_>>())
            .filter(|s| s.len() >= k)
            .map(|s| s.into_iter().take(k).collect())
            .collect();
        prop_assume!(!edges.is_empty());
        let g = UniformHypergraph::new(k, nv, edges.into_iter().collect()).unwrap();
        let a = count_proper_colorings(&g, q, &opts()).unwrap().count;
        let b = count_proper_colorings_direct(&g, q, &opts()).unwrap().count;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parallel_counts_match(h in hypergraph(), threads in 2usize..=4) {
        let one = count_a_perfect_matchings(&h, &opts()).unwrap();
        let many = count_a_perfect_matchings(&h, &opts().with_threads(threads)).unwrap();
        prop_assert_eq!(one.count, many.count);
    }

    #[test]
    fn quadrature_matches_closed_form(la in -6.0f64..6.0, lq in -6.0f64..6.0) {
        let (a, q) = (10f64.powf(la), 10f64.powf(lq));
        let quad = integral_log_poly(a, q, 2, DEFAULT_TOL).unwrap();
        let closed = integral_log_poly_closed_k2(a, q).unwrap();
        prop_assert!((quad - closed).abs() <= 1e-9, "{} vs {}", quad, closed);
        prop_assert!((closed - closed_k2(a, q)).abs() <= 1e-12);
    }

    #[test]
    fn integral_strictly_increasing(
        la in -4.0f64..4.0,
        lq in -4.0f64..4.0,
        step in 0.05f64..1.0,
        k in 1usize..=4,
    ) {
        let (a, q) = (10f64.powf(la), 10f64.powf(lq));
        let base = integral_log_poly(a, q, k, DEFAULT_TOL).unwrap();
        prop_assert!(integral_log_poly(a * (1.0 + step), q, k, DEFAULT_TOL).unwrap() > base);
        prop_assert!(integral_log_poly(a, q * (1.0 + step), k, DEFAULT_TOL).unwrap() > base);
        let f = |x: f64| (a + q * x.powi(k as i32)).ln();
        let reference = graded_simpson(f, (a / q).powf(1.0 / k as f64));
        prop_assert!((base - reference).abs() < 1e-8, "{} vs {}", base, reference);
    }

    #[test]
    fn verification_never_fails(h in hypergraph()) {
        let vo = VerifyOptions::default();
        let dom = verify_bound_dominance(&h, &vo).unwrap();
        prop_assert!(dom.pass, "ln count {} > bound {}", dom.ln_count, dom.bound.ln_bound);
        let count = count_a_perfect_matchings(&h, &opts()).unwrap().count;
        if count.is_zero() {
            prop_assert!(dom.vacuous);
            prop_assert!(matches!(verify_lemma31(&h, &vo), Err(Error::Infeasible)));
            return Ok(());
        }
        let l31 = verify_lemma31(&h, &vo).unwrap();
        prop_assert!(l31.pass);
        prop_assert!(l31.rhs_pre_jensen_bits <= l31.rhs_bits + 1e-9);
        let l33 = verify_lemma33(&h, &vo).unwrap();
        prop_assert!(l33.pass);
        let s = degree_stats(&h);
        if s.delta2 == 1 && s.rho == Ratio::from_integer(h.k() as u64) {
            prop_assert!(l33.zero_slack());
        }
    }
}

#[test]
fn zero_slack_without_tight_parameters() {
    // Both edges through each A-vertex saturate the pair bound.
    let h = BipartiteHypergraph::new(
        2,
        2,
        4,
        vec![Edge::new(0, [0, 1]), Edge::new(0, [2, 3]), Edge::new(1, [0, 1]), Edge::new(1, [2, 3])],
    )
    .unwrap();
    let r = verify_lemma33(&h, &VerifyOptions::default()).unwrap();
    assert_eq!(degree_stats(&h).delta2, 2);
    assert!(r.pass && r.zero_slack());
}
