use std::time::Duration;

use proptest::prelude::*;

use radiuskit::binseq::{self, SymbolString, WkMethod};
use radiuskit::debruijn::{self, DeBruijnGraph};
use radiuskit::exact::{self, SearchBudget};
use radiuskit::graphs::{self, Graph};
use radiuskit::hardness;
use radiuskit::radius::{self, VertexSequence};
use radiuskit::{Mode, Rational};

fn build_graph(n: usize, mask: &[bool]) -> Graph {
    let mut g = Graph::with_vertices((0..n).map(graphs::alpha_label)).unwrap();
    let mut bits = mask.iter().cycle();
    for u in 0..n {
        for v in u + 1..n {
            if *bits.next().unwrap() {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn random_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, prop::collection::vec(any::<bool>(), 1..64)).prop_map(|(n, mask)| build_graph(n, &mask))
}

/// Minimum normalized weight over all simple cycles of `B_k`, by DFS from each
/// cycle's smallest vertex.
fn brute_min_cycle(k: usize) -> Rational {
    let g = DeBruijnGraph::binary(k).unwrap();
    let n = g.vertex_count();
    let mut best: Option<Rational> = None;
    fn dfs(
        g: &DeBruijnGraph,
        root: usize,
        v: usize,
        weight: u64,
        len: i64,
        on_path: &mut Vec<bool>,
        best: &mut Option<Rational>,
    ) {
        for b in 0..2 {
            let e = g.out_edge(v, b);
            let w = g.target(e);
            let total = weight + u64::from(g.weight(e));
            if w == root {
                let r = Rational::new(total as i64, len + 1);
                if best.is_none_or(|x| r < x) {
                    *best = Some(r);
                }
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                dfs(g, root, w, total, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    for root in 0..n {
        let mut on_path = vec![false; n];
        on_path[root] = true;
        dfs(&g, root, root, 0, 0, &mut on_path, &mut best);
    }
    best.unwrap()
}

#[test]
fn karp_matches_simple_cycle_enumeration() {
    for k in 1..=4 {
        assert_eq!(debruijn::ak(k).unwrap(), brute_min_cycle(k), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Long enough cyclic strings: bad pairs equal the weight of the closed walk they spell.
    #[test]
    fn bad_pairs_equal_walk_weight(k in 1usize..=5, extra in 1usize..24, bits in prop::collection::vec(0u8..2, 64)) {
        let s = 2 * k + extra;
        let word = &bits[..s];
        let seq = SymbolString::binary(word, Mode::Cyclic).unwrap();
        let walk = debruijn::evaluate_closed_walk(k, 2, word).unwrap();
        prop_assert_eq!(binseq::count_bad_pairs(&seq, k).bad, walk.total_weight);
    }

    #[test]
    fn bad_plus_good_counts_pairs(k in 1usize..=6, s in 1usize..30, bits in prop::collection::vec(0u8..3, 30), cyclic in any::<bool>()) {
        let mode = if cyclic { Mode::Cyclic } else { Mode::Linear };
        let seq = SymbolString::new(bits[..s].to_vec(), 3, mode).unwrap();
        let r = binseq::count_bad_pairs(&seq, k);
        let pairs: u64 = match mode {
            Mode::Linear => (1..=k).map(|d| s.saturating_sub(d) as u64).sum(),
            Mode::Cyclic if s > 2 * k => (k * s) as u64,
            Mode::Cyclic => (s * (s - 1) / 2) as u64,
        };
        prop_assert_eq!(r.bad + r.good, pairs);
        let per: u64 = r.per_index_bad.iter().map(|&x| u64::from(x)).sum();
        prop_assert_eq!(per, 2 * r.bad);
    }

    #[test]
    fn wk_oracles_and_sandwich_above_2k(k in 1usize..=4, extra in 1usize..14) {
        let s = 2 * k + extra;
        let brute = binseq::wk_exact(k, s, 2, WkMethod::Brute).unwrap();
        let walk = binseq::wk_exact(k, s, 2, WkMethod::Walk).unwrap();
        prop_assert_eq!(brute, walk);
        let a = debruijn::ak(k).unwrap();
        let w = Rational::from_integer(walk as i64);
        let base = a * Rational::from_integer(s as i64);
        prop_assert!(base <= w);
        prop_assert!(w < base + Rational::from_integer((k * ((1 << k) + k)) as i64));
    }

    #[test]
    fn low_bad_reports_its_own_count(k in 1usize..=4, s in 8usize..40) {
        let c = binseq::construct_low_bad(k, s).unwrap();
        prop_assert_eq!(c.string.len(), s);
        prop_assert_eq!(binseq::count_bad_pairs(&c.string, k).bad, c.bad);
        prop_assert!(c.bad >= binseq::wk_exact(k, s, 2, WkMethod::Auto).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_graph_edge_count(g in random_graph(9)) {
        let l = graphs::line_graph(&g);
        prop_assert_eq!(l.vertex_count(), g.edge_count());
        let expect: usize = (0..g.vertex_count()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(l.edge_count(), expect);
    }

    #[test]
    fn circulant_is_regular(n in 3usize..30, k in 1usize..8) {
        let c = graphs::circulant(n, k).unwrap();
        let deg = (2 * k).min(n - 1);
        for v in 0..n {
            prop_assert_eq!(c.graph.degree(v), deg);
        }
        prop_assert_eq!(c.complete, 2 * k + 1 >= n);
    }

    #[test]
    fn graph_format_round_trips(g in random_graph(10)) {
        let text = graphs::serialize_graph(&g);
        prop_assert_eq!(graphs::parse_graph(&text).unwrap(), g);
    }

    /// Appending the first k items turns a valid cyclic sequence into a valid linear one.
    #[test]
    fn cyclic_to_linear(n in 2usize..8, k in 1usize..4, items in prop::collection::vec(0usize..8, 2..16)) {
        let items: Vec<usize> = items.into_iter().map(|v| v % n).collect();
        let seq = VertexSequence::new(items.clone(), Mode::Cyclic);
        // The graph of every pair the cyclic sequence brings within distance k.
        let mut g = Graph::with_vertices((0..n).map(graphs::alpha_label)).unwrap();
        let s = items.len();
        for i in 0..s {
            for d in 1..=k.min(s - 1) {
                let (u, v) = (items[i], items[(i + d) % s]);
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        prop_assert!(radius::verify_radius(&g, &seq, k).unwrap().valid);
        let lin = seq.to_linear(k);
        prop_assert_eq!(lin.len(), s + k.min(s));
        prop_assert!(radius::verify_radius(&g, &lin, k).unwrap().valid);
    }

    #[test]
    fn loss_identity_on_bipartite_strategy(m in 1usize..7, n in 1usize..7, k in 1usize..4) {
        prop_assume!(m + n > k + 1);
        let (g, cov) = radius::cover_strategy_bipartite(m, n, k).unwrap();
        prop_assert!(radius::verify_cover(&g, &cov).unwrap().valid);
        let loss = hardness::loss_count(&g, &cov).unwrap();
        let s = cov.len() as u64;
        let k = k as u64;
        prop_assert_eq!(g.edge_count() as u64 + loss, k * (s - 1) + k * (k + 1) / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Exact optima never fall below any reported lower bound.
    #[test]
    fn bounds_are_sound(g in random_graph(6), k in 1usize..=2) {
        // With at most k + 1 non-isolated vertices both problems are trivial.
        prop_assume!(g.non_isolated_count() > k + 1);
        let budget = SearchBudget { time_limit: Duration::from_secs(5), ..SearchBudget::default() };
        let b = radius::bounds(&g, k, None).unwrap();
        let lin = exact::exact_fk(&g, k, Mode::Linear, &budget).unwrap();
        let cyc = exact::exact_fk(&g, k, Mode::Cyclic, &budget).unwrap();
        let ck = exact::exact_ck(&g, k, &budget).unwrap();
        if let Some(f) = lin.optimum() {
            let fr = Rational::from_integer(f as i64);
            prop_assert!(b.eq1.is_none_or(|x| fr >= x));
            prop_assert!(b.cor1.is_none_or(|x| fr >= x));
            prop_assert!(f as u64 >= b.prop8 && f as u64 >= b.fk_lower);
            if let Some(c) = ck.optimum() {
                prop_assert!(f >= c);
                let loss_free = Rational::from_integer(c as i64);
                prop_assert!(b.eq1.is_none_or(|x| loss_free >= x));
            }
            if let Some(fc) = cyc.optimum() {
                prop_assert!(fc <= f && f <= fc + k);
                prop_assert!(fc as u64 >= b.fk_cyc_lower);
            }
        }
        if let Some(w) = ck.witness() {
            let loss = hardness::loss_count(&g, w).unwrap();
            let s = w.len() as u64;
            let k = k as u64;
            prop_assert_eq!(g.edge_count() as u64 + loss, k * (s - 1) + k * (k + 1) / 2);
        }
    }
}
