use proptest::prelude::*;
use robustnet::dynamics::{
    contagion_from_any_m, run_cascade, run_consensus, AdversaryStrategy, ConsensusConfig,
    ContagionMethod, FilterMode,
};
use robustnet::generators::{
    er_from_uniforms, er_uniforms, gen_erdos_renyi, gen_geometric, gen_preferential, RngSeed,
};
use robustnet::graph::{
    check_subsets_reachable, find_degree_cut, find_relaxed_degree_cut, is_r_robust,
    min_degree, naive_is_r_robust, reach_index, robustness, vertex_connectivity,
};
use robustnet::hardness::{
    build_g_phi, build_h_phi, cut_from_assignment, nae_check, Assignment, CnfFormula, Side,
};
use robustnet::{Graph, NodeSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn formula_strategy() -> impl Strategy<Value = CnfFormula> {
    (3usize..=4).prop_flat_map(|t| {
        let lit = (1..=t as i64, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        proptest::collection::vec([lit.clone(), lit.clone(), lit], 1..=2)
            .prop_map(move |cl| CnfFormula::from_signed(t, &cl).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn robustness_chain(g in graph_strategy(10)) {
        let rob = robustness(&g).unwrap();
        let kappa = vertex_connectivity(&g).unwrap();
        prop_assert!(rob <= kappa);
        prop_assert!(kappa <= min_degree(&g).unwrap());
        prop_assert_eq!(is_r_robust(&g, 1).unwrap(), g.is_connected());
        prop_assert!(rob <= g.node_count().div_ceil(2));
    }

    #[test]
    fn robustness_matches_naive(g in graph_strategy(8)) {
        let rob = robustness(&g).unwrap();
        prop_assert!(naive_is_r_robust(&g, rob).unwrap());
        prop_assert!(!naive_is_r_robust(&g, rob + 1).unwrap());
    }

    #[test]
    fn cut_witnesses_verify(g in graph_strategy(10), rho in 0usize..4) {
        if let Some(cut) = find_degree_cut(&g, rho).unwrap() {
            prop_assert!(cut.is_degree_cut(&g, rho));
            prop_assert!(!cut.a().is_empty() && !cut.b().is_empty());
            prop_assert!(cut.a().is_disjoint(cut.b()));
        }
        if let Some(cut) = find_relaxed_degree_cut(&g, rho).unwrap() {
            prop_assert!(cut.is_relaxed());
            prop_assert!(cut.is_degree_cut(&g, rho));
        }
    }

    #[test]
    fn adding_edges_never_lowers_robustness(g in graph_strategy(9), u in 0usize..9, v in 0usize..9) {
        let n = g.node_count();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut h = g.clone();
        h.add_edge(u, v).unwrap();
        prop_assert!(robustness(&h).unwrap() >= robustness(&g).unwrap());
    }

    #[test]
    fn added_node_keeps_robustness(g in graph_strategy(9), pick in any::<u64>()) {
        let n = g.node_count();
        let r = robustness(&g).unwrap();
        prop_assume!(r >= 1 && n >= r);
        // attach to r nodes chosen from the bits of `pick`
        let mut nbrs = NodeSet::new(n);
        let mut k = pick;
        let mut i = 0;
        while nbrs.len() < r {
            let v = (k as usize + i) % n;
            nbrs.insert(v);
            k = k.rotate_left(7) ^ 0x9e37_79b9;
            i += 1;
        }
        let h = g.with_added_node(&nbrs).unwrap();
        prop_assert!(is_r_robust(&h, r).unwrap());
    }

    #[test]
    fn small_sets_reachable_implies_robust(g in graph_strategy(10), r in 1usize..5) {
        let n = g.node_count();
        prop_assume!(n >= 2);
        // two disjoint nonempty sets cannot both exceed n/2 nodes
        if check_subsets_reachable(&g, r, (n / 2).max(1)).unwrap() {
            prop_assert!(is_r_robust(&g, r).unwrap());
        }
    }

    #[test]
    fn contagion_methods_agree(g in graph_strategy(8), m in 1usize..8, r in 1usize..4) {
        let n = g.node_count();
        prop_assume!(r <= m && m < n);
        prop_assert_eq!(
            contagion_from_any_m(&g, m, r, ContagionMethod::Exact).unwrap(),
            contagion_from_any_m(&g, m, r, ContagionMethod::Simulate).unwrap()
        );
    }

    #[test]
    fn cascade_is_monotone(g in graph_strategy(12), mask in any::<u64>(), r in 1usize..4) {
        let n = g.node_count();
        let seed = NodeSet::from_mask(n, mask & ((1u64 << n) - 1));
        prop_assume!(!seed.is_empty());
        let out = run_cascade(&g, &seed, r).unwrap();
        prop_assert!(seed.is_subset(&out.infected));
        let counts: Vec<usize> = out.history.iter().map(|h| h.1).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] < w[1]));
        // the uninfected rest is never r-reachable
        let rest = out.infected.complement();
        if !rest.is_empty() {
            prop_assert!(reach_index(&g, &rest).unwrap() < r);
        }
    }

    #[test]
    fn consensus_stays_in_range(g in graph_strategy(10), values in proptest::collection::vec(-5.0f64..5.0, 10), literal in any::<bool>()) {
        let n = g.node_count();
        let mode = if literal { FilterMode::Literal } else { FilterMode::Strict };
        let cfg = ConsensusConfig::new(1, 50, 1e-9).with_mode(mode);
        let tr = run_consensus(&g, &values[..n], &cfg).unwrap();
        prop_assert!(tr.validity_held);
        for k in 1..tr.rounds.len() {
            prop_assert!(tr.spread_at(k) <= tr.spread_at(k - 1) + 1e-12);
        }
    }

    #[test]
    fn reduction_invariants(phi in formula_strategy(), bits in any::<u64>()) {
        let t = phi.num_variables();
        let a = Assignment::from_bits(t, bits & ((1 << t) - 1));
        prop_assume!(nae_check(&phi, &a).unwrap());
        for gg in [build_g_phi(&phi), build_h_phi(&phi)] {
            let cut = cut_from_assignment(&gg, &a).unwrap();
            prop_assert!(gg.block(Side::True).is_subset(cut.a()));
            prop_assert!(gg.block(Side::False).is_subset(cut.b()));
            for copy in 0..gg.copy_count() {
                for var in 1..=t {
                    let p = gg.variable_node(copy, var, true);
                    let q = gg.variable_node(copy, var, false);
                    prop_assert_ne!(cut.a().contains(p), cut.a().contains(q));
                }
            }
            for (u, v) in gg.intermediate_edges() {
                prop_assert_eq!(cut.a().contains(u), cut.a().contains(v));
            }
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let s = RngSeed::new(42);
    assert_eq!(gen_erdos_renyi(40, 0.2, s).unwrap(), gen_erdos_renyi(40, 0.2, s).unwrap());
    assert_ne!(
        gen_erdos_renyi(40, 0.2, s).unwrap(),
        gen_erdos_renyi(40, 0.2, s.with_stream(1)).unwrap()
    );
    assert_eq!(gen_preferential(30, 3, s).unwrap(), gen_preferential(30, 3, s).unwrap());
    let (g1, p1) = gen_geometric(25, 1.5, 10.0, 1, s).unwrap();
    let (g2, p2) = gen_geometric(25, 1.5, 10.0, 1, s).unwrap();
    assert_eq!(g1, g2);
    assert_eq!(p1.positions(), p2.positions());
}

#[test]
fn er_coupling_is_monotone() {
    let u = er_uniforms(30, RngSeed::new(3));
    let lo = er_from_uniforms(30, &u, 0.2).unwrap();
    let hi = er_from_uniforms(30, &u, 0.4).unwrap();
    assert!(lo.edges().all(|(a, b)| hi.has_edge(a, b)));
}

#[test]
fn er_degrees_fit_binomial() {
    // chi-square on the degree histogram of G(200, 0.05), pooled over seeds
    let (n, p) = (200usize, 0.05f64);
    let mut hist = [0usize; 20];
    let mut total = 0usize;
    for s in 0..20 {
        let g = gen_erdos_renyi(n, p, RngSeed::new(s)).unwrap();
        for d in g.degrees() {
            hist[d.min(19)] += 1;
            total += 1;
        }
    }
    let pmf = |k: usize| {
        let mut lg = 0.0;
        for i in 0..k {
            lg += ((n - 1 - i) as f64).ln() - ((i + 1) as f64).ln();
        }
        (lg + k as f64 * p.ln() + (n - 1 - k) as f64 * (1.0 - p).ln()).exp()
    };
    // bins: <=5, 6..=14 singly, >=15
    let mut bins: Vec<(f64, usize)> = Vec::new();
    let low: f64 = (0..=5).map(pmf).sum();
    bins.push((low, hist[..=5].iter().sum()));
    for k in 6..=14 {
        bins.push((pmf(k), hist[k]));
    }
    let high = 1.0 - bins.iter().map(|b| b.0).sum::<f64>();
    bins.push((high, hist[15..].iter().sum()));
    let chi2: f64 = bins
        .iter()
        .map(|&(q, o)| {
            let e = q * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    // 10 degrees of freedom, 0.999 quantile is 29.59
    assert!(chi2 < 29.59, "chi2 = {chi2}");
}

#[test]
fn preferential_graphs_are_robust() {
    for s in 0..30 {
        for r in 1..=3 {
            let g = gen_preferential(14, r, RngSeed::new(s)).unwrap();
            assert!(is_r_robust(&g, r).unwrap(), "seed {s} r {r}");
            assert!(min_degree(&g).unwrap() >= r);
        }
    }
}

#[test]
fn geometric_wide_spread_law() {
    for s in 0..100 {
        let (g, pl) = gen_geometric(14, 2.0, 12.0, 1, RngSeed::new(s)).unwrap();
        let kappa = vertex_connectivity(&g).unwrap();
        let rob = robustness(&g).unwrap();
        assert!(rob >= kappa / 2);
        if pl.spread().unwrap() > 6.0 {
            assert_eq!(kappa, rob, "seed {s}");
        }
    }
}

#[test]
fn adversaries_cannot_drag_normals() {
    let g = robustnet::graph::complete(7);
    let init = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.0];
    let cfg = ConsensusConfig::new(1, 2000, 1e-8)
        .with_adversary(6, AdversaryStrategy::Ramp { start: 10.0, slope: 5.0 });
    let tr = run_consensus(&g, &init, &cfg).unwrap();
    assert!(tr.converged && tr.validity_held);
    let last = tr.rounds.last().unwrap();
    assert!(last[..6].iter().all(|&x| (1.0..=6.0).contains(&x)));
}
