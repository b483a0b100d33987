use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clusteredit::cotree::{build_cotree, cotree_to_expression, Cotree};
use clusteredit::critical::critical_cliques;
use clusteredit::gadget::PackingInstance;
use clusteredit::gen::{erdos_renyi, seeded_graph, GenConfig, GraphClass};
use clusteredit::graph::{cost_of_clustering, edit_set, is_cluster_graph, Clustering, Graph};
use clusteredit::nlc::{solve_cograph_p, Expression};
use clusteredit::oracle::{brute_force_optimal, brute_force_optimal_uncontracted, brute_force_p, DEFAULT_BUDGET};
use clusteredit::tpg::solve_tpg;

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, 0.0..1.0f64, any::<u64>())
        .prop_map(|(n, d, seed)| erdos_renyi(n, d, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn cograph(max_n: usize, class: GraphClass) -> impl Strategy<Value = Graph> {
    (0..=max_n, any::<u64>()).prop_map(move |(n, seed)| seeded_graph(&GenConfig::new(n, class), seed))
}

proptest! {
    #[test]
    fn graph_text_round_trip(g in any_graph(40)) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn edit_set_realizes_the_clustering(g in any_graph(25), labels in prop::collection::vec(0usize..5, 25)) {
        let c = Clustering::from_assignment(&labels[..g.n()]);
        let edits = edit_set(&g, &c).unwrap();
        prop_assert_eq!(edits.len() as u64, cost_of_clustering(&g, &c).unwrap());
        let edited = g.apply(&edits);
        prop_assert!(is_cluster_graph(&edited));
        prop_assert_eq!(edited.components(), c.clusters().to_vec());
    }

    #[test]
    fn clustering_is_canonical_under_relabeling(labels in prop::collection::vec(0usize..6, 0..20), shift in 1usize..6) {
        let moved: Vec<usize> = labels.iter().map(|l| (l + shift) % 6).collect();
        prop_assert_eq!(Clustering::from_assignment(&labels), Clustering::from_assignment(&moved));
    }

    #[test]
    fn cotree_text_round_trip(g in cograph(30, GraphClass::Cograph)) {
        let t = build_cotree(&g).unwrap();
        prop_assert!(t.is_canonical());
        let back = Cotree::parse(&t.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), t.to_string());
        prop_assert_eq!(back.to_graph(), g);
    }

    #[test]
    fn expression_text_round_trip(g in cograph(20, GraphClass::Cograph)) {
        let e = cotree_to_expression(&build_cotree(&g).unwrap());
        let back = Expression::parse(&e.to_file_string()).unwrap();
        prop_assert_eq!(back.eval(), e.eval());
    }

    #[test]
    fn critical_clique_contraction_keeps_the_optimum(g in any_graph(8)) {
        let contracted = brute_force_optimal(&g, DEFAULT_BUDGET).unwrap();
        let full = brute_force_optimal_uncontracted(&g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(contracted.cost, full.cost);
        prop_assert_eq!(cost_of_clustering(&g, &contracted.clustering).unwrap(), contracted.cost);
        let q = critical_cliques(&g);
        prop_assert_eq!(q.weights.iter().sum::<u64>(), g.n() as u64);
    }

    #[test]
    fn exact_p_sweep_recovers_the_optimum(g in any_graph(7)) {
        prop_assume!(g.n() > 0);
        let best = (1..=g.n())
            .map(|p| brute_force_p(&g, p, true, DEFAULT_BUDGET).unwrap().cost)
            .min()
            .unwrap();
        prop_assert_eq!(best, brute_force_optimal(&g, DEFAULT_BUDGET).unwrap().cost);
    }

    #[test]
    fn tpg_optimum_beats_other_clusterings(g in cograph(40, GraphClass::TriviallyPerfect), labels in prop::collection::vec(0usize..8, 40)) {
        let s = solve_tpg(&g).unwrap();
        let other = Clustering::from_assignment(&labels[..g.n()]);
        prop_assert!(s.cost <= cost_of_clustering(&g, &other).unwrap());
        prop_assert!(s.cost <= cost_of_clustering(&g, &Clustering::singletons(g.n())).unwrap());
    }

    #[test]
    fn at_most_p_cost_is_monotone(g in cograph(9, GraphClass::Cograph)) {
        prop_assume!(g.n() > 0);
        let mut last = u64::MAX;
        for p in 1..=g.n().min(4) {
            let s = solve_cograph_p(&g, p, false).unwrap();
            prop_assert!(s.clustering.len() <= p);
            prop_assert!(s.cost <= last);
            last = s.cost;
        }
    }

    #[test]
    fn packing_text_round_trip(items in prop::collection::vec(1u64..20, 0..10), b in 1u64..30, k in 0u64..6) {
        let inst = PackingInstance::new(items, b, k);
        prop_assert_eq!(PackingInstance::parse(&inst.to_text()).unwrap(), inst);
    }
}
