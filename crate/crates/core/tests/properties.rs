use centra_core::centrality::{betweenness_normalized, closeness_normalized, eigen_system, eigenvector_l2};
use centra_core::{evaluate_all, Graph, MeasureId};
use proptest::prelude::*;

/// Random simple graph on 1..=max_n nodes.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn values_stay_in_unit_interval(g in graph(14)) {
        for r in evaluate_all(&g, &MeasureId::ALL).unwrap() {
            prop_assert!((0.0..=1.0).contains(&r.value), "{} = {}", r.measure, r.value);
        }
    }

    #[test]
    fn relabeling_preserves_every_measure((g, p) in graph_and_permutation(14)) {
        let h = g.permute(&p).unwrap();
        for m in MeasureId::ALL {
            let a = m.evaluate(&g).unwrap().value;
            let b = m.evaluate(&h).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-9, "{m}: {a} vs {b}");
        }
    }

    #[test]
    fn evaluate_all_matches_single_calls(g in graph(12)) {
        let all = evaluate_all(&g, &MeasureId::ALL).unwrap();
        for (m, r) in MeasureId::ALL.iter().zip(all) {
            prop_assert_eq!(r.measure, *m);
            prop_assert_eq!(r.value.to_bits(), m.evaluate(&g).unwrap().value.to_bits());
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        let back = Graph::from_edge_list(&g.to_edge_list(), Some(g.n())).unwrap();
        prop_assert_eq!(&back, &g);
        for m in MeasureId::ALL {
            prop_assert_eq!(m.evaluate(&g).unwrap().value.to_bits(), m.evaluate(&back).unwrap().value.to_bits());
        }
    }

    #[test]
    fn saturation_is_persistent(g in graph(12), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.n());
        let before = g.clone();
        match g.saturate(v) {
            Ok(s) => {
                prop_assert_eq!(&g, &before);
                prop_assert!(s.is_saturated(v));
                prop_assert_eq!(s.m(), g.m() + (g.n() - 1 - g.degree(v)));
                for &(a, b) in g.edges() {
                    prop_assert!(s.has_edge(a, b));
                }
            }
            Err(_) => prop_assert!(g.is_saturated(v)),
        }
    }

    #[test]
    fn betweenness_sums_to_path_lengths(g in graph(14)) {
        prop_assume!(g.n() >= 3);
        let n = g.n();
        let b = betweenness_normalized(&g).unwrap();
        let raw: f64 = b.values.iter().sum::<f64>() * ((n - 1) * (n - 2)) as f64;
        // each ordered reachable pair at distance d contributes d - 1
        let mut expected = 0usize;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            expected += dist.iter().filter(|&&d| d != usize::MAX && d > 0).map(|d| d - 1).sum::<usize>();
        }
        prop_assert!((raw - expected as f64).abs() <= 1e-9 * (1.0 + expected as f64));
    }

    #[test]
    fn ncc_agrees_with_float_closeness(g in graph(16)) {
        prop_assume!(g.n() >= 3);
        let n = g.n() as f64;
        let c = closeness_normalized(&g).unwrap().values;
        let top = c.iter().copied().fold(0.0, f64::max);
        let gap: f64 = c.iter().map(|x| top - x).sum();
        let float = (2.0 * n - 3.0) * gap / ((n - 1.0) * (n - 2.0));
        let exact = MeasureId::Ncc.evaluate(&g).unwrap().value;
        prop_assert!((exact - float).abs() <= 1e-12, "{exact} vs {float}");
    }

    #[test]
    fn principal_vector_is_an_eigenvector(g in graph(14)) {
        prop_assume!(g.m() > 0);
        let sys = eigen_system(&g).unwrap();
        let lambda = sys.spectrum.largest().unwrap();
        let v = &sys.principal;
        prop_assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(v.iter().all(|&x| x >= 0.0));
        let residual: f64 = (0..g.n())
            .map(|i| {
                let av: f64 = g.neighbors(i).iter().map(|&j| v[j]).sum();
                (av - lambda * v[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        prop_assert!(residual <= 1e-8, "residual {residual}");
        prop_assert_eq!(&eigenvector_l2(&g).unwrap().values, v);
    }

    #[test]
    fn components_partition_the_nodes(g in graph(16)) {
        let comps = g.components();
        let mut seen: Vec<usize> = comps.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
        let lcc = g.largest_component().unwrap();
        prop_assert!(lcc.is_connected());
        prop_assert_eq!(lcc.n(), comps.iter().map(Vec::len).max().unwrap());
    }
}
