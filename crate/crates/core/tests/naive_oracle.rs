mod common;

use antimagic_core::{build_graph, exact_chi_la, Graph, SearchBudget};
use common::{naive_chi_la, small_family_specs};
use proptest::prelude::*;

#[test]
fn family_graphs_up_to_eight_edges() {
    let budget = SearchBudget::default();
    let specs = small_family_specs(8);
    assert!(specs.len() > 100, "only {} graphs", specs.len());
    for s in &specs {
        let g = build_graph(s);
        let r = exact_chi_la(&g, &budget).unwrap();
        assert_eq!(r.value(), naive_chi_la(&g), "{s}");
    }
}

#[test]
fn symmetry_breaking_keeps_optimum() {
    let plain = SearchBudget::default().with_symmetry(false);
    let split = SearchBudget::default().with_parallel(3);
    for s in small_family_specs(7) {
        let g = build_graph(&s);
        let want = naive_chi_la(&g);
        assert_eq!(exact_chi_la(&g, &plain).unwrap().value(), want, "{s} without symmetry");
        assert_eq!(exact_chi_la(&g, &split).unwrap().value(), want, "{s} in parallel");
    }
}

/// A random tree on `n` vertices plus extra edges, as an edge list.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (3usize..=6)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            (Just(n), parents, proptest::collection::vec((0..n, 0..n), 0..3))
        })
        .prop_filter_map("simple graph with at most 7 edges", |(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            (edges.len() <= 7).then(|| Graph::from_edges(n, edges).ok()).flatten()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_match_enumeration(g in connected_graph()) {
        let r = exact_chi_la(&g, &SearchBudget::default()).unwrap();
        prop_assert_eq!(r.value(), naive_chi_la(&g));
        if let Some(w) = r.witness {
            prop_assert!(w.valid);
            prop_assert!(w.recheck(&g).unwrap());
        }
    }
}
