mod common;

use antimagic_core::bounds::{pendant_lower_bound, two_color_necessary};
use antimagic_core::constructions::{label_cycle_union, label_tadpole, tadpole_junction_color};
use antimagic_core::rectangles::{
    b_matrix, b_matrix_row_sum, c_matrix, c_trimmed_row_sums, validate_row_rectangle,
};
use antimagic_core::{
    build_graph, construct, induced_colors, lower_bound, make_certificate, predicted,
    verify_local_antimagic, Certificate, EdgeLabeling, FamilySpec, Graph,
};
use common::small_family_specs;
use proptest::prelude::*;
use proptest::sample::select;

fn family_spec() -> impl Strategy<Value = FamilySpec> {
    select(small_family_specs(12))
}

fn labeling_for(q: usize) -> impl Strategy<Value = EdgeLabeling> {
    Just((1..=q as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| EdgeLabeling::new(v).unwrap())
}

fn graph_and_labeling() -> impl Strategy<Value = (FamilySpec, Graph, EdgeLabeling)> {
    family_spec().prop_flat_map(|s| {
        let g = build_graph(&s);
        let q = g.size();
        (Just(s), Just(g), labeling_for(q))
    })
}

fn cycle_lengths() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(3usize..=12, 2..=6).prop_map(|mut a| {
        a.sort_unstable_by(|x, y| y.cmp(x));
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spec_text_round_trips(s in family_spec()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), s);
    }

    #[test]
    fn handshake_and_certificates((s, g, f) in graph_and_labeling()) {
        let p = induced_colors(&g, &f).unwrap();
        let q = g.size() as u64;
        prop_assert_eq!(p.sums().iter().sum::<u64>(), q * (q + 1));
        let verdict = verify_local_antimagic(&g, &f).unwrap();
        let bad = g.edges().iter().filter(|&&(a, b)| p.sum(a) == p.sum(b)).count();
        prop_assert_eq!(verdict.violations.len(), bad);
        let cert = make_certificate(&g, &f, Some(&s.to_string()), "external").unwrap();
        prop_assert_eq!(cert.valid, bad == 0);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert!(back.recheck(&g).unwrap());
        if cert.valid {
            prop_assert!(cert.c >= lower_bound(&g, Some(&s)).value);
        }
    }

    #[test]
    fn graphs_are_connected_and_simple(s in family_spec()) {
        let g = build_graph(&s);
        prop_assert_eq!(g.degree_multiset().iter().sum::<usize>(), 2 * g.size());
        let reparsed = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(reparsed.edges(), g.edges());
    }

    #[test]
    fn constructions_beat_the_bound(s in family_spec()) {
        if let Ok(cert) = construct(&s) {
            let g = build_graph(&s);
            prop_assert!(cert.valid, "{}", s);
            prop_assert!(cert.recheck(&g).unwrap());
            prop_assert!(cert.c >= lower_bound(&g, Some(&s)).value, "{}", s);
            if let Ok(p) = predicted(&s) {
                prop_assert!(cert.c <= p.construction_c.unwrap_or(p.value.upper()), "{} c={}", s, cert.c);
            }
        }
    }

    #[test]
    fn cycle_union_closed_forms(a in cycle_lengths()) {
        let g = build_graph(&FamilySpec::cycle_union(&a).unwrap());
        let q: usize = a.iter().sum();
        prop_assert_eq!(g.size(), q);
        prop_assert_eq!(g.order(), q - a.len() + 1);
        let f = label_cycle_union(&a);
        let p = induced_colors(&g, &f).unwrap();
        prop_assert!(verify_local_antimagic(&g, &f).unwrap().is_valid());
        prop_assert_eq!(p.distinct().count(), 3);
        let report = two_color_necessary(&g);
        prop_assert_eq!(report.feasible, report.forced.is_some());
    }

    #[test]
    fn hibiscus_measures_k_plus_two(a in cycle_lengths(), k in 1usize..=6) {
        let s = FamilySpec::hibiscus(&a, k).unwrap();
        let cert = construct(&s).unwrap();
        prop_assert!(cert.valid);
        prop_assert_eq!(cert.c, k + 2);
        prop_assert_eq!(pendant_lower_bound(&build_graph(&s)), k + 1);
    }

    #[test]
    fn tadpoles(m in 2usize..=30, n in 3usize..=30) {
        let g = build_graph(&FamilySpec::tadpole(m, n).unwrap());
        prop_assert_eq!(g.size(), m + n - 1);
        let f = label_tadpole(m, n);
        let p = induced_colors(&g, &f).unwrap();
        prop_assert!(verify_local_antimagic(&g, &f).unwrap().is_valid());
        prop_assert_eq!(p.distinct().count(), 3);
        prop_assert!(p.contains(tadpole_junction_color(m, n)));
    }

    #[test]
    fn row_matrices(h in 1usize..=9, k in 1usize..=9) {
        let b = b_matrix(h, k);
        prop_assert!(validate_row_rectangle(&b, &vec![b_matrix_row_sum(h, k); b.rows()]).is_ok());
        let (_, trimmed) = c_matrix(h, k);
        prop_assert!(validate_row_rectangle(&trimmed, &c_trimmed_row_sums(h, k)).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coronas_within_one_of_the_bound(m in 3usize..=9, n in 2usize..=5) {
        let s = FamilySpec::corona(m, n).unwrap();
        let cert = construct(&s).unwrap();
        prop_assert!(cert.valid);
        let diff = cert.c - (m * n + 2);
        prop_assert_eq!(diff, usize::from(m % 2 == 1 || n % 2 == 1));
    }
}
