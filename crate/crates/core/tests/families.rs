mod common;

use antimagic_core::constructions::{
    book_triangle_colors, label_book_triangles, label_cycle_union_2col, BookPendantCase,
    TwoColorCase,
};
use antimagic_core::oracle::classify_cycle_union;
use antimagic_core::solver::exact_chi_la_with;
use antimagic_core::{
    build_graph, construct, induced_colors, predicted, ConstructionError, FamilySpec,
    PredictedValue, SearchBudget,
};
use common::non_increasing;

fn spec(text: &str) -> FamilySpec {
    text.parse().unwrap()
}

#[test]
fn two_colour_unions_for_many_r() {
    for r in 3..=12 {
        for case in [TwoColorCase::One, TwoColorCase::Two] {
            if case == TwoColorCase::Two && r % 2 == 0 {
                assert!(label_cycle_union_2col(r, case).is_err());
                continue;
            }
            let (s, f) = label_cycle_union_2col(r, case).unwrap();
            let g = build_graph(&s);
            let p = induced_colors(&g, &f).unwrap();
            let (x, y) = case.colors(r);
            assert_eq!(p.distinct_vec(), vec![x, y], "{s}");
            assert_eq!(classify_cycle_union(&case.cycles(r)), 2);
            assert_eq!(construct(&s).unwrap().c, 2);
        }
    }
}

#[test]
fn triangle_books() {
    let g = build_graph(&spec("GB(3,3)"));
    let f = label_book_triangles(2);
    let p = induced_colors(&g, &f).unwrap();
    // u, v, then the two triangle apexes.
    assert_eq!(p.sum(0), 8);
    assert_eq!(p.sum(1), 12);
    for r in 2..=15 {
        let s = FamilySpec::book(&vec![3; r]).unwrap();
        let cert = construct(&s).unwrap();
        assert!(cert.valid && cert.c == 3, "{s}");
        let mut want = book_triangle_colors(r).to_vec();
        want.sort_unstable();
        assert_eq!(cert.distinct_colors, want, "{s}");
    }
    assert!(matches!(construct(&spec("GB(4,3)")), Err(ConstructionError::Unsupported(_))));
}

#[test]
fn books_with_pendants() {
    for r in 2..=7 {
        for m in 1..=12 {
            let s = FamilySpec::book_pendants(r, m).unwrap();
            match BookPendantCase::for_params(r, m) {
                Some(case) => {
                    let cert = construct(&s).unwrap();
                    assert!(cert.valid, "{s}");
                    assert_eq!(cert.c, case.colors(m), "{s}");
                    assert_eq!(predicted(&s).unwrap().value.exact(), Some(cert.c), "{s}");
                }
                None => {
                    assert_eq!((r, m >= 3), (2, true));
                    assert!(matches!(construct(&s), Err(ConstructionError::Unsupported(_))));
                }
            }
        }
    }
}

#[test]
fn two_triangles_with_pendants_by_search() {
    // Not covered by the explicit labelings; the solver settles small cases.
    let budget = SearchBudget::default();
    for m in 3..=6 {
        let s = FamilySpec::book_pendants(2, m).unwrap();
        let g = build_graph(&s);
        let r = exact_chi_la_with(&g, Some(&s), None, &budget).unwrap();
        let v = r.value().unwrap();
        assert!(predicted(&s).unwrap().value.contains(v), "{s}: {v}");
    }
}

#[test]
fn complete_graphs_with_pendants_sweep() {
    for m in 2..=5 {
        for ns in non_increasing(m, 0, 5) {
            let Ok(s) = FamilySpec::complete_pendants(&ns) else {
                continue;
            };
            let cert = construct(&s).unwrap();
            assert!(cert.valid, "{s}");
            let p = predicted(&s).unwrap();
            assert!(cert.c <= p.value.upper(), "{s}: {} vs {}", cert.c, p.value);
        }
    }
}

#[test]
fn caterpillars_sweep() {
    for n1 in 0..=7 {
        for n2 in 0..=7 {
            for n3 in 0..=7 {
                let Ok(s) = FamilySpec::caterpillar3(n1, n2, n3) else {
                    continue;
                };
                let cert = construct(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
                assert!(cert.valid, "{s}");
                assert!(cert.c <= n1 + n2 + n3 + 3, "{s}: {}", cert.c);
            }
        }
    }
}

#[test]
fn caterpillar_corollary_counterexample() {
    let s = spec("Ct(3;3,0,4)");
    let g = build_graph(&s);
    assert_eq!(predicted(&s).unwrap().value, PredictedValue::Exact { value: 10 });
    assert_eq!(construct(&s).unwrap().c, 10);
    let r = exact_chi_la_with(&g, Some(&s), None, &SearchBudget::default()).unwrap();
    assert_eq!(r.value(), Some(9));
}

#[test]
fn hibiscus_carries_a_note() {
    let cert = construct(&spec("H(4,4;3)")).unwrap();
    assert_eq!(cert.c, 5);
    assert!(cert.note.unwrap().contains("differs"));
    assert!(construct(&spec("H(3,3;1)")).unwrap().note.is_none());
}

#[test]
fn paths_cycles_stars() {
    for n in 3..=40 {
        for (text, want) in [(format!("Path({n})"), 3), (format!("Cycle({n})"), 3), (format!("Star({n})"), n)] {
            let cert = construct(&spec(&text)).unwrap();
            assert!(cert.valid, "{text}");
            assert_eq!(cert.c, want, "{text}");
        }
    }
}
