//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use std::collections::HashSet;

use antimagic_core::{build_graph, FamilySpec, Graph};
use itertools::Itertools;

/// Minimum colour count over all `q!` bijections, or `None` when no labeling
/// is local antimagic. Independent of the solver: no pruning, no ordering.
pub fn naive_chi_la(g: &Graph) -> Option<usize> {
    let q = g.size();
    let mut best: Option<usize> = None;
    let mut sums = vec![0u64; g.order()];
    for perm in (1..=q as u64).permutations(q) {
        sums.iter_mut().for_each(|s| *s = 0);
        for (e, &label) in perm.iter().enumerate() {
            let (a, b) = g.edge(e);
            sums[a] += label;
            sums[b] += label;
        }
        if g.edges().iter().any(|&(a, b)| sums[a] == sums[b]) {
            continue;
        }
        let c = sums.iter().collect::<HashSet<_>>().len();
        best = Some(best.map_or(c, |b| b.min(c)));
    }
    best
}

fn push(out: &mut Vec<FamilySpec>, max_q: usize, text: String) {
    if let Ok(spec) = text.parse::<FamilySpec>() {
        if build_graph(&spec).size() <= max_q && !out.contains(&spec) {
            out.push(spec);
        }
    }
}

/// Non-increasing tuples of length `len` with entries in `lo..=hi`.
pub fn non_increasing(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut rest in non_increasing(len - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).join(",")
}

/// Every family instance with at most `max_q` edges, plus paths, cycles and
/// stars, each listed once.
pub fn small_family_specs(max_q: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for r in 2..=max_q / 3 {
        for a in non_increasing(r, 3, max_q) {
            push(&mut out, max_q, format!("C({})", join(&a)));
            push(&mut out, max_q, format!("GB({})", join(&a)));
            for k in 1..=max_q {
                push(&mut out, max_q, format!("H({};{k})", join(&a)));
            }
        }
    }
    for m in 2..=max_q {
        for n in 3..=max_q {
            push(&mut out, max_q, format!("T({m},{n})"));
        }
    }
    for r in 2..=max_q {
        for m in 1..=max_q {
            push(&mut out, max_q, format!("GP({r};{m})"));
        }
    }
    for m in 3..=max_q {
        for n in 1..=max_q {
            push(&mut out, max_q, format!("Corona({m},{n})"));
        }
    }
    for m in 1..=5 {
        for ns in non_increasing(m, 0, max_q) {
            push(&mut out, max_q, format!("K({m};{})", join(&ns)));
        }
    }
    for n1 in 0..=max_q {
        for n2 in 0..=max_q {
            for n3 in 0..=max_q {
                push(&mut out, max_q, format!("Ct(3;{n1},{n2},{n3})"));
            }
        }
    }
    for n in 3..=max_q + 1 {
        push(&mut out, max_q, format!("Path({n})"));
        push(&mut out, max_q, format!("Cycle({n})"));
        push(&mut out, max_q, format!("Star({n})"));
    }
    out
}
