//! Lower bounds on the local antimagic chromatic number.

use serde::{Deserialize, Serialize};

use crate::family::{FamilyKind, FamilySpec};
use crate::graph::{
    bipartition, chromatic_number_with_budget, pendant_count, Chromatic, Graph,
    DEFAULT_CHROMATIC_NODES,
};

/// One more than the number of pendants.
pub fn pendant_lower_bound(g: &Graph) -> usize {
    pendant_count(g) + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoColorObstruction {
    NotBipartite,
    EqualParts,
    NonIntegral,
}

/// Outcome of the two-colour counting test `xX = yY = q(q+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColorReport {
    pub feasible: bool,
    /// `(x, y, X, Y)` with `x < y` and `X > Y`, present iff feasible.
    pub forced: Option<(u64, u64, usize, usize)>,
    pub obstruction: Option<TwoColorObstruction>,
}

impl TwoColorReport {
    fn infeasible(why: TwoColorObstruction) -> Self {
        TwoColorReport {
            feasible: false,
            forced: None,
            obstruction: Some(why),
        }
    }
}

/// Necessary condition for a two-colour labeling. Infeasible implies at least
/// three colours.
pub fn two_color_necessary(g: &Graph) -> TwoColorReport {
    let Some((big, small)) = bipartition(g) else {
        return TwoColorReport::infeasible(TwoColorObstruction::NotBipartite);
    };
    if big == small {
        return TwoColorReport::infeasible(TwoColorObstruction::EqualParts);
    }
    let q = g.size() as u64;
    let half = q * (q + 1) / 2;
    let (bx, by) = (big as u64, small as u64);
    if !half.is_multiple_of(bx) || !half.is_multiple_of(by) {
        return TwoColorReport::infeasible(TwoColorObstruction::NonIntegral);
    }
    TwoColorReport {
        feasible: true,
        forced: Some((half / bx, half / by, big, small)),
        obstruction: None,
    }
}

/// `mn + 2` for the corona of `C_m` with `n` pendants per cycle vertex.
pub fn corona_lower_bound(m: usize, n: usize) -> usize {
    m * n + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    Pendant,
    Chromatic,
    TwoColorLemma,
    CoronaLemma,
    Trivial,
}

impl BoundSource {
    pub fn tag(self) -> &'static str {
        match self {
            BoundSource::Pendant => "pendant",
            BoundSource::Chromatic => "chromatic",
            BoundSource::TwoColorLemma => "two-color-lemma",
            BoundSource::CoronaLemma => "corona-lemma",
            BoundSource::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    pub source: BoundSource,
}

/// Lower bound on `chi(g)` that never overstates: exact when the colouring
/// search finishes, otherwise 2 or 3 from the bipartite test.
pub fn chromatic_lower_bound(g: &Graph) -> usize {
    let cap = g.order();
    match chromatic_number_with_budget(g, cap, DEFAULT_CHROMATIC_NODES) {
        Ok(Chromatic::Exact(k)) => k,
        Ok(Chromatic::ExceedsCap(cap)) => cap + 1,
        Err(_) => {
            if bipartition(g).is_some() {
                2
            } else {
                3
            }
        }
    }
}

/// Largest applicable bound; ties go to the earlier of pendant, chromatic,
/// two-colour lemma, corona lemma.
pub fn lower_bound(g: &Graph, spec: Option<&FamilySpec>) -> LowerBound {
    let mut candidates = vec![
        (1, BoundSource::Trivial),
        (pendant_lower_bound(g), BoundSource::Pendant),
        (chromatic_lower_bound(g), BoundSource::Chromatic),
    ];
    if !two_color_necessary(g).feasible {
        candidates.push((3, BoundSource::TwoColorLemma));
    }
    if let Some(spec) = spec.filter(|s| s.kind() == FamilyKind::Corona) {
        candidates.push((corona_lower_bound(spec.head()[0], spec.head()[1]), BoundSource::CoronaLemma));
    }
    let mut best = LowerBound {
        value: 0,
        source: BoundSource::Trivial,
    };
    for (value, source) in candidates {
        if value > best.value {
            best = LowerBound { value, source };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn g(text: &str) -> (Graph, FamilySpec) {
        let spec: FamilySpec = text.parse().unwrap();
        (build_graph(&spec), spec)
    }

    #[test]
    fn pendant_bounds() {
        assert_eq!(pendant_lower_bound(&g("Star(5)").0), 5);
        assert_eq!(pendant_lower_bound(&g("H(3,3;2)").0), 3);
        assert_eq!(pendant_lower_bound(&g("C(3,3)").0), 1);
    }

    #[test]
    fn two_color_lemma() {
        let r = two_color_necessary(&g("C(6,4,4)").0);
        assert_eq!(r.forced, Some((15, 21, 7, 5)));
        let r = two_color_necessary(&g("T(2,4)").0);
        assert_eq!(r.obstruction, Some(TwoColorObstruction::NonIntegral));
        let r = two_color_necessary(&g("T(3,4)").0);
        assert_eq!(r.obstruction, Some(TwoColorObstruction::EqualParts));
        let r = two_color_necessary(&g("C(3,3)").0);
        assert_eq!(r.obstruction, Some(TwoColorObstruction::NotBipartite));
    }

    #[test]
    fn corona_bounds() {
        assert_eq!(corona_lower_bound(3, 1), 5);
        assert_eq!(corona_lower_bound(4, 2), 10);
        assert_eq!(corona_lower_bound(3, 3), 11);
    }

    #[test]
    fn combined_bounds() {
        let (k, s) = g("K(2;2,2)");
        assert_eq!(lower_bound(&k, Some(&s)), LowerBound { value: 5, source: BoundSource::Pendant });
        let (c, s) = g("C(3,3)");
        assert_eq!(lower_bound(&c, Some(&s)), LowerBound { value: 3, source: BoundSource::Chromatic });
        let (c, s) = g("Corona(3,1)");
        assert_eq!(lower_bound(&c, Some(&s)), LowerBound { value: 5, source: BoundSource::CoronaLemma });
        let (t, s) = g("T(2,4)");
        assert_eq!(lower_bound(&t, Some(&s)), LowerBound { value: 3, source: BoundSource::TwoColorLemma });
    }
}
