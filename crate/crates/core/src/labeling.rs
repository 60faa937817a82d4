//! Edge labelings, induced vertex colours, and verification certificates.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::FamilySpec;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labels are not a bijection onto 1..={size}: {detail}")]
    NotBijection { size: usize, detail: String },
    #[error("labeling has {labels} entries but the graph has {edges} edges")]
    SizeMismatch { labels: usize, edges: usize },
    #[error("q = {0} is too large for exact vertex sums")]
    Overflow(usize),
}

/// A bijection from `EdgeId`s onto `1..=q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling {
    labels: Vec<u32>,
}

impl EdgeLabeling {
    pub fn new(labels: Vec<u32>) -> Result<Self, LabelingError> {
        let q = labels.len();
        // Every vertex sum is bounded by q(q+1)/2; require q(q+1) to fit in u64
        // and each label to fit in u32.
        if u32::try_from(q).is_err() || (q as u64).checked_mul(q as u64 + 1).is_none() {
            return Err(LabelingError::Overflow(q));
        }
        let mut seen = vec![false; q + 1];
        for (e, &l) in labels.iter().enumerate() {
            let l = l as usize;
            if l == 0 || l > q {
                return Err(LabelingError::NotBijection {
                    size: q,
                    detail: format!("edge {e} has label {l}"),
                });
            }
            if seen[l] {
                return Err(LabelingError::NotBijection {
                    size: q,
                    detail: format!("label {l} is used twice"),
                });
            }
            seen[l] = true;
        }
        Ok(EdgeLabeling { labels })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, e: EdgeId) -> u32 {
        self.labels[e]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edge carrying `label`.
    pub fn edge_of_label(&self, label: u32) -> EdgeId {
        self.labels
            .iter()
            .position(|&l| l == label)
            .expect("labels form a bijection")
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.labels
    }
}

/// Induced vertex sums `f+(v)` and their distinct values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorProfile {
    sums: Vec<u64>,
    distinct: BTreeSet<u64>,
}

impl ColorProfile {
    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    pub fn sum(&self, v: VertexId) -> u64 {
        self.sums[v]
    }

    /// Distinct colours in increasing order.
    pub fn distinct(&self) -> impl Iterator<Item = u64> + '_ {
        self.distinct.iter().copied()
    }

    pub fn distinct_vec(&self) -> Vec<u64> {
        self.distinct.iter().copied().collect()
    }

    pub fn contains(&self, color: u64) -> bool {
        self.distinct.contains(&color)
    }
}

/// `c(f)`, the number of distinct induced colours.
pub fn color_count(p: &ColorProfile) -> usize {
    p.distinct.len()
}

fn check_size(g: &Graph, f: &EdgeLabeling) -> Result<(), LabelingError> {
    if g.size() != f.len() {
        return Err(LabelingError::SizeMismatch {
            labels: f.len(),
            edges: g.size(),
        });
    }
    Ok(())
}

pub fn induced_colors(g: &Graph, f: &EdgeLabeling) -> Result<ColorProfile, LabelingError> {
    check_size(g, f)?;
    let mut sums = vec![0u64; g.order()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let l = u64::from(f.label(e));
        sums[a] = sums[a].checked_add(l).ok_or(LabelingError::Overflow(f.len()))?;
        sums[b] = sums[b].checked_add(l).ok_or(LabelingError::Overflow(f.len()))?;
    }
    // Handshake identity: each label is counted at both ends.
    let q = f.len() as u64;
    assert_eq!(sums.iter().sum::<u64>(), q * (q + 1), "vertex sums must total q(q+1)");
    let distinct = sums.iter().copied().collect();
    Ok(ColorProfile { sums, distinct })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Edges whose endpoints share an induced colour, in canonical edge order.
    pub violations: Vec<EdgeId>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_local_antimagic(g: &Graph, f: &EdgeLabeling) -> Result<Verdict, LabelingError> {
    let profile = induced_colors(g, f)?;
    Ok(verdict_from_profile(g, &profile))
}

fn verdict_from_profile(g: &Graph, profile: &ColorProfile) -> Verdict {
    let violations = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| profile.sum(a) == profile.sum(b))
        .map(|(e, _)| e)
        .collect();
    Verdict { violations }
}

/// Provenance strings used by the constructions and the solver.
pub mod provenance {
    pub const SOLVER: &str = "solver";
    pub const EXTERNAL: &str = "external";
    pub const SEARCH_FALLBACK: &str = "search-fallback";
}

/// Machine-checkable record of a labeling and its verification.
///
/// Serialises to
/// `{spec, order, size, labels, colors, distinct_colors, c, valid, violations, provenance}`
/// plus an optional `note`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: Option<String>,
    pub order: usize,
    pub size: usize,
    pub labels: Vec<u32>,
    /// Vertex name to induced colour, in canonical vertex order.
    pub colors: IndexMap<String, u64>,
    pub distinct_colors: Vec<u64>,
    pub c: usize,
    pub valid: bool,
    /// Endpoint names of each violating edge.
    pub violations: Vec<[String; 2]>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialise")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn labeling(&self) -> Result<EdgeLabeling, LabelingError> {
        EdgeLabeling::new(self.labels.clone())
    }

    /// Re-derives every recorded field from `g` and the stored labels and
    /// reports whether the certificate is internally consistent.
    pub fn recheck(&self, g: &Graph) -> Result<bool, LabelingError> {
        let f = self.labeling()?;
        let fresh = make_certificate(g, &f, self.spec.as_deref(), &self.provenance)?;
        Ok(fresh.order == self.order
            && fresh.size == self.size
            && fresh.colors == self.colors
            && fresh.distinct_colors == self.distinct_colors
            && fresh.c == self.c
            && fresh.valid == self.valid
            && fresh.violations == self.violations)
    }
}

/// Builds a certificate. `spec` is the canonical family text when known.
pub fn make_certificate(
    g: &Graph,
    f: &EdgeLabeling,
    spec: Option<&str>,
    provenance: &str,
) -> Result<Certificate, LabelingError> {
    let profile = induced_colors(g, f)?;
    let verdict = verdict_from_profile(g, &profile);
    let colors = (0..g.order())
        .map(|v| (g.name(v).to_string(), profile.sum(v)))
        .collect();
    let violations = verdict
        .violations
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            [g.name(a).to_string(), g.name(b).to_string()]
        })
        .collect();
    Ok(Certificate {
        spec: spec.map(str::to_string),
        order: g.order(),
        size: g.size(),
        labels: f.labels().to_vec(),
        colors,
        distinct_colors: profile.distinct_vec(),
        c: color_count(&profile),
        valid: verdict.is_valid(),
        violations,
        provenance: provenance.to_string(),
        note: None,
    })
}

/// Convenience for family graphs: certificate tagged with the family text.
pub fn certify_family(
    spec: &FamilySpec,
    g: &Graph,
    f: &EdgeLabeling,
    provenance: &str,
) -> Result<Certificate, LabelingError> {
    make_certificate(g, f, Some(&spec.to_string()), provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Graph};

    fn g(text: &str) -> Graph {
        build_graph(&text.parse().unwrap())
    }

    /// C3 corona O1 with a five-colour labeling; edge order is
    /// u1u2, u2u3, u3u1, u1v1, u2v2, u3v3.
    fn corona_example() -> (Graph, EdgeLabeling) {
        (
            g("Corona(3,1)"),
            EdgeLabeling::new(vec![2, 3, 4, 5, 1, 6]).unwrap(),
        )
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(matches!(
            EdgeLabeling::new(vec![1, 1, 3]),
            Err(LabelingError::NotBijection { .. })
        ));
        assert!(matches!(
            EdgeLabeling::new(vec![0, 1, 2]),
            Err(LabelingError::NotBijection { .. })
        ));
        assert!(matches!(
            EdgeLabeling::new(vec![1, 2, 4]),
            Err(LabelingError::NotBijection { .. })
        ));
        assert!(EdgeLabeling::new(vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn corona_example_colors() {
        let (g, f) = corona_example();
        let p = induced_colors(&g, &f).unwrap();
        assert_eq!(p.distinct_vec(), vec![1, 5, 6, 11, 13]);
        assert_eq!(color_count(&p), 5);
        assert!(verify_local_antimagic(&g, &f).unwrap().is_valid());
    }

    #[test]
    fn star_sums_are_singletons() {
        let star = g("Star(4)");
        let f = EdgeLabeling::new(vec![1, 2, 3]).unwrap();
        let p = induced_colors(&star, &f).unwrap();
        assert_eq!(p.sums(), &[6, 1, 2, 3]);
        assert_eq!(color_count(&p), 4);
    }

    #[test]
    fn book_example_colors() {
        // GB(3,3) order: uv, ux1, x1v, ux2, x2v.
        let book = g("GB(3,3)");
        let f = EdgeLabeling::new(vec![5, 1, 4, 2, 3]).unwrap();
        let p = induced_colors(&book, &f).unwrap();
        assert_eq!(p.sum(0), 8);
        assert_eq!(p.sum(1), 12);
        assert_eq!((p.sum(2), p.sum(3)), (5, 5));
        assert_eq!(color_count(&p), 3);
    }

    #[test]
    fn path_and_cycle_verdicts() {
        let p3 = g("Path(3)");
        let f = EdgeLabeling::new(vec![1, 2]).unwrap();
        let p = induced_colors(&p3, &f).unwrap();
        assert_eq!(p.sums(), &[1, 3, 2]);
        assert!(verify_local_antimagic(&p3, &f).unwrap().is_valid());

        // C4 labelled 1,2,3,4 around the cycle: sums u1=5, u2=3, u3=5, u4=7.
        // The two sum-5 vertices are opposite, so no edge is monochromatic.
        let c4 = g("Cycle(4)");
        let f = EdgeLabeling::new(vec![1, 2, 3, 4]).unwrap();
        let p = induced_colors(&c4, &f).unwrap();
        assert_eq!(p.sums(), &[5, 3, 5, 7]);
        let verdict = verify_local_antimagic(&c4, &f).unwrap();
        assert!(verdict.is_valid());

        // T(2,3) edges: v1v2, v2v3, v3v4, v4v2.
        let t = g("T(2,3)");
        let f = EdgeLabeling::new(vec![4, 2, 3, 1]).unwrap();
        let p = induced_colors(&t, &f).unwrap();
        assert_eq!(p.sums(), &[4, 7, 5, 4]);
        assert!(verify_local_antimagic(&t, &f).unwrap().is_valid());
        let f = EdgeLabeling::new(vec![1, 2, 3, 4]).unwrap();
        let p = induced_colors(&t, &f).unwrap();
        assert_eq!(p.sums(), &[1, 7, 5, 7]);
        let verdict = verify_local_antimagic(&t, &f).unwrap();
        assert_eq!(verdict.violations, vec![3]);
    }

    #[test]
    fn size_mismatch() {
        let p3 = g("Path(3)");
        let f = EdgeLabeling::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(
            induced_colors(&p3, &f),
            Err(LabelingError::SizeMismatch { labels: 3, edges: 2 })
        ));
    }

    #[test]
    fn certificates() {
        let (g, f) = corona_example();
        let cert = make_certificate(&g, &f, Some("Corona(3,1)"), provenance::EXTERNAL).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.c, 5);
        assert!(cert.violations.is_empty());
        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), json);
        assert!(back.recheck(&g).unwrap());
        assert!(!json.contains("note"));

        let bad = EdgeLabeling::new(vec![1, 2, 3, 4, 5, 6]).unwrap();
        let cert = make_certificate(&g, &bad, None, provenance::SOLVER).unwrap();
        let p = induced_colors(&g, &bad).unwrap();
        let expect_invalid = g.edges().iter().any(|&(a, b)| p.sum(a) == p.sum(b));
        assert_eq!(cert.valid, !expect_invalid);
        assert_eq!(cert.provenance, "solver");
    }
}
