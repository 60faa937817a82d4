//! Labelings of the corona `C_m ⊙ O_n`.
//!
//! Edge `e_i = u_i u_{i+1}` has index `i - 1`; pendant edge `u_i v_{i,j}` has
//! index `m + (i-1)n + (j-1)`.

use crate::bounds::corona_lower_bound;
use crate::constructions::{label_cycle_3col, ConstructionError};
use crate::family::FamilySpec;
use crate::graph::build_graph;
use crate::labeling::{certify_family, provenance, Certificate, EdgeLabeling};
use crate::rectangles::{b_matrix, c_matrix, magic_rectangle, LabelMatrix};
use crate::solver::{find_labeling_with_color_budget, SearchBudget, SolverError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaOptions {
    /// Search for odd `m` with `n = 1`, where no row-sum construction applies.
    pub fallback: bool,
    pub budget: SearchBudget,
}

impl Default for CoronaOptions {
    fn default() -> Self {
        CoronaOptions {
            fallback: true,
            budget: SearchBudget {
                time_limit: std::time::Duration::from_secs(20),
                max_size: 24,
                ..SearchBudget::default()
            },
        }
    }
}

/// Which corona labeling was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoronaCase {
    EvenEven,
    OddOdd,
    OddEven,
    EvenOdd,
    SearchFallback,
}

impl CoronaCase {
    pub fn for_params(m: usize, n: usize) -> Self {
        match (m % 2, n % 2) {
            (0, 0) => CoronaCase::EvenEven,
            (1, 1) if n == 1 => CoronaCase::SearchFallback,
            (1, 1) => CoronaCase::OddOdd,
            (1, 0) => CoronaCase::OddEven,
            _ => CoronaCase::EvenOdd,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CoronaCase::EvenEven => "corona even/even",
            CoronaCase::OddOdd => "corona odd/odd magic rectangle",
            CoronaCase::OddEven => "corona odd/even row matrix",
            CoronaCase::EvenOdd => "corona even/odd trimmed matrix",
            CoronaCase::SearchFallback => provenance::SEARCH_FALLBACK,
        }
    }
}

struct Slots {
    m: usize,
    n: usize,
    labels: Vec<u32>,
}

impl Slots {
    fn new(m: usize, n: usize) -> Self {
        Slots { m, n, labels: vec![0; m * (n + 1)] }
    }

    /// Cycle edge `e_i`, 1-based.
    fn cycle(&mut self, i: usize, label: u64) {
        self.labels[i - 1] = label as u32;
    }

    /// Pendant edge `u_i v_{i,j}`, 1-based.
    fn pendant(&mut self, i: usize, j: usize, label: u64) {
        self.labels[self.m + (i - 1) * self.n + (j - 1)] = label as u32;
    }

    fn pendant_row(&mut self, i: usize, row: &[u64]) {
        for (j, &x) in row.iter().enumerate() {
            self.pendant(i, j + 1, x);
        }
    }

    fn finish(self) -> EdgeLabeling {
        EdgeLabeling::new(self.labels).expect("corona labels form a bijection")
    }
}

/// `m = 2h`, `n = 2k`: cycle edges `1..=2h`, pendants by four formula groups.
fn even_even(m: usize, n: usize) -> EdgeLabeling {
    let (h, k) = (m / 2, n / 2);
    let mut s = Slots::new(m, n);
    for i in 1..=m {
        s.cycle(i, i as u64);
    }
    let h64 = h as u64;
    s.pendant(1, 1, 4 * h64 + 1);
    s.pendant(1, 2, 6 * h64);
    for i in 2..=h {
        let i64_ = i as u64;
        s.pendant(2 * i - 1, 1, 6 * h64 + 3 - 2 * i64_);
        s.pendant(2 * i - 1, 2, 6 * h64 + 2 - 2 * i64_);
    }
    for i in 1..=h {
        let i64_ = i as u64;
        s.pendant(2 * i, 1, 4 * h64 + 1 - 2 * i64_);
        s.pendant(2 * i, 2, 4 * h64 + 2 - 2 * i64_);
    }
    for r in 1..=m {
        let r64 = r as u64;
        for j in 2..=k {
            let j64 = j as u64;
            s.pendant(r, 2 * j - 1, 2 * h64 * (2 * j64 - 1) + r64);
            s.pendant(r, 2 * j, 2 * h64 * (2 * j64 + 1) + 1 - r64);
        }
    }
    s.finish()
}

/// Odd `m`: pendant rows sharing one row sum, cycle labels shifted by `mn`.
fn odd_cycle_with_rows(m: usize, n: usize, rows: &LabelMatrix) -> EdgeLabeling {
    let mut s = Slots::new(m, n);
    let g = label_cycle_3col(m);
    let shift = (m * n) as u64;
    for i in 1..=m {
        s.cycle(i, u64::from(g.label(i - 1)) + shift);
        s.pendant_row(i, rows.row(i - 1));
    }
    s.finish()
}

/// `m = 2h`, `n = 2k-1`: cycle labels from `{jk}`, pendant rows from the
/// trimmed matrix with a fixed row permutation.
fn even_odd(m: usize, n: usize) -> EdgeLabeling {
    let (h, k) = (m / 2, n.div_ceil(2));
    let (h64, k64) = (h as u64, k as u64);
    let mut s = Slots::new(m, n);
    if h == 2 {
        for (i, mult) in [1u64, 3, 4, 2].into_iter().enumerate() {
            s.cycle(i + 1, mult * k64);
        }
    } else {
        for i in 1..=h {
            s.cycle(2 * i - 1, i as u64 * k64);
            s.cycle(2 * i, (h64 + i as u64) * k64);
        }
    }
    let (_, trimmed) = c_matrix(h, k);
    for i in 1..=h {
        s.pendant_row(2 * i, trimmed.row(2 * i - 1));
    }
    for i in 1..h {
        s.pendant_row(2 * i + 1, trimmed.row(2 * i - 2));
    }
    s.pendant_row(1, trimmed.row(2 * h - 2));
    s.finish()
}

/// Certified labeling of `C_m ⊙ O_n` with default options.
pub fn label_corona(m: usize, n: usize) -> Result<Certificate, ConstructionError> {
    label_corona_with(m, n, &CoronaOptions::default())
}

pub fn label_corona_with(m: usize, n: usize, options: &CoronaOptions) -> Result<Certificate, ConstructionError> {
    let spec = FamilySpec::corona(m, n).map_err(|e| ConstructionError::InvalidParameters(e.to_string()))?;
    let g = build_graph(&spec);
    let case = CoronaCase::for_params(m, n);
    let f = match case {
        CoronaCase::EvenEven => even_even(m, n),
        CoronaCase::OddOdd => odd_cycle_with_rows(m, n, &magic_rectangle(m, n)?),
        CoronaCase::OddEven => odd_cycle_with_rows(m, n, &b_matrix(m / 2, n / 2)),
        CoronaCase::EvenOdd => even_odd(m, n),
        CoronaCase::SearchFallback => {
            if !options.fallback {
                return Err(ConstructionError::Unsupported(format!(
                    "{spec}: odd cycle with one pendant per vertex needs search"
                )));
            }
            let target = corona_lower_bound(m, n);
            let mut found = None;
            for c in [target, target + 1] {
                match find_labeling_with_color_budget(&g, c, &options.budget) {
                    Ok(Some(f)) => {
                        found = Some(f);
                        break;
                    }
                    Ok(None) => continue,
                    Err(SolverError::BudgetExhausted { .. }) => continue,
                    Err(e) => return Err(ConstructionError::SearchFailed(format!("{spec}: {e}"))),
                }
            }
            found.ok_or_else(|| {
                ConstructionError::SearchFailed(format!("{spec}: no labeling with at most {} colours found", target + 1))
            })?
        }
    };
    Ok(certify_family(&spec, &g, &f, case.tag())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::induced_colors;

    fn hub_and_pendant_colors(m: usize, n: usize, cert: &Certificate) -> (Vec<u64>, Vec<u64>) {
        let g = build_graph(&FamilySpec::corona(m, n).unwrap());
        let f = EdgeLabeling::new(cert.labels.clone()).unwrap();
        let p = induced_colors(&g, &f).unwrap();
        let hubs = (0..m).map(|v| p.sum(v)).collect();
        let pendants = (m..g.order()).map(|v| p.sum(v)).collect();
        (hubs, pendants)
    }

    #[test]
    fn even_even_small() {
        let cert = label_corona(4, 2).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.c, 10);
        let (hubs, _) = hub_and_pendant_colors(4, 2, &cert);
        assert_eq!(hubs, vec![26, 18, 26, 18]);
    }

    #[test]
    fn even_odd_h2() {
        let cert = label_corona(4, 1).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.c, 7);
        let (mut hubs, mut pendants) = hub_and_pendant_colors(4, 1, &cert);
        hubs.sort_unstable();
        hubs.dedup();
        pendants.sort_unstable();
        assert_eq!(hubs, vec![9, 11, 15]);
        assert_eq!(pendants, vec![5, 6, 7, 8]);
    }

    #[test]
    fn even_odd_general_hub_colors() {
        let (m, n) = (6, 3);
        let cert = label_corona(m, n).unwrap();
        assert!(cert.valid);
        let (h, k) = (3u64, 2u64);
        let big_n = 4 * h * k * k + k;
        let (mut hubs, _) = hub_and_pendant_colors(m, n, &cert);
        hubs.sort_unstable();
        hubs.dedup();
        assert_eq!(hubs, vec![big_n + 2 * k, big_n + h * k, big_n + (h + 2) * k]);
    }

    #[test]
    fn odd_cases() {
        let cert = label_corona(3, 3).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.c, 12);
        let cert = label_corona(3, 2).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.c, 9);
    }

    #[test]
    fn odd_single_pendant_falls_back() {
        let cert = label_corona(3, 1).unwrap();
        assert!(cert.valid);
        assert_eq!(cert.provenance, provenance::SEARCH_FALLBACK);
        assert_eq!(cert.c, 5);
        let strict = CoronaOptions {
            fallback: false,
            ..CoronaOptions::default()
        };
        assert!(matches!(label_corona_with(3, 1, &strict), Err(ConstructionError::Unsupported(_))));
    }

    #[test]
    fn pendants_below_hubs() {
        for m in 3..=8 {
            for n in 1..=4 {
                if m % 2 == 1 && n == 1 && m > 5 {
                    continue;
                }
                let cert = label_corona(m, n).unwrap();
                assert!(cert.valid, "C{m}.O{n}");
                let (hubs, pendants) = hub_and_pendant_colors(m, n, &cert);
                let gap = cert.c - corona_lower_bound(m, n);
                assert!(gap <= 1, "C{m}.O{n} c={}", cert.c);
                if cert.provenance != provenance::SEARCH_FALLBACK {
                    assert!(hubs.iter().min() > pendants.iter().max(), "C{m}.O{n}");
                }
            }
        }
    }
}
