//! Parameter-grid sweeps: one CSV row per family instance, in grid order.

use std::ops::RangeInclusive;

use antimagic_core::constructions::construct;
use antimagic_core::oracle::Prediction;
use antimagic_core::solver::exact_chi_la_with;
use antimagic_core::{
    build_graph, lower_bound, predicted, ChiLaResult, ChiLaStatus, ConstructionError, FamilyKind,
    FamilySpec,
};
use clap::Args;
use rayon::prelude::*;

use crate::{exit, BudgetArgs, CmdResult, Failure};

pub const DEFAULT_SOLVER_CAP: usize = 16;
pub const CAP_ENV: &str = "ANTIMAGIC_SOLVER_CAP";

pub const COLUMNS: [&str; 8] = ["spec", "q", "n", "lower", "constructed_c", "predicted", "solver", "agree"];

#[derive(Args)]
pub struct SweepArgs {
    /// Family keyword (`C`, `T`, `Corona`, ...) or name (`CycleUnion`, `Tadpole`, ...).
    #[arg(long, requires = "range")]
    family: Option<String>,
    /// Inclusive ranges per parameter, `,` between parameters and `;` between
    /// groups, e.g. `2..6,3..6` or `3;0..2,0..2,0..2`.
    #[arg(long, requires = "family")]
    range: Option<String>,
    /// Explicit instances, swept after the grid.
    #[arg(long = "spec")]
    specs: Vec<String>,
    /// Rows solved in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Solve only instances with at most this many edges.
    #[arg(long)]
    cap: Option<usize>,
    /// Aligned text instead of CSV.
    #[arg(long)]
    human: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn family_kind(name: &str) -> Option<FamilyKind> {
    let lower = name.to_ascii_lowercase();
    let by_name = match lower.as_str() {
        "cycleunion" | "onepointunion" => Some(FamilyKind::CycleUnion),
        "hibiscus" => Some(FamilyKind::Hibiscus),
        "tadpole" => Some(FamilyKind::Tadpole),
        "book" | "generalizedbook" => Some(FamilyKind::Book),
        "bookpendants" => Some(FamilyKind::BookPendants),
        "corona" => Some(FamilyKind::Corona),
        "completependants" => Some(FamilyKind::CompletePendants),
        "caterpillar" | "caterpillar3" => Some(FamilyKind::Caterpillar3),
        "path" => Some(FamilyKind::Path),
        "cycle" => Some(FamilyKind::Cycle),
        "star" => Some(FamilyKind::Star),
        _ => None,
    };
    by_name.or_else(|| FamilyKind::from_keyword(name))
}

fn parse_range(token: &str) -> Option<RangeInclusive<usize>> {
    let token = token.trim();
    match token.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (a <= b).then_some(a..=b)
        }
        None => {
            let v = token.parse().ok()?;
            Some(v..=v)
        }
    }
}

/// Every spec text of the grid in lexicographic parameter order.
pub fn grid_specs(kind: FamilyKind, range: &str) -> Result<Vec<String>, Failure> {
    let groups: Vec<Vec<RangeInclusive<usize>>> = range
        .split(';')
        .map(|g| {
            g.split(',')
                .map(|t| {
                    parse_range(t).ok_or_else(|| Failure::new(exit::MALFORMED, format!("bad range {t:?}")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if groups.len() > 2 {
        return Err(Failure::new(exit::MALFORMED, "at most two parameter groups"));
    }
    let flat: Vec<RangeInclusive<usize>> = groups.iter().flatten().cloned().collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for r in &flat {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                r.clone().map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let split = groups[0].len();
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    Ok(tuples
        .iter()
        .map(|t| {
            if groups.len() == 2 {
                format!("{}({};{})", kind.keyword(), join(&t[..split]), join(&t[split..]))
            } else {
                format!("{}({})", kind.keyword(), join(t))
            }
        })
        .collect())
}

pub fn solver_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(exit::MALFORMED, format!("{CAP_ENV}={v:?} is not an edge count"))),
        Err(_) => Ok(DEFAULT_SOLVER_CAP),
    }
}

#[derive(Debug)]
pub struct Row {
    pub cells: [String; 8],
    pub agree: bool,
    pub problems: Vec<String>,
}

/// Colour count a construction should attain under `p`.
fn construction_consistent(p: &Prediction, c: usize) -> bool {
    match (p.construction_c, p.value.exact()) {
        (Some(expected), _) => c == expected,
        (None, Some(v)) => c == v,
        (None, None) => c <= p.value.upper(),
    }
}

fn describe_solver(r: &ChiLaResult) -> String {
    match r.status {
        ChiLaStatus::Exact => r.lower.to_string(),
        ChiLaStatus::Interval => format!("[{},{}]", r.lower, r.upper.map_or("?".into(), |u| u.to_string())),
        ChiLaStatus::Timeout => "timeout".into(),
    }
}

pub fn sweep_row(spec: &FamilySpec, cap: usize, budget: &antimagic_core::SearchBudget) -> Row {
    let g = build_graph(spec);
    let lower = lower_bound(&g, Some(spec)).value;
    let mut problems = Vec::new();
    let cert = construct(spec);
    let constructed = match &cert {
        Ok(c) => {
            if !c.valid {
                problems.push("construction is not local antimagic".to_string());
            }
            if c.c < lower {
                problems.push(format!("construction uses {} colours, below the lower bound {lower}", c.c));
            }
            c.c.to_string()
        }
        Err(ConstructionError::Unsupported(_)) => "unsupported".to_string(),
        Err(e) => {
            problems.push(format!("construction failed: {e}"));
            "error".to_string()
        }
    };
    let prediction = predicted(spec).ok();
    if let (Some(p), Ok(c)) = (&prediction, &cert) {
        if !construction_consistent(p, c.c) {
            problems.push(format!("construction c={} against prediction {}", c.c, p.value));
        }
    }
    let solver = if g.size() <= cap {
        let hint = cert.as_ref().ok().filter(|c| c.valid).and_then(|c| c.labeling().ok());
        match exact_chi_la_with(&g, Some(spec), hint.as_ref(), budget) {
            Ok(r) => {
                if let Some(v) = r.value() {
                    if let Some(p) = prediction.as_ref().filter(|p| !p.value.contains(v)) {
                        problems.push(format!("solver {v} outside prediction {}", p.value));
                    }
                    if v < lower {
                        problems.push(format!("solver {v} below the lower bound {lower}"));
                    }
                }
                describe_solver(&r)
            }
            Err(e) => {
                problems.push(format!("solver: {e}"));
                "error".to_string()
            }
        }
    } else {
        "-".to_string()
    };
    let agree = problems.is_empty();
    Row {
        cells: [
            spec.to_string(),
            g.size().to_string(),
            g.order().to_string(),
            lower.to_string(),
            constructed,
            prediction.map_or("-".to_string(), |p| p.value.to_string()),
            solver,
            agree.to_string(),
        ],
        agree,
        problems,
    }
}

fn render_human(rows: &[Row]) -> String {
    let mut widths = COLUMNS.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(&row.cells) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&COLUMNS) + "\n";
    for row in rows {
        let cells: Vec<&str> = row.cells.iter().map(String::as_str).collect();
        out += &(line(&cells) + "\n");
    }
    out
}

fn render_csv(rows: &[Row]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write_err = |e: csv::Error| Failure::new(exit::FAILURE, e.to_string());
    w.write_record(COLUMNS).map_err(write_err)?;
    for row in rows {
        w.write_record(&row.cells).map_err(write_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
}

pub fn run(args: &SweepArgs) -> CmdResult {
    let mut texts = Vec::new();
    if let (Some(family), Some(range)) = (&args.family, &args.range) {
        let kind = family_kind(family)
            .ok_or_else(|| Failure::new(exit::MALFORMED, format!("unknown family {family:?}")))?;
        texts = grid_specs(kind, range)?;
    }
    texts.extend(args.specs.iter().cloned());
    if texts.is_empty() {
        return Err(Failure::new(exit::MALFORMED, "give --family with --range, or --spec"));
    }
    let mut specs = Vec::new();
    let mut skipped = 0;
    for text in &texts {
        match text.parse::<FamilySpec>() {
            Ok(s) => specs.push(s),
            // Grid points outside the family's domain are not instances.
            Err(antimagic_core::SpecError::Domain(_)) if args.family.is_some() && !args.specs.contains(text) => {
                skipped += 1
            }
            Err(e) => return Err(Failure::new(exit::MALFORMED, format!("bad spec {text:?}: {e}"))),
        }
    }
    let cap = solver_cap(args.cap)?;
    let mut budget = args.budget.to_budget(1)?;
    budget.max_size = budget.max_size.max(cap);
    budget.parallel = None;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::new(exit::FAILURE, e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| specs.par_iter().map(|s| sweep_row(s, cap, &budget)).collect());
    let out = if args.human { render_human(&rows) } else { render_csv(&rows)? };
    crate::print_stdout(&out);
    if skipped > 0 {
        eprintln!("skipped {skipped} grid points outside the family domain");
    }
    let mut disagreements = 0;
    for row in rows.iter().filter(|r| !r.agree) {
        disagreements += 1;
        eprintln!("{}: {}", row.cells[0], row.problems.join("; "));
    }
    if disagreements > 0 {
        eprintln!("{disagreements} of {} rows disagree", rows.len());
        Ok(exit::FAILURE)
    } else {
        Ok(exit::OK)
    }
}
