//! Exact search for local antimagic labelings with few colours.
//!
//! Labels are assigned to edges in a fixed order (descending endpoint degree
//! sum, then `EdgeId`). A vertex is *finished* once all its incident edges are
//! labelled; a branch is cut when a finished vertex matches the colour of a
//! finished neighbour or when the finished vertices already use more than `c`
//! colours.
//!
//! Pendant edges at a common vertex are interchangeable, so with symmetry
//! reduction enabled their labels are forced to increase with `EdgeId`.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{lower_bound, BoundSource};
use crate::family::FamilySpec;
use crate::graph::{Graph, VertexId};
use crate::labeling::{color_count, induced_colors, make_certificate, provenance, Certificate, EdgeLabeling};

/// Edge count accepted by default for targeted search.
pub const DEFAULT_MAX_SIZE: usize = 16;
/// Labels are tracked in a `u64` bitmask.
pub const HARD_MAX_SIZE: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {size} edges, above the search cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Worker count; `None` or `Some(1)` searches sequentially.
    pub parallel: Option<usize>,
    pub max_size: usize,
    /// Force increasing labels on interchangeable pendant edges.
    pub symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 2_000_000_000,
            time_limit: Duration::from_secs(60),
            parallel: None,
            max_size: DEFAULT_MAX_SIZE,
            symmetry: true,
        }
    }
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit: Duration) -> Result<Self, SolverError> {
        if node_limit == 0 || time_limit.is_zero() {
            return Err(SolverError::InvalidBudget("limits must be positive".into()));
        }
        Ok(SearchBudget {
            node_limit,
            time_limit,
            ..SearchBudget::default()
        })
    }

    pub fn with_parallel(mut self, width: usize) -> Self {
        self.parallel = Some(width.max(1));
        self
    }

    pub fn with_max_size(mut self, cap: usize) -> Self {
        self.max_size = cap;
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    fn check(&self, g: &Graph) -> Result<(), SolverError> {
        if self.node_limit == 0 || self.time_limit.is_zero() {
            return Err(SolverError::InvalidBudget("limits must be positive".into()));
        }
        let cap = self.max_size.min(HARD_MAX_SIZE);
        if g.size() > cap {
            return Err(SolverError::TooLarge { size: g.size(), cap });
        }
        Ok(())
    }
}

/// Static data shared by every branch of one search.
struct Plan {
    q: usize,
    order: Vec<usize>,
    ends: Vec<(VertexId, VertexId)>,
    /// Vertices whose last incident edge sits at each position.
    finishes: Vec<Vec<VertexId>>,
    adjacency: Vec<Vec<VertexId>>,
    /// `(earlier position, this label must exceed it)`.
    twins: Vec<Vec<(usize, bool)>>,
    max_sum: usize,
}

impl Plan {
    fn new(g: &Graph, symmetry: bool) -> Self {
        let q = g.size();
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by_key(|&e| {
            let (a, b) = g.edge(e);
            (std::cmp::Reverse(g.degree(a) + g.degree(b)), e)
        });
        let mut position = vec![0; q];
        for (p, &e) in order.iter().enumerate() {
            position[e] = p;
        }
        let ends = order.iter().map(|&e| g.edge(e)).collect();
        let mut finishes = vec![Vec::new(); q];
        for v in 0..g.order() {
            let last = g.incident(v).iter().map(|&e| position[e]).max().expect("connected");
            finishes[last].push(v);
        }
        let adjacency = (0..g.order()).map(|v| g.neighbors(v).collect()).collect();
        let mut twins = vec![Vec::new(); q];
        if symmetry {
            for hub in 0..g.order() {
                let pendants: Vec<usize> = g
                    .incident(hub)
                    .iter()
                    .copied()
                    .filter(|&e| g.degree(g.other_end(e, hub)) == 1)
                    .collect();
                for pair in pendants.windows(2) {
                    let (lo, hi) = (position[pair[0]], position[pair[1]]);
                    // label(pair[0]) < label(pair[1]); recorded on the later position.
                    if lo < hi {
                        twins[hi].push((lo, true));
                    } else {
                        twins[lo].push((hi, false));
                    }
                }
            }
        }
        Plan {
            q,
            order,
            ends,
            finishes,
            adjacency,
            twins,
            max_sum: q * (q + 1) / 2,
        }
    }
}

/// Budget state shared across levels and workers.
struct Shared {
    deadline: Instant,
    node_limit: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Shared {
    fn new(budget: &SearchBudget) -> Self {
        Shared {
            deadline: Instant::now() + budget.time_limit,
            node_limit: budget.node_limit,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    NotFound,
    Exhausted,
    Aborted,
}

const FLUSH_EVERY: u64 = 1024;

struct Searcher<'a> {
    plan: &'a Plan,
    shared: &'a Shared,
    /// `(lowest branch that found a witness, this branch)`.
    abort: Option<(&'a AtomicUsize, usize)>,
    c: usize,
    labels: Vec<u32>,
    used: u64,
    sums: Vec<u64>,
    finished: Vec<bool>,
    color_count: Vec<u32>,
    distinct: usize,
    pending_nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(plan: &'a Plan, shared: &'a Shared, c: usize, order: usize) -> Self {
        Searcher {
            plan,
            shared,
            abort: None,
            c,
            labels: vec![0; plan.q],
            used: 0,
            sums: vec![0; order],
            finished: vec![false; order],
            color_count: vec![0; plan.max_sum + 1],
            distinct: 0,
            pending_nodes: 0,
        }
    }

    fn flush(&mut self) -> Option<Flow> {
        let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
        self.pending_nodes = 0;
        if self.shared.exhausted.load(Ordering::Relaxed)
            || total > self.shared.node_limit
            || Instant::now() >= self.shared.deadline
        {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            return Some(Flow::Exhausted);
        }
        if let Some((best, me)) = self.abort {
            if best.load(Ordering::Relaxed) < me {
                return Some(Flow::Aborted);
            }
        }
        None
    }

    /// Marks the vertices finishing at `pos`; returns how many were marked and
    /// whether the partial labeling is still admissible.
    fn finish(&mut self, pos: usize) -> (usize, bool) {
        let mut marked = 0;
        for &v in &self.plan.finishes[pos] {
            let s = self.sums[v];
            if self.plan.adjacency[v].iter().any(|&w| self.finished[w] && self.sums[w] == s) {
                return (marked, false);
            }
            self.finished[v] = true;
            marked += 1;
            let slot = &mut self.color_count[s as usize];
            *slot += 1;
            if *slot == 1 {
                self.distinct += 1;
                if self.distinct > self.c {
                    return (marked, false);
                }
            }
        }
        (marked, true)
    }

    fn unfinish(&mut self, pos: usize, marked: usize) {
        for &v in self.plan.finishes[pos][..marked].iter() {
            self.finished[v] = false;
            let slot = &mut self.color_count[self.sums[v] as usize];
            *slot -= 1;
            if *slot == 0 {
                self.distinct -= 1;
            }
        }
    }

    fn assign(&mut self, pos: usize, label: u32) -> (usize, bool) {
        let (a, b) = self.plan.ends[pos];
        self.labels[pos] = label;
        self.used |= 1 << label;
        self.sums[a] += u64::from(label);
        self.sums[b] += u64::from(label);
        self.finish(pos)
    }

    fn unassign(&mut self, pos: usize, label: u32, marked: usize) {
        self.unfinish(pos, marked);
        let (a, b) = self.plan.ends[pos];
        self.sums[a] -= u64::from(label);
        self.sums[b] -= u64::from(label);
        self.used &= !(1 << label);
        self.labels[pos] = 0;
    }

    fn dfs(&mut self, pos: usize) -> Flow {
        if pos == self.plan.q {
            return Flow::Found;
        }
        self.pending_nodes += 1;
        if self.pending_nodes >= FLUSH_EVERY {
            if let Some(stop) = self.flush() {
                return stop;
            }
        }
        let (mut lo, mut hi) = (1u32, self.plan.q as u32);
        for &(p, greater) in &self.plan.twins[pos] {
            let other = self.labels[p];
            if greater {
                lo = lo.max(other + 1);
            } else {
                hi = hi.min(other - 1);
            }
        }
        for label in lo..=hi {
            if self.used & (1 << label) != 0 {
                continue;
            }
            let (marked, ok) = self.assign(pos, label);
            if ok {
                match self.dfs(pos + 1) {
                    Flow::NotFound => {}
                    other => {
                        if other != Flow::Found {
                            self.unassign(pos, label, marked);
                        }
                        return other;
                    }
                }
            }
            self.unassign(pos, label, marked);
        }
        Flow::NotFound
    }

    fn witness(&self) -> Vec<u32> {
        let mut labels = vec![0; self.plan.q];
        for (p, &e) in self.plan.order.iter().enumerate() {
            labels[e] = self.labels[p];
        }
        labels
    }
}

enum Level {
    Found(Vec<u32>),
    Absent,
    Exhausted,
}

fn search_level(g: &Graph, plan: &Plan, shared: &Shared, c: usize, width: usize) -> Level {
    let finish = |mut s: Searcher, flow: Flow| -> (Flow, Option<Vec<u32>>) {
        let _ = s.flush();
        let w = (flow == Flow::Found).then(|| s.witness());
        (flow, w)
    };
    if width <= 1 || plan.q < 2 {
        let mut s = Searcher::new(plan, shared, c, g.order());
        let flow = s.dfs(0);
        return match finish(s, flow) {
            (Flow::Found, Some(w)) => Level::Found(w),
            (Flow::NotFound, _) => Level::Absent,
            _ => Level::Exhausted,
        };
    }
    let best = AtomicUsize::new(usize::MAX);
    let run = || {
        (1..=plan.q as u32)
            .into_par_iter()
            .map(|label| {
                let branch = label as usize;
                let mut s = Searcher::new(plan, shared, c, g.order());
                s.abort = Some((&best, branch));
                let (marked, ok) = s.assign(0, label);
                let flow = if ok { s.dfs(1) } else { Flow::NotFound };
                if flow == Flow::Found {
                    best.fetch_min(branch, Ordering::Relaxed);
                } else if ok {
                    s.unassign(0, label, marked);
                }
                finish(s, flow)
            })
            .collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(width).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    if let Some((_, w)) = results.iter().find(|(f, _)| *f == Flow::Found) {
        return Level::Found(w.clone().expect("found branches carry a witness"));
    }
    if results.iter().any(|(f, _)| *f == Flow::Exhausted) {
        Level::Exhausted
    } else {
        Level::Absent
    }
}

/// A valid labeling with at most `c` colours, `Ok(None)` when the search
/// proves none exists, or an error when the budget runs out first.
pub fn find_labeling_with_color_budget(
    g: &Graph,
    c: usize,
    budget: &SearchBudget,
) -> Result<Option<EdgeLabeling>, SolverError> {
    budget.check(g)?;
    let plan = Plan::new(g, budget.symmetry);
    let shared = Shared::new(budget);
    match search_level(g, &plan, &shared, c, budget.parallel.unwrap_or(1)) {
        Level::Found(w) => Ok(Some(EdgeLabeling::new(w).expect("search assigns a bijection"))),
        Level::Absent => Ok(None),
        Level::Exhausted => Err(SolverError::BudgetExhausted { nodes: shared.nodes() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiLaStatus {
    Exact,
    Interval,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiLaResult {
    pub status: ChiLaStatus,
    pub lower: usize,
    /// Colour count of the witness, when one is known.
    pub upper: Option<usize>,
    pub lower_source: BoundSource,
    /// `true` when `lower` was raised by exhausting smaller colour budgets.
    pub lower_by_search: bool,
    pub witness: Option<Certificate>,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

impl ChiLaResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == ChiLaStatus::Exact).then_some(self.lower)
    }
}

/// Budget for the witness hunt after a timeout.
const WITNESS_RESCUE_NODES: u64 = 5_000_000;
const WITNESS_RESCUE_TIME: Duration = Duration::from_secs(2);

/// Exact `chi_la(g)` by raising the colour budget from the lower bound.
pub fn exact_chi_la(g: &Graph, budget: &SearchBudget) -> Result<ChiLaResult, SolverError> {
    exact_chi_la_with(g, None, None, budget)
}

/// As [`exact_chi_la`]; `spec` sharpens the starting bound and a valid `hint`
/// caps the levels that need searching.
pub fn exact_chi_la_with(
    g: &Graph,
    spec: Option<&FamilySpec>,
    hint: Option<&EdgeLabeling>,
    budget: &SearchBudget,
) -> Result<ChiLaResult, SolverError> {
    budget.check(g)?;
    let start = Instant::now();
    let bound = lower_bound(g, spec);
    let spec_text = spec.map(|s| s.to_string());
    let cert = |f: &EdgeLabeling, tag: &str| {
        make_certificate(g, f, spec_text.as_deref(), tag).expect("labeling fits the graph")
    };
    let hint = hint
        .filter(|f| f.len() == g.size())
        .map(|f| cert(f, provenance::EXTERNAL))
        .filter(|c| c.valid);
    let plan = Plan::new(g, budget.symmetry);
    let shared = Shared::new(budget);
    let width = budget.parallel.unwrap_or(1);
    let mut level = bound.value;
    let mut witness = None;
    let mut timed_out = false;
    loop {
        if let Some(h) = hint.as_ref().filter(|h| level >= h.c) {
            witness = Some(h.clone());
            break;
        }
        if level > g.order() {
            break;
        }
        match search_level(g, &plan, &shared, level, width) {
            Level::Found(w) => {
                let f = EdgeLabeling::new(w).expect("search assigns a bijection");
                witness = Some(cert(&f, provenance::SOLVER));
                break;
            }
            Level::Absent => level += 1,
            Level::Exhausted => {
                timed_out = true;
                break;
            }
        }
    }
    if timed_out && witness.is_none() {
        witness = hint.clone().or_else(|| {
            let rescue = SearchBudget {
                node_limit: WITNESS_RESCUE_NODES,
                time_limit: WITNESS_RESCUE_TIME,
                ..budget.clone()
            };
            let shared = Shared::new(&rescue);
            match search_level(g, &plan, &shared, g.order(), width) {
                Level::Found(w) => Some(cert(&EdgeLabeling::new(w).expect("bijection"), provenance::SOLVER)),
                _ => None,
            }
        });
    }
    let upper = witness.as_ref().map(|w| w.c);
    let status = match (timed_out, upper) {
        (false, Some(_)) => ChiLaStatus::Exact,
        (true, Some(_)) => ChiLaStatus::Interval,
        _ => ChiLaStatus::Timeout,
    };
    let lower = if status == ChiLaStatus::Exact { upper.expect("exact has witness") } else { level };
    if let Some(w) = &witness {
        let f = EdgeLabeling::new(w.labels.clone()).expect("bijection");
        debug_assert_eq!(color_count(&induced_colors(g, &f).expect("fits")), w.c);
    }
    Ok(ChiLaResult {
        status,
        lower,
        upper,
        lower_source: bound.source,
        lower_by_search: level > bound.value,
        witness,
        nodes: shared.nodes(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
