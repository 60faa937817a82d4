//! Integer matrices with prescribed row (and column) sums used by the corona
//! labelings.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RectangleError {
    #[error("no magic ({0},{1}) rectangle exists")]
    Nonexistent(usize, usize),
    #[error("magic ({0},{1}) rectangles with even sides are not supported")]
    Unsupported(usize, usize),
    #[error("search for a magic ({0},{1}) rectangle gave up")]
    SearchExhausted(usize, usize),
    #[error("matrix entries violate the declared range or are repeated: {0}")]
    Invalid(String),
}

/// Row-major matrix of distinct integers inside `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    lo: u64,
    hi: u64,
}

impl LabelMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>, lo: u64, hi: u64) -> Result<Self, RectangleError> {
        if data.len() != rows * cols {
            return Err(RectangleError::Invalid(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let m = LabelMatrix { rows, cols, data, lo, hi };
        let problems = m.entry_problems();
        if let Some(p) = problems.into_iter().next() {
            return Err(RectangleError::Invalid(p));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn range(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn transpose(&self) -> LabelMatrix {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        LabelMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            lo: self.lo,
            hi: self.hi,
        }
    }

    /// Drops the last column.
    pub fn without_last_column(&self) -> LabelMatrix {
        let cols = self.cols - 1;
        let data = (0..self.rows)
            .flat_map(|i| self.row(i)[..cols].to_vec())
            .collect();
        LabelMatrix {
            rows: self.rows,
            cols,
            data,
            lo: self.lo,
            hi: self.hi,
        }
    }

    fn entry_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut seen = BTreeSet::new();
        for &x in &self.data {
            if x < self.lo || x > self.hi {
                problems.push(format!("entry {x} outside [{}, {}]", self.lo, self.hi));
            }
            if !seen.insert(x) {
                problems.push(format!("entry {x} repeated"));
            }
        }
        problems
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleReport {
    pub distinct_and_in_range: bool,
    pub row_sums_match: bool,
    /// `None` when column sums were not checked.
    pub col_sums_match: Option<bool>,
    pub problems: Vec<String>,
}

impl RectangleReport {
    pub fn is_ok(&self) -> bool {
        self.distinct_and_in_range && self.row_sums_match && self.col_sums_match != Some(false)
    }
}

pub fn validate_row_rectangle(m: &LabelMatrix, expected_row_sums: &[u64]) -> RectangleReport {
    let mut problems = m.entry_problems();
    let distinct_and_in_range = problems.is_empty();
    let sums = m.row_sums();
    let row_sums_match = sums == expected_row_sums;
    if !row_sums_match {
        problems.push(format!("row sums {sums:?}, expected {expected_row_sums:?}"));
    }
    RectangleReport {
        distinct_and_in_range,
        row_sums_match,
        col_sums_match: None,
        problems,
    }
}

/// Checks that `m` is a permutation of `1..=rows*cols` with constant row and
/// column sums.
pub fn validate_magic_rectangle(m: &LabelMatrix) -> RectangleReport {
    let (r, c) = (m.rows() as u64, m.cols() as u64);
    let total = r * c;
    let mut report = validate_row_rectangle(m, &vec![c * (total + 1) / 2; m.rows()]);
    let mut sorted = m.entries().to_vec();
    sorted.sort_unstable();
    if sorted != (1..=total).collect::<Vec<_>>() {
        report.distinct_and_in_range = false;
        report.problems.push(format!("entries are not 1..={total}"));
    }
    let cols = m.col_sums();
    let expected = r * (total + 1) / 2;
    let ok = cols.iter().all(|&s| s == expected);
    if !ok {
        report.problems.push(format!("column sums {cols:?}, expected {expected}"));
    }
    report.col_sums_match = Some(ok);
    report
}

/// `(2h+1) x 2k` matrix whose i-th row is `((i-1)k + t)_t` followed by
/// `((4h+2-i)k + t)_t` for `t = 1..=k`. Rows partition `1..=(4h+2)k` and all
/// sum to `4hk^2 + 2k^2 + k`.
pub fn b_matrix(h: usize, k: usize) -> LabelMatrix {
    assert!(h >= 1 && k >= 1, "b_matrix needs h, k >= 1");
    let (h64, k64) = (h as u64, k as u64);
    let mut data = Vec::with_capacity((2 * h + 1) * 2 * k);
    for i in 1..=2 * h64 + 1 {
        data.extend((1..=k64).map(|t| (i - 1) * k64 + t));
        data.extend((1..=k64).map(|t| (4 * h64 + 2 - i) * k64 + t));
    }
    LabelMatrix::new(2 * h + 1, 2 * k, data, 1, (4 * h64 + 2) * k64).expect("b_matrix entries are distinct")
}

pub fn b_matrix_row_sum(h: usize, k: usize) -> u64 {
    let (h, k) = (h as u64, k as u64);
    4 * h * k * k + 2 * k * k + k
}

/// `2h x 2k` matrix whose i-th row is `((4h-i)k + t)_t` followed by
/// `((i-1)k + t)_t`, together with the matrix obtained by deleting its last
/// column. Full rows sum to `N = 4hk^2 + k`; trimmed row `i` sums to `N - ik`.
pub fn c_matrix(h: usize, k: usize) -> (LabelMatrix, LabelMatrix) {
    assert!(h >= 1 && k >= 1, "c_matrix needs h, k >= 1");
    let (h64, k64) = (h as u64, k as u64);
    let mut data = Vec::with_capacity(2 * h * 2 * k);
    for i in 1..=2 * h64 {
        data.extend((1..=k64).map(|t| (4 * h64 - i) * k64 + t));
        data.extend((1..=k64).map(|t| (i - 1) * k64 + t));
    }
    let full = LabelMatrix::new(2 * h, 2 * k, data, 1, 4 * h64 * k64).expect("c_matrix entries are distinct");
    let trimmed = full.without_last_column();
    (full, trimmed)
}

pub fn c_matrix_row_sum(h: usize, k: usize) -> u64 {
    let (h, k) = (h as u64, k as u64);
    4 * h * k * k + k
}

/// Expected row sums of the trimmed C matrix: `N - ik` for `i = 1..=2h`.
pub fn c_trimmed_row_sums(h: usize, k: usize) -> Vec<u64> {
    let n = c_matrix_row_sum(h, k);
    (1..=2 * h as u64).map(|i| n - i * k as u64).collect()
}

const DFS_NODE_LIMIT: u64 = 200_000;
const LOCAL_SEARCH_STEPS: u64 = 20_000_000;
const LOCAL_SEARCH_RESTARTS: u64 = 8;
const LOCAL_SEARCH_SEED: u64 = 0x6d61_6769_6372_6563;

fn cache() -> &'static Mutex<HashMap<(usize, usize), LabelMatrix>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), LabelMatrix>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A magic `(m, n)` rectangle on `1..=mn` for odd `m`, `n`.
///
/// Squares use the Siamese method. Other shapes try a bounded backtracking
/// search and then a seeded swap-based local search; results are cached per
/// unordered shape and transposed as needed.
pub fn magic_rectangle(m: usize, n: usize) -> Result<LabelMatrix, RectangleError> {
    if m == 0 || n == 0 {
        return Err(RectangleError::Nonexistent(m, n));
    }
    if m == 1 && n == 1 {
        return Ok(LabelMatrix::new(1, 1, vec![1], 1, 1).expect("single cell"));
    }
    if m == 1 || n == 1 {
        return Err(RectangleError::Nonexistent(m, n));
    }
    if m.is_multiple_of(2) || n.is_multiple_of(2) {
        return Err(RectangleError::Unsupported(m, n));
    }
    let key = (m.min(n), m.max(n));
    let cached = cache().lock().expect("cache lock").get(&key).cloned();
    let base = match cached {
        Some(found) => found,
        None => {
            let found = if key.0 == key.1 {
                siamese(key.0)
            } else {
                backtrack(key.0, key.1)
                    .or_else(|| local_search(key.0, key.1))
                    .ok_or(RectangleError::SearchExhausted(m, n))?
            };
            debug_assert!(validate_magic_rectangle(&found).is_ok());
            cache().lock().expect("cache lock").insert(key, found.clone());
            found
        }
    };
    Ok(if base.rows() == m { base } else { base.transpose() })
}

fn from_grid(rows: usize, cols: usize, data: Vec<u64>) -> LabelMatrix {
    let top = (rows * cols) as u64;
    LabelMatrix::new(rows, cols, data, 1, top).expect("generator produces a permutation")
}

fn siamese(n: usize) -> LabelMatrix {
    let mut data = vec![0u64; n * n];
    let (mut i, mut j) = (0usize, n / 2);
    for v in 1..=(n * n) as u64 {
        data[i * n + j] = v;
        let (ni, nj) = ((i + n - 1) % n, (j + 1) % n);
        if data[ni * n + nj] != 0 {
            i = (i + 1) % n;
        } else {
            i = ni;
            j = nj;
        }
    }
    from_grid(n, n, data)
}

struct Backtrack {
    m: usize,
    n: usize,
    row_target: u64,
    col_target: u64,
    grid: Vec<u64>,
    used: Vec<bool>,
    rows: Vec<u64>,
    cols: Vec<u64>,
    order: Vec<u64>,
    nodes: u64,
}

impl Backtrack {
    fn extreme_sum(&self, k: usize, largest: bool) -> u64 {
        let top = (self.m * self.n) as u64;
        let free = |v: &u64| !self.used[*v as usize];
        if largest {
            (1..=top).rev().filter(free).take(k).sum()
        } else {
            (1..=top).filter(free).take(k).sum()
        }
    }

    fn feasible(&self, remaining: u64, k: usize) -> bool {
        self.extreme_sum(k, false) <= remaining && remaining <= self.extreme_sum(k, true)
    }

    fn place(&mut self, cell: usize, v: u64) {
        self.grid[cell] = v;
        self.used[v as usize] = true;
        self.rows[cell / self.n] += v;
        self.cols[cell % self.n] += v;
    }

    fn unplace(&mut self, cell: usize, v: u64) {
        self.used[v as usize] = false;
        self.rows[cell / self.n] -= v;
        self.cols[cell % self.n] -= v;
    }

    fn forced(&mut self, cell: usize, v: Option<u64>) -> Option<bool> {
        let top = (self.m * self.n) as u64;
        let v = match v {
            Some(v) if v >= 1 && v <= top && !self.used[v as usize] => v,
            _ => return Some(false),
        };
        self.place(cell, v);
        let out = self.dfs(cell + 1)?;
        if !out {
            self.unplace(cell, v);
        }
        Some(out)
    }

    /// `None` when the node budget runs out.
    fn dfs(&mut self, cell: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > DFS_NODE_LIMIT {
            return None;
        }
        let (m, n) = (self.m, self.n);
        if cell == m * n {
            return Some(true);
        }
        let (i, j) = (cell / n, cell % n);
        if i == m - 1 {
            let v = self.col_target.checked_sub(self.cols[j]);
            let last_ok = j < n - 1 || v.map(|v| self.rows[i] + v == self.row_target) == Some(true);
            if !last_ok {
                return Some(false);
            }
            return self.forced(cell, v);
        }
        if j == n - 1 {
            let v = self.row_target.checked_sub(self.rows[i]);
            if v.map(|v| self.cols[j] + v > self.col_target) != Some(false) {
                return Some(false);
            }
            return self.forced(cell, v);
        }
        for idx in 0..self.order.len() {
            let v = self.order[idx];
            if self.used[v as usize] {
                continue;
            }
            let (rs, cs) = (self.rows[i] + v, self.cols[j] + v);
            if rs >= self.row_target || cs >= self.col_target {
                continue;
            }
            self.place(cell, v);
            if self.feasible(self.row_target - rs, n - 1 - j)
                && self.feasible(self.col_target - cs, m - 1 - i)
                && self.dfs(cell + 1)?
            {
                return Some(true);
            }
            self.unplace(cell, v);
        }
        Some(false)
    }
}

fn backtrack(m: usize, n: usize) -> Option<LabelMatrix> {
    let top = (m * n) as u64;
    // Alternate large and small values to keep partial sums near their targets.
    let mut order = Vec::with_capacity(m * n);
    let (mut lo, mut hi) = (1, top);
    while lo <= hi {
        order.push(hi);
        if lo != hi {
            order.push(lo);
        }
        lo += 1;
        hi -= 1;
    }
    let mut search = Backtrack {
        m,
        n,
        row_target: n as u64 * (top + 1) / 2,
        col_target: m as u64 * (top + 1) / 2,
        grid: vec![0; m * n],
        used: vec![false; m * n + 1],
        rows: vec![0; m],
        cols: vec![0; n],
        order,
        nodes: 0,
    };
    match search.dfs(0) {
        Some(true) => Some(from_grid(m, n, search.grid)),
        _ => None,
    }
}

fn local_search(m: usize, n: usize) -> Option<LabelMatrix> {
    let q = m * n;
    let row_target = (n * (q + 1) / 2) as i64;
    let col_target = (m * (q + 1) / 2) as i64;
    let sq = |x: i64| x * x;
    for restart in 0..LOCAL_SEARCH_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(LOCAL_SEARCH_SEED.wrapping_add(restart));
        let mut grid: Vec<i64> = (1..=q as i64).collect();
        for i in (1..q).rev() {
            grid.swap(i, rng.gen_range(0..=i));
        }
        let mut rows = vec![0i64; m];
        let mut cols = vec![0i64; n];
        for (cell, &v) in grid.iter().enumerate() {
            rows[cell / n] += v;
            cols[cell % n] += v;
        }
        let mut cost: i64 = rows.iter().map(|&s| sq(s - row_target)).sum::<i64>()
            + cols.iter().map(|&s| sq(s - col_target)).sum::<i64>();
        let mut steps = 0;
        while cost > 0 && steps < LOCAL_SEARCH_STEPS {
            steps += 1;
            let a = rng.gen_range(0..q);
            let b = rng.gen_range(0..q);
            if a == b {
                continue;
            }
            let (ai, aj, bi, bj) = (a / n, a % n, b / n, b % n);
            let d = grid[b] - grid[a];
            let mut delta = 0;
            if ai != bi {
                let (x, y) = (rows[ai] - row_target, rows[bi] - row_target);
                delta += sq(x + d) - sq(x) + sq(y - d) - sq(y);
            }
            if aj != bj {
                let (x, y) = (cols[aj] - col_target, cols[bj] - col_target);
                delta += sq(x + d) - sq(x) + sq(y - d) - sq(y);
            }
            if delta <= 0 || rng.gen_ratio(1, 1000) {
                grid.swap(a, b);
                if ai != bi {
                    rows[ai] += d;
                    rows[bi] -= d;
                }
                if aj != bj {
                    cols[aj] += d;
                    cols[bj] -= d;
                }
                cost += delta;
            }
        }
        if cost == 0 {
            return Some(from_grid(m, n, grid.into_iter().map(|v| v as u64).collect()));
        }
    }
    None
}
