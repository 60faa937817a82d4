//! Immutable simple graphs with a fixed, documented edge order per family.
//!
//! Canonical edge orders (all indices are 0-based `EdgeId`s):
//!
//! * `C(a1..ar)`: hub `u` is vertex 0. Cycle `i` contributes `a_i` consecutive
//!   edges starting and ending at the hub, so edge `s_i + j - 1` is `e_{s_i+j}`
//!   with `s_i = a_1 + .. + a_{i-1}`.
//! * `H(a1..ar;k)`: the cycle-union edges, then the `k` hub pendant edges.
//! * `T(m,n)`: `e_i = v_i v_{i+1}` for `i < m+n-1`, closing edge `v_{m+n-1} v_m` last.
//! * `GB(a1..ar)`: edge 0 is `uv`; then cycle `i` as the path `u x_{i,1} .. x_{i,a_i-2} v`.
//! * `GP(r;m)`: the `GB(3^[r])` edges (`uv`, then `u x_i`, `x_i v` per triangle),
//!   then the pendant edges `u y_j`.
//! * `Corona(m,n)`: cycle edges `e_i = u_i u_{i+1}` first, then `u_i v_{i,j}`
//!   at index `m + (i-1) n + (j-1)`.
//! * `K(m;n1..nm)`: clique edges `u_i u_j` (`i<j`, lexicographic), then pendant
//!   edges `u_i u_{i,k}` grouped by `i`.
//! * `Ct(3;n1,n2,n3)`: `xy`, `yz`, then the pendants of `x`, `y`, `z`.
//! * `Path(n)`, `Cycle(n)`: consecutive edges; `Star(n)`: centre is vertex 0.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::family::{FamilyKind, FamilySpec};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Hub,
    Cycle,
    Path,
    Pendant,
    Clique,
}

impl Role {
    pub fn tag(self) -> &'static str {
        match self {
            Role::Hub => "hub",
            Role::Cycle => "cycle",
            Role::Path => "path",
            Role::Pendant => "pendant",
            Role::Clique => "clique",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have order >= 3 (got {0})")]
    TooSmall(usize),
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("repeated edge {0}-{1}")]
    MultiEdge(usize, usize),
    #[error("vertex {vertex} out of range 1..={order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge list line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    roles: Vec<Role>,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Validates simplicity, connectivity and order; degree-1 vertices are
    /// always tagged as pendants.
    pub fn new(
        names: Vec<String>,
        mut roles: Vec<Role>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        assert_eq!(roles.len(), n, "one role per vertex");
        if n < 3 {
            return Err(GraphError::TooSmall(n));
        }
        let mut incident = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (id, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v + 1,
                        order: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::MultiEdge(a, b));
            }
            incident[a].push(id);
            incident[b].push(id);
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() == 1 {
                roles[v] = Role::Pendant;
            } else if roles[v] == Role::Pendant {
                roles[v] = Role::Path;
            }
        }
        let g = Graph {
            names,
            roles,
            edges,
            incident,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from 0-based edges, naming vertices `1..=n`.
    pub fn from_edges(order: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let names = (1..=order).map(|i| i.to_string()).collect();
        let roles = vec![Role::Path; order];
        let mut g = Graph::new(names, roles, edges)?;
        if let Some(max) = (0..order).map(|v| g.degree(v)).max() {
            if max > 2 {
                for v in 0..order {
                    if g.degree(v) == max {
                        g.roles[v] = Role::Hub;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Reads the `p <n> <q>` edge-list format with 1-based vertices.
    /// Blank lines and lines starting with `c` or `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let fmt_err = |line: usize, message: &str| GraphError::Format {
            line,
            message: message.to_string(),
        };
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(fmt_err(line_no, "expected header 'p <n> <q>'"));
                }
                let n = fields[1]
                    .parse()
                    .map_err(|_| fmt_err(line_no, "bad vertex count"))?;
                let q = fields[2]
                    .parse()
                    .map_err(|_| fmt_err(line_no, "bad edge count"))?;
                header = Some((n, q));
                continue;
            }
            if fields.len() != 2 {
                return Err(fmt_err(line_no, "expected 'u v'"));
            }
            let parse = |s: &str| -> Result<usize, GraphError> {
                s.parse::<usize>()
                    .map_err(|_| fmt_err(line_no, "bad vertex id"))
            };
            let (u, v) = (parse(fields[0])?, parse(fields[1])?);
            let n = header.unwrap().0;
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            edges.push((u - 1, v - 1));
        }
        let (n, q) = header.ok_or_else(|| fmt_err(0, "missing header"))?;
        if edges.len() != q {
            return Err(fmt_err(
                0,
                &format!("header declares {q} edges, found {}", edges.len()),
            ));
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {} {}\n", self.order(), self.size());
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", a + 1, b + 1);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles[v]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident[v].iter().map(move |&e| self.other_end(e, v))
    }

    pub fn is_pendant_edge(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        self.degree(a) == 1 || self.degree(b) == 1
    }

    /// Sorted degree sequence.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.order()
    }

    /// Graphviz rendering; vertex labels carry the role tag.
    pub fn to_dot(&self, edge_labels: Option<&[u32]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{} ({})\"];",
                self.names[v],
                self.names[v],
                self.roles[v].tag()
            );
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            match edge_labels {
                Some(labels) => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -- \"{}\" [label=\"{}\"];",
                        self.names[a], self.names[b], labels[e]
                    );
                }
                None => {
                    let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.names[a], self.names[b]);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Number of degree-1 vertices.
pub fn pendant_count(g: &Graph) -> usize {
    (0..g.order()).filter(|&v| g.degree(v) == 1).count()
}

/// Part sizes `(X, Y)` with `X >= Y`, or `None` when an odd cycle exists.
pub fn bipartition(g: &Graph) -> Option<(usize, usize)> {
    let side = two_coloring(g)?;
    let ones = side.iter().filter(|&&s| s).count();
    let zeros = side.len() - ones;
    Some((ones.max(zeros), ones.min(zeros)))
}

/// BFS 2-colouring; `None` for non-bipartite graphs.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.order()];
    side[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let s = side[v].unwrap();
        for w in g.neighbors(v) {
            match side[w] {
                None => {
                    side[w] = Some(!s);
                    queue.push_back(w);
                }
                Some(t) if t == s => return None,
                Some(_) => {}
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chromatic {
    Exact(usize),
    /// The graph needs more than `cap` colours.
    ExceedsCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chromatic number search exhausted its budget of {0} nodes")]
pub struct BudgetExhausted(pub u64);

pub const DEFAULT_CHROMATIC_NODES: u64 = 2_000_000;

/// Exact proper chromatic number by backtracking, trying `k = 1..=cap`.
pub fn chromatic_number_exact(g: &Graph, cap: usize) -> Result<Chromatic, BudgetExhausted> {
    chromatic_number_with_budget(g, cap, DEFAULT_CHROMATIC_NODES)
}

pub fn chromatic_number_with_budget(
    g: &Graph,
    cap: usize,
    node_limit: u64,
) -> Result<Chromatic, BudgetExhausted> {
    if cap >= 2 && bipartition(g).is_some() {
        return Ok(Chromatic::Exact(2));
    }
    // Breadth-first from the highest degree vertex: every vertex after the
    // first has an already coloured neighbour.
    let start = (0..g.order()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let mut order = vec![start];
    let mut seen = vec![false; g.order()];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut next: Vec<VertexId> = g.neighbors(v).filter(|&w| !seen[w]).collect();
        next.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
        for w in next {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    let mut nodes = 0u64;
    for k in 1..=cap {
        let mut colour = vec![usize::MAX; g.order()];
        match colour_rec(g, &order, 0, k, 0, &mut colour, &mut nodes, node_limit) {
            Some(true) => return Ok(Chromatic::Exact(k)),
            Some(false) => {}
            None => return Err(BudgetExhausted(node_limit)),
        }
    }
    Ok(Chromatic::ExceedsCap(cap))
}

#[allow(clippy::too_many_arguments)]
fn colour_rec(
    g: &Graph,
    order: &[VertexId],
    idx: usize,
    k: usize,
    used: usize,
    colour: &mut [usize],
    nodes: &mut u64,
    limit: u64,
) -> Option<bool> {
    if idx == order.len() {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > limit {
        return None;
    }
    let v = order[idx];
    // A fresh colour is interchangeable with any other fresh colour.
    let max_c = (used + 1).min(k);
    for c in 0..max_c {
        if g.neighbors(v).any(|w| colour[w] == c) {
            continue;
        }
        colour[v] = c;
        let next_used = used.max(c + 1);
        if colour_rec(g, order, idx + 1, k, next_used, colour, nodes, limit)? {
            return Some(true);
        }
        colour[v] = usize::MAX;
    }
    Some(false)
}

struct Builder {
    names: Vec<String>,
    roles: Vec<Role>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            names: Vec::new(),
            roles: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, name: String, role: Role) -> VertexId {
        self.names.push(name);
        self.roles.push(role);
        self.names.len() - 1
    }

    fn edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.push((a, b));
    }

    fn finish(self) -> Graph {
        Graph::new(self.names, self.roles, self.edges)
            .expect("family constructors produce simple connected graphs")
    }

    /// Cycle through `hub` with `len - 1` fresh vertices, edges emitted in order.
    fn hub_cycle(&mut self, hub: VertexId, len: usize, prefix: &str, role: Role) {
        let mut prev = hub;
        for j in 1..len {
            let w = self.vertex(format!("{prefix}_{j}"), role);
            self.edge(prev, w);
            prev = w;
        }
        self.edge(prev, hub);
    }
}

/// Builds the graph of a family with its canonical vertex and edge order.
pub fn build_graph(spec: &FamilySpec) -> Graph {
    let head = spec.head();
    let tail = spec.tail();
    let mut b = Builder::new();
    match spec.kind() {
        FamilyKind::CycleUnion | FamilyKind::Hibiscus => {
            let u = b.vertex("u".into(), Role::Hub);
            for (i, &a) in head.iter().enumerate() {
                b.hub_cycle(u, a, &format!("w{}", i + 1), Role::Cycle);
            }
            if spec.kind() == FamilyKind::Hibiscus {
                for j in 1..=tail[0] {
                    let v = b.vertex(format!("v{j}"), Role::Pendant);
                    b.edge(u, v);
                }
            }
        }
        FamilyKind::Tadpole => {
            let (m, n) = (head[0], head[1]);
            let total = m + n - 1;
            for i in 1..=total {
                let role = if i == m {
                    Role::Hub
                } else if i < m {
                    Role::Path
                } else {
                    Role::Cycle
                };
                b.vertex(format!("v{i}"), role);
            }
            for i in 0..total - 1 {
                b.edge(i, i + 1);
            }
            b.edge(total - 1, m - 1);
        }
        FamilyKind::Book => {
            let u = b.vertex("u".into(), Role::Hub);
            let v = b.vertex("v".into(), Role::Hub);
            b.edge(u, v);
            for (i, &a) in head.iter().enumerate() {
                let mut prev = u;
                for j in 1..=a - 2 {
                    let w = b.vertex(format!("x{}_{}", i + 1, j), Role::Cycle);
                    b.edge(prev, w);
                    prev = w;
                }
                b.edge(prev, v);
            }
        }
        FamilyKind::BookPendants => {
            let (r, m) = (head[0], tail[0]);
            let u = b.vertex("u".into(), Role::Hub);
            let v = b.vertex("v".into(), Role::Hub);
            b.edge(u, v);
            for i in 1..=r {
                let x = b.vertex(format!("x{i}"), Role::Cycle);
                b.edge(u, x);
                b.edge(x, v);
            }
            for j in 1..=m {
                let y = b.vertex(format!("y{j}"), Role::Pendant);
                b.edge(u, y);
            }
        }
        FamilyKind::Corona => {
            let (m, n) = (head[0], head[1]);
            for i in 1..=m {
                b.vertex(format!("u{i}"), Role::Cycle);
            }
            for i in 0..m {
                b.edge(i, (i + 1) % m);
            }
            for i in 0..m {
                for j in 1..=n {
                    let p = b.vertex(format!("v{}_{}", i + 1, j), Role::Pendant);
                    b.edge(i, p);
                }
            }
        }
        FamilyKind::CompletePendants => {
            let m = head[0];
            for i in 1..=m {
                b.vertex(format!("u{i}"), Role::Clique);
            }
            for i in 0..m {
                for j in i + 1..m {
                    b.edge(i, j);
                }
            }
            for (i, &ni) in tail.iter().enumerate() {
                for k in 1..=ni {
                    let p = b.vertex(format!("u{}_{}", i + 1, k), Role::Pendant);
                    b.edge(i, p);
                }
            }
        }
        FamilyKind::Caterpillar3 => {
            let spine = ["x", "y", "z"];
            for s in spine {
                b.vertex(s.to_string(), Role::Path);
            }
            b.edge(0, 1);
            b.edge(1, 2);
            for (i, &ni) in tail.iter().enumerate() {
                for k in 1..=ni {
                    let p = b.vertex(format!("{}{}", spine[i], k), Role::Pendant);
                    b.edge(i, p);
                }
            }
        }
        FamilyKind::Path => {
            let n = head[0];
            for i in 1..=n {
                b.vertex(format!("v{i}"), Role::Path);
            }
            for i in 0..n - 1 {
                b.edge(i, i + 1);
            }
        }
        FamilyKind::Cycle => {
            let n = head[0];
            for i in 1..=n {
                b.vertex(format!("u{i}"), Role::Cycle);
            }
            for i in 0..n {
                b.edge(i, (i + 1) % n);
            }
        }
        FamilyKind::Star => {
            let n = head[0];
            let c = b.vertex("c".into(), Role::Hub);
            for i in 1..n {
                let leaf = b.vertex(format!("l{i}"), Role::Pendant);
                b.edge(c, leaf);
            }
        }
    }
    b.finish()
}
