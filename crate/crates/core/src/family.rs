//! Symbolic descriptions of the graph families and their textual grammar.
//!
//! Grammar: `KIND(args)` where `args` is a comma-separated list of
//! non-negative integers. `v^[n]` expands to `n` copies of `v`. Families
//! with two parameter groups separate them with `;`:
//!
//! | text            | family                                   |
//! |-----------------|------------------------------------------|
//! | `C(a1,..,ar)`   | one-point union of cycles                |
//! | `H(a1,..,ar;k)` | hibiscus: cycle union + `k` hub pendants |
//! | `T(m,n)`        | tadpole: path `P_m` glued to `C_n`       |
//! | `GB(a1,..,ar)`  | generalized book                         |
//! | `GP(r;m)`       | `r` triangles on an edge + `m` pendants  |
//! | `Corona(m,n)`   | `C_m` corona `O_n`                       |
//! | `K(m;n1,..,nm)` | `K_m` with `ni` pendants at vertex `i`   |
//! | `Ct(3;n1,n2,n3)`| caterpillar on a 3-vertex spine          |
//! | `Path(n)`, `Cycle(n)`, `Star(n)` | `n` is the order        |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("domain constraint violated: {0}")]
    Domain(String),
}

impl SpecError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        SpecError::Syntax {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    CycleUnion,
    Hibiscus,
    Tadpole,
    Book,
    BookPendants,
    Corona,
    CompletePendants,
    Caterpillar3,
    Path,
    Cycle,
    Star,
}

impl FamilyKind {
    pub fn keyword(self) -> &'static str {
        match self {
            FamilyKind::CycleUnion => "C",
            FamilyKind::Hibiscus => "H",
            FamilyKind::Tadpole => "T",
            FamilyKind::Book => "GB",
            FamilyKind::BookPendants => "GP",
            FamilyKind::Corona => "Corona",
            FamilyKind::CompletePendants => "K",
            FamilyKind::Caterpillar3 => "Ct",
            FamilyKind::Path => "Path",
            FamilyKind::Cycle => "Cycle",
            FamilyKind::Star => "Star",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "C" => FamilyKind::CycleUnion,
            "H" => FamilyKind::Hibiscus,
            "T" => FamilyKind::Tadpole,
            "GB" => FamilyKind::Book,
            "GP" => FamilyKind::BookPendants,
            "Corona" => FamilyKind::Corona,
            "K" => FamilyKind::CompletePendants,
            "Ct" => FamilyKind::Caterpillar3,
            "Path" => FamilyKind::Path,
            "Cycle" => FamilyKind::Cycle,
            "Star" => FamilyKind::Star,
            _ => return None,
        })
    }

    /// Whether the argument list is split into two groups by `;`.
    fn has_two_groups(self) -> bool {
        matches!(
            self,
            FamilyKind::Hibiscus
                | FamilyKind::BookPendants
                | FamilyKind::CompletePendants
                | FamilyKind::Caterpillar3
        )
    }
}

/// A validated family description. Construct through [`FamilySpec::new`] or
/// by parsing; the fields are private so every value satisfies the family's
/// domain constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    /// First argument group.
    head: Vec<usize>,
    /// Second argument group (after `;`), empty for single-group families.
    tail: Vec<usize>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, head: Vec<usize>, tail: Vec<usize>) -> Result<Self, SpecError> {
        let spec = FamilySpec { kind, head, tail };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cycle_union(cycles: &[usize]) -> Result<Self, SpecError> {
        Self::new(FamilyKind::CycleUnion, cycles.to_vec(), vec![])
    }

    pub fn hibiscus(cycles: &[usize], pendants: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Hibiscus, cycles.to_vec(), vec![pendants])
    }

    pub fn tadpole(path: usize, cycle: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Tadpole, vec![path, cycle], vec![])
    }

    pub fn book(cycles: &[usize]) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Book, cycles.to_vec(), vec![])
    }

    pub fn book_pendants(triangles: usize, pendants: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::BookPendants, vec![triangles], vec![pendants])
    }

    pub fn corona(cycle: usize, pendants: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Corona, vec![cycle, pendants], vec![])
    }

    pub fn complete_pendants(pendants: &[usize]) -> Result<Self, SpecError> {
        Self::new(FamilyKind::CompletePendants, vec![pendants.len()], pendants.to_vec())
    }

    pub fn caterpillar3(n1: usize, n2: usize, n3: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Caterpillar3, vec![3], vec![n1, n2, n3])
    }

    pub fn path(order: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Path, vec![order], vec![])
    }

    pub fn cycle(order: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Cycle, vec![order], vec![])
    }

    pub fn star(order: usize) -> Result<Self, SpecError> {
        Self::new(FamilyKind::Star, vec![order], vec![])
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// First argument group: cycle lengths, `(m, n)` pairs, orders, or `[r]`,
    /// `[m]`, `[3]` for the two-group families.
    pub fn head(&self) -> &[usize] {
        &self.head
    }

    /// Second argument group: `[k]` for hibiscus, `[m]` for `GP`, pendant
    /// counts for `K` and `Ct`.
    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    fn validate(&self) -> Result<(), SpecError> {
        let dom = |msg: &str| Err(SpecError::Domain(msg.to_string()));
        let head = &self.head;
        let tail = &self.tail;
        let non_increasing = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        match self.kind {
            FamilyKind::CycleUnion | FamilyKind::Hibiscus | FamilyKind::Book => {
                if head.len() < 2 {
                    return dom("r>=2 required");
                }
                if !non_increasing(head) {
                    return dom("cycle lengths must be non-increasing (a1>=a2>=...>=ar)");
                }
                if *head.last().unwrap() < 3 {
                    return dom("cycle lengths must be >=3");
                }
                if self.kind == FamilyKind::Hibiscus {
                    if tail.len() != 1 {
                        return dom("hibiscus takes exactly one pendant count after ';'");
                    }
                    if tail[0] < 1 {
                        return dom("k>=1 required");
                    }
                } else if !tail.is_empty() {
                    return dom("unexpected second argument group");
                }
            }
            FamilyKind::Tadpole => {
                if head.len() != 2 || !tail.is_empty() {
                    return dom("tadpole takes exactly two arguments (m,n)");
                }
                if head[0] < 2 {
                    return dom("m>=2 required");
                }
                if head[1] < 3 {
                    return dom("n>=3 required");
                }
            }
            FamilyKind::BookPendants => {
                if head.len() != 1 || tail.len() != 1 {
                    return dom("GP takes the form GP(r;m)");
                }
                if head[0] < 2 {
                    return dom("r>=2 required");
                }
                if tail[0] < 1 {
                    return dom("m>=1 required");
                }
            }
            FamilyKind::Corona => {
                if head.len() != 2 || !tail.is_empty() {
                    return dom("corona takes exactly two arguments (m,n)");
                }
                if head[0] < 3 {
                    return dom("m>=3 required");
                }
                if head[1] < 1 {
                    return dom("n>=1 required");
                }
            }
            FamilyKind::CompletePendants => {
                if head.len() != 1 {
                    return dom("K takes the form K(m;n1,...,nm)");
                }
                let m = head[0];
                if m < 1 {
                    return dom("m>=1 required");
                }
                if tail.len() != m {
                    return dom("K(m;...) needs exactly m pendant counts");
                }
                if !non_increasing(tail) {
                    return dom("pendant counts must be non-increasing (n1>=...>=nm)");
                }
                let total: usize = tail.iter().sum();
                if total < 1 {
                    return dom("n1+...+nm>=1 required");
                }
                if m + total < 3 {
                    return dom("order>=3 required");
                }
            }
            FamilyKind::Caterpillar3 => {
                if head.len() != 1 || head[0] != 3 {
                    return dom("only 3-vertex spines are supported: Ct(3;n1,n2,n3)");
                }
                if tail.len() != 3 {
                    return dom("Ct(3;...) needs exactly 3 pendant counts");
                }
                if tail.iter().sum::<usize>() < 2 {
                    return dom("n1+n2+n3>=2 required");
                }
            }
            FamilyKind::Path | FamilyKind::Cycle | FamilyKind::Star => {
                if head.len() != 1 || !tail.is_empty() {
                    return dom("takes exactly one argument (the order)");
                }
                if head[0] < 3 {
                    return dom("order>=3 required");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.kind.has_two_groups() {
            write!(
                f,
                "{}({};{})",
                self.kind.keyword(),
                join(&self.head),
                join(&self.tail)
            )
        } else {
            write!(f, "{}({})", self.kind.keyword(), join(&self.head))
        }
    }
}

impl FromStr for FamilySpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_family_spec(s)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), SpecError> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(SpecError::syntax(
                self.pos,
                format!("expected '{}', found '{}'", ch as char, c as char),
            )),
            None => Err(SpecError::syntax(
                self.pos,
                format!("expected '{}', found end of input", ch as char),
            )),
        }
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(SpecError::syntax(start, "expected a non-negative integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| SpecError::syntax(start, "integer out of range"))
    }

    /// `item (',' item)*` where `item = int ('^' '[' int ']')?`.
    fn list(&mut self) -> Result<Vec<usize>, SpecError> {
        let mut out = Vec::new();
        loop {
            let value = self.number()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.expect(b'[')?;
                let at = self.pos;
                let copies = self.number()?;
                if copies == 0 {
                    return Err(SpecError::syntax(at, "repetition count must be >=1"));
                }
                self.expect(b']')?;
                out.extend(std::iter::repeat_n(value, copies));
            } else {
                out.push(value);
            }
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parses and validates a textual family description.
pub fn parse_family_spec(text: &str) -> Result<FamilySpec, SpecError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    let start = cur.pos;
    while cur.pos < cur.bytes.len() && cur.bytes[cur.pos].is_ascii_alphabetic() {
        cur.pos += 1;
    }
    if start == cur.pos {
        return Err(SpecError::syntax(start, "expected a family keyword"));
    }
    let word = &text[start..cur.pos];
    let kind = FamilyKind::from_keyword(word)
        .ok_or_else(|| SpecError::syntax(start, format!("unknown family '{word}'")))?;
    cur.expect(b'(')?;
    let head = cur.list()?;
    let mut tail = Vec::new();
    if kind.has_two_groups() {
        cur.expect(b';')?;
        tail = cur.list()?;
    }
    cur.expect(b')')?;
    if let Some(c) = cur.peek() {
        return Err(SpecError::syntax(
            cur.pos,
            format!("trailing input starting at '{}'", c as char),
        ));
    }
    FamilySpec::new(kind, head, tail)
}
