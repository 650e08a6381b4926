//! The gasket `SG(n)` as an explicit graph on exact integer lattice
//! coordinates, and the canonical vertex address scheme.
//!
//! A point `(p, q)` stands for the Euclidean position `p*(1,0) + q*(1/2,
//! sqrt(3)/2)`; the float embedding is never materialised. The reflection
//! through the symmetry axis is the coordinate swap `(p, q) -> (q, p)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ratmat::IntMatrix;
use crate::{check_stage, max_stage, Error, Result};

/// Lattice coordinate of a gasket vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coord {
    pub p: i64,
    pub q: i64,
}

impl Coord {
    pub fn new(p: i64, q: i64) -> Self {
        Coord { p, q }
    }

    /// Reflection through the main symmetry axis.
    pub fn swapped(self) -> Self {
        Coord { p: self.q, q: self.p }
    }

    fn midpoint(self, other: Self) -> Self {
        Coord { p: (self.p + other.p) / 2, q: (self.q + other.q) / 2 }
    }
}

/// Sub-triangle corner letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        match self {
            Letter::A => 0,
            Letter::B => 1,
            Letter::C => 2,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

/// Canonical name of a vertex of `SG(n)`.
///
/// Word digits are stored as written: `(gamma_1, 1, gamma_3, ..., gamma_s)`
/// with `gamma_1 >= 1`, the second digit fixed to 1 and later digits in
/// `{0,1,2}`. The tilde flag marks the reflection through the symmetry axis
/// and is canonical only on words; on all other kinds it is rewritten away.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexAddress {
    Origin,
    CornerA(u32),
    CornerB(u32),
    Single(Letter, u32),
    Word { letter: Letter, digits: Vec<u32>, tilde: bool },
}

impl VertexAddress {
    /// Depth `s` of the subscript (1 for singles and corners).
    pub fn depth(&self) -> usize {
        match self {
            VertexAddress::Word { digits, .. } => digits.len(),
            _ => 1,
        }
    }

    /// Validate against stage `n` and classify boundary cases
    /// (`a[n]`/`b[n]` become corners).
    pub fn canonical_at(&self, n: u32) -> Result<VertexAddress> {
        let invalid = |reason: String| Error::AddressInvalid { stage: n, reason };
        match self {
            VertexAddress::Origin => Ok(VertexAddress::Origin),
            VertexAddress::CornerA(m) | VertexAddress::CornerB(m) => {
                if *m != n {
                    return Err(invalid(format!("corner index {m} must equal the stage")));
                }
                Ok(self.clone())
            }
            VertexAddress::Single(letter, m) => {
                if *m == n {
                    return match letter {
                        Letter::A => Ok(VertexAddress::CornerA(n)),
                        Letter::B => Ok(VertexAddress::CornerB(n)),
                        Letter::C => Err(invalid(format!(
                            "c[{m}] does not exist inside SG({n})"
                        ))),
                    };
                }
                if *m > n {
                    return Err(invalid(format!("index {m} exceeds stage {n}")));
                }
                Ok(self.clone())
            }
            VertexAddress::Word { digits, .. } => {
                let g1 = digits[0];
                if g1 + 1 > n {
                    return Err(invalid(format!(
                        "word scale {g1} requires stage >= {}",
                        g1 + 1
                    )));
                }
                Ok(self.clone())
            }
        }
    }

    /// The reflected address; an involution on canonical addresses.
    pub fn tilde(&self) -> VertexAddress {
        match self {
            VertexAddress::Origin => VertexAddress::Origin,
            VertexAddress::CornerA(n) => VertexAddress::CornerB(*n),
            VertexAddress::CornerB(n) => VertexAddress::CornerA(*n),
            VertexAddress::Single(Letter::A, m) => VertexAddress::Single(Letter::B, *m),
            VertexAddress::Single(Letter::B, m) => VertexAddress::Single(Letter::A, *m),
            VertexAddress::Single(Letter::C, m) => VertexAddress::Single(Letter::C, *m),
            VertexAddress::Word { letter, digits, tilde } => VertexAddress::Word {
                letter: *letter,
                digits: digits.clone(),
                tilde: !tilde,
            },
        }
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexAddress::Origin => write!(f, "o"),
            VertexAddress::CornerA(n) => write!(f, "a[{n}]"),
            VertexAddress::CornerB(n) => write!(f, "b[{n}]"),
            VertexAddress::Single(x, m) => write!(f, "{}[{m}]", x.as_char()),
            VertexAddress::Word { letter, digits, tilde } => {
                let ds: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                write!(
                    f,
                    "{}{}[{}]",
                    if *tilde { "~" } else { "" },
                    letter.as_char(),
                    ds.join(",")
                )
            }
        }
    }
}

impl FromStr for VertexAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_address(s)
    }
}

/// Parse the textual address grammar:
/// `o` | `<letter>[<m>]` | `~`? `<letter>[<g1>,1(,<gk>)*]`.
///
/// Tilde on non-word addresses is rewritten away (`~a[m] -> b[m]`,
/// `~c[m] -> c[m]`, `~o -> o`). Stage-dependent range checks happen in
/// [`VertexAddress::canonical_at`].
pub fn parse_address(text: &str) -> Result<VertexAddress> {
    let err = |msg: &str| Error::AddressParse(format!("{msg} (in {text:?})"));
    let s = text.trim();
    let (tilde, s) = match s.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if s == "o" {
        return Ok(VertexAddress::Origin);
    }
    let mut chars = s.chars();
    let letter = chars
        .next()
        .and_then(Letter::from_char)
        .ok_or_else(|| err("expected letter a, b, c or o"))?;
    let rest = chars.as_str();
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("expected [..] subscript"))?;
    let digits: Vec<u32> = inner
        .split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| err("subscript digits must be decimal")))
        .collect::<Result<_>>()?;
    match digits.len() {
        0 => Err(err("empty subscript")),
        1 => {
            let m = digits[0];
            let addr = VertexAddress::Single(letter, m);
            Ok(if tilde { addr.tilde() } else { addr })
        }
        s_len => {
            let g1 = digits[0];
            if g1 < 1 {
                return Err(err("word scale gamma_1 must be >= 1"));
            }
            if digits[1] != 1 {
                return Err(err("second word digit must be 1"));
            }
            if digits[2..].iter().any(|&d| d > 2) {
                return Err(err("word digits after the second must be 0, 1 or 2"));
            }
            if s_len as u32 > g1 + 1 {
                return Err(err("word depth exceeds its scale (need s <= gamma_1 + 1)"));
            }
            Ok(VertexAddress::Word { letter, digits, tilde })
        }
    }
}

/// Exact lattice position of a canonical address inside `SG(n)`.
pub fn resolve_address(addr: &VertexAddress, n: u32) -> Result<Coord> {
    let addr = addr.canonical_at(n)?;
    Ok(match addr {
        VertexAddress::Origin => Coord::new(0, 0),
        VertexAddress::CornerA(_) => Coord::new(1 << n, 0),
        VertexAddress::CornerB(_) => Coord::new(0, 1 << n),
        VertexAddress::Single(x, m) => match x {
            Letter::A => Coord::new(1 << m, 0),
            Letter::B => Coord::new(0, 1 << m),
            Letter::C => Coord::new(1 << m, 1 << m),
        },
        VertexAddress::Word { letter, digits, tilde } => {
            let g1 = digits[0];
            // the scale-g1 triangle (a_g1, a_{g1+1}, c_g1)
            let mut p1 = Coord::new(1 << g1, 0);
            let mut p2 = Coord::new(1 << (g1 + 1), 0);
            let mut apex = Coord::new(1 << g1, 1 << g1);
            for &d in &digits[2..] {
                let am = p1.midpoint(p2);
                let bm = p1.midpoint(apex);
                let cm = p2.midpoint(apex);
                (p1, p2, apex) = match d {
                    0 => (p1, am, bm),
                    1 => (am, p2, cm),
                    _ => (bm, cm, apex),
                };
            }
            let pt = match letter {
                Letter::A => p1.midpoint(p2),
                Letter::B => p1.midpoint(apex),
                Letter::C => p2.midpoint(apex),
            };
            if tilde {
                pt.swapped()
            } else {
                pt
            }
        }
    })
}

/// All canonical addresses of `SG(n)`, exactly `3(3^n+1)/2` of them;
/// [`resolve_address`] maps them bijectively onto the graph vertices.
pub fn enumerate_addresses(n: u32) -> Vec<VertexAddress> {
    let mut out = vec![
        VertexAddress::Origin,
        VertexAddress::CornerA(n),
        VertexAddress::CornerB(n),
    ];
    for m in 0..n {
        for x in Letter::ALL {
            out.push(VertexAddress::Single(x, m));
        }
    }
    for g1 in 1..n {
        for s in 2..=(g1 + 1) as usize {
            let mut digits = vec![g1, 1];
            digits.resize(s, 0);
            emit_words(&mut digits, 2, &mut out);
        }
    }
    out
}

fn emit_words(digits: &mut Vec<u32>, pos: usize, out: &mut Vec<VertexAddress>) {
    if pos == digits.len() {
        for x in Letter::ALL {
            for tilde in [false, true] {
                out.push(VertexAddress::Word { letter: x, digits: digits.clone(), tilde });
            }
        }
        return;
    }
    for d in 0..3 {
        digits[pos] = d;
        emit_words(digits, pos + 1, out);
    }
}

/// `SG(n)` with unit edges; vertex ids are dense and sorted by `(q, p)`.
#[derive(Clone, Debug)]
pub struct GasketGraph {
    stage: u32,
    vertices: Vec<Coord>,
    index: HashMap<Coord, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// Recursive union of three translated copies; shared corners merge.
pub fn build_graph(n: u32) -> Result<GasketGraph> {
    check_stage(n, max_stage())?;
    let mut edge_set: Vec<(Coord, Coord)> =
        vec![
            (Coord::new(0, 0), Coord::new(1, 0)),
            (Coord::new(0, 0), Coord::new(0, 1)),
            (Coord::new(1, 0), Coord::new(0, 1)),
        ];
    for k in 0..n {
        let off = 1i64 << k;
        let mut next = Vec::with_capacity(edge_set.len() * 3);
        for &(u, v) in &edge_set {
            for (dp, dq) in [(0, 0), (off, 0), (0, off)] {
                next.push((
                    Coord::new(u.p + dp, u.q + dq),
                    Coord::new(v.p + dp, v.q + dq),
                ));
            }
        }
        edge_set = next;
    }
    let mut vertices: Vec<Coord> = edge_set
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    vertices.sort_by_key(|c| (c.q, c.p));
    vertices.dedup();
    let index: HashMap<Coord, usize> =
        vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut edges: Vec<(usize, usize)> = edge_set
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (index[&u], index[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    Ok(GasketGraph { stage: n, vertices, index, edges, adjacency })
}

impl GasketGraph {
    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Coord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn index_of(&self, c: Coord) -> Result<usize> {
        self.index.get(&c).copied().ok_or(Error::NotAVertex(c))
    }

    pub fn corners(&self) -> (usize, usize, usize) {
        let s = 1i64 << self.stage;
        (
            self.index[&Coord::new(0, 0)],
            self.index[&Coord::new(s, 0)],
            self.index[&Coord::new(0, s)],
        )
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Combinatorial Laplacian `D - A`. With `edge_weight_at = (x, y)` every
    /// edge incident to `x` carries integer weight `y >= 1`, others weight 1.
    pub fn laplacian(&self, edge_weight_at: Option<(Coord, u64)>) -> Result<IntMatrix> {
        let weighted = match edge_weight_at {
            Some((c, y)) => {
                assert!(y >= 1, "edge weight must be a positive integer");
                Some((self.index_of(c)?, y))
            }
            None => None,
        };
        let n = self.vertices.len();
        let mut l = IntMatrix::zeros(n, n);
        for &(a, b) in &self.edges {
            let w = match weighted {
                Some((x, y)) if a == x || b == x => y as i64,
                _ => 1,
            };
            l.add_at(a, a, w);
            l.add_at(b, b, w);
            l.add_at(a, b, -w);
            l.add_at(b, a, -w);
        }
        Ok(l)
    }
}

/// Wire schema of the graph JSON export.
#[derive(Serialize)]
pub struct GraphJson {
    pub stage: u32,
    pub vertices: Vec<GraphVertexJson>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct GraphVertexJson {
    pub id: usize,
    pub p: i64,
    pub q: i64,
}

impl GasketGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            stage: self.stage,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, c)| GraphVertexJson { id, p: c.p, q: c.q })
                .collect(),
            edges: self.edges.clone(),
        }
    }
}

pub fn vertex_count_formula(n: u32) -> u64 {
    3 * (3u64.pow(n) + 1) / 2
}

pub fn edge_count_formula(n: u32) -> u64 {
    3u64.pow(n + 1)
}
