//! Dense digraph value type: bit-matrix adjacency, degree arithmetic, girth,
//! structural predicates, and the bit-exact text format.
//!
//! Digraphs are simple (no multiple arcs) but may carry loops; a loop is a set
//! diagonal bit. Values are immutable once built and safe to share across
//! threads.

use std::fmt;

use thiserror::Error;

/// Largest supported order. One `u64` bitmask per adjacency row.
pub const MAX_ORDER: usize = 64;

/// A digraph on `n` labeled vertices `0..n-1`.
///
/// `rows[u]` holds the out-neighborhood of `u` as a bitmask: bit `v` set means
/// the arc `u -> v` is present. Diagonal bits are loops.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    rows: Vec<u64>,
}

/// Degree data for one vertex, under the convention that a loop contributes
/// one incident arc (not two): `d(u) = d+(u) + d-(u) - 1` when `u` has a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub vertex: usize,
    pub out_degree: usize,
    pub in_degree: usize,
    /// Number of arcs incident with the vertex.
    pub incident: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("induced subgraph requires a nonempty vertex set")]
    EmptyVertexSet,
}

impl Digraph {
    /// Empty digraph (no arcs) on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, DigraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(DigraphError::OrderOutOfRange { n, max: MAX_ORDER });
        }
        Ok(Digraph {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a digraph from an arc list. Duplicate arcs collapse into one.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Self::empty(n)?;
        for (u, v) in arcs {
            d.check_vertex(u)?;
            d.check_vertex(v)?;
            d.rows[u] |= 1 << v;
        }
        Ok(d)
    }

    fn check_vertex(&self, v: usize) -> Result<(), DigraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(DigraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        (self.rows[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn has_loop(&self, u: usize) -> bool {
        self.has_arc(u, u)
    }

    /// Out-neighborhood of `u` as a bitmask.
    #[inline]
    pub fn out_mask(&self, u: usize) -> u64 {
        debug_assert!(u < self.n);
        self.rows[u]
    }

    /// Successors of `u` in increasing label order.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.rows[u])
    }

    /// Predecessors of `u` in increasing label order.
    pub fn predecessors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let mask: u64 = (0..self.n)
            .filter(|&x| self.has_arc(x, u))
            .fold(0, |m, x| m | (1 << x));
        BitIter(mask)
    }

    /// Total number of arcs, loops included. The paper's `a(D)`.
    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Number of loops. The paper's `l`.
    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&u| self.has_loop(u)).count()
    }

    pub fn is_loopless(&self) -> bool {
        self.loop_count() == 0
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn in_degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&x| self.has_arc(x, u)).count()
    }

    /// Degree report for `u` under the loop-counts-once convention.
    pub fn degrees(&self, u: usize) -> Result<DegreeReport, DigraphError> {
        self.check_vertex(u)?;
        let out_degree = self.out_degree(u);
        let in_degree = self.in_degree(u);
        let incident = if self.has_loop(u) {
            out_degree + in_degree - 1
        } else {
            out_degree + in_degree
        };
        Ok(DegreeReport {
            vertex: u,
            out_degree,
            in_degree,
            incident,
        })
    }

    /// Largest `d(u)` over all vertices (0 for the trivial digraph with no arcs).
    pub fn max_incident_degree(&self) -> usize {
        (0..self.n)
            .map(|u| self.degrees(u).expect("vertex in range").incident)
            .max()
            .unwrap_or(0)
    }

    /// Length of the shortest directed cycle; `None` when acyclic. A loop is a
    /// 1-cycle.
    ///
    /// One BFS per root: the shortest cycle through `r` is `dist(r, x) + 1`
    /// minimized over arcs `x -> r`.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for r in 0..self.n {
            if self.has_loop(r) {
                return Some(1);
            }
            dist.fill(usize::MAX);
            dist[r] = 0;
            queue.clear();
            queue.push(r);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                if let Some(b) = best {
                    // Deeper vertices cannot close a shorter cycle.
                    if dist[x] + 1 >= b {
                        continue;
                    }
                }
                for y in self.successors(x) {
                    if y == r {
                        let len = dist[x] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    } else if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push(y);
                    }
                }
            }
        }
        best
    }

    pub fn is_acyclic(&self) -> bool {
        self.girth().is_none()
    }

    /// True iff the digraph is loopless and every unordered pair is joined by
    /// exactly one arc.
    pub fn is_tournament(&self) -> bool {
        if !self.is_loopless() {
            return false;
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_arc(u, v) == self.has_arc(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff some relabeling makes the adjacency strictly upper-triangular,
    /// i.e. the digraph is an acyclic tournament.
    pub fn is_transitive_tournament(&self) -> bool {
        self.is_tournament() && self.is_acyclic()
    }

    /// Subgraph induced by `vertices`, relabeled to `0..|X|-1` in increasing
    /// label order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Digraph, DigraphError> {
        if vertices.is_empty() {
            return Err(DigraphError::EmptyVertexSet);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_vertex(v)?;
        }
        let mut sub = Digraph::empty(sorted.len())?;
        for (i, &u) in sorted.iter().enumerate() {
            for (j, &v) in sorted.iter().enumerate() {
                if self.has_arc(u, v) {
                    sub.rows[i] |= 1 << j;
                }
            }
        }
        Ok(sub)
    }

    /// Image of the digraph under the vertex relabeling `perm` (vertex `u`
    /// becomes `perm[u]`).
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut seen = 0u64;
        for &p in perm {
            assert!(p < self.n && seen >> p & 1 == 0, "not a permutation");
            seen |= 1 << p;
        }
        let mut out = Digraph {
            n: self.n,
            rows: vec![0; self.n],
        };
        for u in 0..self.n {
            for v in self.successors(u) {
                out.rows[perm[u]] |= 1 << perm[v];
            }
        }
        out
    }

    /// Copy with one arc removed.
    pub fn without_arc(&self, u: usize, v: usize) -> Digraph {
        debug_assert!(self.has_arc(u, v));
        let mut d = self.clone();
        d.rows[u] &= !(1 << v);
        d
    }

    /// Renders the bit-exact text format: decimal order, then one `0/1` row
    /// per vertex, each line LF-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1) + 4);
        s.push_str(&self.n.to_string());
        s.push('\n');
        for u in 0..self.n {
            for v in 0..self.n {
                s.push(if self.has_arc(u, v) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={})", self.n)?;
        for u in 0..self.n {
            write!(f, " {:0width$b}", self.rows[u], width = self.n)?;
        }
        Ok(())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

// ============================================================================
// Arc universes
// ============================================================================

/// An indexed universe of candidate arcs on `n` vertices: all `n*n` positions
/// in row-major order, or the `n*(n-1)` off-diagonal ones when loops are
/// excluded. Digraphs over the universe pack into `u64` bitmasks, one bit per
/// position, which is what the enumeration and search engines iterate over.
#[derive(Clone, Debug)]
pub struct ArcSpace {
    n: usize,
    allow_loops: bool,
    positions: Vec<(usize, usize)>,
}

impl ArcSpace {
    /// # Panics
    /// Panics if the universe does not fit in 64 bits.
    pub fn new(n: usize, allow_loops: bool) -> Self {
        assert!(n >= 1 && n * n <= 64, "arc universe must fit in a u64 mask");
        let positions = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| allow_loops || u != v)
            .collect();
        ArcSpace {
            n,
            allow_loops,
            positions,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn allow_loops(&self) -> bool {
        self.allow_loops
    }

    /// Number of candidate arc positions.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn full_mask(&self) -> u64 {
        if self.positions.len() == 64 {
            u64::MAX
        } else {
            (1 << self.positions.len()) - 1
        }
    }

    pub fn arc_at(&self, index: usize) -> (usize, usize) {
        self.positions[index]
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n || (!self.allow_loops && u == v) {
            return None;
        }
        let raw = u * self.n + v;
        Some(if self.allow_loops {
            raw
        } else {
            raw - u - usize::from(v > u)
        })
    }

    pub fn digraph_from_mask(&self, mask: u64) -> Digraph {
        debug_assert_eq!(mask & !self.full_mask(), 0);
        let mut d = Digraph {
            n: self.n,
            rows: vec![0; self.n],
        };
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = self.positions[i];
            d.rows[u] |= 1 << v;
        }
        d
    }

    /// Inverse of [`Self::digraph_from_mask`]. `None` if the digraph has a
    /// loop excluded from this universe or a different order.
    pub fn mask_from_digraph(&self, d: &Digraph) -> Option<u64> {
        if d.order() != self.n || (!self.allow_loops && !d.is_loopless()) {
            return None;
        }
        let mut mask = 0;
        for u in 0..self.n {
            for v in d.successors(u) {
                mask |= 1 << self.index_of(u, v)?;
            }
        }
        Some(mask)
    }
}

// ============================================================================
// Text format parsing
// ============================================================================

/// Where and why parsing failed. Lines and columns are 1-based.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line 1: missing or empty order header")]
    MissingHeader,
    #[error("line 1, column {column}: order header must be a decimal integer")]
    MalformedHeader { column: usize },
    #[error("line 1: order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("line {line}: expected {expected} adjacency rows, found {found}")]
    MissingRows { line: usize, expected: usize, found: usize },
    #[error("line {line}: row has {got} characters, expected {expected}")]
    RowLength { line: usize, expected: usize, got: usize },
    #[error("line {line}, column {column}: invalid character {ch:?}, expected '0' or '1'")]
    InvalidCharacter { line: usize, column: usize, ch: char },
    #[error("line {line}: trailing content after the last adjacency row")]
    TrailingContent { line: usize },
}

/// Parses the digraph text format.
///
/// Format: line 1 is the decimal order `n`; lines `2..n+1` are rows of exactly
/// `n` characters from `{0,1}`; character `j` of line `i+1` is `adj[i][j]`.
/// Lines end with LF; no other whitespace is allowed. The final LF may be
/// omitted. Round-trips with [`Digraph::to_text`].
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text.split('\n');
    let header = lines.next().filter(|h| !h.is_empty()).ok_or(ParseError::MissingHeader)?;
    if let Some(pos) = header.chars().position(|c| !c.is_ascii_digit()) {
        return Err(ParseError::MalformedHeader { column: pos + 1 });
    }
    let n: usize = header
        .parse()
        .map_err(|_| ParseError::OrderOutOfRange { n: usize::MAX, max: MAX_ORDER })?;
    if n == 0 || n > MAX_ORDER {
        return Err(ParseError::OrderOutOfRange { n, max: MAX_ORDER });
    }

    let mut d = Digraph {
        n,
        rows: vec![0; n],
    };
    for u in 0..n {
        let line_no = u + 2;
        // An empty segment also means the rows ran out: it is either EOF or a
        // blank line, and a valid row always has n >= 1 characters.
        let row = lines.next().filter(|r| !r.is_empty()).ok_or(ParseError::MissingRows {
            line: line_no,
            expected: n,
            found: u,
        })?;
        let mut got = 0;
        for (j, ch) in row.chars().enumerate() {
            got += 1;
            if j >= n {
                continue; // counted, reported below as a length error
            }
            match ch {
                '0' => {}
                '1' => d.rows[u] |= 1 << j,
                _ => {
                    return Err(ParseError::InvalidCharacter {
                        line: line_no,
                        column: j + 1,
                        ch,
                    })
                }
            }
        }
        if got != n {
            return Err(ParseError::RowLength {
                line: line_no,
                expected: n,
                got,
            });
        }
    }
    // Only an optional final empty segment (from the trailing LF) may remain.
    let mut extra_line = n + 2;
    for rest in lines {
        if !rest.is_empty() {
            return Err(ParseError::TrailingContent { line: extra_line });
        }
        extra_line += 1;
        if extra_line > n + 3 {
            return Err(ParseError::TrailingContent { line: extra_line - 1 });
        }
    }
    Ok(d)
}
