//! Exact walk counting via adjacency-matrix powers, the freeness decision, and
//! lexicographic walk extraction.
//!
//! The matrix engine is generic over the counting scalar: `u64` with overflow
//! detection serves as the fast path, and `BigUint` is the exact fallback, so
//! verdicts never depend on fixed-width arithmetic. [`walk_count_matrix`]
//! glues the two together.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};

use crate::digraph::Digraph;

/// Scalar usable as a walk count. `checked_*` returning `None` signals
/// overflow; for unbounded scalars it never does.
pub trait Count: Zero + One + CheckedAdd + CheckedMul + Clone + Ord + fmt::Debug {}

impl<T> Count for T where T: Zero + One + CheckedAdd + CheckedMul + Clone + Ord + fmt::Debug {}

/// `n x n` matrix whose entry `(u, v)` counts the `k`-walks from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix<C> {
    n: usize,
    k: usize,
    entries: Vec<C>,
}

impl<C: Count> WalkMatrix<C> {
    /// The `k = 0` matrix: exactly one empty walk from each vertex to itself.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![C::zero(); n * n];
        for u in 0..n {
            entries[u * n + u] = C::one();
        }
        WalkMatrix { n, k: 0, entries }
    }

    /// The adjacency matrix, i.e. the `k = 1` walk counts.
    pub fn adjacency(d: &Digraph) -> Self {
        let n = d.order();
        let mut entries = vec![C::zero(); n * n];
        for u in 0..n {
            for v in d.successors(u) {
                entries[u * n + v] = C::one();
            }
        }
        WalkMatrix { n, k: 1, entries }
    }

    /// Exact matrix product; `None` if any entry overflows the scalar.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut entries = vec![C::zero(); n * n];
        for u in 0..n {
            for x in 0..n {
                let a = &self.entries[u * n + x];
                if a.is_zero() {
                    continue;
                }
                for v in 0..n {
                    let b = &other.entries[x * n + v];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b)?;
                    entries[u * n + v] = entries[u * n + v].checked_add(&prod)?;
                }
            }
        }
        Some(WalkMatrix {
            n,
            k: self.k + other.k,
            entries,
        })
    }

    /// `k`-th power of the adjacency matrix of `d` by repeated squaring;
    /// `None` on scalar overflow.
    pub fn power(d: &Digraph, k: usize) -> Option<Self> {
        let mut result = Self::identity(d.order());
        if k == 0 {
            return Some(result);
        }
        let mut base = Self::adjacency(d);
        let mut exp = k;
        loop {
            if exp & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = base.checked_mul(&base)?;
        }
        // Squaring bookkeeping overshoots k; the exponent arithmetic above is
        // what determines the product.
        result.k = k;
        Some(result)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn walk_length(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> &C {
        &self.entries[u * self.n + v]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Maximizing entry with its coordinates; ties broken by the smallest
    /// `(u, v)` in row-major order.
    pub fn max_entry(&self) -> (C, usize, usize) {
        let mut best = (self.entries[0].clone(), 0, 0);
        for u in 0..self.n {
            for v in 0..self.n {
                let e = &self.entries[u * self.n + v];
                if *e > best.0 {
                    best = (e.clone(), u, v);
                }
            }
        }
        best
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C]> {
        self.entries.chunks(self.n)
    }
}

impl WalkMatrix<u64> {
    pub fn to_big(&self) -> WalkMatrix<BigUint> {
        WalkMatrix {
            n: self.n,
            k: self.k,
            entries: self.entries.iter().map(|&e| BigUint::from(e)).collect(),
        }
    }
}

/// Machine-word walk matrices; exact while no entry exceeds `u64::MAX`.
pub type WalkMatrix64 = WalkMatrix<u64>;
/// Arbitrary-precision walk matrices; always exact.
pub type WalkMatrixBig = WalkMatrix<BigUint>;

/// Exact `k`-walk counts for every vertex pair. Machine words when they
/// suffice, arbitrary precision otherwise; the result is always exact.
pub fn walk_count_matrix(d: &Digraph, k: usize) -> WalkMatrixBig {
    match WalkMatrix64::power(d, k) {
        Some(m) => m.to_big(),
        None => WalkMatrixBig::power(d, k).expect("BigUint arithmetic cannot overflow"),
    }
}

/// A maximizing pair from [`max_pair_walks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPairWalks {
    pub count: BigUint,
    pub source: usize,
    pub target: usize,
}

/// Largest same-endpoint `k`-walk multiplicity over all ordered pairs,
/// closed pairs `u = v` included; ties resolved row-major.
pub fn max_pair_walks(d: &Digraph, k: usize) -> MaxPairWalks {
    let (count, source, target) = walk_count_matrix(d, k).max_entry();
    MaxPairWalks {
        count,
        source,
        target,
    }
}

/// Freeness decision: no ordered pair (closed pairs included) has more than
/// `t` distinct `k`-walks.
pub fn is_free(d: &Digraph, k: usize, t: u64) -> bool {
    assert!(k >= 1 && t >= 1, "freeness requires k >= 1 and t >= 1");
    first_violating_pair(d, k, t).is_none()
}

/// First pair `(u, v)` in row-major order whose `k`-walk count exceeds `t`,
/// if any.
pub fn first_violating_pair(d: &Digraph, k: usize, t: u64) -> Option<(usize, usize)> {
    let n = d.order();
    if let Some(m) = WalkMatrix64::power(d, k) {
        for u in 0..n {
            for v in 0..n {
                if *m.entry(u, v) > t {
                    return Some((u, v));
                }
            }
        }
        return None;
    }
    let m = walk_count_matrix(d, k);
    let t = BigUint::from(t);
    for u in 0..n {
        for v in 0..n {
            if *m.entry(u, v) > t {
                return Some((u, v));
            }
        }
    }
    None
}

// ============================================================================
// Walks and extraction
// ============================================================================

/// A walk: `length() + 1` vertices, consecutive pairs joined by arcs of the
/// host. Vertices and arcs may repeat; closed walks are permitted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a walk has at least one vertex");
        Walk { vertices }
    }

    /// Number of arcs.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().expect("nonempty")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Checks every consecutive pair against the host's arcs.
    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        self.vertices.iter().all(|&v| v < d.order())
            && self.vertices.windows(2).all(|w| d.has_arc(w[0], w[1]))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// First `min(limit, total)` distinct `k`-walks from `source` to `target`, in
/// lexicographic order of vertex sequences.
///
/// Enumeration backtracks over a reachability table (which vertices still
/// reach `target` in the remaining number of steps), so only emitted walks
/// cost work.
pub fn extract_walks(
    d: &Digraph,
    k: usize,
    source: usize,
    target: usize,
    limit: usize,
) -> Vec<Walk> {
    assert!(limit >= 1, "limit must be at least 1");
    assert!(source < d.order() && target < d.order(), "endpoint out of range");

    // reach[r] = bitmask of vertices from which an r-walk to target exists.
    let mut reach = vec![0u64; k + 1];
    reach[0] = 1 << target;
    for r in 1..=k {
        for x in 0..d.order() {
            if d.out_mask(x) & reach[r - 1] != 0 {
                reach[r] |= 1 << x;
            }
        }
    }
    if reach[k] >> source & 1 == 0 {
        return Vec::new();
    }

    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k + 1);
    path.push(source);
    descend(d, &reach, k, target, &mut path, limit, &mut out);
    out
}

fn descend(
    d: &Digraph,
    reach: &[u64],
    remaining: usize,
    target: usize,
    path: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<Walk>,
) {
    if remaining == 0 {
        debug_assert_eq!(*path.last().unwrap(), target);
        out.push(Walk::new(path.clone()));
        return;
    }
    let x = *path.last().unwrap();
    let candidates = d.out_mask(x) & reach[remaining - 1];
    let mut bits = candidates;
    while bits != 0 {
        if out.len() >= limit {
            return;
        }
        let y = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        path.push(y);
        descend(d, reach, remaining - 1, target, path, limit, out);
        path.pop();
    }
}
