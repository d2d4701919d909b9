//! Exact canonical forms for digraphs of order at most 8.
//!
//! The canonical key is the lexicographically minimal row-major adjacency
//! bit-string over all vertex relabelings, so keys are equal exactly when the
//! digraphs are isomorphic. Beyond order 8 the module refuses instead of
//! degrading to a heuristic.

use std::fmt;

use thiserror::Error;

use crate::digraph::Digraph;

/// Largest order for which canonical keys are computed.
pub const MAX_CANONICAL_ORDER: usize = 8;

/// A labeling-invariant fingerprint: one byte of order, then the minimal
/// adjacency bit-string packed MSB-first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("order {n} above canonical range (max {max}); refusing inexact keys")]
    OrderAboveRange { n: usize, max: usize },
}

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Lowercase hex rendering, the external form of a key.
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.bytes.len() * 2);
        for b in &self.bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Minimal packed adjacency over all relabelings. Bit `(i, j)` of a packing
/// lands at position `n*n - 1 - (i*n + j)` from the least significant bit, so
/// integer order equals lexicographic order of the row-major bit-string.
fn min_packed_over_relabelings(d: &Digraph) -> u64 {
    let n = d.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    // Heap's algorithm over all n! relabelings.
    let mut c = vec![0usize; n];
    let mut eval = |perm: &[usize]| {
        let mut bits = 0u64;
        for u in 0..n {
            for v in d.successors(u) {
                bits |= 1 << (n * n - 1 - (perm[u] * n + perm[v]));
            }
        }
        if bits < best {
            best = bits;
        }
    };
    eval(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            eval(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Canonical key of `d`; exact for `order <= 8`, refused above.
pub fn canonical_form(d: &Digraph) -> Result<CanonicalKey, CanonicalError> {
    let n = d.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(CanonicalError::OrderAboveRange {
            n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let best = min_packed_over_relabelings(d);
    // Unpack back to a row-major MSB-first byte string.
    let nbits = n * n;
    let nbytes = nbits.div_ceil(8);
    let mut bytes = Vec::with_capacity(1 + nbytes);
    bytes.push(n as u8);
    for byte_idx in 0..nbytes {
        let mut b = 0u8;
        for bit_in_byte in 0..8 {
            let pos = byte_idx * 8 + bit_in_byte;
            if pos < nbits && (best >> (nbits - 1 - pos)) & 1 == 1 {
                b |= 1 << (7 - bit_in_byte);
            }
        }
        bytes.push(b);
    }
    Ok(CanonicalKey { bytes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::parse_digraph;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand::SeedableRng;

    fn tt(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))).unwrap()
    }

    fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
        Digraph::from_arcs(
            n,
            (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn key_invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for _ in 0..(if n <= 4 { 200 } else { 100 }) {
                let d = random_digraph(&mut rng, n, 0.4);
                let key = canonical_form(&d).unwrap();
                for _ in 0..10 {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    assert_eq!(canonical_form(&d.relabel(&perm)).unwrap(), key);
                }
            }
        }
    }

    #[test]
    fn key_separates_tt3_from_c3() {
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_ne!(
            canonical_form(&tt(3)).unwrap(),
            canonical_form(&c3).unwrap()
        );
    }

    #[test]
    fn refuses_above_order_8() {
        let d = Digraph::empty(9).unwrap();
        assert_eq!(
            canonical_form(&d),
            Err(CanonicalError::OrderAboveRange { n: 9, max: 8 })
        );
        assert!(canonical_form(&tt(8)).is_ok());
    }

    #[test]
    fn hex_is_lowercase_and_fixed_length() {
        let key = canonical_form(&tt(5)).unwrap();
        let hex = key.to_hex();
        assert_eq!(hex.len(), 2 * (1 + 25usize.div_ceil(8)));
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }

    /// Brute-force isomorphism classification: group digraphs by testing
    /// equality under every permutation. Completely independent of the
    /// canonical-key computation.
    fn classify_by_pairwise_isomorphism(digraphs: &[Digraph]) -> Vec<Vec<usize>> {
        fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
            let n = a.order();
            if n != b.order() {
                return false;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                if &a.relabel(&perm) == b {
                    return true;
                }
                // next_permutation
                let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1])
                else {
                    return false;
                };
                let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
                perm.swap(i, j);
                perm[i + 1..].reverse();
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        'outer: for (idx, d) in digraphs.iter().enumerate() {
            for class in classes.iter_mut() {
                if isomorphic(&digraphs[class[0]], d) {
                    class.push(idx);
                    continue 'outer;
                }
            }
            classes.push(vec![idx]);
        }
        classes
    }

    fn all_loopless(n: usize) -> Vec<Digraph> {
        let positions: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v)
            .collect();
        let bits = positions.len();
        (0u64..(1 << bits))
            .map(|mask| {
                Digraph::from_arcs(
                    n,
                    positions
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (mask >> i) & 1 == 1)
                        .map(|(_, &a)| a),
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn two_vertex_loopless_has_three_classes() {
        let ds = all_loopless(2);
        let keys: std::collections::HashSet<_> =
            ds.iter().map(|d| canonical_form(d).unwrap()).collect();
        assert_eq!(keys.len(), 3);
        assert_eq!(classify_by_pairwise_isomorphism(&ds).len(), 3);
    }

    #[test]
    fn key_count_matches_isomorphism_oracle() {
        for n in 1..=3 {
            let ds = all_loopless(n);
            let keys: std::collections::HashSet<_> =
                ds.iter().map(|d| canonical_form(d).unwrap()).collect();
            assert_eq!(
                keys.len(),
                classify_by_pairwise_isomorphism(&ds).len(),
                "n = {n}"
            );
        }
        // n = 4 has 4096 labeled loopless digraphs; pairwise classification is
        // still fast enough here and pins the exactness claim.
        let ds = all_loopless(4);
        let keys: std::collections::HashSet<_> =
            ds.iter().map(|d| canonical_form(d).unwrap()).collect();
        assert_eq!(keys.len(), classify_by_pairwise_isomorphism(&ds).len());
    }

    #[test]
    fn keys_agree_with_oracle_within_classes() {
        // Keys must be equal inside an oracle class and distinct across them.
        let ds = all_loopless(3);
        let classes = classify_by_pairwise_isomorphism(&ds);
        let mut seen = std::collections::HashSet::new();
        for class in classes {
            let key = canonical_form(&ds[class[0]]).unwrap();
            for &i in &class[1..] {
                assert_eq!(canonical_form(&ds[i]).unwrap(), key);
            }
            assert!(seen.insert(key), "key shared across oracle classes");
        }
    }

    #[test]
    fn parse_then_canonicalize_loop_digraphs() {
        let a = parse_digraph("2\n11\n00\n").unwrap(); // loop at 0, arc 0->1
        let b = parse_digraph("2\n00\n11\n").unwrap(); // loop at 1, arc 1->0
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }
}
