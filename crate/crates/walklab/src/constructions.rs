//! Deterministic generators for the digraph families the proofs work with:
//! transitive tournaments, balanced blow-ups, joint/linked cycle pairs, and
//! cycle-tournament joins.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, MAX_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("base order {base} exceeds total order {total}")]
    BaseExceedsTotal { base: usize, total: usize },
    #[error("degenerate join: two loops at one vertex collapse into a single arc")]
    DegenerateJoin,
    #[error("cycle length must be at least 1")]
    EmptyCycle,
}

fn check_order(n: usize) -> Result<(), ConstructError> {
    if n == 0 || n > MAX_ORDER {
        Err(ConstructError::OrderOutOfRange { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Transitive tournament on `n` vertices: arcs exactly `{(i, j) : i < j}`.
pub fn transitive_tournament(n: usize) -> Result<Digraph, ConstructError> {
    check_order(n)?;
    Ok(
        Digraph::from_arcs(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
            .expect("labels in range"),
    )
}

// ============================================================================
// Balanced blow-up
// ============================================================================

/// Part layout of a balanced blow-up: `base_order` parts whose sizes sum to
/// `total_order` and differ pairwise by at most one, larger parts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    pub base_order: usize,
    pub total_order: usize,
    pub part_sizes: Vec<usize>,
}

impl BlowupSpec {
    /// `sum over i < j of size_i * size_j`, the arc count of the realization.
    pub fn arc_count(&self) -> usize {
        let total: usize = self.part_sizes.iter().sum();
        let squares: usize = self.part_sizes.iter().map(|s| s * s).sum();
        (total * total - squares) / 2
    }
}

/// Balanced blow-up of the transitive tournament of order `base`: the vertex
/// set splits into `base` independent parts (sizes within one of each other,
/// larger parts at smaller indices) and every vertex of part `i` sends an arc
/// to every vertex of part `j` whenever `i < j`. No loops, no intra-part arcs.
pub fn balanced_blowup(base: usize, n: usize) -> Result<(Digraph, BlowupSpec), ConstructError> {
    check_order(n)?;
    if base == 0 || base > n {
        return Err(ConstructError::BaseExceedsTotal { base, total: n });
    }
    let big = n.div_ceil(base);
    let n_big = n % base;
    let sizes: Vec<usize> = (0..base)
        .map(|i| if n_big != 0 && i < n_big { big } else { n / base })
        .collect();
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);

    let mut starts = Vec::with_capacity(base);
    let mut acc = 0;
    for &s in &sizes {
        starts.push(acc);
        acc += s;
    }
    let part_of = |v: usize| starts.iter().rposition(|&s| s <= v).expect("nonempty parts");

    let d = Digraph::from_arcs(
        n,
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| part_of(u) < part_of(v)),
    )
    .expect("labels in range");
    let spec = BlowupSpec {
        base_order: base,
        total_order: n,
        part_sizes: sizes,
    };
    Ok((d, spec))
}

// ============================================================================
// Cycle joins
// ============================================================================

/// How two cycles meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JoinMode {
    /// The two cycles share exactly one vertex.
    JointAtVertex,
    /// Vertex-disjoint cycles plus one arc from the first into the second.
    LinkedByArc,
}

/// A two-cycle configuration request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinConfig {
    pub m1: usize,
    pub m2: usize,
    pub mode: JoinMode,
}

impl JoinConfig {
    pub fn lcm(&self) -> usize {
        num_integer::lcm(self.m1, self.m2)
    }
}

/// Where the two cycles of a join construction touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JoinPoint {
    /// Shared vertex of a joint-at-vertex configuration.
    SharedVertex(usize),
    /// The single linking arc of a linked-by-arc configuration.
    LinkingArc { from: usize, to: usize },
}

/// Minimal digraph realizing a [`JoinConfig`].
///
/// Joint at vertex: the shared vertex is 0; the first cycle runs
/// `0 -> 1 -> .. -> m1-1 -> 0` and the second `0 -> m1 -> .. -> m1+m2-2 -> 0`
/// (a cycle of length one is a loop). Linked by arc: cycles occupy
/// `0..m1` and `m1..m1+m2`, joined by the arc from vertex 0 of the first to
/// vertex 0 (label `m1`) of the second.
pub fn build_join(cfg: &JoinConfig) -> Result<(Digraph, JoinPoint), ConstructError> {
    if cfg.m1 == 0 || cfg.m2 == 0 {
        return Err(ConstructError::EmptyCycle);
    }
    match cfg.mode {
        JoinMode::JointAtVertex => {
            if cfg.m1 == 1 && cfg.m2 == 1 {
                return Err(ConstructError::DegenerateJoin);
            }
            let n = cfg.m1 + cfg.m2 - 1;
            check_order(n)?;
            let mut arcs = Vec::new();
            push_cycle_through(&mut arcs, &cycle_labels(0, cfg.m1, 1));
            push_cycle_through(&mut arcs, &cycle_labels(0, cfg.m2, cfg.m1));
            let d = Digraph::from_arcs(n, arcs).expect("labels in range");
            Ok((d, JoinPoint::SharedVertex(0)))
        }
        JoinMode::LinkedByArc => {
            let n = cfg.m1 + cfg.m2;
            check_order(n)?;
            let mut arcs = Vec::new();
            push_cycle(&mut arcs, 0, cfg.m1);
            push_cycle(&mut arcs, cfg.m1, cfg.m2);
            arcs.push((0, cfg.m1));
            let d = Digraph::from_arcs(n, arcs).expect("labels in range");
            Ok((d, JoinPoint::LinkingArc { from: 0, to: cfg.m1 }))
        }
    }
}

/// Labels of an m-cycle through a designated start vertex, with the remaining
/// `m - 1` vertices drawn consecutively from `fresh_base` upward.
fn cycle_labels(start: usize, m: usize, fresh_base: usize) -> Vec<usize> {
    let mut labels = vec![start];
    labels.extend((0..m - 1).map(|i| fresh_base + i));
    labels
}

fn push_cycle_through(arcs: &mut Vec<(usize, usize)>, labels: &[usize]) {
    let m = labels.len();
    for i in 0..m {
        arcs.push((labels[i], labels[(i + 1) % m]));
    }
}

fn push_cycle(arcs: &mut Vec<(usize, usize)>, base: usize, m: usize) {
    for i in 0..m {
        arcs.push((base + i, base + (i + 1) % m));
    }
}

// ============================================================================
// Cycle-tournament join
// ============================================================================

/// Direction policy for the arcs between the cycle and the tournament.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JoinOrientation {
    /// Every pair is oriented cycle-to-tournament, the direction the proof
    /// forces.
    AllToTournament,
    /// Each pair gets exactly one arc with seeded random direction.
    Random { seed: u64 },
}

/// Disjoint `l`-cycle `C` (labels `0..l`) and transitive tournament of order
/// `s` (labels `l..l+s`), with exactly one arc between every `(w, u)` pair,
/// `w` in `C`, `u` in the tournament, oriented per `orientation`.
pub fn cycle_join_tournament(
    l: usize,
    s: usize,
    orientation: JoinOrientation,
) -> Result<Digraph, ConstructError> {
    if l == 0 {
        return Err(ConstructError::EmptyCycle);
    }
    check_order(s)?;
    let n = l + s;
    check_order(n)?;
    let mut arcs = Vec::new();
    push_cycle(&mut arcs, 0, l);
    for i in 0..s {
        for j in (i + 1)..s {
            arcs.push((l + i, l + j));
        }
    }
    match orientation {
        JoinOrientation::AllToTournament => {
            for w in 0..l {
                for u in 0..s {
                    arcs.push((w, l + u));
                }
            }
        }
        JoinOrientation::Random { seed } => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for w in 0..l {
                for u in 0..s {
                    if rng.random_bool(0.5) {
                        arcs.push((w, l + u));
                    } else {
                        arcs.push((l + u, w));
                    }
                }
            }
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("labels in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{is_free, walk_count_matrix};

    #[test]
    fn tournament_arc_counts() {
        assert_eq!(transitive_tournament(5).unwrap().arc_count(), 10);
        assert_eq!(transitive_tournament(1).unwrap().arc_count(), 0);
        for n in 1..=10 {
            let d = transitive_tournament(n).unwrap();
            assert_eq!(d.girth(), None);
            assert!(d.is_transitive_tournament());
            assert_eq!(d.arc_count(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn tournament_freeness_sweep() {
        for n in 2..=10 {
            for k in [n - 1, n, n + 5] {
                assert!(is_free(&transitive_tournament(n).unwrap(), k, 1));
            }
        }
    }

    #[test]
    fn blowup_4_of_6() {
        let (d, spec) = balanced_blowup(4, 6).unwrap();
        assert_eq!(spec.part_sizes, vec![2, 2, 1, 1]);
        assert_eq!(spec.arc_count(), 13);
        assert_eq!(d.arc_count(), 13);
        assert!(d.is_loopless());
        // 4-walks need 5 strictly increasing part indices among 4 parts.
        assert!(walk_count_matrix(&d, 4).is_zero());
    }

    #[test]
    fn blowup_with_singleton_parts_is_tournament() {
        for n in 1..=8 {
            let (d, spec) = balanced_blowup(n, n).unwrap();
            assert_eq!(spec.part_sizes, vec![1; n]);
            assert_eq!(d, transitive_tournament(n).unwrap());
        }
    }

    #[test]
    fn blowup_arc_count_formula() {
        for n in 1..=12usize {
            for base in 1..=n {
                let (d, spec) = balanced_blowup(base, n).unwrap();
                let squares: usize = spec.part_sizes.iter().map(|s| s * s).sum();
                assert_eq!(d.arc_count(), (n * n - squares) / 2);
                assert_eq!(d.arc_count(), spec.arc_count());
                let spread = spec.part_sizes.iter().max().unwrap()
                    - spec.part_sizes.iter().min().unwrap();
                assert!(spread <= 1, "unbalanced parts at base={base} n={n}");
            }
        }
    }

    #[test]
    fn blowup_has_no_base_length_walks() {
        for base in 2..=6usize {
            for n in base..=12 {
                let (d, _) = balanced_blowup(base, n).unwrap();
                assert!(walk_count_matrix(&d, base).is_zero(), "base={base} n={n}");
            }
        }
    }

    #[test]
    fn blowup_rejects_base_above_total() {
        assert_eq!(
            balanced_blowup(5, 4),
            Err(ConstructError::BaseExceedsTotal { base: 5, total: 4 })
        );
    }

    #[test]
    fn joint_two_cycles_shape() {
        let (d, point) = build_join(&JoinConfig {
            m1: 2,
            m2: 2,
            mode: JoinMode::JointAtVertex,
        })
        .unwrap();
        assert_eq!(point, JoinPoint::SharedVertex(0));
        assert_eq!(d.order(), 3);
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.girth(), Some(2));
    }

    #[test]
    fn loop_plus_two_cycle() {
        let (d, _) = build_join(&JoinConfig {
            m1: 1,
            m2: 2,
            mode: JoinMode::JointAtVertex,
        })
        .unwrap();
        assert_eq!(d.order(), 2);
        assert!(d.has_loop(0));
        assert!(d.has_arc(0, 1) && d.has_arc(1, 0));
        assert_eq!(d.girth(), Some(1));
    }

    #[test]
    fn linked_2_and_3_cycles() {
        let cfg = JoinConfig {
            m1: 2,
            m2: 3,
            mode: JoinMode::LinkedByArc,
        };
        assert_eq!(cfg.lcm(), 6);
        let (d, point) = build_join(&cfg).unwrap();
        assert_eq!(d.order(), 5);
        assert_eq!(point, JoinPoint::LinkingArc { from: 0, to: 2 });
        assert_eq!(d.arc_count(), 2 + 3 + 1);
        assert_eq!(d.girth(), Some(2));
    }

    #[test]
    fn join_girth_is_smaller_cycle() {
        for m1 in 1..=5usize {
            for m2 in 1..=5usize {
                for mode in [JoinMode::JointAtVertex, JoinMode::LinkedByArc] {
                    if mode == JoinMode::JointAtVertex && m1 == 1 && m2 == 1 {
                        continue;
                    }
                    let (d, _) = build_join(&JoinConfig { m1, m2, mode }).unwrap();
                    assert_eq!(d.girth(), Some(m1.min(m2)), "{m1} {m2} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn degenerate_double_loop_rejected() {
        assert_eq!(
            build_join(&JoinConfig {
                m1: 1,
                m2: 1,
                mode: JoinMode::JointAtVertex
            }),
            Err(ConstructError::DegenerateJoin)
        );
        // Linked double loop is fine: two vertices, two loops, one arc.
        let (d, _) = build_join(&JoinConfig {
            m1: 1,
            m2: 1,
            mode: JoinMode::LinkedByArc,
        })
        .unwrap();
        assert_eq!((d.order(), d.arc_count(), d.loop_count()), (2, 3, 2));
    }

    #[test]
    fn cycle_tournament_all_to_tournament_counts() {
        let d = cycle_join_tournament(3, 7, JoinOrientation::AllToTournament).unwrap();
        assert_eq!(d.order(), 10);
        assert_eq!(d.arc_count(), 3 + 21 + 21);
        // Every (cycle, tournament) pair joined by exactly one arc.
        for w in 0..3 {
            for u in 3..10 {
                assert!(d.has_arc(w, u) ^ d.has_arc(u, w));
            }
        }
    }

    #[test]
    fn cycle_tournament_smallest_instance() {
        let d = cycle_join_tournament(1, 2, JoinOrientation::AllToTournament).unwrap();
        assert_eq!(d.order(), 3);
        assert!(d.has_loop(0));
        assert_eq!(d.arc_count(), 1 + 1 + 2);
    }

    #[test]
    fn cycle_tournament_random_is_seed_deterministic() {
        let a = cycle_join_tournament(2, 5, JoinOrientation::Random { seed: 9 }).unwrap();
        let b = cycle_join_tournament(2, 5, JoinOrientation::Random { seed: 9 }).unwrap();
        assert_eq!(a, b);
        for w in 0..2 {
            for u in 2..7 {
                assert!(a.has_arc(w, u) ^ a.has_arc(u, w));
            }
        }
    }
}
