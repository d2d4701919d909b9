//! Executable verifiers for the supporting lemmas, plus the explicit
//! walk-family builder for the joint-cycles argument.
//!
//! Each verifier decides its lemma's claim on a concrete instance by exact
//! counting and reports a [`LemmaReport`]. A `violated` verdict always carries
//! a machine-checkable witness; `holds` verdicts attach the supporting
//! certificate where one exists.

pub mod thresholds;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::canonical::{canonical_form, CanonicalKey};
use crate::cert::WalkCertificate;
use crate::constructions::{
    build_join, cycle_join_tournament, ConstructError, JoinConfig, JoinMode, JoinOrientation,
};
use crate::digraph::{ArcSpace, Digraph};
use crate::walks::{extract_walks, is_free, max_pair_walks, Walk};

pub use thresholds::{ceil_log2, eval_thresholds, Thresholds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
}

/// Witness payload attached to a report.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LemmaWitness {
    /// An explicit same-endpoint walk family (serialized certificate JSON).
    Certificate { certificate: serde_json::Value },
    /// A digraph (text format) falsifying the claim, with optional focus
    /// vertex.
    Counterexample {
        digraph: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        vertex: Option<usize>,
        note: String,
    },
}

impl LemmaWitness {
    fn certificate(cert: &WalkCertificate) -> Self {
        let value =
            serde_json::from_str(&cert.to_json()).expect("certificate JSON is well-formed");
        LemmaWitness::Certificate { certificate: value }
    }
}

/// Outcome of one verifier invocation: `{lemma, params, verdict, witness?,
/// millis}` on the wire.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub params: serde_json::Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LemmaWitness>,
    pub millis: u64,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error("walk length {k} below the lemma threshold {min}")]
    WalkLengthBelowThreshold { k: u64, min: u64 },
    #[error("tournament order {s} below the lemma threshold {min}")]
    TournamentTooSmall { s: u64, min: u64 },
    #[error("order {n} outside the exhaustive regime {lo}..={hi}")]
    OrderOutsideRegime { n: usize, lo: usize, hi: usize },
    #[error("parameter t must be at least 1")]
    InvalidT,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

// ============================================================================
// Handshake identity
// ============================================================================

/// Checks `2 a(D) = sum_u d(u) + l` on one digraph.
pub fn verify_handshake(d: &Digraph) -> LemmaReport {
    let start = Instant::now();
    let n = d.order();
    let degree_sum: usize = (0..n)
        .map(|u| d.degrees(u).expect("vertex in range").incident)
        .sum();
    let loops = d.loop_count();
    let holds = 2 * d.arc_count() == degree_sum + loops;
    LemmaReport {
        lemma: "handshake".into(),
        params: json!({
            "n": n,
            "arcs": d.arc_count(),
            "degree_sum": degree_sum,
            "loops": loops,
        }),
        verdict: if holds { Verdict::Holds } else { Verdict::Violated },
        witness: (!holds).then(|| LemmaWitness::Counterexample {
            digraph: d.to_text(),
            vertex: None,
            note: "2a(D) != sum of incident degrees + loops".into(),
        }),
        millis: start.elapsed().as_millis() as u64,
    }
}

// ============================================================================
// Joint cycles (walk-family builder)
// ============================================================================

/// Replays the joint-cycles walk construction: on two cycles of lengths
/// `m1, m2` sharing one vertex `v`, the walk of length `L*s` from `v` along
/// the first cycle splits into `s = ceil(log2(t+1))` segments of length
/// `L = lcm(m1, m2)`, each independently replaceable by laps of the second
/// cycle. The first `t + 1` replacement masks (lexicographic) give distinct
/// same-endpoint walks, extended to length `k` by one common suffix along the
/// second cycle.
pub fn joint_cycles_certificate(
    m1: usize,
    m2: usize,
    t: u64,
    k: usize,
) -> Result<WalkCertificate, LemmaError> {
    if t < 1 {
        return Err(LemmaError::InvalidT);
    }
    let cfg = JoinConfig {
        m1,
        m2,
        mode: JoinMode::JointAtVertex,
    };
    let (host, _) = build_join(&cfg)?;
    let lcm = cfg.lcm();
    let segments = ceil_log2(t + 1) as usize;
    let threshold = lcm * segments;
    if k < threshold {
        return Err(LemmaError::WalkLengthBelowThreshold {
            k: k as u64,
            min: threshold as u64,
        });
    }

    // Vertex of each cycle after `step` arcs from the shared vertex 0.
    let c1_at = |step: usize| -> usize {
        let pos = step % m1;
        if pos == 0 {
            0
        } else {
            pos
        }
    };
    let c2_at = |step: usize| -> usize {
        let pos = step % m2;
        if pos == 0 {
            0
        } else {
            m1 + pos - 1
        }
    };

    let suffix_len = k - threshold;
    let target = c2_at(suffix_len);
    let mut walks = Vec::with_capacity(t as usize + 1);
    for mask in 0..=t {
        let mut vertices = Vec::with_capacity(k + 1);
        vertices.push(0);
        for seg in 0..segments {
            let replace = segments >= 1 && (mask >> (segments - 1 - seg)) & 1 == 1;
            for step in 1..=lcm {
                vertices.push(if replace { c2_at(step) } else { c1_at(step) });
            }
        }
        for step in 1..=suffix_len {
            vertices.push(c2_at(step));
        }
        walks.push(Walk::new(vertices));
    }

    let cert = WalkCertificate {
        host,
        k,
        source: 0,
        target,
        walks,
    };
    cert.validate()
        .expect("joint-cycles construction yields a valid certificate");
    Ok(cert)
}

// ============================================================================
// Linked cycles
// ============================================================================

/// Claim: two cycles connected by an arc force more than `t` same-endpoint
/// walks of length `t*L + 1`. Holds iff the exact count reaches `t + 1`.
pub fn linked_cycles_check(m1: usize, m2: usize, t: u64) -> Result<LemmaReport, LemmaError> {
    if t < 1 {
        return Err(LemmaError::InvalidT);
    }
    let start = Instant::now();
    let cfg = JoinConfig {
        m1,
        m2,
        mode: JoinMode::LinkedByArc,
    };
    let (host, _) = build_join(&cfg)?;
    let lcm = cfg.lcm();
    let k = (t as usize) * lcm + 1;
    let max = max_pair_walks(&host, k);
    let holds = max.count >= BigUint::from(t + 1);
    let witness = if holds {
        let walks = extract_walks(&host, k, max.source, max.target, t as usize + 1);
        let cert = WalkCertificate {
            host: host.clone(),
            k,
            source: max.source,
            target: max.target,
            walks,
        };
        cert.validate().expect("extracted walks form a certificate");
        Some(LemmaWitness::certificate(&cert))
    } else {
        Some(LemmaWitness::Counterexample {
            digraph: host.to_text(),
            vertex: None,
            note: format!("max pair count {} below t+1 = {}", max.count, t + 1),
        })
    };
    Ok(LemmaReport {
        lemma: "linked-cycles".into(),
        params: json!({
            "m1": m1, "m2": m2, "t": t, "L": lcm, "k": k,
            "max_count": max.count.to_string(),
            "source": max.source, "target": max.target,
        }),
        verdict: if holds { Verdict::Holds } else { Verdict::Violated },
        witness,
        millis: start.elapsed().as_millis() as u64,
    })
}

// ============================================================================
// Half-of-all-arcs digraphs
// ============================================================================

/// Claim: every loopless digraph with exactly `n(n-1)/2` arcs is a transitive
/// tournament or has girth at most 3. Exhaustive over isomorphism classes for
/// `2 <= n <= 5`.
pub fn half_arcs_check(n: usize) -> Result<LemmaReport, LemmaError> {
    if !(2..=5).contains(&n) {
        return Err(LemmaError::OrderOutsideRegime { n, lo: 2, hi: 5 });
    }
    let start = Instant::now();
    let space = ArcSpace::new(n, false);
    let target_arcs = (n * (n - 1) / 2) as u32;

    // Canonical keys of all digraphs at the target size, with the smallest
    // realizing mask kept per class for a deterministic representative.
    let classes: BTreeMap<CanonicalKey, u64> = (0u64..=space.full_mask())
        .into_par_iter()
        .filter(|mask| mask.count_ones() == target_arcs)
        .fold(BTreeMap::new, |mut acc, mask| {
            let d = space.digraph_from_mask(mask);
            let key = canonical_form(&d).expect("order within canonical range");
            acc.entry(key).or_insert(mask);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, mask) in b {
                a.entry(key)
                    .and_modify(|m| *m = (*m).min(mask))
                    .or_insert(mask);
            }
            a
        });

    let mut violation: Option<Digraph> = None;
    for &mask in classes.values() {
        let d = space.digraph_from_mask(mask);
        let ok = d.is_transitive_tournament() || d.girth().is_some_and(|g| g <= 3);
        if !ok {
            violation = Some(d);
            break;
        }
    }

    let holds = violation.is_none();
    Ok(LemmaReport {
        lemma: "half-arcs".into(),
        params: json!({
            "n": n,
            "arcs": target_arcs,
            "classes_checked": classes.len(),
        }),
        verdict: if holds { Verdict::Holds } else { Verdict::Violated },
        witness: violation.map(|d| LemmaWitness::Counterexample {
            digraph: d.to_text(),
            vertex: None,
            note: "neither a transitive tournament nor of girth <= 3".into(),
        }),
        millis: start.elapsed().as_millis() as u64,
    })
}

// ============================================================================
// Degree bound
// ============================================================================

/// Claim: a free digraph at walk length `k >= 2 ceil(log2(t+1))` has every
/// incident degree bounded by its order. Vacuously holds on non-free inputs.
pub fn degree_bound_check(d: &Digraph, k: usize, t: u64) -> Result<LemmaReport, LemmaError> {
    if t < 1 {
        return Err(LemmaError::InvalidT);
    }
    let min_k = eval_thresholds(t).lemma5_k;
    if (k as u64) < min_k {
        return Err(LemmaError::WalkLengthBelowThreshold {
            k: k as u64,
            min: min_k,
        });
    }
    let start = Instant::now();
    let n = d.order();
    let free = is_free(d, k, t);
    let offender = (0..n)
        .map(|u| (u, d.degrees(u).expect("vertex in range").incident))
        .find(|&(_, deg)| deg > n);
    let holds = !free || offender.is_none();
    Ok(LemmaReport {
        lemma: "degree-bound".into(),
        params: json!({
            "n": n, "k": k, "t": t,
            "free": free,
            "max_degree": d.max_incident_degree(),
        }),
        verdict: if holds { Verdict::Holds } else { Verdict::Violated },
        witness: (!holds).then(|| {
            let (vertex, deg) = offender.expect("violation has an offender");
            LemmaWitness::Counterexample {
                digraph: d.to_text(),
                vertex: Some(vertex),
                note: format!("free at (k={k}, t={t}) yet d({vertex}) = {deg} > n = {n}"),
            }
        }),
        millis: start.elapsed().as_millis() as u64,
    })
}

// ============================================================================
// Cycle joined to a tournament
// ============================================================================

/// Claim: a cycle fully joined to a large-enough tournament (one arc per
/// cross pair) forces more than `t` same-endpoint walks of length
/// `max{t+1, 3 ceil(log2(t+1))}`.
pub fn cycle_tournament_check(
    l: usize,
    s: usize,
    t: u64,
    orientation: JoinOrientation,
) -> Result<LemmaReport, LemmaError> {
    if t < 1 {
        return Err(LemmaError::InvalidT);
    }
    let th = eval_thresholds(t);
    if (s as u64) < th.lemma13_size {
        return Err(LemmaError::TournamentTooSmall {
            s: s as u64,
            min: th.lemma13_size,
        });
    }
    let start = Instant::now();
    let host = cycle_join_tournament(l, s, orientation)?;
    let k = th.lemma13_k as usize;
    let max = max_pair_walks(&host, k);
    let holds = max.count >= BigUint::from(t + 1);
    let witness = if holds {
        let walks = extract_walks(&host, k, max.source, max.target, t as usize + 1);
        let cert = WalkCertificate {
            host: host.clone(),
            k,
            source: max.source,
            target: max.target,
            walks,
        };
        cert.validate().expect("extracted walks form a certificate");
        Some(LemmaWitness::certificate(&cert))
    } else {
        Some(LemmaWitness::Counterexample {
            digraph: host.to_text(),
            vertex: None,
            note: format!("max pair count {} below t+1 = {}", max.count, t + 1),
        })
    };
    Ok(LemmaReport {
        lemma: "cycle-tournament".into(),
        params: json!({
            "l": l, "s": s, "t": t, "k": k,
            "orientation": orientation,
            "max_count": max.count.to_string(),
        }),
        verdict: if holds { Verdict::Holds } else { Verdict::Violated },
        witness,
        millis: start.elapsed().as_millis() as u64,
    })
}
