//! Walk certificates: machine-checkable witnesses that a digraph carries at
//! least `t + 1` equal-length walks with the same endpoints.
//!
//! The JSON form is self-contained (it embeds the host digraph), so a
//! certificate can be validated with no knowledge of who produced it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{parse_digraph, Digraph, ParseError};
use crate::walks::Walk;

/// An explicit family of equal-length walks sharing both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCertificate {
    pub host: Digraph,
    pub k: usize,
    pub source: usize,
    pub target: usize,
    pub walks: Vec<Walk>,
}

/// Wire form: `{n, k, source, target, walks, digraph}` with the host in the
/// digraph text format.
#[derive(Serialize, Deserialize)]
struct CertificateJson {
    n: usize,
    k: usize,
    source: usize,
    target: usize,
    walks: Vec<Vec<usize>>,
    digraph: String,
}

/// Why a certificate is invalid. `walk` indices are 0-based positions in the
/// certificate's walk list; `step` is the 0-based arc position inside a walk.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("order mismatch: field n = {field}, embedded digraph has order {digraph}")]
    OrderMismatch { field: usize, digraph: usize },
    #[error("endpoint out of range: source {src}, target {dst}, order {order}")]
    EndpointOutOfRange { src: usize, dst: usize, order: usize },
    #[error("certificate carries no walks")]
    NoWalks,
    #[error("walk {walk} has length {got}, expected k = {expected}")]
    LengthMismatch {
        walk: usize,
        expected: usize,
        got: usize,
    },
    #[error("walk {walk} starts at {got}, expected source {expected}")]
    WrongSource {
        walk: usize,
        expected: usize,
        got: usize,
    },
    #[error("walk {walk} ends at {got}, expected target {expected}")]
    WrongTarget {
        walk: usize,
        expected: usize,
        got: usize,
    },
    #[error("walk {walk}, step {step}: vertex {vertex} out of range")]
    VertexOutOfRange {
        walk: usize,
        step: usize,
        vertex: usize,
    },
    #[error("walk {walk}, step {step}: arc {from} -> {to} not in the digraph")]
    MissingArc {
        walk: usize,
        step: usize,
        from: usize,
        to: usize,
    },
    #[error("walks {first} and {second} identical")]
    DuplicateWalks { first: usize, second: usize },
}

#[derive(Debug, Error)]
pub enum CertificateParseError {
    #[error("certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("embedded digraph: {0}")]
    Digraph(#[from] ParseError),
}

impl WalkCertificate {
    /// Checks every invariant: host order, endpoint range, per-walk length,
    /// endpoints, arc membership, and pairwise distinctness. Reports the first
    /// violation in walk order.
    pub fn validate(&self) -> Result<(), CertificateViolation> {
        let n = self.host.order();
        if self.source >= n || self.target >= n {
            return Err(CertificateViolation::EndpointOutOfRange {
                src: self.source,
                dst: self.target,
                order: n,
            });
        }
        if self.walks.is_empty() {
            return Err(CertificateViolation::NoWalks);
        }
        for (i, w) in self.walks.iter().enumerate() {
            if w.length() != self.k {
                return Err(CertificateViolation::LengthMismatch {
                    walk: i,
                    expected: self.k,
                    got: w.length(),
                });
            }
            if w.source() != self.source {
                return Err(CertificateViolation::WrongSource {
                    walk: i,
                    expected: self.source,
                    got: w.source(),
                });
            }
            if w.target() != self.target {
                return Err(CertificateViolation::WrongTarget {
                    walk: i,
                    expected: self.target,
                    got: w.target(),
                });
            }
            for (step, pair) in w.vertices().windows(2).enumerate() {
                let (from, to) = (pair[0], pair[1]);
                if from >= n {
                    return Err(CertificateViolation::VertexOutOfRange {
                        walk: i,
                        step,
                        vertex: from,
                    });
                }
                if to >= n {
                    return Err(CertificateViolation::VertexOutOfRange {
                        walk: i,
                        step: step + 1,
                        vertex: to,
                    });
                }
                if !self.host.has_arc(from, to) {
                    return Err(CertificateViolation::MissingArc {
                        walk: i,
                        step,
                        from,
                        to,
                    });
                }
            }
        }
        for i in 0..self.walks.len() {
            for j in (i + 1)..self.walks.len() {
                if self.walks[i] == self.walks[j] {
                    return Err(CertificateViolation::DuplicateWalks { first: i, second: j });
                }
            }
        }
        Ok(())
    }

    /// Number of walks; a valid certificate witnesses non-freeness for every
    /// `t < walks()`.
    pub fn walk_count(&self) -> usize {
        self.walks.len()
    }

    pub fn to_json(&self) -> String {
        let wire = CertificateJson {
            n: self.host.order(),
            k: self.k,
            source: self.source,
            target: self.target,
            walks: self.walks.iter().map(|w| w.vertices().to_vec()).collect(),
            digraph: self.host.to_text(),
        };
        serde_json::to_string_pretty(&wire).expect("certificate serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateParseError> {
        let wire: CertificateJson = serde_json::from_str(text)?;
        let host = parse_digraph(&wire.digraph)?;
        Ok(WalkCertificate {
            k: wire.k,
            source: wire.source,
            target: wire.target,
            walks: wire.walks.into_iter().map(Walk::new).collect(),
            host,
        })
    }
}

/// The standalone check: parse a certificate document, cross-check the `n`
/// field against the embedded digraph, then run the invariant validator.
pub fn validate_certificate_text(text: &str) -> Result<WalkCertificate, CertificateCheckError> {
    let wire: CertificateJson = serde_json::from_str(text).map_err(CertificateParseError::from)?;
    let host = parse_digraph(&wire.digraph).map_err(CertificateParseError::from)?;
    if host.order() != wire.n {
        return Err(CertificateViolation::OrderMismatch {
            field: wire.n,
            digraph: host.order(),
        }
        .into());
    }
    let cert = WalkCertificate {
        k: wire.k,
        source: wire.source,
        target: wire.target,
        walks: wire.walks.into_iter().map(Walk::new).collect(),
        host,
    };
    cert.validate()?;
    Ok(cert)
}

#[derive(Debug, Error)]
pub enum CertificateCheckError {
    #[error(transparent)]
    Parse(#[from] CertificateParseError),
    #[error("invalid certificate: {0}")]
    Invalid(#[from] CertificateViolation),
}
