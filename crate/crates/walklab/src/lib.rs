//! A verification and search laboratory for digraphs bounded in same-endpoint
//! walk multiplicity.
//!
//! The central question: how many arcs can a digraph on `n` vertices carry if
//! no ordered vertex pair (closed pairs included) is joined by more than `t`
//! distinct walks of length `k`? This crate counts walks exactly, decides
//! freeness, builds the relevant digraph families and walk certificates, runs
//! executable checks for the supporting lemmas, and computes the extremal
//! value `ex` together with the full extremal set `EX` (up to isomorphism)
//! for desk-scale parameters.

pub mod canonical;
pub mod cert;
pub mod constructions;
pub mod digraph;
pub mod walks;

pub use canonical::{canonical_form, CanonicalKey};
pub use cert::WalkCertificate;
pub use digraph::{parse_digraph, DegreeReport, Digraph};
pub use walks::{
    extract_walks, is_free, max_pair_walks, walk_count_matrix, Walk, WalkMatrix, WalkMatrix64,
    WalkMatrixBig,
};
