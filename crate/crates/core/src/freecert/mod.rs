//! Searches for and verification of freeness certificates.
//!
//! Three certificate kinds are produced:
//! - induction tables, which witness inductive freeness by addition;
//! - modular chains, which witness supersolvability;
//! - factorization tables, which witness inductive factorization.
//!
//! Restriction sub-certificates always refer to the canonical form
//! ([`Arrangement::canonical`]) of the restriction, computed in the
//! coordinates of the parent, so a verifier can rebuild every object it needs.

mod chain;
mod factored;
mod induction;

pub use chain::{supersolvable, verify_chain};
pub use factored::{
    inductively_factored, inductively_factored_with, is_nice_partition, nice_partitions,
    verify_factored,
};
pub use induction::{inductively_free, lift_induction, verify_induction};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes visited before giving up.
    pub nodes: usize,
    /// Flats allowed in any single intersection lattice.
    pub flats: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: DEFAULT_NODE_BUDGET, flats: crate::arrangement::DEFAULT_FLAT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<C> {
    /// The property holds, with a replayable witness.
    Yes(C),
    /// The search space was exhausted without a witness.
    No,
    /// The budget ran out first.
    Unknown,
}

impl<C> Verdict<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn yes(self) -> Option<C> {
        match self {
            Verdict::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Raised inside searches when the node budget is spent.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Exhausted;

pub(crate) type SearchResult<T> = std::result::Result<T, Exhausted>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionRow {
    pub hyperplane: usize,
    pub exponents_before: Vec<usize>,
    pub exponents_after: Vec<usize>,
    pub restriction_exponents: Vec<usize>,
    /// Certifies the canonical form of the restriction to `hyperplane`.
    pub restriction: Arc<InductionTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionBase {
    pub hyperplanes: Vec<usize>,
    /// Certifies the canonical form of the subarrangement on `hyperplanes`.
    pub table: Arc<InductionTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionTable {
    pub base: Option<InductionBase>,
    pub rows: Vec<InductionRow>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularChain {
    /// Flats `X_0 < X_1 < .. < X_r` as hyperplane index lists.
    pub flats: Vec<Vec<usize>>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub hyperplane: usize,
    /// Label of the block of the final partition receiving the hyperplane.
    pub block: usize,
    pub bijective: bool,
    /// The induced partition on the canonical restriction.
    pub restriction_partition: Vec<Vec<usize>>,
    pub restriction: Arc<FactorizationTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBase {
    pub hyperplanes: Vec<usize>,
    /// Block label of each base hyperplane, aligned with `hyperplanes`.
    pub blocks: Vec<usize>,
    /// Certifies the canonical form of the base with its induced partition.
    pub table: Arc<FactorizationTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationTable {
    pub base: Option<FactorBase>,
    pub rows: Vec<FactorRow>,
    pub partition: Vec<Vec<usize>>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    InductionTable(InductionTable),
    ModularChain(ModularChain),
    FactorizationTable(FactorizationTable),
}

impl Certificate {
    pub fn exponents(&self) -> &[usize] {
        match self {
            Certificate::InductionTable(t) => &t.exponents,
            Certificate::ModularChain(c) => &c.exponents,
            Certificate::FactorizationTable(t) => &t.exponents,
        }
    }
}

/// A self-contained certificate file: the arrangement, optional labels for
/// its hyperplanes, and the certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub arrangement: Arrangement,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl CertificateDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<CertificateDoc> {
        serde_json::from_str(s).map_err(|e| Error::BadCertificate(e.to_string()))
    }

    /// Replays the certificate; returns the certified exponents.
    pub fn verify(&self) -> Result<Vec<usize>> {
        // Deserialized normals may be non-primitive or repeated.
        let a = Arrangement::new(self.arrangement.dim(), self.arrangement.normals().to_vec())?;
        if a != self.arrangement {
            return reject("arrangement normals are not primitive and distinct");
        }
        verify(&a, &self.certificate)
    }
}

pub fn verify(arr: &Arrangement, cert: &Certificate) -> Result<Vec<usize>> {
    match cert {
        Certificate::InductionTable(t) => verify_induction(arr, t),
        Certificate::ModularChain(c) => verify_chain(arr, c),
        Certificate::FactorizationTable(t) => verify_factored(arr, t),
    }
}

pub(crate) fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::BadCertificate(msg.into()))
}

/// `a` with one copy of each element of `b` removed, if `b` is a sub-multiset.
pub(crate) fn multiset_minus(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mut rest = a.to_vec();
    for x in b {
        let p = rest.iter().position(|y| y == x)?;
        rest.remove(p);
    }
    Some(rest)
}

pub(crate) fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Zero-pads an ascending exponent list to length `dim`.
pub(crate) fn pad(exps: &[usize], dim: usize) -> Vec<usize> {
    let mut out = vec![0; dim.saturating_sub(exps.len())];
    out.extend_from_slice(exps);
    sorted(out)
}
