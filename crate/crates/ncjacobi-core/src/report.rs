//! Structured outcome of an identity sweep.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// One failing check: where it happened and what the two sides looked like.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureRecord {
    pub index: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a sweep: what was run, how many terms were checked, which
/// failed, and any convention choices a reader needs to reproduce the
/// numbers by hand.
///
/// `elapsed_ms` is stamped by the driver that ran the sweep; the library
/// itself has no clock and leaves it zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub terms_checked: u64,
    pub failures: Vec<FailureRecord>,
    pub elapsed_ms: u64,
    pub convention_notes: Vec<String>,
}

impl VerificationReport {
    pub fn new<const N: usize>(identity: &str, parameters: [(&str, String); N]) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            parameters: parameters
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            terms_checked: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
            convention_notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, index: String, lhs: String, rhs: String) {
        self.failures.push(FailureRecord { index, lhs, rhs });
    }

    pub fn note(&mut self, note: &str) {
        self.convention_notes.push(note.to_string());
    }

    /// Keep failure lists deterministic regardless of check order.
    pub fn sort_failures(&mut self) {
        self.failures
            .sort_by(|a, b| (&a.index, &a.lhs, &a.rhs).cmp(&(&b.index, &b.lhs, &b.rhs)));
    }

    /// Merge a chunk of the same sweep (same identity and parameters),
    /// as produced by a partitioned run.
    pub fn merge_chunk(&mut self, other: VerificationReport) {
        debug_assert_eq!(self.identity, other.identity);
        self.terms_checked += other.terms_checked;
        self.failures.extend(other.failures);
        for note in other.convention_notes {
            if !self.convention_notes.contains(&note) {
                self.convention_notes.push(note);
            }
        }
    }

    /// Fold another sweep into this one, prefixing its failure indices.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.terms_checked += other.terms_checked;
        for mut f in other.failures {
            f.index = alloc::format!("{}: {}", other.identity, f.index);
            self.failures.push(f);
        }
        for note in other.convention_notes {
            if !self.convention_notes.contains(&note) {
                self.convention_notes.push(note);
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} / {} checks passed",
            self.identity,
            self.terms_checked - self.failures.len() as u64,
            self.terms_checked
        )
    }
}
