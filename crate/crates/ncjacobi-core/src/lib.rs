//! Exact computer algebra for charged-partition combinatorics and the
//! noncommutative Jacobi / Hirota family of product identities.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals,
//! series are truncated formal objects, and every identity check is a
//! termwise comparison of canonical forms. No floating point is used
//! anywhere on a verification path.
//!
//! The crate is `no_std` (with `alloc`); IO, timing and the command-line
//! surface live in the companion `ncjacobi-cli` crate.
//!
//! Module map:
//!
//! - [`partitions`]: partitions, charged partitions, the half-integer set
//!   bijection, profile integers, snake classification.
//! - [`scalar`]: the exact commutative coefficient ring (rationals, Laurent
//!   units, truncated-nilpotent variables).
//! - [`ncalg`]: the noncommutative algebra generated by commuting symbols
//!   and a shift element, with canonical normal forms.
//! - [`jacobi`]: matrix views, the box observable, the split factorization,
//!   and termwise verification of both Jacobi identities.
//! - [`hirota`]: the bilinear identity, its pairing involution, and graded
//!   vanishing.
//! - [`special`]: specializations: classical triple product, the
//!   higher-times (W_{1+infinity}) refinement, the quiver q-character
//!   Theta-transform and its classical limit, the Fay-type relation.
//! - [`report`]: structured verification outcomes.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod hirota;
pub mod jacobi;
pub mod ncalg;
pub mod partitions;
pub mod report;
mod rng;
pub mod scalar;
pub mod special;

/// Deliberate defects that can be injected into a verifier.
///
/// Sweeps are expected to report zero failures when run unmutated and a
/// nonzero count under each mutation; this guards the test suite against
/// vacuous passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Run faithfully.
    None,
    /// Flip the sign of the shift charge when matching a product term
    /// against its bijection partner.
    FlipSplitCharge,
    /// Skip the tilde-generator reduction when evaluating bilinear terms.
    SkipTildeReduction,
    /// Make the pairing involution move the charge the wrong way in its
    /// first branch.
    FlipInvolutionCharge,
}

impl Mutation {
    pub fn is_none(self) -> bool {
        matches!(self, Mutation::None)
    }
}
