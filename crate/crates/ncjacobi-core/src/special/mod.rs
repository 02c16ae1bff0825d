//! Specializations of the product identities.
//!
//! - [`higher_times`]: Toeplitz entries built from higher-time variables,
//!   the classical triple product, and its nilpotent-refined version.
//! - [`qchar`]: the quiver q-character matrix, its factor families, the
//!   normalization solver for the difference Laplace equation, and the
//!   Fay-type epsilon relation.
//! - [`classical_limit`]: the commutative limit where the shift becomes a
//!   central unit, verified through an independent series path.

pub mod classical_limit;
pub mod higher_times;
pub mod qchar;

pub use classical_limit::verify_classical_limit;
pub use higher_times::{verify_classical_jtp, verify_w1inf, HigherTimes};
pub use qchar::{
    verify_fay, verify_fay_xi_sweep, verify_qchar, xi_solve, CouplingData, EpsilonParams, QCharSpec,
};
