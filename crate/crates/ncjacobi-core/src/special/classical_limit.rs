//! Commutative limit of the q-character transform.
//!
//! When the shift element degenerates to a central unit `z`, all entry
//! arguments collapse to a common point and the matrix becomes constant
//! along diagonals:
//!
//! ```text
//!   D(d) = qt^(d^2) * xi[(i+d) mod p] * y[(i+d) mod p; floor((i+d)/p)]
//! ```
//!
//! The identity then reads, coefficient by coefficient in `z`,
//!
//! ```text
//!   sum_lambda X_lambda(diag shift -M) = z^M slice of
//!     prod_{n>=1} (1 + z^-1 D(n)/D(n-1)) * D(0) * prod_{n>=0} (1 + z D(-n-1)/D(-n))
//! ```
//!
//! truncated at a grading order. Everything here is computed in the plain
//! commutative scalar ring, with no use of the noncommutative engine, so a
//! pass corroborates the engine's q-character results through an
//! independent path.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::partitions::{partitions_of, Partition};
use crate::report::VerificationReport;
use crate::scalar::{Scalar, ScalarMono, UnitSym};

fn fold(period: i64, raw: i64) -> UnitSym {
    UnitSym::YAt {
        node: raw.rem_euclid(period) as i32,
        step3: raw.div_euclid(period) as i32,
    }
}

/// The diagonal entry `D(d)` for base node `node` and quiver rank `rank`.
pub fn diag_entry(rank: u32, node: i64, d: i64) -> Scalar {
    let period = rank as i64 + 1;
    let raw = node + d;
    Scalar::unit(UnitSym::QTilde, d * d)
        * Scalar::unit(UnitSym::Xi(raw.rem_euclid(period) as i32), 1)
        * Scalar::unit(fold(period, raw), 1)
}

/// The box observable through the diagonal view at shift `-charge`:
/// `D(-M) * prod_{(r,c) in lambda} D(d-1) D(d+1) / D(d)^2` with
/// `d = r - c - M`.
pub fn classical_x(rank: u32, node: i64, charge: i64, shape: &Partition) -> Scalar {
    let mut acc = diag_entry(rank, node, -charge);
    for (r, c) in shape.cells() {
        let d = r as i64 - c as i64 - charge;
        acc = acc
            * diag_entry(rank, node, d - 1)
            * diag_entry(rank, node, d + 1)
            * diag_entry(rank, node, d)
                .invert_monomial()
                .expect("diagonal entries are unit monomials")
                .pow(2);
    }
    acc
}

/// The product side, truncated at `qt`-exponent `2 * order` (grading order
/// `order` in the whole unit); factors beyond the order cannot contribute.
pub fn classical_product_side(rank: u32, node: i64, order: u32) -> Scalar {
    let bound = 2 * order as i64;
    let ratio = |num: i64, den: i64| -> Scalar {
        diag_entry(rank, node, num)
            * diag_entry(rank, node, den)
                .invert_monomial()
                .expect("unit monomial")
    };
    let mut acc = Scalar::one();
    for n in 1..=order as i64 {
        // ascending family, weight qt^(2n-1), inverse charge unit
        let factor = Scalar::one() + Scalar::unit(UnitSym::Z, -1) * ratio(n, n - 1);
        acc = (acc * factor).truncate_unit_above(UnitSym::QTilde, bound);
    }
    acc = acc * diag_entry(rank, node, 0);
    for n in 0..order as i64 {
        // descending family, weight qt^(2n+1), direct charge unit
        let factor = Scalar::one() + Scalar::unit(UnitSym::Z, 1) * ratio(-n - 1, -n);
        acc = (acc * factor).truncate_unit_above(UnitSym::QTilde, bound);
    }
    acc.truncate_unit_above(UnitSym::QTilde, bound)
}

/// Split a scalar into its charge-unit slices, stripping the charge unit.
fn z_slices(p: &Scalar) -> BTreeMap<i64, Scalar> {
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (mono, coeff) in p.terms() {
        let m = mono.unit_exp(UnitSym::Z);
        let rest: Vec<(UnitSym, i64)> = mono
            .units()
            .iter()
            .copied()
            .filter(|&(s, _)| s != UnitSym::Z)
            .collect();
        let stripped = Scalar::term(
            coeff.clone(),
            ScalarMono::from_parts(rest, mono.nils().to_vec()),
        );
        *out.entry(m).or_insert_with(Scalar::zero) += stripped;
    }
    out
}

/// Commutative-limit sweep: for each charge in the window, the charge slice
/// of the truncated product equals the direct partition sum of box
/// observables through the diagonal view.
pub fn verify_classical_limit(
    rank: u32,
    node: i64,
    order: u32,
    z_range: i64,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "classical-limit",
        [
            ("rank", rank.to_string()),
            ("node", node.to_string()),
            ("order", order.to_string()),
            ("z_range", z_range.to_string()),
        ],
    );
    report.note(
        "the central unit z counts inverse shift steps, so the z^M slice of the \
         product matches the observables through the diagonal shift by -M",
    );
    report.note("observable indices fold modulo the period, offsetting the second lattice step");
    let bound = 2 * order as i64;
    let product = classical_product_side(rank, node, order);
    let slices = z_slices(&product);
    for charge in -z_range..=z_range {
        report.terms_checked += 1;
        let mut expected = Scalar::zero();
        if charge * charge <= bound {
            let budget = ((bound - charge * charge) / 2) as u32;
            for w in 0..=budget {
                for shape in partitions_of(w) {
                    expected += classical_x(rank, node, charge, &shape);
                }
            }
        }
        let got = slices.get(&charge).cloned().unwrap_or_else(Scalar::zero);
        if got != expected {
            report.fail(
                alloc::format!("charge slice {charge}"),
                got.to_string(),
                expected.to_string(),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::x_lambda;
    use crate::ncalg::{GeneratorId, NCMonomial};
    use crate::special::qchar::QCharSpec;

    #[test]
    fn leading_order_is_the_middle_symbol() {
        // the z^0, qt^0 part of the product is D(0) itself
        let p = classical_product_side(1, 0, 3);
        let slice = z_slices(&p).remove(&0).unwrap();
        let lead = slice.truncate_unit_above(UnitSym::QTilde, 0);
        assert_eq!(lead, diag_entry(1, 0, 0));
    }

    #[test]
    fn classical_limit_small_windows() {
        for rank in 0..=1 {
            for node in 0..=rank as i64 {
                let report = verify_classical_limit(rank, node, 3, 2);
                assert!(
                    report.passed(),
                    "rank {rank}: {:?}",
                    report.failures.first()
                );
            }
        }
    }

    /// Forget the first lattice direction of an engine monomial and read it
    /// as a commutative scalar.
    fn forget_eps(m: &NCMonomial) -> Scalar {
        let mut acc = m.coeff().clone();
        for (&g, &e) in m.exponents() {
            match g {
                GeneratorId::Obs {
                    node, eps3_steps, ..
                } => {
                    acc = acc
                        * Scalar::unit(
                            UnitSym::YAt {
                                node: node as i32,
                                step3: eps3_steps as i32,
                            },
                            e,
                        );
                }
                _ => panic!("unexpected generator in q-character monomial"),
            }
        }
        acc
    }

    #[test]
    fn engine_observable_collapses_to_classical() {
        // dropping the shift direction from the engine's box observable gives
        // exactly the diagonal-view value; this bridges the two paths
        for rank in [0u32, 2] {
            let spec = QCharSpec::new(rank, 1);
            for charge in -2i64..=2 {
                for w in 0..=3u32 {
                    for shape in partitions_of(w) {
                        let engine = x_lambda(&spec.view().row_shifted(-charge), &shape);
                        let classical = classical_x(rank, 1, charge, &shape);
                        assert_eq!(
                            forget_eps(&engine),
                            classical,
                            "at charge {charge}, {shape}"
                        );
                    }
                }
            }
        }
    }
}
