//! Higher-time Toeplitz entries and the triple-product verifiers.
//!
//! The entries `Y[a,b] = exp(b(b - a))` with
//! `b(x) = b1 x + b2 x^2/2 + sum_{k>=3} b_k x^k / k!` depend on `b - a` only
//! and therefore commute with the shift. The first two coefficients are kept
//! exact as units `z = exp(b1)` and `v = exp(b2/2)`; the rest are nilpotent
//! variables truncated at a total-degree cap, so every exponential is a
//! finite sum.
//!
//! Two verifiers live here:
//!
//! - [`verify_classical_jtp`]: all higher times zero; the product
//!   `prod_{r>0} (1 + z v^2r)(1 + z^-1 v^2r)` over positive half-integers
//!   `r` has `z^M v^(M^2 + 2n)` coefficient `p(n)`, compared against an
//!   independent partition enumerator.
//! - [`verify_w1inf`]: the refined identity, compared coefficient by
//!   coefficient in the capped nilpotent ring against
//!   `sum_M exp(b(M)) sum_lambda v^(2|lambda|)
//!    prod_i exp(tf(M + 1/2 + lambda_i - i) - tf(M + 1/2 - i))`,
//!   `tf` being the higher-time-only tail of the difference
//!   `t(x) = b(x + 1/2) - b(x - 1/2)`.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::partitions::{partitions_of, Partition, PartitionCounter};
use crate::report::VerificationReport;
use crate::scalar::{ExpForm, NilSym, Scalar, ScalarRingSpec, UnitSym};

/// The higher-time data: variables `b_k` for `3 <= k <= k_max`, truncated at
/// total degree `cap`, plus the exact units `z` and `v`.
#[derive(Clone, Debug)]
pub struct HigherTimes {
    k_max: u8,
    cap: u32,
}

impl HigherTimes {
    /// `k_max < 3` means no higher times at all; `cap = 0` kills them too.
    pub fn new(k_max: u8, cap: u32) -> Self {
        HigherTimes { k_max, cap }
    }

    pub fn k_max(&self) -> u8 {
        self.k_max
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn ring(&self) -> ScalarRingSpec {
        ScalarRingSpec::new(
            alloc::vec![UnitSym::Z, UnitSym::V],
            (3..=self.k_max).map(NilSym::B).collect(),
            self.cap,
        )
    }

    /// `b(m)` for integer `m`, split exp-ready: `log z + m^2 log v` plus the
    /// nilpotent tail `sum_{k>=3} b_k m^k / k!`.
    pub fn b_eval(&self, m: i64) -> ExpForm {
        let mut nil = Scalar::zero().with_cap(self.cap);
        let mut factorial = BigInt::from(2);
        for k in 3..=self.k_max {
            factorial *= BigInt::from(k);
            let coeff = BigRational::new(BigInt::from(m).pow(k as u32), factorial.clone());
            nil += Scalar::nil(NilSym::B(k)).with_cap(self.cap) * Scalar::from_ratio(coeff);
        }
        ExpForm::new(alloc::vec![(UnitSym::Z, m), (UnitSym::V, m * m)], nil)
            .expect("nilpotent tail is pure")
    }

    /// `t(x) = b(x + 1/2) - b(x - 1/2)` at the half-integer `x = twice/2`.
    pub fn t_of_b(&self, twice: i64) -> ExpForm {
        assert!(twice.rem_euclid(2) == 1, "t is evaluated at half-integers");
        self.b_eval((twice + 1) / 2)
            .add(&self.b_eval((twice - 1) / 2).negate())
    }

    /// The higher-time tail
    /// `tf(x) = sum_{k,l >= 0, k + 2l > 1} b_{k+2l+1} x^k / (2^(2l) (2l+1)! k!)`
    /// at `x = twice/2`; purely nilpotent.
    pub fn t_formal(&self, twice: i64) -> Scalar {
        let mut out = Scalar::zero().with_cap(self.cap);
        let x = BigRational::new(BigInt::from(twice), BigInt::from(2));
        for l in 0u32.. {
            let order = 2 * l + 1;
            if order > self.k_max as u32 {
                break;
            }
            let odd_fact: BigInt = (1..=order).map(BigInt::from).product();
            let pow4 = BigInt::from(4).pow(l);
            let mut k_fact = BigInt::one();
            let mut x_pow = BigRational::one();
            for k in 0u32.. {
                let index = k + 2 * l + 1;
                if index > self.k_max as u32 {
                    break;
                }
                if k > 0 {
                    k_fact *= BigInt::from(k);
                    x_pow *= &x;
                }
                if k + 2 * l > 1 {
                    let denom = &pow4 * &odd_fact * &k_fact;
                    let coeff = &x_pow / BigRational::from_integer(denom);
                    out += Scalar::nil(NilSym::B(index as u8)).with_cap(self.cap)
                        * Scalar::from_ratio(coeff);
                }
            }
        }
        out
    }

    /// Toeplitz entry `exp(b(b - a))`.
    pub fn entry(&self, a: i64, b: i64) -> Scalar {
        self.b_eval(b - a).exp().expect("exp-ready by construction")
    }

    /// One charge-and-shape term of the refined sum side.
    pub fn sum_term(&self, charge: i64, shape: &Partition) -> Scalar {
        let mut acc = self.b_eval(charge).exp().expect("exp-ready")
            * Scalar::unit(UnitSym::V, 2 * shape.weight() as i64);
        for i in 1..=shape.len() as i64 {
            let with_part = 2 * (charge + shape.part(i as usize) as i64 - i) + 1;
            let without = 2 * (charge - i) + 1;
            let diff = self.t_formal(with_part) - self.t_formal(without);
            acc = acc
                * ExpForm::new(alloc::vec![], diff)
                    .expect("purely nilpotent")
                    .exp()
                    .expect("capped");
        }
        acc
    }

    /// The truncated product side
    /// `prod_{r > 0} (1 + exp(t(r))) (1 + exp(-t(-r)))`, keeping `v`-orders
    /// up to `order_v`; factors beyond `2r > order_v` cannot contribute.
    pub fn product_side(&self, order_v: i64) -> Scalar {
        let mut acc = Scalar::one().with_cap(self.cap);
        let mut twice = 1;
        while twice <= order_v {
            let up = self.t_of_b(twice).exp().expect("exp-ready");
            let down = self.t_of_b(-twice).negate().exp().expect("exp-ready");
            acc = (acc * (Scalar::one() + up)).truncate_unit_above(UnitSym::V, order_v);
            acc = (acc * (Scalar::one() + down)).truncate_unit_above(UnitSym::V, order_v);
            twice += 2;
        }
        acc
    }
}

/// Classical triple product: every `z^M v^e` coefficient of the truncated
/// product equals `p((e - M^2)/2)`, vanishing when the parity fails, with
/// `p` computed by independent enumeration.
pub fn verify_classical_jtp(order_v: i64, z_range: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "classical-jtp",
        [
            ("order_v", order_v.to_string()),
            ("z_range", z_range.to_string()),
        ],
    );
    report.note(
        "v stands for the square root of the expansion variable, so all exponents are integers",
    );
    let ht = HigherTimes::new(2, 0);
    let lhs = ht.product_side(order_v);
    let mut counter = PartitionCounter::new();
    for m in -z_range..=z_range {
        for e in 0..=order_v {
            report.terms_checked += 1;
            let got = lhs.coefficient_of(&[(UnitSym::Z, m), (UnitSym::V, e)]);
            let rem = e - m * m;
            let expected = if rem >= 0 && rem % 2 == 0 {
                Scalar::from_int(counter.count((rem / 2) as u32) as i64)
            } else {
                Scalar::zero()
            };
            if got != expected {
                report.fail(
                    alloc::format!("coefficient of z^{m} v^{e}"),
                    got.to_string(),
                    expected.to_string(),
                );
            }
        }
    }
    report
}

/// Refined triple product with higher times `b_3..b_k_max` at nilpotent cap
/// `cap`, compared exactly on the window `|M| <= m_range`, `v`-order
/// `<= order_v`.
pub fn verify_w1inf(k_max: u8, cap: u32, order_v: i64, m_range: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "w1inf-refined-jtp",
        [
            ("k_max", k_max.to_string()),
            ("degree_cap", cap.to_string()),
            ("order_v", order_v.to_string()),
            ("m_range", m_range.to_string()),
        ],
    );
    report.note(
        "coefficients are polynomials in the higher-time variables truncated at \
         the total-degree cap; comparison is exact in that ring",
    );
    let ht = HigherTimes::new(k_max, cap);
    let lhs = ht.product_side(order_v);

    let mut rhs = Scalar::zero().with_cap(cap);
    for charge in -m_range..=m_range {
        if charge * charge > order_v {
            continue;
        }
        let budget = (order_v - charge * charge) / 2;
        for w in 0..=budget {
            for shape in partitions_of(w as u32) {
                rhs += ht.sum_term(charge, &shape);
            }
        }
    }

    for m in -m_range..=m_range {
        for e in 0..=order_v {
            report.terms_checked += 1;
            let cell = [(UnitSym::Z, m), (UnitSym::V, e)];
            let got = lhs.coefficient_of(&cell);
            let expected = rhs.coefficient_of(&cell);
            if got != expected {
                report.fail(
                    alloc::format!("coefficient of z^{m} v^{e}"),
                    got.to_string(),
                    expected.to_string(),
                );
            }
        }
    }
    report
}
