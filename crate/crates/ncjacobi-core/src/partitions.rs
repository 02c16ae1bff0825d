//! Partitions, charged partitions, and the half-integer set correspondence.
//!
//! A charged partition `(M, lambda)` maps to a pair of finite sets of
//! positive half-integers
//!
//! ```text
//!   S+ = { M + lambda_i - i + 1/2 | i >= 1 } ∩ (Z>=0 + 1/2)
//!   S- = { -M + conj(lambda)_j - j + 1/2 | j >= 1 } ∩ (Z>=0 + 1/2)
//! ```
//!
//! and back: `M = |S+| - |S-|`, with `lambda` read off by ordering
//! `S+ ∪ { r < 0 | -r not in S- }` decreasingly as `{ M + lambda_i - i + 1/2 }`.
//! The correspondence is a bijection; [`verify_psi`] checks the generating
//! mode series that encodes it, and the snake machinery classifies which
//! `(|S+|, |S-|)` pairs a fixed shape can realize.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::report::VerificationReport;
use crate::scalar::{Scalar, UnitSym};

/// A partition: non-increasing positive parts; the empty list is the empty
/// partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from parts, which must be non-increasing and positive.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be non-increasing"
        );
        assert!(
            parts.last().is_none_or(|&p| p > 0),
            "partition parts must be positive"
        );
        Partition { parts }
    }

    /// Build from a list that may carry trailing zeros (they are dropped).
    pub fn from_padded(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The `i`-th part, 1-based; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// First part, zero for the empty partition.
    pub fn first_part(&self) -> u32 {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part() as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.parts.iter().take_while(|&&p| p as usize >= j).count() as u32);
        }
        Partition { parts }
    }

    /// Cells `(row, col)` of the Young diagram, 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `w`, in reverse-lexicographic order.
pub fn partitions_of(w: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(rem: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            stack.push(p);
            go(rem - p, p, stack, out);
            stack.pop();
        }
    }
    go(w, w, &mut stack, &mut out);
    out
}

/// Partitions grouped by weight `0..=max_weight`, each group in
/// reverse-lexicographic order.
pub fn enumerate_partitions(max_weight: u32) -> Vec<Vec<Partition>> {
    (0..=max_weight).map(partitions_of).collect()
}

/// A charge paired with a shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChargedPartition {
    pub charge: i64,
    pub shape: Partition,
}

impl ChargedPartition {
    pub fn new(charge: i64, shape: Partition) -> Self {
        ChargedPartition { charge, shape }
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.charge, self.shape)
    }
}

/// A half-integer, stored as twice its value (an odd integer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    /// `k + 1/2`.
    pub fn from_int_plus_half(k: i64) -> Self {
        HalfInt(2 * k + 1)
    }

    /// From twice the value; must be odd.
    pub fn from_twice(t: i64) -> Result<Self, SetPairError> {
        if t.rem_euclid(2) != 1 {
            return Err(SetPairError::NotHalfInteger(t));
        }
        Ok(HalfInt(t))
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Why a half-integer set pair was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetPairError {
    NotHalfInteger(i64),
    NotPositive(HalfInt),
    Duplicate(HalfInt),
}

impl fmt::Display for SetPairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetPairError::NotHalfInteger(t) => write!(f, "{t}/2 is not a half-odd-integer"),
            SetPairError::NotPositive(h) => write!(f, "{h} is not positive"),
            SetPairError::Duplicate(h) => write!(f, "duplicate element {h}"),
        }
    }
}

impl core::error::Error for SetPairError {}

/// A pair `(S+, S-)` of finite sets of positive half-integers, each stored
/// strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfIntSetPair {
    plus: Vec<HalfInt>,
    minus: Vec<HalfInt>,
}

impl HalfIntSetPair {
    pub fn new(mut plus: Vec<HalfInt>, mut minus: Vec<HalfInt>) -> Result<Self, SetPairError> {
        for side in [&mut plus, &mut minus] {
            side.sort_unstable_by(|a, b| b.cmp(a));
            for h in side.iter() {
                if !h.is_positive() {
                    return Err(SetPairError::NotPositive(*h));
                }
            }
            for w in side.windows(2) {
                if w[0] == w[1] {
                    return Err(SetPairError::Duplicate(w[0]));
                }
            }
        }
        Ok(HalfIntSetPair { plus, minus })
    }

    /// Build from twice-values.
    pub fn from_twices(plus: &[i64], minus: &[i64]) -> Result<Self, SetPairError> {
        let conv = |side: &[i64]| -> Result<Vec<HalfInt>, SetPairError> {
            side.iter().map(|&t| HalfInt::from_twice(t)).collect()
        };
        HalfIntSetPair::new(conv(plus)?, conv(minus)?)
    }

    pub fn plus(&self) -> &[HalfInt] {
        &self.plus
    }

    pub fn minus(&self) -> &[HalfInt] {
        &self.minus
    }

    pub fn d_plus(&self) -> usize {
        self.plus.len()
    }

    pub fn d_minus(&self) -> usize {
        self.minus.len()
    }
}

impl fmt::Display for HalfIntSetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, s: &[HalfInt]| -> fmt::Result {
            write!(f, "{{")?;
            for (i, h) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{h}")?;
            }
            write!(f, "}}")
        };
        side(f, &self.plus)?;
        write!(f, "|")?;
        side(f, &self.minus)
    }
}

/// Forward direction of the correspondence.
pub fn charged_to_sets(cp: &ChargedPartition) -> HalfIntSetPair {
    let collect = |charge: i64, shape: &Partition| -> Vec<HalfInt> {
        let mut out = Vec::new();
        let rows = shape.len() as i64;
        let limit = rows.max(charge).max(0);
        for i in 1..=limit {
            let t = 2 * (charge + shape.part(i as usize) as i64 - i) + 1;
            if t > 0 {
                out.push(HalfInt(t));
            }
        }
        out
    };
    let plus = collect(cp.charge, &cp.shape);
    let minus = collect(-cp.charge, &cp.shape.conjugate());
    HalfIntSetPair { plus, minus }
}

/// Inverse direction of the correspondence.
pub fn sets_to_charged(sp: &HalfIntSetPair) -> ChargedPartition {
    let charge = sp.d_plus() as i64 - sp.d_minus() as i64;
    let minus_twice: Vec<i64> = sp.minus.iter().map(|h| h.twice()).collect();
    let mut parts = Vec::new();
    let mut plus_idx = 0;
    let mut neg_twice = -1i64; // next negative candidate, as twice-value
    for i in 1i64.. {
        // next element of the decreasing merge of S+ with the admissible
        // negative half-integers
        let c = if plus_idx < sp.plus.len() {
            let t = sp.plus[plus_idx].twice();
            plus_idx += 1;
            t
        } else {
            while minus_twice.contains(&(-neg_twice)) {
                neg_twice -= 2;
            }
            let t = neg_twice;
            neg_twice -= 2;
            t
        };
        let twice_part = c - 2 * charge + 2 * i - 1;
        debug_assert!(twice_part >= 0 && twice_part % 2 == 0);
        let part = (twice_part / 2) as u32;
        if part == 0 {
            break;
        }
        parts.push(part);
    }
    debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
    ChargedPartition::new(charge, Partition { parts })
}

/// The integer profile of a charged partition: `n_i = M + lambda_i - i`
/// for `i = 1..=d+`, and `nt_j = -M + conj(lambda)_j - j + 1` for
/// `j = 1..=d-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub n: Vec<i64>,
    pub n_tilde: Vec<i64>,
}

pub fn profile(cp: &ChargedPartition) -> Profile {
    let sets = charged_to_sets(cp);
    let n = (1..=sets.d_plus())
        .map(|i| cp.charge + cp.shape.part(i) as i64 - i as i64)
        .collect();
    let conj = cp.shape.conjugate();
    let n_tilde = (1..=sets.d_minus())
        .map(|j| -cp.charge + conj.part(j) as i64 - j as i64 + 1)
        .collect();
    Profile { n, n_tilde }
}

/// A mismatch found by [`verify_psi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiFailure {
    /// Which of the three checks broke.
    pub check: &'static str,
    /// Rendering of the residual (lhs - rhs).
    pub residual: String,
}

impl fmt::Display for PsiFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} check left residual {}", self.check, self.residual)
    }
}

fn u_pow(twice_exp: i64) -> Scalar {
    Scalar::unit(UnitSym::U, twice_exp)
}

/// Check the mode series of a charged partition three ways:
///
/// 1. the exact Laurent identity
///    `(u^(1/2) - u^(-1/2)) psi = u^M (1 - (1-u)(1-u^(-1)) sum_cells u^(col-row))`,
/// 2. the expansion at `u = infinity`, `psi = sum_i u^(M + lambda_i - i + 1/2)`,
///    truncated to exponents `>= -(order + 1/2)`,
/// 3. the expansion at `u = 0`,
///    `psi = -sum_j u^(M + j - conj(lambda)_j - 1/2)`, truncated to exponents
///    `<= order + 1/2` (the geometric expansion of the rational term at zero
///    carries the opposite overall sign from the one at infinity).
pub fn verify_psi(cp: &ChargedPartition, order: u32) -> Result<(), PsiFailure> {
    let sets = charged_to_sets(cp);
    let finite_part = || -> Scalar {
        let mut s = Scalar::zero();
        for h in sets.plus() {
            s += u_pow(h.twice());
        }
        for h in sets.minus() {
            s = s - u_pow(-h.twice());
        }
        s
    };

    // 1. exact Laurent identity, rational term cleared:
    //    lhs = 1 + (u^(1/2) - u^(-1/2)) * finite_part
    let bracket = u_pow(1) - u_pow(-1);
    let lhs = Scalar::one() + &bracket * &finite_part();
    let mut content = Scalar::zero();
    for (row, col) in cp.shape.cells() {
        content += u_pow(2 * (col as i64 - row as i64));
    }
    let corner = (Scalar::one() - u_pow(2)) * (Scalar::one() - u_pow(-2));
    let rhs = u_pow(2 * cp.charge) * (Scalar::one() - corner * content);
    let residual = &lhs - &rhs;
    if !residual.is_zero() {
        return Err(PsiFailure {
            check: "cleared-identity",
            residual: residual.to_string(),
        });
    }

    // 2. expansion at infinity: geometric tail sum_{k>=0} u^(-1/2 - k)
    let bound = 2 * order as i64 + 1;
    let mut at_inf = finite_part();
    let mut t = -1;
    while t >= -bound {
        at_inf += u_pow(t);
        t -= 2;
    }
    let mut expected_inf = Scalar::zero();
    for i in 1i64.. {
        let e = 2 * (cp.charge + cp.shape.part(i as usize) as i64 - i) + 1;
        if e < -bound {
            break;
        }
        expected_inf += u_pow(e);
    }
    let residual = (&at_inf - &expected_inf).truncate_unit_below(UnitSym::U, -bound);
    if !residual.is_zero() {
        return Err(PsiFailure {
            check: "expansion-at-infinity",
            residual: residual.to_string(),
        });
    }

    // 3. expansion at zero: rational term is -sum_{k>=0} u^(1/2 + k)
    let mut at_zero = finite_part();
    let mut t = 1;
    while t <= bound {
        at_zero = at_zero - u_pow(t);
        t += 2;
    }
    let conj = cp.shape.conjugate();
    let mut expected_zero = Scalar::zero();
    for j in 1i64.. {
        let e = 2 * (cp.charge + j - conj.part(j as usize) as i64) - 1;
        if e > bound {
            break;
        }
        expected_zero = expected_zero - u_pow(e);
    }
    let residual = (&at_zero - &expected_zero).truncate_unit_above(UnitSym::U, bound);
    if !residual.is_zero() {
        return Err(PsiFailure {
            check: "expansion-at-zero",
            residual: residual.to_string(),
        });
    }
    Ok(())
}

/// The four snake classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SnakeClass {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for SnakeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnakeClass::S1 => write!(f, "S1"),
            SnakeClass::S2 => write!(f, "S2"),
            SnakeClass::S3 => write!(f, "S3"),
            SnakeClass::S4 => write!(f, "S4"),
        }
    }
}

/// A classified snake point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SnakePoint {
    pub d_plus: u32,
    pub d_minus: u32,
    pub class: SnakeClass,
}

/// Every class whose defining condition holds at `(d+, d-)`; membership in
/// the snake means exactly one matches.
pub fn snake_classes(shape: &Partition, d_plus: u32, d_minus: u32) -> Vec<SnakeClass> {
    let conj = shape.conjugate();
    let la = |i: u32| shape.part(i as usize);
    let lt = |j: u32| conj.part(j as usize);
    let (dp, dm) = (d_plus, d_minus);
    let mut out = Vec::new();

    let s1 = (dm == 0 && dp > lt(1)) || (dp > 0 && dm > 0 && lt(dm) > dp && dp > lt(dm + 1));
    let s2 = (dm == 0 && dp == lt(1))
        || (dp == 0 && dm == la(1))
        || (dp > 0 && dm > 0 && lt(dm) > dp && dp == lt(dm + 1) && la(dp) > dm && dm == la(dp + 1));
    let s3 = (dp == 0 && dm > la(1)) || (dp > 0 && dm > 0 && la(dp) > dm && dm > la(dp + 1));
    let s4 = dp > 0 && dm > 0 && la(dp) == dm && dm > la(dp + 1) && lt(dm) == dp && dp > lt(dm + 1);

    if s1 {
        out.push(SnakeClass::S1);
    }
    if s2 {
        out.push(SnakeClass::S2);
    }
    if s3 {
        out.push(SnakeClass::S3);
    }
    if s4 {
        out.push(SnakeClass::S4);
    }
    out
}

/// The run conditions attached to classes S1 and S3: along a vertical run
/// every row in the window has length `d-`, along a horizontal run every
/// column in the window has height `d+`.
pub fn snake_run_condition_holds(shape: &Partition, point: SnakePoint) -> bool {
    let conj = shape.conjugate();
    match point.class {
        SnakeClass::S1 => {
            let lo = conj.part(point.d_minus as usize + 1);
            (lo + 1..=point.d_plus).all(|i| shape.part(i as usize) == point.d_minus)
        }
        SnakeClass::S3 => {
            let lo = shape.part(point.d_plus as usize + 1);
            (lo + 1..=point.d_minus).all(|j| conj.part(j as usize) == point.d_plus)
        }
        _ => true,
    }
}

/// All classified snake points with coordinates in `[0, d_range]^2`.
pub fn snake_of(shape: &Partition, d_range: u32) -> Vec<SnakePoint> {
    let mut out = Vec::new();
    for d_plus in 0..=d_range {
        for d_minus in 0..=d_range {
            let classes = snake_classes(shape, d_plus, d_minus);
            if let [class] = classes[..] {
                out.push(SnakePoint {
                    d_plus,
                    d_minus,
                    class,
                });
            }
        }
    }
    out
}

/// A defect found by [`verify_snake_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeFailure {
    pub detail: String,
}

impl fmt::Display for SnakeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.detail)
    }
}

/// Check, for a fixed shape, that
///
/// - every realized `(d+, d-)` over `|M| <= m_range` lies in exactly one
///   class and satisfies the boundary inequalities
///   `lambda_{d+} >= d- >= lambda_{d+ + 1}` and the conjugate pair,
/// - the run conditions hold at every realized point,
/// - classes are pairwise disjoint on the whole `[0, m_range]^2` grid,
/// - every classified grid point is realized by some charge.
///
/// Requires `m_range >= lambda_1 + conj(lambda)_1 + 1` so both tails of the
/// snake are reached.
pub fn verify_snake_membership(shape: &Partition, m_range: i64) -> Result<(), SnakeFailure> {
    let needed = shape.first_part() as i64 + shape.conjugate().first_part() as i64 + 1;
    assert!(
        m_range >= needed,
        "m_range too small to reach the snake tails"
    );
    let conj = shape.conjugate();
    let grid = m_range as u32;

    let mut realized = Vec::new();
    for charge in -m_range..=m_range {
        let sets = charged_to_sets(&ChargedPartition::new(charge, shape.clone()));
        let (dp, dm) = (sets.d_plus() as u32, sets.d_minus() as u32);
        let la = |i: u32| shape.part(i as usize) as i64;
        let lt = |j: u32| conj.part(j as usize) as i64;
        // the zeroth row and column read as unbounded
        if !((dp == 0 || la(dp) >= dm as i64) && dm as i64 >= la(dp + 1)) {
            return Err(SnakeFailure {
                detail: format!("row bounds fail at charge {charge}: (d+, d-) = ({dp}, {dm})"),
            });
        }
        if !((dm == 0 || lt(dm) >= dp as i64) && dp as i64 >= lt(dm + 1)) {
            return Err(SnakeFailure {
                detail: format!("column bounds fail at charge {charge}: (d+, d-) = ({dp}, {dm})"),
            });
        }
        let classes = snake_classes(shape, dp, dm);
        if classes.len() != 1 {
            return Err(SnakeFailure {
                detail: format!(
                    "charge {charge} lands on ({dp}, {dm}) matching {} classes",
                    classes.len()
                ),
            });
        }
        let point = SnakePoint {
            d_plus: dp,
            d_minus: dm,
            class: classes[0],
        };
        if !snake_run_condition_holds(shape, point) {
            return Err(SnakeFailure {
                detail: format!("run condition fails at ({dp}, {dm}) in {}", point.class),
            });
        }
        if dp <= grid && dm <= grid {
            realized.push((dp, dm));
        }
    }
    realized.sort_unstable();

    let mut classified = Vec::new();
    for dp in 0..=grid {
        for dm in 0..=grid {
            let classes = snake_classes(shape, dp, dm);
            if classes.len() > 1 {
                return Err(SnakeFailure {
                    detail: format!("classes overlap at ({dp}, {dm}): {classes:?}"),
                });
            }
            if classes.len() == 1 {
                classified.push((dp, dm));
            }
        }
    }
    if classified != realized {
        return Err(SnakeFailure {
            detail: format!(
                "classified points {classified:?} differ from realized points {realized:?}"
            ),
        });
    }
    Ok(())
}

/// Roundtrip sweep: both composites of the correspondence are identities.
pub fn verify_bijection_sweep(
    m_range: i64,
    max_weight: u32,
    set_cutoff: u32,
) -> VerificationReport {
    let mut report = VerificationReport::new(
        "bijection-roundtrip",
        [
            ("m_range", m_range.to_string()),
            ("max_weight", max_weight.to_string()),
            ("set_cutoff", set_cutoff.to_string()),
        ],
    );
    for group in enumerate_partitions(max_weight) {
        for shape in group {
            for charge in -m_range..=m_range {
                let cp = ChargedPartition::new(charge, shape.clone());
                let sets = charged_to_sets(&cp);
                report.terms_checked += 1;
                if sets.d_plus() as i64 - sets.d_minus() as i64 != charge {
                    report.fail(
                        format!("charge formula at {cp}"),
                        format!("{} - {}", sets.d_plus(), sets.d_minus()),
                        charge.to_string(),
                    );
                }
                let back = sets_to_charged(&sets);
                if back != cp {
                    report.fail(
                        format!("roundtrip at {cp}"),
                        back.to_string(),
                        cp.to_string(),
                    );
                }
            }
        }
    }
    // all subset pairs of {1/2, ..., set_cutoff - 1/2}
    let universe: Vec<i64> = (0..set_cutoff as i64).map(|k| 2 * k + 1).collect();
    let n = universe.len();
    for mask_p in 0u32..(1 << n) {
        for mask_m in 0u32..(1 << n) {
            let pick = |mask: u32| -> Vec<HalfInt> {
                universe
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &t)| HalfInt(t))
                    .collect()
            };
            let sp = HalfIntSetPair::new(pick(mask_p), pick(mask_m)).unwrap();
            let back = charged_to_sets(&sets_to_charged(&sp));
            report.terms_checked += 1;
            if back != sp {
                report.fail(
                    format!("roundtrip at {sp}"),
                    back.to_string(),
                    sp.to_string(),
                );
            }
        }
    }
    report
}

/// Mode-series sweep over `|M| <= m_range`, `|lambda| <= max_weight`.
pub fn verify_psi_sweep(m_range: i64, max_weight: u32, order: u32) -> VerificationReport {
    let mut report = VerificationReport::new(
        "psi-identity",
        [
            ("m_range", m_range.to_string()),
            ("max_weight", max_weight.to_string()),
            ("order", order.to_string()),
        ],
    );
    report.note(
        "expansion of the rational term at u = 0 carries the opposite overall \
         sign from the expansion at infinity; the zero-side check asserts \
         psi = -sum_j u^(M + j - conj(lambda)_j - 1/2)",
    );
    for group in enumerate_partitions(max_weight) {
        for shape in group {
            for charge in -m_range..=m_range {
                let cp = ChargedPartition::new(charge, shape.clone());
                report.terms_checked += 1;
                if let Err(e) = verify_psi(&cp, order) {
                    report.fail(format!("{} at {cp}", e.check), e.residual, "0".into());
                }
            }
        }
    }
    report
}

/// Snake sweep over all shapes of weight `<= max_weight`.
pub fn verify_snake_sweep(max_weight: u32) -> VerificationReport {
    let mut report =
        VerificationReport::new("snake-classes", [("max_weight", max_weight.to_string())]);
    for group in enumerate_partitions(max_weight) {
        for shape in group {
            let m_range = shape.first_part() as i64 + shape.conjugate().first_part() as i64 + 1;
            report.terms_checked += 1;
            if let Err(e) = verify_snake_membership(&shape, m_range) {
                report.fail(format!("shape {shape}"), e.detail, String::new());
            }
        }
    }
    report
}

/// Number of partitions of each weight `0..=max_weight`, by enumeration.
pub fn partition_counts(max_weight: u32) -> Vec<u64> {
    enumerate_partitions(max_weight)
        .iter()
        .map(|g| g.len() as u64)
        .collect()
}

/// Memoized partition counter used by the series verifiers.
pub struct PartitionCounter {
    table: BTreeMap<(u32, u32), u64>,
}

impl PartitionCounter {
    pub fn new() -> Self {
        PartitionCounter {
            table: BTreeMap::new(),
        }
    }

    /// p(n): partitions of `n`.
    pub fn count(&mut self, n: u32) -> u64 {
        self.bounded(n, n)
    }

    fn bounded(&mut self, n: u32, max_part: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        if max_part == 0 {
            return 0;
        }
        if let Some(&v) = self.table.get(&(n, max_part)) {
            return v;
        }
        let v = (1..=max_part.min(n)).map(|p| self.bounded(n - p, p)).sum();
        self.table.insert((n, max_part), v);
        v
    }
}

impl Default for PartitionCounter {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn half(t: i64) -> HalfInt {
        HalfInt::from_twice(t).unwrap()
    }

    fn pair(plus: &[i64], minus: &[i64]) -> HalfIntSetPair {
        HalfIntSetPair::from_twices(plus, minus).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.conjugate(), Partition::new(vec![2, 1, 1]));
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn enumeration_is_reverse_lexicographic() {
        let got: Vec<Vec<u32>> = partitions_of(4)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    // independent recursive counter, kept deliberately naive
    fn brute_count(n: u32, max_part: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|p| brute_count(n - p, p)).sum()
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        assert_eq!(partitions_of(0).len(), 1);
        for w in 0..=12 {
            assert_eq!(
                partitions_of(w).len() as u64,
                brute_count(w, w),
                "weight {w}"
            );
        }
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn charged_to_sets_examples() {
        let empty = ChargedPartition::new(0, Partition::empty());
        assert_eq!(charged_to_sets(&empty), pair(&[], &[]));

        let one_charge = ChargedPartition::new(1, Partition::empty());
        assert_eq!(charged_to_sets(&one_charge), pair(&[1], &[]));

        let col = ChargedPartition::new(0, Partition::new(vec![1, 1]));
        assert_eq!(charged_to_sets(&col), pair(&[1], &[3]));

        let row = ChargedPartition::new(0, Partition::new(vec![2]));
        assert_eq!(charged_to_sets(&row), pair(&[3], &[1]));
    }

    #[test]
    fn sets_to_charged_examples() {
        assert_eq!(
            sets_to_charged(&pair(&[], &[])),
            ChargedPartition::new(0, Partition::empty())
        );
        assert_eq!(
            sets_to_charged(&pair(&[1], &[])),
            ChargedPartition::new(1, Partition::empty())
        );
        assert_eq!(
            sets_to_charged(&pair(&[3], &[1])),
            ChargedPartition::new(0, Partition::new(vec![2]))
        );
    }

    #[test]
    fn set_pair_rejects_malformed_input() {
        assert!(HalfIntSetPair::from_twices(&[2], &[]).is_err());
        assert!(HalfIntSetPair::from_twices(&[-1], &[]).is_err());
        assert!(HalfIntSetPair::from_twices(&[3, 3], &[]).is_err());
        assert!(HalfIntSetPair::new(vec![half(5), half(1)], vec![]).is_ok());
    }

    #[test]
    fn complement_identity() {
        // -S- is the set of negative half-integers missing from the charged
        // mode sequence
        for charge in -4i64..=4 {
            for shape in partitions_of(5) {
                let cp = ChargedPartition::new(charge, shape);
                let sets = charged_to_sets(&cp);
                let bound = 2 * (charge.abs() + 8);
                let mut modes = Vec::new();
                for i in 1..=(cp.shape.len() as i64 + bound) {
                    modes.push(2 * (charge + cp.shape.part(i as usize) as i64 - i) + 1);
                }
                let mut expected: Vec<i64> = Vec::new();
                let mut t = -1;
                while t >= -bound {
                    if !modes.contains(&t) {
                        expected.push(-t);
                    }
                    t -= 2;
                }
                let got: Vec<i64> = sets
                    .minus()
                    .iter()
                    .map(|h| h.twice())
                    .filter(|&t| t <= bound)
                    .collect();
                let mut expected_sorted = expected;
                expected_sorted.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(got, expected_sorted, "at {cp}");
            }
        }
    }

    #[test]
    fn profile_examples() {
        let p = profile(&ChargedPartition::new(0, Partition::empty()));
        assert_eq!(
            p,
            Profile {
                n: vec![],
                n_tilde: vec![]
            }
        );

        let p = profile(&ChargedPartition::new(0, Partition::new(vec![2])));
        assert_eq!(
            p,
            Profile {
                n: vec![1],
                n_tilde: vec![1]
            }
        );

        let p = profile(&ChargedPartition::new(1, Partition::empty()));
        assert_eq!(
            p,
            Profile {
                n: vec![0],
                n_tilde: vec![]
            }
        );
    }

    #[test]
    fn profile_shift_relation() {
        for charge in -3i64..=3 {
            for shape in partitions_of(6) {
                let cp = ChargedPartition::new(charge, shape);
                let sets = charged_to_sets(&cp);
                let prof = profile(&cp);
                let plus: Vec<i64> = prof.n.iter().map(|&n| 2 * n + 1).collect();
                let minus: Vec<i64> = prof.n_tilde.iter().map(|&n| 2 * n - 1).collect();
                assert_eq!(
                    plus,
                    sets.plus().iter().map(|h| h.twice()).collect::<Vec<_>>()
                );
                assert_eq!(
                    minus,
                    sets.minus().iter().map(|h| h.twice()).collect::<Vec<_>>()
                );
                assert!(prof.n.windows(2).all(|w| w[0] > w[1]));
                assert!(prof.n.last().is_none_or(|&n| n >= 0));
                assert!(prof.n_tilde.windows(2).all(|w| w[0] > w[1]));
                assert!(prof.n_tilde.last().is_none_or(|&n| n > 0));
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert!(verify_psi(&ChargedPartition::new(0, Partition::empty()), 7).is_ok());
        assert!(verify_psi(&ChargedPartition::new(0, Partition::new(vec![1])), 5).is_ok());
    }

    #[test]
    fn snake_examples() {
        let empty = Partition::empty();
        assert_eq!(snake_classes(&empty, 0, 0), vec![SnakeClass::S2]);

        let one = Partition::new(vec![1]);
        assert_eq!(snake_classes(&one, 1, 1), vec![SnakeClass::S4]);
        assert_eq!(snake_classes(&one, 2, 0), vec![SnakeClass::S1]);
        assert!(snake_run_condition_holds(
            &one,
            SnakePoint {
                d_plus: 2,
                d_minus: 0,
                class: SnakeClass::S1
            }
        ));
    }

    #[test]
    fn snake_membership_examples() {
        assert!(verify_snake_membership(&Partition::empty(), 3).is_ok());
        assert!(verify_snake_membership(&Partition::new(vec![2, 1]), 6).is_ok());
    }

    fn partition_strategy(max_weight: u32) -> impl Strategy<Value = Partition> {
        (0..=max_weight).prop_flat_map(|w| {
            let all = partitions_of(w);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn roundtrip_charged(charge in -6i64..=6, shape in partition_strategy(12)) {
            let cp = ChargedPartition::new(charge, shape);
            let sets = charged_to_sets(&cp);
            prop_assert_eq!(sets.d_plus() as i64 - sets.d_minus() as i64, cp.charge);
            prop_assert_eq!(sets_to_charged(&sets), cp);
        }

        #[test]
        fn roundtrip_sets(mask_p in 0u32..256, mask_m in 0u32..256) {
            let pick = |mask: u32| -> Vec<HalfInt> {
                (0..8).filter(|b| mask & (1 << b) != 0).map(|b| half(2 * b as i64 + 1)).collect()
            };
            let sp = HalfIntSetPair::new(pick(mask_p), pick(mask_m)).unwrap();
            prop_assert_eq!(charged_to_sets(&sets_to_charged(&sp)), sp);
        }

        #[test]
        fn conjugate_is_involutive(shape in partition_strategy(16)) {
            prop_assert_eq!(shape.conjugate().conjugate(), shape.clone());
            prop_assert_eq!(shape.conjugate().weight(), shape.weight());
        }
    }
}
