//! Matrix views, the box observable, and termwise verification of the two
//! noncommutative product identities.
//!
//! The product side is
//!
//! ```text
//!   Z  = <-prod_{n>=1} (1 + (Y[n,0]/Y[n,1]) S) * Y[0,0]
//!        * ->prod_{n>=0} (1 + (Y[-1,n]/Y[0,n]) S^-1)
//!   Zt = <-prod_{n>=0} (1 + S (Y[-1,n]/Y[0,n])) * Y[0,0]
//!        * ->prod_{n>=1} (1 + S^-1 (Y[n,0]/Y[n,1]))
//! ```
//!
//! (arrows: on `<-` the larger index stands leftmost, on `->` the smaller).
//! Expanding either product over factor subsets and normal-ordering, each
//! term lands on exactly one charged partition `(M, lambda)`: for `Z` the
//! term with chosen index sets of sizes `(d-, d+)` (left, right) equals
//! `X_lambda(row_shift(d- - d+) Y) * S^(d- - d+)`, for `Zt` it equals
//! `X_lambda(col_shift(d+ - d-) Y) * S^(d+ - d-)`. Verification is exact
//! canonical-form equality, term by term; no infinite object is ever
//! compared.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::ncalg::{GeneratorId, NCMonomial};
use crate::partitions::{
    charged_to_sets, enumerate_partitions, profile, sets_to_charged, ChargedPartition,
    HalfIntSetPair, Partition,
};
use crate::report::{FailureRecord, VerificationReport};
use crate::special::higher_times::HigherTimes;
use crate::special::qchar::QCharSpec;
use crate::Mutation;

/// The matrix family a view resolves entries from.
#[derive(Clone, Debug)]
pub enum ViewBase {
    /// The free commuting family `Y[a,b]`.
    Plain,
    /// The second family `Yt[a,b]`, reduced through the connection relation.
    Tilde,
    /// Entries depend on `col - row` only and commute with the shift.
    Toeplitz(HigherTimes),
    /// Quiver q-character entries with diagonal grading.
    QChar(QCharSpec),
}

/// A window onto a matrix family: row/column shifts and optional transpose.
///
/// `entry(a, b)` resolves to `base(a + row_shift, b + col_shift)`, with the
/// two final indices swapped when the view is transposed. Compositions of
/// shifts and transposes are associative.
#[derive(Clone, Debug)]
pub struct MatrixView {
    base: ViewBase,
    row_shift: i64,
    col_shift: i64,
    transposed: bool,
}

impl MatrixView {
    pub fn new(base: ViewBase) -> Self {
        MatrixView {
            base,
            row_shift: 0,
            col_shift: 0,
            transposed: false,
        }
    }

    pub fn plain() -> Self {
        MatrixView::new(ViewBase::Plain)
    }

    pub fn tilde() -> Self {
        MatrixView::new(ViewBase::Tilde)
    }

    pub fn row_shifted(&self, m: i64) -> Self {
        let mut v = self.clone();
        v.row_shift += m;
        v
    }

    pub fn col_shifted(&self, m: i64) -> Self {
        let mut v = self.clone();
        v.col_shift += m;
        v
    }

    pub fn transposed(&self) -> Self {
        MatrixView {
            base: self.base.clone(),
            row_shift: self.col_shift,
            col_shift: self.row_shift,
            transposed: !self.transposed,
        }
    }

    pub fn entry(&self, a: i64, b: i64) -> NCMonomial {
        let (mut a, mut b) = (a + self.row_shift, b + self.col_shift);
        if self.transposed {
            core::mem::swap(&mut a, &mut b);
        }
        match &self.base {
            ViewBase::Plain => NCMonomial::generator(GeneratorId::y(a, b)),
            ViewBase::Tilde => NCMonomial::generator(GeneratorId::ytilde(a, b)),
            ViewBase::Toeplitz(ht) => NCMonomial::scalar(ht.entry(a, b)),
            ViewBase::QChar(spec) => spec.entry(a, b),
        }
    }

    fn entry_ratio(&self, num: (i64, i64), den: (i64, i64)) -> NCMonomial {
        self.entry(num.0, num.1)
            .ratio(&self.entry(den.0, den.1))
            .expect("matrix entries are invertible")
    }
}

/// The box observable
/// `X_lambda(V) = V[0,0] * prod_{(r,c) in lambda} (V[r-1,c] V[r,c-1]) / (V[r-1,c-1] V[r,c])`.
///
/// Always lands in the commutative subalgebra (shift power zero).
pub fn x_lambda(view: &MatrixView, shape: &Partition) -> NCMonomial {
    let mut acc = view.entry(0, 0);
    for (r, c) in shape.cells() {
        let (r, c) = (r as i64, c as i64);
        acc = acc
            .mul(&view.entry_ratio((r - 1, c), (r - 1, c - 1)))
            .mul(&view.entry_ratio((r, c - 1), (r, c)));
    }
    debug_assert_eq!(acc.s_power(), 0);
    acc
}

/// The normal-ordered split of the box observable along its set pair:
///
/// ```text
///   ->prod_{j=1..d-} (V[nt_j,0]/V[nt_j,1] * S) * V[0,0]
///   * <-prod_{i=1..d+} (V[-1,n_i]/V[0,n_i] * S^-1) * S^M
/// ```
///
/// with `(n, nt)` the profile integers of the charged partition the pair
/// corresponds to. Equals `x_lambda` of the matching row-shifted view; the
/// total shift power is zero.
pub fn split_rhs(sets: &HalfIntSetPair, view: &MatrixView) -> NCMonomial {
    let cp = sets_to_charged(sets);
    let prof = profile(&cp);
    let mut acc = NCMonomial::one();
    for &nt in &prof.n_tilde {
        acc = acc
            .mul(&view.entry_ratio((nt, 0), (nt, 1)))
            .mul(&NCMonomial::shift(1));
    }
    acc = acc.mul(&view.entry(0, 0));
    for &n in prof.n.iter().rev() {
        acc = acc
            .mul(&view.entry_ratio((-1, n), (0, n)))
            .mul(&NCMonomial::shift(-1));
    }
    acc.mul(&NCMonomial::shift(cp.charge))
}

/// One case of the split sweep.
#[derive(Clone, Debug)]
pub struct SplitCase {
    pub charge: i64,
    pub shape: Partition,
}

/// All `(M, lambda)` with `|M| <= m_range`, `|lambda| <= max_weight`.
pub fn split_cases(max_weight: u32, m_range: i64) -> Vec<SplitCase> {
    let mut cases = Vec::new();
    for group in enumerate_partitions(max_weight) {
        for shape in group {
            for charge in -m_range..=m_range {
                cases.push(SplitCase {
                    charge,
                    shape: shape.clone(),
                });
            }
        }
    }
    cases
}

/// Check one split case: the box observable through the row-shifted view
/// equals its normal-ordered split, and the two-block factorization of the
/// box product (below-row-window block times right-of-window block, with the
/// telescoped corner) reproduces it.
pub fn check_split_case(case: &SplitCase) -> Option<FailureRecord> {
    let cp = ChargedPartition::new(case.charge, case.shape.clone());
    let sets = charged_to_sets(&cp);
    let view = MatrixView::plain().row_shifted(-case.charge);

    let whole = x_lambda(&view, &case.shape);
    let split = split_rhs(&sets, &MatrixView::plain());
    if whole != split {
        return Some(FailureRecord {
            index: format!("split at {cp}"),
            lhs: whole.render(),
            rhs: split.render(),
        });
    }

    let d_minus = sets.d_minus() as u32;
    let d_plus = sets.d_plus() as i64;
    if d_minus == 0 {
        return None;
    }
    let shape = &case.shape;
    let conj = shape.conjugate();
    let box_ratio = |r: i64, c: i64| -> NCMonomial {
        view.entry_ratio((r - 1, c), (r - 1, c - 1))
            .mul(&view.entry_ratio((r, c - 1), (r, c)))
    };

    // block of columns 1..=d-: collapses to a column-walk along the profile
    let mut lower_lhs = view.entry(0, 0);
    let mut lower_rhs = view.entry(0, d_minus as i64);
    for j in 1..=d_minus {
        for i in 1..=conj.part(j as usize) {
            lower_lhs = lower_lhs.mul(&box_ratio(i as i64, j as i64));
        }
        lower_rhs = lower_rhs.mul(&view.entry_ratio(
            (conj.part(j as usize) as i64, j as i64 - 1),
            (conj.part(j as usize) as i64, j as i64),
        ));
    }
    if lower_lhs != lower_rhs {
        return Some(FailureRecord {
            index: format!("column-block factor at {cp}"),
            lhs: lower_lhs.render(),
            rhs: lower_rhs.render(),
        });
    }

    // block of cells right of column d-: a row-walk with a corner entry
    let rows = conj.part(d_minus as usize + 1) as i64;
    let mut upper_lhs = NCMonomial::one();
    for i in 1..=rows {
        for j in (d_minus as i64 + 1)..=(shape.part(i as usize) as i64) {
            upper_lhs = upper_lhs.mul(&box_ratio(i, j));
        }
    }
    let mut upper_rhs = view.entry_ratio((rows, d_minus as i64), (0, d_minus as i64));
    for i in 1..=rows {
        upper_rhs = upper_rhs.mul(&view.entry_ratio(
            (i - 1, shape.part(i as usize) as i64),
            (i, shape.part(i as usize) as i64),
        ));
    }
    if upper_lhs != upper_rhs {
        return Some(FailureRecord {
            index: format!("row-block factor at {cp}"),
            lhs: upper_lhs.render(),
            rhs: upper_rhs.render(),
        });
    }

    // the two blocks multiply back to the whole observable
    let recombined = lower_rhs.mul(&upper_rhs);
    if recombined != whole {
        return Some(FailureRecord {
            index: format!("block product at {cp}"),
            lhs: recombined.render(),
            rhs: whole.render(),
        });
    }

    // corner telescoping: the corner entry is the diagonal entry times the
    // row-walk over the vertical run (every such row has length d-)
    let mut corner_rhs = view.entry(case.charge + d_minus as i64, d_minus as i64);
    for i in (rows + 1)..=d_plus {
        corner_rhs = corner_rhs.mul(&view.entry_ratio(
            (i - 1, shape.part(i as usize) as i64),
            (i, shape.part(i as usize) as i64),
        ));
    }
    let corner_lhs = view.entry(rows, d_minus as i64);
    if corner_lhs != corner_rhs {
        return Some(FailureRecord {
            index: format!("corner telescope at {cp}"),
            lhs: corner_lhs.render(),
            rhs: corner_rhs.render(),
        });
    }
    None
}

/// Report skeleton for the split sweep (used by partitioned runs).
pub fn split_report_skeleton(max_weight: u32, m_range: i64) -> VerificationReport {
    VerificationReport::new(
        "split-factorization",
        [
            ("max_weight", max_weight.to_string()),
            ("m_range", m_range.to_string()),
        ],
    )
}

/// Run the split sweep over an explicit slice of cases.
pub fn verify_split_cases(
    max_weight: u32,
    m_range: i64,
    cases: &[SplitCase],
) -> VerificationReport {
    let mut report = split_report_skeleton(max_weight, m_range);
    for case in cases {
        report.terms_checked += 1;
        if let Some(f) = check_split_case(case) {
            report.failures.push(f);
        }
    }
    report
}

/// Split sweep over `|lambda| <= max_weight`, `|M| <= m_range`.
pub fn verify_split(max_weight: u32, m_range: i64) -> VerificationReport {
    let mut report = verify_split_cases(max_weight, m_range, &split_cases(max_weight, m_range));
    report.sort_failures();
    report
}

/// One expanded product term, identified by the chosen factor subsets.
#[derive(Clone, Copy, Debug)]
pub struct ProductTerm {
    /// Bit `k` set: the left-product factor with index `k + 1` (plain) or
    /// `k` (transposed) is chosen.
    pub left_mask: u32,
    /// Bit `k` set: the right-product factor with index `k` (plain) or
    /// `k + 1` (transposed) is chosen.
    pub right_mask: u32,
}

fn masks(cutoff: u32) -> impl Iterator<Item = ProductTerm> {
    let n = cutoff;
    (0u32..(1 << n)).flat_map(move |left_mask| {
        (0u32..(1 << n)).map(move |right_mask| ProductTerm {
            left_mask,
            right_mask,
        })
    })
}

fn bits_desc(mask: u32, cutoff: u32) -> impl Iterator<Item = u32> {
    (0..cutoff).rev().filter(move |k| mask & (1 << k) != 0)
}

fn bits_asc(mask: u32, cutoff: u32) -> impl Iterator<Item = u32> {
    (0..cutoff).filter(move |k| mask & (1 << k) != 0)
}

/// Evaluate one term of the truncated product `Z` (or `Zt`) over `view`.
pub fn product_term(
    view: &MatrixView,
    cutoff: u32,
    transposed: bool,
    t: ProductTerm,
) -> NCMonomial {
    let mut acc = NCMonomial::one();
    if !transposed {
        for k in bits_desc(t.left_mask, cutoff) {
            let n = k as i64 + 1;
            acc = acc
                .mul(&view.entry_ratio((n, 0), (n, 1)))
                .mul(&NCMonomial::shift(1));
        }
        acc = acc.mul(&view.entry(0, 0));
        for k in bits_asc(t.right_mask, cutoff) {
            let n = k as i64;
            acc = acc
                .mul(&view.entry_ratio((-1, n), (0, n)))
                .mul(&NCMonomial::shift(-1));
        }
    } else {
        for k in bits_desc(t.left_mask, cutoff) {
            let n = k as i64;
            acc = acc
                .mul(&NCMonomial::shift(1))
                .mul(&view.entry_ratio((-1, n), (0, n)));
        }
        acc = acc.mul(&view.entry(0, 0));
        for k in bits_asc(t.right_mask, cutoff) {
            let n = k as i64 + 1;
            acc = acc
                .mul(&NCMonomial::shift(-1))
                .mul(&view.entry_ratio((n, 0), (n, 1)));
        }
    }
    acc
}

/// The charged partition a product term lands on, and its shift power.
///
/// For the plain identity the left factors carry the minus set and positive
/// shifts, so the term's shift power is `d- - d+`, the negative of the
/// pair's charge; for the transposed identity the roles swap and the shift
/// power is the charge itself.
pub fn term_partner(cutoff: u32, transposed: bool, t: ProductTerm) -> (ChargedPartition, i64) {
    let left: Vec<i64> = bits_asc(t.left_mask, cutoff).map(|k| k as i64).collect();
    let right: Vec<i64> = bits_asc(t.right_mask, cutoff).map(|k| k as i64).collect();
    let (plus, minus): (Vec<i64>, Vec<i64>) = if !transposed {
        (
            right.iter().map(|n| 2 * n + 1).collect(),
            left.iter().map(|k| 2 * (k + 1) - 1).collect(),
        )
    } else {
        (
            left.iter().map(|n| 2 * n + 1).collect(),
            right.iter().map(|k| 2 * (k + 1) - 1).collect(),
        )
    };
    let sets = HalfIntSetPair::from_twices(&plus, &minus).expect("masks give valid sets");
    let cp = sets_to_charged(&sets);
    let s_power = if !transposed { -cp.charge } else { cp.charge };
    (cp, s_power)
}

/// Expected canonical form of a product term: the box observable through
/// the shifted view, times the matching shift power.
pub fn expected_term(
    view: &MatrixView,
    cutoff: u32,
    transposed: bool,
    t: ProductTerm,
    mutation: Mutation,
) -> NCMonomial {
    let (cp, s_power) = term_partner(cutoff, transposed, t);
    let s_power = if mutation == Mutation::FlipSplitCharge {
        -s_power
    } else {
        s_power
    };
    let shifted = if !transposed {
        view.row_shifted(s_power)
    } else {
        view.col_shifted(s_power)
    };
    x_lambda(&shifted, &cp.shape).mul(&NCMonomial::shift(s_power))
}

/// Check one product term against its expected form.
pub fn check_product_term(
    view: &MatrixView,
    cutoff: u32,
    transposed: bool,
    t: ProductTerm,
    mutation: Mutation,
) -> Option<FailureRecord> {
    let got = product_term(view, cutoff, transposed, t);
    let want = expected_term(view, cutoff, transposed, t, mutation);
    if got == want {
        None
    } else {
        let (cp, _) = term_partner(cutoff, transposed, t);
        Some(FailureRecord {
            index: format!(
                "term left={:#b} right={:#b} ({}{cp})",
                t.left_mask,
                t.right_mask,
                if transposed { "transposed, " } else { "" },
            ),
            lhs: got.render(),
            rhs: want.render(),
        })
    }
}

pub fn jacobi_convention_note() -> &'static str {
    "term matching convention: a product term choosing d_minus left factors and \
     d_plus right factors is compared against the box observable through the \
     view with row shift d_minus - d_plus and the same shift power (plain \
     identity); the transposed identity uses the column shift d_plus - d_minus"
}

/// Termwise sweep of one identity over the free family at the given cutoff
/// (set elements below `cutoff`), i.e. `2^(2 cutoff)` terms.
pub fn verify_jacobi(cutoff: u32, transposed: bool, mutation: Mutation) -> VerificationReport {
    verify_jacobi_with_view(
        &MatrixView::plain(),
        if transposed {
            "nc-jacobi-transposed"
        } else {
            "nc-jacobi"
        },
        cutoff,
        transposed,
        mutation,
    )
}

/// Number of expanded terms at a cutoff.
pub fn term_count(cutoff: u32) -> u64 {
    1u64 << (2 * cutoff)
}

/// The term at a given enumeration index.
pub fn term_at(cutoff: u32, index: u64) -> ProductTerm {
    ProductTerm {
        left_mask: (index >> cutoff) as u32,
        right_mask: (index & ((1 << cutoff) - 1)) as u32,
    }
}

/// Report skeleton for one identity sweep (used by partitioned runs).
pub fn jacobi_report_skeleton(identity: &str, cutoff: u32, transposed: bool) -> VerificationReport {
    let mut report = VerificationReport::new(
        identity,
        [
            ("cutoff", cutoff.to_string()),
            ("transposed", transposed.to_string()),
        ],
    );
    report.note(jacobi_convention_note());
    report
}

/// Run a contiguous index range `[lo, hi)` of one identity sweep.
pub fn verify_jacobi_range(
    cutoff: u32,
    transposed: bool,
    mutation: Mutation,
    lo: u64,
    hi: u64,
) -> VerificationReport {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    let identity = if transposed {
        "nc-jacobi-transposed"
    } else {
        "nc-jacobi"
    };
    let mut report = jacobi_report_skeleton(identity, cutoff, transposed);
    let view = MatrixView::plain();
    for index in lo..hi {
        let t = term_at(cutoff, index);
        report.terms_checked += 1;
        if let Some(f) = check_product_term(&view, cutoff, transposed, t, mutation) {
            report.failures.push(f);
        }
    }
    report
}

/// Termwise sweep of one identity through an arbitrary base view.
pub fn verify_jacobi_with_view(
    view: &MatrixView,
    identity: &str,
    cutoff: u32,
    transposed: bool,
    mutation: Mutation,
) -> VerificationReport {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    let mut report = jacobi_report_skeleton(identity, cutoff, transposed);
    for t in masks(cutoff) {
        report.terms_checked += 1;
        if let Some(f) = check_product_term(view, cutoff, transposed, t, mutation) {
            report.failures.push(f);
        }
    }
    report.sort_failures();
    report
}

/// Both identities at once, as one report.
pub fn verify_jacobi_both(cutoff: u32, mutation: Mutation) -> VerificationReport {
    let mut report = VerificationReport::new("nc-jacobi-both", [("cutoff", cutoff.to_string())]);
    report.note(jacobi_convention_note());
    report.absorb(verify_jacobi(cutoff, false, mutation));
    report.absorb(verify_jacobi(cutoff, true, mutation));
    report.sort_failures();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::NCPoly;
    use crate::partitions::partitions_of;
    use alloc::collections::BTreeSet;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn x_lambda_examples() {
        let v = MatrixView::plain();
        assert_eq!(x_lambda(&v, &Partition::empty()), v.entry(0, 0));
        // single box: Y[0,1] Y[1,0] Y[1,1]^-1
        let got = x_lambda(&v, &p(&[1]));
        let want = v
            .entry(0, 1)
            .mul(&v.entry(1, 0))
            .mul(&v.entry(1, 1).inverse().unwrap());
        assert_eq!(got, want);
        // row of two boxes telescopes: Y[1,0] Y[0,2] Y[1,2]^-1
        let got = x_lambda(&v, &p(&[2]));
        let want = v
            .entry(1, 0)
            .mul(&v.entry(0, 2))
            .mul(&v.entry(1, 2).inverse().unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn x_lambda_transpose_symmetry() {
        // X_lambda(V^T) = X_conj(lambda)(V)
        let v = MatrixView::plain();
        for shape in partitions_of(5) {
            assert_eq!(
                x_lambda(&v.transposed(), &shape),
                x_lambda(&v, &shape.conjugate())
            );
        }
    }

    #[test]
    fn view_composition_is_associative() {
        let v = MatrixView::plain();
        let a = v.row_shifted(2).transposed().col_shifted(-1);
        let b = v.row_shifted(2).transposed().col_shifted(-1);
        for (x, y) in [(0, 0), (3, -2), (-1, 4)] {
            assert_eq!(a.entry(x, y), b.entry(x, y));
        }
        // transpose twice is the identity
        let t2 = v.transposed().transposed();
        assert_eq!(t2.entry(5, 7), v.entry(5, 7));
        // shifted transpose matches transpose of the opposite shift
        let lhs = v.transposed().row_shifted(3);
        let rhs = v.col_shifted(3).transposed();
        assert_eq!(lhs.entry(1, 2), rhs.entry(1, 2));
    }

    #[test]
    fn split_rhs_examples() {
        let v = MatrixView::plain();
        let empty = HalfIntSetPair::from_twices(&[], &[]).unwrap();
        assert_eq!(split_rhs(&empty, &v), v.entry(0, 0));

        // {3/2}|{1/2} is the charge-0 row of two boxes
        let sp = HalfIntSetPair::from_twices(&[3], &[1]).unwrap();
        assert_eq!(split_rhs(&sp, &v), x_lambda(&v, &p(&[2])));

        // {1/2}|{} has charge one and empty shape
        let sp = HalfIntSetPair::from_twices(&[1], &[]).unwrap();
        assert_eq!(
            split_rhs(&sp, &v),
            NCMonomial::generator(GeneratorId::y(-1, 0))
        );
    }

    #[test]
    fn split_shift_charge_is_minus_charge_before_trailing_power() {
        // dropping the trailing S^M leaves net shift power d- - d+
        for charge in -3i64..=3 {
            for shape in partitions_of(4) {
                let cp = ChargedPartition::new(charge, shape);
                let sets = charged_to_sets(&cp);
                let m = split_rhs(&sets, &MatrixView::plain()).mul(&NCMonomial::shift(-cp.charge));
                assert_eq!(m.s_power(), -cp.charge);
                assert_eq!(-cp.charge, sets.d_minus() as i64 - sets.d_plus() as i64);
            }
        }
    }

    #[test]
    fn split_small_sweep_passes() {
        let report = verify_split(5, 3);
        assert!(report.passed(), "{:?}", report.failures.first());
        assert_eq!(report.terms_checked, 7 * 19);
    }

    #[test]
    fn jacobi_hand_terms_cutoff_one() {
        let v = MatrixView::plain();
        // right factor alone: Y[-1,0] S^-1
        let t = ProductTerm {
            left_mask: 0,
            right_mask: 1,
        };
        let got = product_term(&v, 1, false, t);
        let want = NCMonomial::generator(GeneratorId::y(-1, 0)).mul(&NCMonomial::shift(-1));
        assert_eq!(got, want);
        assert_eq!(got, expected_term(&v, 1, false, t, Mutation::None));

        // left factor alone: Y[1,0] S
        let t = ProductTerm {
            left_mask: 1,
            right_mask: 0,
        };
        let got = product_term(&v, 1, false, t);
        let want = NCMonomial::generator(GeneratorId::y(1, 0)).mul(&NCMonomial::shift(1));
        assert_eq!(got, want);
        assert_eq!(got, expected_term(&v, 1, false, t, Mutation::None));
    }

    #[test]
    fn transposed_hand_terms_cutoff_one() {
        let v = MatrixView::plain();
        // left factor alone: S * Y[-1,0]/Y[0,0] * Y[0,0] = Y[0,1] S
        let t = ProductTerm {
            left_mask: 1,
            right_mask: 0,
        };
        let got = product_term(&v, 1, true, t);
        let want = NCMonomial::generator(GeneratorId::y(0, 1)).mul(&NCMonomial::shift(1));
        assert_eq!(got, want);
        assert_eq!(got, expected_term(&v, 1, true, t, Mutation::None));
    }

    #[test]
    fn jacobi_small_cutoffs_pass() {
        for cutoff in 1..=3 {
            for transposed in [false, true] {
                let report = verify_jacobi(cutoff, transposed, Mutation::None);
                assert!(
                    report.passed(),
                    "cutoff {cutoff} transposed {transposed}: {:?}",
                    report.failures.first()
                );
                assert_eq!(report.terms_checked, 1 << (2 * cutoff));
            }
        }
    }

    #[test]
    fn jacobi_mutation_fails() {
        let report = verify_jacobi(2, false, Mutation::FlipSplitCharge);
        assert!(!report.passed());
    }

    #[test]
    fn transposed_product_matches_plain_over_transposed_view() {
        // each term of Zt over Y equals the corresponding term of Z over Y^T
        let cutoff = 3;
        let v = MatrixView::plain();
        let vt = v.transposed();
        for t in masks(cutoff) {
            let direct = product_term(&v, cutoff, true, t);
            let through_transpose = product_term(&vt, cutoff, false, t);
            assert_eq!(direct, through_transpose);
        }
    }

    #[test]
    fn bijection_completeness_at_cutoff() {
        // the charged partitions hit by the expansion are exactly those whose
        // set pair fits under the cutoff
        let cutoff = 3u32;
        let mut seen = BTreeSet::new();
        for t in masks(cutoff) {
            let (cp, _) = term_partner(cutoff, false, t);
            assert!(seen.insert(cp), "duplicate partner");
        }
        let mut expected = BTreeSet::new();
        for charge in -(cutoff as i64 + 1)..=(cutoff as i64 + 1) {
            for w in 0..=((cutoff * cutoff) + 2) {
                for shape in partitions_of(w) {
                    let cp = ChargedPartition::new(charge, shape);
                    let sets = charged_to_sets(&cp);
                    let fits = sets
                        .plus()
                        .iter()
                        .chain(sets.minus())
                        .all(|h| h.twice() < 2 * cutoff as i64);
                    if fits {
                        expected.insert(cp);
                    }
                }
            }
        }
        assert_eq!(seen, expected);
    }

    #[test]
    fn truncated_sum_of_terms_is_consistent() {
        // summing all product terms gives the same polynomial as summing all
        // expected terms (a weaker aggregate restatement of the termwise check)
        let cutoff = 2;
        let v = MatrixView::plain();
        let mut product_sum = NCPoly::zero();
        let mut expected_sum = NCPoly::zero();
        for t in masks(cutoff) {
            product_sum.add_monomial(&product_term(&v, cutoff, false, t));
            expected_sum.add_monomial(&expected_term(&v, cutoff, false, t, Mutation::None));
        }
        assert_eq!(product_sum, expected_sum);
    }
}
