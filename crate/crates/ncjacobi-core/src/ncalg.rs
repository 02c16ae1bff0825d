//! The noncommutative algebra of commuting generators twisted by a shift.
//!
//! The algebra is generated by a commutative family (entries of the infinite
//! matrices below, all mutually commuting and invertible) together with one
//! shift element `S` acting by conjugation:
//!
//! ```text
//!   S * Y[a,b]  * S^-1 = Y[a+1,b+1]
//!   S * Yt[a,b] * S^-1 = Yt[a-1,b]
//!   S * y[j](x + k*eps + m*eps3) * S^-1 = y[j](x + (k-1)*eps + m*eps3)
//! ```
//!
//! Every element is a finite sum of monomials `coeff * (generator word) * S^k`
//! with the shift normalized to the right. The word problem is solved by a
//! rewrite: the two matrix families are connected through
//! `Yt[1,n] / Yt[0,n] = Y[1,n] / Y[0,n]`, whose shift-conjugates eliminate
//! every tilde generator with nonzero row index. Equality is syntactic
//! comparison of the resulting canonical forms.
//!
//! Monomials render in a fixed grammar used by failure reports, e.g.
//! `Y[1,0]*Y[1,1]^-1*S^1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::scalar::{Scalar, ScalarError};

/// A single commuting generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    /// `Y[row, col]`, conjugation shifts both indices.
    Y { row: i64, col: i64 },
    /// `Yt[row, col]`, conjugation lowers the row index.
    YTilde { row: i64, col: i64 },
    /// Quiver observable `y[node](x + eps_steps * eps + eps3_steps * eps3)`;
    /// `node` is reduced modulo the quiver period, with overflow folded into
    /// `eps3_steps` by quasiperiodicity.
    Obs {
        node: u32,
        eps_steps: i64,
        eps3_steps: i64,
    },
}

impl GeneratorId {
    pub fn y(row: i64, col: i64) -> Self {
        GeneratorId::Y { row, col }
    }

    pub fn ytilde(row: i64, col: i64) -> Self {
        GeneratorId::YTilde { row, col }
    }

    /// Build a quiver observable, folding the raw node index into
    /// `[0, period)`: `y[node + period](x) = y[node](x + eps3)`.
    pub fn obs(period: u32, raw_node: i64, eps_steps: i64, eps3_steps: i64) -> Self {
        let p = period as i64;
        assert!(p > 0, "quiver period must be positive");
        GeneratorId::Obs {
            node: raw_node.rem_euclid(p) as u32,
            eps_steps,
            eps3_steps: eps3_steps + raw_node.div_euclid(p),
        }
    }

    fn shifted(self, k: i64) -> Self {
        match self {
            GeneratorId::Y { row, col } => GeneratorId::Y {
                row: row + k,
                col: col + k,
            },
            GeneratorId::YTilde { row, col } => GeneratorId::YTilde { row: row - k, col },
            GeneratorId::Obs {
                node,
                eps_steps,
                eps3_steps,
            } => GeneratorId::Obs {
                node,
                eps_steps: eps_steps - k,
                eps3_steps,
            },
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::Y { row, col } => write!(f, "Y[{row},{col}]"),
            GeneratorId::YTilde { row, col } => write!(f, "Yt[{row},{col}]"),
            GeneratorId::Obs {
                node,
                eps_steps,
                eps3_steps,
            } => write!(f, "y[{node};{eps_steps},{eps3_steps}]"),
        }
    }
}

type ExponentMap = BTreeMap<GeneratorId, i64>;

/// `coeff * (generator word) * S^k`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMonomial {
    coeff: Scalar,
    exps: ExponentMap,
    s_power: i64,
}

impl NCMonomial {
    pub fn one() -> Self {
        NCMonomial {
            coeff: Scalar::one(),
            exps: ExponentMap::new(),
            s_power: 0,
        }
    }

    pub fn shift(k: i64) -> Self {
        NCMonomial {
            coeff: Scalar::one(),
            exps: ExponentMap::new(),
            s_power: k,
        }
    }

    pub fn generator(g: GeneratorId) -> Self {
        NCMonomial::from_parts(Scalar::one(), [(g, 1)].into_iter().collect(), 0)
    }

    pub fn scalar(coeff: Scalar) -> Self {
        NCMonomial {
            coeff,
            exps: ExponentMap::new(),
            s_power: 0,
        }
    }

    /// Assemble and canonicalize.
    pub fn from_parts(coeff: Scalar, mut exps: ExponentMap, s_power: i64) -> Self {
        exps.retain(|_, e| *e != 0);
        let mut m = NCMonomial {
            coeff,
            exps,
            s_power,
        };
        m.reduce_tilde();
        m
    }

    /// Assemble without the tilde reduction. Raw forms let checks compare
    /// intermediate expressions exactly as written before the connection
    /// relation is applied.
    pub fn from_parts_unreduced(coeff: Scalar, mut exps: ExponentMap, s_power: i64) -> Self {
        exps.retain(|_, e| *e != 0);
        NCMonomial {
            coeff,
            exps,
            s_power,
        }
    }

    pub fn coeff(&self) -> &Scalar {
        &self.coeff
    }

    pub fn exponents(&self) -> &ExponentMap {
        &self.exps
    }

    pub fn s_power(&self) -> i64 {
        self.s_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn with_coeff(&self, coeff: Scalar) -> Self {
        NCMonomial {
            coeff,
            exps: self.exps.clone(),
            s_power: self.s_power,
        }
    }

    /// The commutative part and shift power, the key monomials merge under.
    pub fn key(&self) -> (ExponentMap, i64) {
        (self.exps.clone(), self.s_power)
    }

    /// Conjugation by the shift: `S^k * self * S^-k`.
    pub fn conjugated(&self, k: i64) -> Self {
        let exps = self.exps.iter().map(|(&g, &e)| (g.shifted(k), e)).collect();
        // conjugation can re-create reducible tilde rows
        NCMonomial::from_parts(self.coeff.clone(), exps, self.s_power)
    }

    /// Product, with the shift pushed to the right:
    /// `(c1, E1, k1) * (c2, E2, k2) = (c1 c2, E1 + sigma_k1(E2), k1 + k2)`.
    pub fn mul(&self, other: &NCMonomial) -> Self {
        self.mul_inner(other, true)
    }

    /// Product without the tilde reduction; the result may be non-canonical.
    /// Exists so sweeps can demonstrate that disabling the reduction breaks
    /// the identities.
    pub fn mul_raw(&self, other: &NCMonomial) -> Self {
        self.mul_inner(other, false)
    }

    fn mul_inner(&self, other: &NCMonomial, reduce: bool) -> Self {
        let mut exps = self.exps.clone();
        for (&g, &e) in &other.exps {
            let g = g.shifted(self.s_power);
            merge_exp(&mut exps, g, e);
        }
        let mut m = NCMonomial {
            coeff: &self.coeff * &other.coeff,
            exps,
            s_power: self.s_power + other.s_power,
        };
        if reduce {
            m.reduce_tilde();
        }
        m
    }

    /// Inverse; defined when the coefficient is invertible (a unit monomial,
    /// possibly times one-plus-nilpotent as produced by exponentials).
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        let coeff = self.coeff.invert_exp_like()?;
        let exps = self
            .exps
            .iter()
            .map(|(&g, &e)| (g.shifted(-self.s_power), -e))
            .collect();
        Ok(NCMonomial::from_parts(coeff, exps, -self.s_power))
    }

    /// `self * other^-1`.
    pub fn ratio(&self, other: &NCMonomial) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Replay the tilde reduction (idempotent on canonical input).
    pub fn canonicalized(&self) -> Self {
        let mut m = self.clone();
        m.reduce_tilde();
        m
    }

    /// Rewrite every `Yt[row, n]` with `row != 0` down to row zero:
    ///
    /// ```text
    ///   row > 0:  Yt[row,n] = Yt[row-1,n] * Y[2-row, n+1-row] * Y[1-row, n+1-row]^-1
    ///   row < 0:  Yt[row,n] = Yt[row+1,n] * Y[-row, n-row] * Y[1-row, n-row]^-1
    /// ```
    ///
    /// Both are shift-conjugates of the row-one connection relation.
    fn reduce_tilde(&mut self) {
        loop {
            let target = self.exps.iter().find_map(|(&g, &e)| match g {
                GeneratorId::YTilde { row, col } if row != 0 => Some((row, col, e)),
                _ => None,
            });
            let Some((row, col, e)) = target else {
                break;
            };
            self.exps.remove(&GeneratorId::YTilde { row, col });
            if row > 0 {
                merge_exp(&mut self.exps, GeneratorId::ytilde(row - 1, col), e);
                merge_exp(&mut self.exps, GeneratorId::y(2 - row, col + 1 - row), e);
                merge_exp(&mut self.exps, GeneratorId::y(1 - row, col + 1 - row), -e);
            } else {
                merge_exp(&mut self.exps, GeneratorId::ytilde(row + 1, col), e);
                merge_exp(&mut self.exps, GeneratorId::y(-row, col - row), e);
                merge_exp(&mut self.exps, GeneratorId::y(1 - row, col - row), -e);
            }
        }
    }

    /// Render in the report grammar.
    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

fn merge_exp(exps: &mut ExponentMap, g: GeneratorId, e: i64) {
    use alloc::collections::btree_map::Entry;
    if e == 0 {
        return;
    }
    match exps.entry(g) {
        Entry::Vacant(slot) => {
            slot.insert(e);
        }
        Entry::Occupied(mut slot) => {
            let sum = slot.get() + e;
            if sum == 0 {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.coeff.is_one() {
            if self.coeff.num_terms() > 1 {
                write!(f, "({})", self.coeff)?;
            } else {
                write!(f, "{}", self.coeff)?;
            }
            wrote = true;
        }
        for (g, e) in &self.exps {
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            write!(f, "{g}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if self.s_power != 0 {
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            write!(f, "S^{}", self.s_power)?;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A finite sum of canonical monomials, merged by commutative word and shift
/// power.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<(ExponentMap, i64), Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::from(NCMonomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = NCMonomial> + '_ {
        self.terms
            .iter()
            .map(|((exps, s_power), coeff)| NCMonomial {
                coeff: coeff.clone(),
                exps: exps.clone(),
                s_power: *s_power,
            })
    }

    pub fn add_monomial(&mut self, m: &NCMonomial) {
        use alloc::collections::btree_map::Entry;
        if m.is_zero() {
            return;
        }
        match self.terms.entry(m.key()) {
            Entry::Vacant(slot) => {
                slot.insert(m.coeff.clone());
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &m.coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for m in other.terms() {
            out.add_monomial(&m);
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for m in self.terms() {
            out.add_monomial(&m.with_coeff(-m.coeff().clone()));
        }
        out
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for a in self.terms() {
            for b in other.terms() {
                out.add_monomial(&a.mul(&b));
            }
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for m in self.terms() {
            out.add_monomial(&m.with_coeff(m.coeff() * s));
        }
        out
    }

    pub fn mul_monomial(&self, m: &NCMonomial) -> NCPoly {
        let mut out = NCPoly::zero();
        for a in self.terms() {
            out.add_monomial(&a.mul(m));
        }
        out
    }
}

impl From<NCMonomial> for NCPoly {
    fn from(m: NCMonomial) -> Self {
        let mut p = NCPoly::zero();
        p.add_monomial(&m);
        p
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::UnitSym;
    use proptest::prelude::*;

    fn y(row: i64, col: i64) -> NCMonomial {
        NCMonomial::generator(GeneratorId::y(row, col))
    }

    fn yt(row: i64, col: i64) -> NCMonomial {
        NCMonomial::generator(GeneratorId::ytilde(row, col))
    }

    fn word(gens: &[(GeneratorId, i64)], s_power: i64) -> NCMonomial {
        NCMonomial::from_parts(Scalar::one(), gens.iter().copied().collect(), s_power)
    }

    #[test]
    fn shift_conjugation_on_y() {
        assert_eq!(y(0, 0).conjugated(1), y(1, 1));
        assert_eq!(y(3, -2).conjugated(0), y(3, -2));
    }

    #[test]
    fn shift_times_generator_normal_orders() {
        // S * Y[0,0] = Y[1,1] * S
        let lhs = NCMonomial::shift(1).mul(&y(0, 0));
        assert_eq!(lhs, word(&[(GeneratorId::y(1, 1), 1)], 1));
        assert_eq!(lhs.render(), "Y[1,1]*S^1");
    }

    #[test]
    fn mul_cancels_through_conjugation() {
        // (Y[1,0]*Y[1,1]^-1*S) * Y[0,0] = Y[1,0]*S
        let lhs = word(&[(GeneratorId::y(1, 0), 1), (GeneratorId::y(1, 1), -1)], 1).mul(&y(0, 0));
        assert_eq!(lhs, word(&[(GeneratorId::y(1, 0), 1)], 1));
    }

    #[test]
    fn render_grammar() {
        let m = word(&[(GeneratorId::y(1, 0), 1), (GeneratorId::y(1, 1), -1)], 1);
        assert_eq!(m.render(), "Y[1,0]*Y[1,1]^-1*S^1");
        assert_eq!(NCMonomial::one().render(), "1");
        assert_eq!(
            y(0, 0).with_coeff(Scalar::from_int(-1)).render(),
            "-1*Y[0,0]"
        );
    }

    #[test]
    fn commutative_part_multiplies() {
        let prod = y(0, 0).mul(&y(1, 1));
        assert_eq!(
            prod,
            word(&[(GeneratorId::y(0, 0), 1), (GeneratorId::y(1, 1), 1)], 0)
        );
    }

    #[test]
    fn tilde_reduction_row_one() {
        // Yt[1,n] = Yt[0,n] * Y[1,n] * Y[0,n]^-1
        let n = 4;
        assert_eq!(
            yt(1, n),
            word(
                &[
                    (GeneratorId::ytilde(0, n), 1),
                    (GeneratorId::y(1, n), 1),
                    (GeneratorId::y(0, n), -1)
                ],
                0
            )
        );
        // row zero is already canonical
        assert_eq!(yt(0, n).exponents().len(), 1);
    }

    #[test]
    fn tilde_reduction_row_two() {
        // Yt[2,7] = Yt[0,7] * Y[1,7]*Y[0,7]^-1 * Y[0,6]*Y[-1,6]^-1
        assert_eq!(
            yt(2, 7),
            word(
                &[
                    (GeneratorId::ytilde(0, 7), 1),
                    (GeneratorId::y(1, 7), 1),
                    (GeneratorId::y(0, 7), -1),
                    (GeneratorId::y(0, 6), 1),
                    (GeneratorId::y(-1, 6), -1)
                ],
                0
            )
        );
    }

    #[test]
    fn tilde_conjugation_lowers_row() {
        // sigma_{-1}(Yt[0,5]) = Yt[1,5], which reduces through the connection
        let got = yt(0, 5).conjugated(-1);
        assert_eq!(got, yt(1, 5));
        assert_eq!(got.render(), "Y[0,5]^-1*Y[1,5]*Yt[0,5]");
    }

    #[test]
    fn obs_node_folds_by_period() {
        let g = GeneratorId::obs(3, 5, 1, 0);
        assert_eq!(
            g,
            GeneratorId::Obs {
                node: 2,
                eps_steps: 1,
                eps3_steps: 1
            }
        );
        let g = GeneratorId::obs(3, -1, 0, 0);
        assert_eq!(
            g,
            GeneratorId::Obs {
                node: 2,
                eps_steps: 0,
                eps3_steps: -1
            }
        );
    }

    #[test]
    fn inverse_undoes_mul() {
        let m = word(&[(GeneratorId::y(2, 1), 3), (GeneratorId::y(0, 0), -1)], 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), NCMonomial::one());
        assert_eq!(inv.mul(&m), NCMonomial::one());
    }

    #[test]
    fn poly_cross_term_conjugates() {
        // (1 + a*S)(1 + b*S^-1) = 1 + a*S + b*S^-1 + a*sigma(b)
        let a = GeneratorId::y(5, 0);
        let b = GeneratorId::y(7, 2);
        let lhs = NCPoly::one()
            .add(&NCPoly::from(word(&[(a, 1)], 1)))
            .mul(&NCPoly::one().add(&NCPoly::from(word(&[(b, 1)], -1))));
        let mut rhs = NCPoly::one();
        rhs.add_monomial(&word(&[(a, 1)], 1));
        rhs.add_monomial(&word(&[(b, 1)], -1));
        rhs.add_monomial(&word(&[(a, 1), (GeneratorId::y(8, 3), 1)], 0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn noncommutativity_witness() {
        let p = NCPoly::from(NCMonomial::shift(1));
        let q = NCPoly::from(y(0, 0));
        assert_ne!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn poly_add_zero_is_identity() {
        let p = NCPoly::from(y(1, 2)).add(&NCPoly::from(NCMonomial::shift(-1)));
        assert_eq!(p.add(&NCPoly::zero()), p);
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn scalar_coefficients_merge() {
        let mut p = NCPoly::zero();
        p.add_monomial(&y(0, 0).with_coeff(Scalar::unit(UnitSym::V, 2)));
        p.add_monomial(&y(0, 0).with_coeff(Scalar::from_int(3)));
        assert_eq!(p.num_terms(), 1);
        let coeff = p.terms().next().unwrap().coeff().clone();
        assert_eq!(coeff, Scalar::unit(UnitSym::V, 2) + Scalar::from_int(3));
    }

    fn gen_strategy() -> impl Strategy<Value = GeneratorId> {
        prop_oneof![
            (-6i64..=6, -6i64..=6).prop_map(|(r, c)| GeneratorId::y(r, c)),
            (-6i64..=6, -6i64..=6).prop_map(|(r, c)| GeneratorId::ytilde(r, c)),
            (0i64..=4, -3i64..=3, -2i64..=2).prop_map(|(n, k, m)| GeneratorId::obs(3, n, k, m)),
        ]
    }

    fn mono_strategy() -> impl Strategy<Value = NCMonomial> {
        (
            proptest::collection::vec((gen_strategy(), -3i64..=3), 0..4),
            -3i64..=3,
        )
            .prop_map(|(gens, s)| {
                let mut exps = ExponentMap::new();
                for (g, e) in gens {
                    merge_exp(&mut exps, g, e);
                }
                NCMonomial::from_parts(Scalar::one(), exps, s)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn conjugation_is_a_homomorphism(a in mono_strategy(), b in mono_strategy(), k in -5i64..=5) {
            // sigma_k distributes over products of commutative parts
            let a0 = a.with_coeff(Scalar::one());
            let b0 = b.with_coeff(Scalar::one());
            let a0 = NCMonomial::from_parts(Scalar::one(), a0.exponents().clone(), 0);
            let b0 = NCMonomial::from_parts(Scalar::one(), b0.exponents().clone(), 0);
            prop_assert_eq!(
                a0.mul(&b0).conjugated(k),
                a0.conjugated(k).mul(&b0.conjugated(k))
            );
        }

        #[test]
        fn conjugation_composes(a in mono_strategy(), k in -5i64..=5, l in -5i64..=5) {
            prop_assert_eq!(a.conjugated(k).conjugated(l), a.conjugated(k + l));
        }

        #[test]
        fn mul_is_associative(a in mono_strategy(), b in mono_strategy(), c in mono_strategy()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn conjugation_agrees_with_sandwich(a in mono_strategy(), k in -5i64..=5) {
            let sandwich = NCMonomial::shift(k).mul(&a).mul(&NCMonomial::shift(-k));
            prop_assert_eq!(sandwich, a.conjugated(k));
        }

        #[test]
        fn canonicalize_is_idempotent(a in mono_strategy()) {
            prop_assert_eq!(a.canonicalized(), a.clone());
        }
    }

    // Confluence: reducing tilde generators in arbitrary order gives the
    // canonical form.
    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn tilde_reduction_is_confluent(
            word_spec in proptest::collection::vec(((-4i64..=4, -4i64..=4), -2i64..=2), 1..4),
            order_seed in 0u64..1000,
        ) {
            let mut exps = ExponentMap::new();
            for ((row, col), e) in &word_spec {
                merge_exp(&mut exps, GeneratorId::ytilde(*row, *col), *e);
            }
            let canonical = NCMonomial::from_parts(Scalar::one(), exps.clone(), 0);

            // reduce manually, picking the target pseudo-randomly
            let mut state = exps;
            let mut seed = order_seed;
            loop {
                let bad: Vec<(i64, i64, i64)> = state
                    .iter()
                    .filter_map(|(&g, &e)| match g {
                        GeneratorId::YTilde { row, col } if row != 0 => Some((row, col, e)),
                        _ => None,
                    })
                    .collect();
                if bad.is_empty() {
                    break;
                }
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let (row, col, e) = bad[(seed >> 33) as usize % bad.len()];
                state.remove(&GeneratorId::ytilde(row, col));
                if row > 0 {
                    merge_exp(&mut state, GeneratorId::ytilde(row - 1, col), e);
                    merge_exp(&mut state, GeneratorId::y(2 - row, col + 1 - row), e);
                    merge_exp(&mut state, GeneratorId::y(1 - row, col + 1 - row), -e);
                } else {
                    merge_exp(&mut state, GeneratorId::ytilde(row + 1, col), e);
                    merge_exp(&mut state, GeneratorId::y(-row, col - row), e);
                    merge_exp(&mut state, GeneratorId::y(1 - row, col - row), -e);
                }
            }
            let reduced = NCMonomial::from_parts(Scalar::one(), state, 0);
            prop_assert_eq!(reduced, canonical);
        }
    }
}
