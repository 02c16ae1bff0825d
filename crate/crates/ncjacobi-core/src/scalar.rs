//! Exact commutative coefficient ring shared by every verifier.
//!
//! A [`Scalar`] is a finite sum of terms
//!
//! ```text
//!   rational * (Laurent monomial in units) * (monomial in nilpotent variables)
//! ```
//!
//! Units are invertible grading symbols (`z`, `v = qe^(1/2)`, `qt = q~^(1/2)`,
//! `u^(1/2)`, `e^(xi_j)`, classical y-symbols). Fractional exponents are kept
//! exact by choosing the stored unit to be the smallest power that actually
//! occurs, so all stored exponents are plain integers. Nilpotent variables
//! (`b3`, `b4`, ...) carry a shared total-degree cap; any product whose total
//! nilpotent degree exceeds the cap is identically zero.
//!
//! Canonical form is maintained by construction: terms are keyed by monomial
//! in a sorted map, like terms merge, zero coefficients are dropped.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Invertible grading symbols.
///
/// The stored exponent counts multiples of the unit itself; where the natural
/// reader-facing variable is a square, the display denominator records that
/// (exponent `n` on [`UnitSym::U`] renders as `u^(n/2)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitSym {
    /// `u^(1/2)`; host of half-integer powers in mode-series checks.
    U,
    /// `z`, the charge-counting unit.
    Z,
    /// `v = qe^(1/2)`, the box-counting unit of the triple product.
    V,
    /// `qt = q~^(1/2)`, the grading unit of the quiver specialization.
    QTilde,
    /// `e^(xi_j)`, the normalization unit attached to quiver node `j`.
    Xi(i32),
    /// Classical (commutative-limit) y-symbol `y_node(x + step3 * eps3)`.
    YAt { node: i32, step3: i32 },
}

impl UnitSym {
    /// Display denominator: stored exponent `n` renders as `n / display_denom`.
    pub fn display_denom(self) -> i64 {
        match self {
            UnitSym::U | UnitSym::QTilde => 2,
            _ => 1,
        }
    }

    fn write_name(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitSym::U => write!(f, "u"),
            UnitSym::Z => write!(f, "z"),
            UnitSym::V => write!(f, "v"),
            UnitSym::QTilde => write!(f, "qt"),
            UnitSym::Xi(j) => write!(f, "xi[{j}]"),
            UnitSym::YAt { node, step3 } => write!(f, "y[{node};{step3}]"),
        }
    }
}

/// Nilpotent (or plain polynomial, when uncapped) variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NilSym {
    /// Higher-time variable `b_k`, `k >= 3`.
    B(u8),
    /// A named auxiliary polynomial symbol.
    Var(&'static str),
}

impl fmt::Display for NilSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilSym::B(k) => write!(f, "b{k}"),
            NilSym::Var(name) => write!(f, "{name}"),
        }
    }
}

/// No truncation: nilpotent variables behave as ordinary polynomial symbols.
pub const NO_CAP: u32 = u32::MAX;

/// A single monomial key: sorted unit exponents and nilpotent degrees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct ScalarMono {
    units: Vec<(UnitSym, i64)>,
    nils: Vec<(NilSym, u32)>,
}

impl ScalarMono {
    pub fn unit(sym: UnitSym, exp: i64) -> Self {
        let units = if exp == 0 { vec![] } else { vec![(sym, exp)] };
        ScalarMono {
            units,
            nils: vec![],
        }
    }

    pub fn nil(sym: NilSym, deg: u32) -> Self {
        let nils = if deg == 0 { vec![] } else { vec![(sym, deg)] };
        ScalarMono {
            units: vec![],
            nils,
        }
    }

    pub fn from_units(mut units: Vec<(UnitSym, i64)>) -> Self {
        units.retain(|&(_, e)| e != 0);
        units.sort_unstable_by_key(|&(s, _)| s);
        ScalarMono {
            units,
            nils: vec![],
        }
    }

    pub fn from_parts(units: Vec<(UnitSym, i64)>, mut nils: Vec<(NilSym, u32)>) -> Self {
        let mut mono = ScalarMono::from_units(units);
        nils.retain(|&(_, d)| d != 0);
        nils.sort_unstable_by_key(|&(s, _)| s);
        mono.nils = nils;
        mono
    }

    pub fn is_one(&self) -> bool {
        self.units.is_empty() && self.nils.is_empty()
    }

    pub fn units(&self) -> &[(UnitSym, i64)] {
        &self.units
    }

    pub fn nils(&self) -> &[(NilSym, u32)] {
        &self.nils
    }

    pub fn nil_degree(&self) -> u32 {
        self.nils.iter().map(|&(_, d)| d).sum()
    }

    pub fn unit_exp(&self, sym: UnitSym) -> i64 {
        self.units
            .iter()
            .find(|&&(s, _)| s == sym)
            .map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &ScalarMono) -> ScalarMono {
        ScalarMono {
            units: merge_exps(&self.units, &other.units),
            nils: merge_exps(&self.nils, &other.nils),
        }
    }

    fn units_only(&self) -> ScalarMono {
        ScalarMono {
            units: self.units.clone(),
            nils: vec![],
        }
    }

    fn nils_only(&self) -> ScalarMono {
        ScalarMono {
            units: vec![],
            nils: self.nils.clone(),
        }
    }
}

fn merge_exps<S: Copy + Ord, E: Copy + PartialEq + Add<Output = E> + Default>(
    a: &[(S, E)],
    b: &[(S, E)],
) -> Vec<(S, E)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != E::default() {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for ScalarMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(sym, exp) in &self.units {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            sym.write_name(f)?;
            write_exp(f, exp, sym.display_denom())?;
        }
        for &(sym, deg) in &self.nils {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{sym}")?;
            if deg != 1 {
                write!(f, "^{deg}")?;
            }
        }
        Ok(())
    }
}

fn write_exp(f: &mut fmt::Formatter<'_>, exp: i64, denom: i64) -> fmt::Result {
    if exp == denom {
        return Ok(());
    }
    if exp % denom == 0 {
        write!(f, "^{}", exp / denom)
    } else {
        write!(f, "^({exp}/{denom})")
    }
}

/// Error raised by partial scalar operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// Inversion is only defined for single-term, unit-only scalars.
    NotInvertible,
    /// The exponential argument has a term that is neither a unit logarithm
    /// nor purely nilpotent.
    NonNilpotentExponent,
    /// Exponentiating a nilpotent part with no finite degree cap.
    UncappedExponential,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NotInvertible => {
                write!(
                    f,
                    "only unit monomials with rational coefficient are invertible"
                )
            }
            ScalarError::NonNilpotentExponent => {
                write!(
                    f,
                    "exponential argument must split into unit logarithms and nilpotents"
                )
            }
            ScalarError::UncappedExponential => {
                write!(
                    f,
                    "cannot exponentiate a nilpotent part without a finite degree cap"
                )
            }
        }
    }
}

impl core::error::Error for ScalarError {}

/// An element of the exact coefficient ring, in canonical form.
///
/// The `cap` records the nilpotent total-degree truncation of the ambient
/// ring; it combines by minimum under arithmetic, so values built in a capped
/// ring stay in it. Equality compares terms only.
#[derive(Clone, Debug)]
pub struct Scalar {
    terms: alloc::collections::BTreeMap<ScalarMono, BigRational>,
    cap: u32,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: alloc::collections::BTreeMap::new(),
            cap: NO_CAP,
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_ratio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        let mut s = Scalar::zero();
        if !r.is_zero() {
            s.terms.insert(ScalarMono::default(), r);
        }
        s
    }

    pub fn unit(sym: UnitSym, exp: i64) -> Self {
        Scalar::term(BigRational::one(), ScalarMono::unit(sym, exp))
    }

    pub fn nil(sym: NilSym) -> Self {
        Scalar::term(BigRational::one(), ScalarMono::nil(sym, 1))
    }

    pub fn term(coeff: BigRational, mono: ScalarMono) -> Self {
        let mut s = Scalar::zero();
        if !coeff.is_zero() {
            s.terms.insert(mono, coeff);
        }
        s
    }

    /// Impose a nilpotent total-degree cap, dropping terms above it.
    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self.terms.retain(|m, _| m.nil_degree() <= cap);
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarMono, &BigRational)> {
        self.terms.iter()
    }

    /// The rational coefficient of the trivial monomial.
    pub fn constant_part(&self) -> BigRational {
        self.terms
            .get(&ScalarMono::default())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// As a single `(coefficient, monomial)` pair, if the scalar has exactly
    /// one term.
    pub fn as_monomial(&self) -> Option<(&BigRational, &ScalarMono)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    fn add_term(&mut self, mono: ScalarMono, coeff: BigRational) {
        if coeff.is_zero() || mono.nil_degree() > self.cap {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiplicative inverse of a unit monomial with rational coefficient.
    ///
    /// Anything with several terms or a nilpotent factor is rejected.
    pub fn invert_monomial(&self) -> Result<Scalar, ScalarError> {
        let (coeff, mono) = self.as_monomial().ok_or(ScalarError::NotInvertible)?;
        if !mono.nils().is_empty() {
            return Err(ScalarError::NotInvertible);
        }
        let inv_units = mono.units().iter().map(|&(s, e)| (s, -e)).collect();
        let mut out = Scalar::term(coeff.recip(), ScalarMono::from_units(inv_units));
        out.cap = self.cap;
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one().with_cap(self.cap);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of `u * (1 + n)` with `u` a unit monomial and `n` nilpotent:
    /// `u^-1 * sum_k (-n)^k`, terminating through the degree cap. Covers the
    /// exponential-form coefficients the matrix views produce; everything
    /// else is rejected.
    pub fn invert_exp_like(&self) -> Result<Scalar, ScalarError> {
        if let Ok(inv) = self.invert_monomial() {
            return Ok(inv);
        }
        let mut head: Option<Scalar> = None;
        for (mono, coeff) in &self.terms {
            if mono.nil_degree() == 0 {
                if head.is_some() {
                    return Err(ScalarError::NotInvertible);
                }
                head = Some(Scalar::term(coeff.clone(), mono.clone()));
            }
        }
        let head = head.ok_or(ScalarError::NotInvertible)?.with_cap(self.cap);
        let head_inv = head.invert_monomial()?;
        let tail = &(&head_inv * self) - &Scalar::one();
        if tail.is_zero() {
            return Ok(head_inv);
        }
        if self.cap == NO_CAP {
            return Err(ScalarError::NotInvertible);
        }
        let mut inv = Scalar::one().with_cap(self.cap);
        let mut power = Scalar::one().with_cap(self.cap);
        loop {
            power = &power * &(-&tail);
            if power.is_zero() {
                break;
            }
            inv += power.clone();
        }
        Ok(&head_inv * &inv)
    }

    /// The (possibly nilpotent-valued) coefficient of the given unit monomial.
    pub fn coefficient_of(&self, units: &[(UnitSym, i64)]) -> Scalar {
        let key = ScalarMono::from_units(units.to_owned());
        let mut out = Scalar::zero();
        out.cap = self.cap;
        for (mono, coeff) in &self.terms {
            if mono.units_only() == key {
                out.add_term(mono.nils_only(), coeff.clone());
            }
        }
        out
    }

    /// Group terms by their unit part; each value is unit-free.
    pub fn by_unit_part(&self) -> alloc::collections::BTreeMap<ScalarMono, Scalar> {
        let mut out: alloc::collections::BTreeMap<ScalarMono, Scalar> =
            alloc::collections::BTreeMap::new();
        for (mono, coeff) in &self.terms {
            out.entry(mono.units_only())
                .or_insert_with(|| {
                    let mut s = Scalar::zero();
                    s.cap = self.cap;
                    s
                })
                .add_term(mono.nils_only(), coeff.clone());
        }
        out
    }

    /// Drop every term whose exponent on `sym` exceeds `max_exp`.
    pub fn truncate_unit_above(&self, sym: UnitSym, max_exp: i64) -> Scalar {
        let mut out = Scalar::zero();
        out.cap = self.cap;
        for (mono, coeff) in &self.terms {
            if mono.unit_exp(sym) <= max_exp {
                out.add_term(mono.clone(), coeff.clone());
            }
        }
        out
    }

    /// Drop every term whose exponent on `sym` lies below `min_exp`.
    pub fn truncate_unit_below(&self, sym: UnitSym, min_exp: i64) -> Scalar {
        let mut out = Scalar::zero();
        out.cap = self.cap;
        for (mono, coeff) in &self.terms {
            if mono.unit_exp(sym) >= min_exp {
                out.add_term(mono.clone(), coeff.clone());
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = coeff.abs();
            if mono.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.cap = self.cap.min(rhs.cap);
        out.terms.retain(|m, _| m.nil_degree() <= out.cap);
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = self.clone();
        for coeff in out.terms.values_mut() {
            *coeff = -coeff.clone();
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        out.cap = self.cap.min(rhs.cap);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mono = m1.mul(m2);
                if mono.nil_degree() <= out.cap {
                    out.add_term(mono, c1 * c2);
                }
            }
        }
        out
    }
}

macro_rules! forward_value_ops {
    ($($tr:ident, $m:ident);*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_value_ops!(Add, add; Sub, sub; Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        let sum = &*self + &rhs;
        *self = sum;
    }
}

/// An exponent in "exp-ready" split form: a linear combination of unit
/// logarithms (given directly as unit exponents) plus a purely nilpotent
/// part.
///
/// `exp()` of `log(z) + 2 log(v) + p` is `z * v^2 * sum(p^n / n!)`, the sum
/// terminating through the nilpotent degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpForm {
    unit_exps: Vec<(UnitSym, i64)>,
    nil_part: Scalar,
}

impl ExpForm {
    pub fn zero() -> Self {
        ExpForm {
            unit_exps: vec![],
            nil_part: Scalar::zero(),
        }
    }

    pub fn new(unit_exps: Vec<(UnitSym, i64)>, nil_part: Scalar) -> Result<Self, ScalarError> {
        for (mono, _) in nil_part.terms() {
            if mono.nils().is_empty() || !mono.units().is_empty() {
                return Err(ScalarError::NonNilpotentExponent);
            }
        }
        Ok(ExpForm {
            unit_exps: ScalarMono::from_units(unit_exps).units().to_owned(),
            nil_part,
        })
    }

    pub fn unit_exps(&self) -> &[(UnitSym, i64)] {
        &self.unit_exps
    }

    pub fn nil_part(&self) -> &Scalar {
        &self.nil_part
    }

    pub fn add(&self, other: &ExpForm) -> ExpForm {
        ExpForm {
            unit_exps: merge_exps(&self.unit_exps, &other.unit_exps),
            nil_part: &self.nil_part + &other.nil_part,
        }
    }

    pub fn negate(&self) -> ExpForm {
        ExpForm {
            unit_exps: self.unit_exps.iter().map(|&(s, e)| (s, -e)).collect(),
            nil_part: -&self.nil_part,
        }
    }

    /// Exponentiate: unit monomial times the finite exponential sum of the
    /// nilpotent part.
    pub fn exp(&self) -> Result<Scalar, ScalarError> {
        let unit = Scalar::term(
            BigRational::one(),
            ScalarMono::from_units(self.unit_exps.clone()),
        );
        if self.nil_part.is_zero() {
            return Ok(unit);
        }
        if self.nil_part.cap() == NO_CAP {
            return Err(ScalarError::UncappedExponential);
        }
        let mut sum = Scalar::one().with_cap(self.nil_part.cap());
        let mut power = Scalar::one().with_cap(self.nil_part.cap());
        let mut factorial = BigRational::one();
        for n in 1.. {
            power = &power * &self.nil_part;
            if power.is_zero() {
                break;
            }
            factorial *= BigRational::from_integer(BigInt::from(n));
            let inv = Scalar::from_ratio(factorial.recip());
            sum += &power * &inv;
        }
        Ok(unit * sum)
    }
}

/// Description of a concrete coefficient ring: which units and nilpotent
/// variables are in play, and the shared nilpotent total-degree cap.
#[derive(Clone, Debug)]
pub struct ScalarRingSpec {
    units: Vec<UnitSym>,
    nilpotents: Vec<NilSym>,
    nil_cap: u32,
}

impl ScalarRingSpec {
    pub fn new(units: Vec<UnitSym>, nilpotents: Vec<NilSym>, nil_cap: u32) -> Self {
        ScalarRingSpec {
            units,
            nilpotents,
            nil_cap,
        }
    }

    pub fn units(&self) -> &[UnitSym] {
        &self.units
    }

    pub fn nilpotents(&self) -> &[NilSym] {
        &self.nilpotents
    }

    pub fn nil_cap(&self) -> u32 {
        self.nil_cap
    }

    pub fn scalar_from_int(&self, n: i64) -> Scalar {
        Scalar::from_int(n).with_cap(self.nil_cap)
    }

    pub fn unit(&self, sym: UnitSym, exp: i64) -> Scalar {
        debug_assert!(self.units.contains(&sym));
        Scalar::unit(sym, exp).with_cap(self.nil_cap)
    }

    pub fn nil(&self, sym: NilSym) -> Scalar {
        debug_assert!(self.nilpotents.contains(&sym));
        Scalar::nil(sym).with_cap(self.nil_cap)
    }
}

/// Render a unit-exponent list on its own (used by failure records).
pub fn render_units(units: &[(UnitSym, i64)]) -> String {
    let mono = ScalarMono::from_units(units.to_owned());
    format!("{mono}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(exp: i64) -> Scalar {
        Scalar::unit(UnitSym::V, exp)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = (v(2) + Scalar::one()) * (v(2) - Scalar::one());
        let rhs = v(4) - Scalar::one();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invert_unit_monomial() {
        let zv3 = Scalar::unit(UnitSym::Z, 1) * v(3);
        let inv = zv3.invert_monomial().unwrap();
        assert_eq!(inv, Scalar::unit(UnitSym::Z, -1) * v(-3));
        assert!((zv3 * inv).is_one());
    }

    #[test]
    fn invert_rejects_sums_and_nilpotents() {
        let sum = v(1) + Scalar::one();
        assert_eq!(sum.invert_monomial(), Err(ScalarError::NotInvertible));
        let nil = Scalar::nil(NilSym::B(3));
        assert_eq!(nil.invert_monomial(), Err(ScalarError::NotInvertible));
    }

    #[test]
    fn nilpotent_square_dies_at_cap_one() {
        let b3 = Scalar::nil(NilSym::B(3)).with_cap(1);
        assert!((&b3 * &b3).is_zero());
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert!(ExpForm::zero().exp().unwrap().is_one());
    }

    #[test]
    fn exp_of_unit_logs() {
        let p = ExpForm::new(vec![(UnitSym::Z, 1), (UnitSym::V, 2)], Scalar::zero()).unwrap();
        assert_eq!(p.exp().unwrap(), Scalar::unit(UnitSym::Z, 1) * v(2));
    }

    #[test]
    fn exp_of_b3_over_24_cap_two() {
        // exp(b3/24) at cap 2 = 1 + b3/24 + b3^2/1152
        let arg = Scalar::nil(NilSym::B(3)).with_cap(2) * Scalar::from_fraction(1, 24);
        let p = ExpForm::new(vec![], arg).unwrap();
        let expected = Scalar::one()
            + Scalar::nil(NilSym::B(3)) * Scalar::from_fraction(1, 24)
            + Scalar::term(
                BigRational::new(BigInt::from(1), BigInt::from(1152)),
                ScalarMono::nil(NilSym::B(3), 2),
            );
        assert_eq!(p.exp().unwrap(), expected);
    }

    #[test]
    fn exp_rejects_mixed_terms() {
        let mixed = v(1) * Scalar::nil(NilSym::B(3));
        assert!(ExpForm::new(vec![], mixed).is_err());
        let constant = Scalar::from_int(2);
        assert!(ExpForm::new(vec![], constant).is_err());
    }

    #[test]
    fn coefficient_extraction() {
        // z*v^2 + 2*v^2: coefficient of (z^0, v^2) is 2
        let s = Scalar::unit(UnitSym::Z, 1) * v(2) + Scalar::from_int(2) * v(2);
        let c = s.coefficient_of(&[(UnitSym::V, 2)]);
        assert_eq!(c, Scalar::from_int(2));
        assert!(Scalar::zero().coefficient_of(&[(UnitSym::Z, 5)]).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let s = Scalar::unit(UnitSym::U, 5) * Scalar::from_fraction(-3, 2) + Scalar::one();
        assert_eq!(format!("{s}"), "1 - 3/2*u^(5/2)");
    }

    #[test]
    fn truncate_unit_above_drops_high_orders() {
        let s = v(3) + v(7);
        assert_eq!(s.truncate_unit_above(UnitSym::V, 5), v(3));
    }

    #[test]
    fn invert_exp_like_handles_nilpotent_tails() {
        let b3 = Scalar::nil(NilSym::B(3)).with_cap(3);
        let s = (Scalar::one() + &b3) * Scalar::unit(UnitSym::Z, 2);
        let inv = s.invert_exp_like().unwrap();
        assert!((s * inv).is_one());
        // several unit monomials stay non-invertible
        assert!((v(1) + Scalar::one()).invert_exp_like().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn arb_term()(
                num in -6i64..=6,
                den in 1i64..=4,
                z in -2i64..=2,
                vexp in -2i64..=2,
                b3 in 0u32..=2,
                b4 in 0u32..=1,
            ) -> Scalar {
                Scalar::term(
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                    ScalarMono::from_parts(
                        vec![(UnitSym::Z, z), (UnitSym::V, vexp)],
                        vec![(NilSym::B(3), b3), (NilSym::B(4), b4)],
                    ),
                )
            }
        }

        fn arb_scalar() -> impl Strategy<Value = Scalar> {
            proptest::collection::vec(arb_term(), 0..4)
                .prop_map(|terms| terms.into_iter().fold(Scalar::zero(), |acc, t| acc + t))
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &(-&a), Scalar::zero());
            }

            #[test]
            fn exponential_is_additive(
                c3 in -5i64..=5, c4 in -5i64..=5, d3 in -5i64..=5, d4 in -5i64..=5
            ) {
                let cap = 4;
                let nil = |k: u8, c: i64| {
                    Scalar::nil(NilSym::B(k)).with_cap(cap) * Scalar::from_fraction(c, 3)
                };
                let p = ExpForm::new(vec![(UnitSym::Z, 1)], nil(3, c3) + nil(4, c4)).unwrap();
                let q = ExpForm::new(vec![(UnitSym::V, -2)], nil(3, d3) + nil(4, d4)).unwrap();
                let lhs = p.add(&q).exp().unwrap();
                let rhs = p.exp().unwrap() * q.exp().unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn truncation_is_an_ideal(a in arb_scalar(), b in arb_scalar(), cap in 0u32..=3) {
                // capped arithmetic agrees with full arithmetic then truncation
                let capped = a.clone().with_cap(cap) * b.clone().with_cap(cap);
                let truncated = (a * b).with_cap(cap);
                prop_assert_eq!(capped, truncated);
            }
        }
    }
}
