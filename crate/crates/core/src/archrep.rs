//! Archimedean Weil-group representations built from `ρ_α`, the trivial
//! character and `sgn`, together with their closed-form root numbers.
//!
//! Every constituent is self-dual, so an [`ArchRep`] is just a multiset of
//! [`ArchConstituent`]s. `ρ_0` is never stored: it splits as `1 ⊕ sgn`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArchError {
    #[error("rho_0 is not an irreducible two-dimensional constituent; decompose it as 1 + sgn")]
    ZeroAlpha,
    #[error("cannot parse archimedean constituent `{0}` (expected `rhoN`, `1` or `sgn`)")]
    Parse(String),
    #[error("root number {0} is not a sign")]
    NotReal(FourthRootUnit),
}

/// A global or local sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e`, with `e` allowed to be negative.
    pub fn from_parity(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn pow(self, e: u64) -> Self {
        if self == Sign::Minus && e % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("expected 1 or -1, got {v}")))
    }
}

/// `√-1^e` for `e ∈ {0,1,2,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FourthRootUnit(u8);

impl FourthRootUnit {
    pub const ONE: FourthRootUnit = FourthRootUnit(0);

    pub fn from_exponent(e: i64) -> Self {
        FourthRootUnit(e.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn from_sign(s: Sign) -> Self {
        match s {
            Sign::Plus => FourthRootUnit(0),
            Sign::Minus => FourthRootUnit(2),
        }
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn as_sign(self) -> Option<Sign> {
        match self.0 {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Like [`as_sign`](Self::as_sign) but fails loudly on `±√-1`.
    pub fn expect_sign(self) -> Result<Sign, ArchError> {
        self.as_sign().ok_or(ArchError::NotReal(self))
    }

    pub fn pow(self, e: u64) -> Self {
        FourthRootUnit(((self.0 as u64 * (e % 4)) % 4) as u8)
    }
}

impl Mul for FourthRootUnit {
    type Output = FourthRootUnit;
    fn mul(self, rhs: FourthRootUnit) -> FourthRootUnit {
        FourthRootUnit((self.0 + rhs.0) % 4)
    }
}

impl std::iter::Product for FourthRootUnit {
    fn product<I: Iterator<Item = FourthRootUnit>>(iter: I) -> FourthRootUnit {
        iter.fold(FourthRootUnit::ONE, |a, b| a * b)
    }
}

impl fmt::Display for FourthRootUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfDualType {
    Orthogonal,
    Symplectic,
}

/// An irreducible self-dual representation of `W_ℝ`.
///
/// `TwoDim(α)` is `ρ_α` with `α ≥ 1`; use [`ArchRep::rho`] to build one from
/// an arbitrary integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArchConstituent {
    TwoDim(u32),
    Trivial,
    Sign,
}

impl ArchConstituent {
    pub fn dim(self) -> u32 {
        match self {
            ArchConstituent::TwoDim(_) => 2,
            _ => 1,
        }
    }

    pub fn is_quadratic(self) -> bool {
        !matches!(self, ArchConstituent::TwoDim(_))
    }

    pub fn alpha(self) -> Option<u32> {
        match self {
            ArchConstituent::TwoDim(a) => Some(a),
            _ => None,
        }
    }

    /// `δ` with the constituent equal to `sgn^δ`, for quadratic characters.
    pub fn sign_power(self) -> Option<u8> {
        match self {
            ArchConstituent::Trivial => Some(0),
            ArchConstituent::Sign => Some(1),
            ArchConstituent::TwoDim(_) => None,
        }
    }
}

impl fmt::Display for ArchConstituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArchConstituent::TwoDim(a) => write!(f, "rho{a}"),
            ArchConstituent::Trivial => f.write_str("1"),
            ArchConstituent::Sign => f.write_str("sgn"),
        }
    }
}

impl FromStr for ArchConstituent {
    type Err = ArchError;
    fn from_str(s: &str) -> Result<Self, ArchError> {
        let t = s.trim();
        match t {
            "1" | "triv" | "trivial" => return Ok(ArchConstituent::Trivial),
            "sgn" | "sign" => return Ok(ArchConstituent::Sign),
            _ => {}
        }
        let digits = t
            .strip_prefix("rho_")
            .or_else(|| t.strip_prefix("rho"))
            .ok_or_else(|| ArchError::Parse(s.to_string()))?;
        let alpha: u32 = digits.parse().map_err(|_| ArchError::Parse(s.to_string()))?;
        if alpha == 0 {
            return Err(ArchError::ZeroAlpha);
        }
        Ok(ArchConstituent::TwoDim(alpha))
    }
}

/// A finite direct sum of [`ArchConstituent`]s, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArchRep {
    constituents: Vec<ArchConstituent>,
}

impl ArchRep {
    /// Builds a representation, rejecting `TwoDim(0)`.
    pub fn new(constituents: impl IntoIterator<Item = ArchConstituent>) -> Result<Self, ArchError> {
        let mut v: Vec<ArchConstituent> = constituents.into_iter().collect();
        if v.contains(&ArchConstituent::TwoDim(0)) {
            return Err(ArchError::ZeroAlpha);
        }
        v.sort();
        Ok(ArchRep { constituents: v })
    }

    /// `ρ_α` for any integer `α`, using `ρ_α ≅ ρ_{-α}` and `ρ_0 ≅ 1 ⊕ sgn`.
    pub fn rho(alpha: i64) -> Self {
        if alpha == 0 {
            ArchRep {
                constituents: vec![ArchConstituent::Trivial, ArchConstituent::Sign],
            }
        } else {
            ArchRep {
                constituents: vec![ArchConstituent::TwoDim(alpha.unsigned_abs() as u32)],
            }
        }
    }

    pub fn trivial() -> Self {
        ArchRep {
            constituents: vec![ArchConstituent::Trivial],
        }
    }

    pub fn sign() -> Self {
        ArchRep {
            constituents: vec![ArchConstituent::Sign],
        }
    }

    pub fn constituents(&self) -> &[ArchConstituent] {
        &self.constituents
    }

    pub fn is_empty(&self) -> bool {
        self.constituents.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.constituents.iter().map(|c| c.dim()).sum()
    }

    /// Direct sum.
    pub fn plus(&self, other: &ArchRep) -> ArchRep {
        let mut v = self.constituents.clone();
        v.extend_from_slice(&other.constituents);
        v.sort();
        ArchRep { constituents: v }
    }

    pub fn alphas(&self) -> impl Iterator<Item = u32> + '_ {
        self.constituents.iter().filter_map(|c| c.alpha())
    }

    /// Whether the sum carries an invariant form of the given type: each
    /// irreducible constituent of the opposite type must occur with even
    /// multiplicity.
    pub fn admits(&self, ty: SelfDualType) -> bool {
        let mut counts = std::collections::BTreeMap::new();
        for c in &self.constituents {
            *counts.entry(*c).or_insert(0u32) += 1;
        }
        counts
            .iter()
            .all(|(c, mult)| self_dual_type(*c) == ty || mult % 2 == 0)
    }
}

impl fmt::Display for ArchRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constituents.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.constituents.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for ArchRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<String> = self.constituents.iter().map(|c| c.to_string()).collect();
        names.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArchRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        let mut out = Vec::with_capacity(names.len());
        for n in &names {
            // "rho0" is accepted on input and split.
            if matches!(n.trim(), "rho0" | "rho_0") {
                out.push(ArchConstituent::Trivial);
                out.push(ArchConstituent::Sign);
                continue;
            }
            out.push(n.parse().map_err(serde::de::Error::custom)?);
        }
        ArchRep::new(out).map_err(serde::de::Error::custom)
    }
}

/// `ε(ρ_a ⊗ ρ_b)`: after sorting to `α ≥ β`, `-1` exactly when `α` is even
/// and `β` is odd.
pub fn root_number_rho_rho(a: u32, b: u32) -> Result<Sign, ArchError> {
    if a == 0 || b == 0 {
        return Err(ArchError::ZeroAlpha);
    }
    let (alpha, beta) = if a >= b { (a, b) } else { (b, a) };
    if alpha % 2 == 0 && beta % 2 == 1 {
        Ok(Sign::Minus)
    } else {
        Ok(Sign::Plus)
    }
}

/// `ε(ρ_a ⊗ sgn^δ) = √-1^{a+1}`, independent of `δ`.
pub fn root_number_rho_sgn(a: u32, _delta: u8) -> Result<FourthRootUnit, ArchError> {
    if a == 0 {
        return Err(ArchError::ZeroAlpha);
    }
    Ok(FourthRootUnit::from_exponent(a as i64 + 1))
}

fn root_number_atoms(x: ArchConstituent, y: ArchConstituent) -> FourthRootUnit {
    use ArchConstituent::*;
    match (x, y) {
        (TwoDim(a), TwoDim(b)) => {
            FourthRootUnit::from_sign(root_number_rho_rho(a, b).expect("stored alpha is positive"))
        }
        (TwoDim(a), q) | (q, TwoDim(a)) => {
            root_number_rho_sgn(a, q.sign_power().unwrap_or(0)).expect("stored alpha is positive")
        }
        // Pairs of quadratic characters are fixed to +1.
        _ => FourthRootUnit::ONE,
    }
}

/// `ε(A ⊗ B)`, the product of the atomic root numbers over all constituent
/// pairs.
pub fn root_number_pair(a: &ArchRep, b: &ArchRep) -> FourthRootUnit {
    a.constituents
        .iter()
        .flat_map(|x| b.constituents.iter().map(move |y| root_number_atoms(*x, *y)))
        .product()
}

pub fn self_dual_type(c: ArchConstituent) -> SelfDualType {
    match c {
        ArchConstituent::TwoDim(a) if a % 2 == 1 => SelfDualType::Symplectic,
        _ => SelfDualType::Orthogonal,
    }
}

/// `det(A)(-1)`, using `det ρ_α = sgn^{α+1}`.
pub fn det_at_minus_one(a: &ArchRep) -> Sign {
    a.constituents
        .iter()
        .map(|c| match c {
            ArchConstituent::TwoDim(alpha) => Sign::from_parity(*alpha as i64 + 1),
            ArchConstituent::Trivial => Sign::Plus,
            ArchConstituent::Sign => Sign::Minus,
        })
        .product()
}

/// An element of `½ℤ`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exponents of `(c ⊠ S_d)` restricted along `z ↦ (z, diag((z/z̄)^{1/2}, (z/z̄)^{-1/2}))`.
///
/// `ρ_α ⊠ S_d` gives `±(α+d-1-2l)/2` for `0 ≤ l < d`; a quadratic character
/// gives the single string `(d-1-2l)/2`.
pub fn exponents_of_factor(c: ArchConstituent, d: u32) -> Vec<HalfInt> {
    let d = d as i64;
    match c {
        ArchConstituent::TwoDim(alpha) => {
            let alpha = alpha as i64;
            let mut out = Vec::with_capacity(2 * d as usize);
            for l in 0..d {
                let e = alpha + d - 1 - 2 * l;
                out.push(HalfInt(e));
                out.push(HalfInt(-e));
            }
            out
        }
        _ => (0..d).map(|l| HalfInt(d - 1 - 2 * l)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rep(s: &[&str]) -> ArchRep {
        ArchRep::new(s.iter().map(|x| x.parse::<ArchConstituent>().unwrap())).unwrap()
    }

    fn sorted(mut v: Vec<HalfInt>) -> Vec<i64> {
        v.sort();
        v.into_iter().map(|h| h.doubled()).collect()
    }

    #[test]
    fn rho_rho_table() {
        assert_eq!(root_number_rho_rho(12, 11).unwrap(), Sign::Minus);
        assert_eq!(root_number_rho_rho(11, 12).unwrap(), Sign::Minus);
        assert_eq!(root_number_rho_rho(3, 3).unwrap(), Sign::Plus);
        assert_eq!(root_number_rho_rho(4, 2).unwrap(), Sign::Plus);
        assert_eq!(root_number_rho_rho(11, 4).unwrap(), Sign::Plus);
        assert_eq!(root_number_rho_rho(0, 4), Err(ArchError::ZeroAlpha));
        assert_eq!(root_number_rho_rho(3, 0), Err(ArchError::ZeroAlpha));
    }

    #[test]
    fn rho_sgn_values() {
        assert_eq!(root_number_rho_sgn(11, 1).unwrap().exponent(), 0);
        assert_eq!(root_number_rho_sgn(13, 0).unwrap().exponent(), 2);
        assert_eq!(root_number_rho_sgn(2, 0).unwrap().exponent(), 3);
        assert_eq!(root_number_rho_sgn(2, 0).unwrap(), root_number_rho_sgn(2, 1).unwrap());
        assert!(root_number_rho_sgn(0, 1).is_err());
    }

    #[test]
    fn pair_examples() {
        let a = rep(&["rho19"]);
        let b = rep(&["rho22", "sgn"]);
        // brute force: eps(rho22 x rho19) * eps(rho19 x sgn)
        let brute = FourthRootUnit::from_sign(Sign::Minus) * FourthRootUnit::from_exponent(20);
        assert_eq!(root_number_pair(&a, &b), brute);
        assert_eq!(root_number_pair(&a, &b).as_sign(), Some(Sign::Minus));
        assert_eq!(root_number_pair(&rep(&["rho11"]), &ArchRep::trivial()), FourthRootUnit::ONE);

        let single = root_number_pair(&rep(&["rho2"]), &rep(&["1"]));
        let doubled = root_number_pair(&rep(&["rho2", "rho2"]), &rep(&["1"]));
        assert_eq!(doubled, single.pow(2));
        assert_eq!(root_number_pair(&rep(&["sgn"]), &rep(&["1", "sgn"])), FourthRootUnit::ONE);
    }

    #[test]
    fn self_dual_types() {
        assert_eq!(self_dual_type(ArchConstituent::TwoDim(22)), SelfDualType::Orthogonal);
        assert_eq!(self_dual_type(ArchConstituent::TwoDim(11)), SelfDualType::Symplectic);
        assert_eq!(self_dual_type(ArchConstituent::Sign), SelfDualType::Orthogonal);
        assert_eq!(self_dual_type(ArchConstituent::Trivial), SelfDualType::Orthogonal);
    }

    #[test]
    fn admits_forms() {
        assert!(rep(&["rho22", "sgn"]).admits(SelfDualType::Orthogonal));
        assert!(!rep(&["rho22", "sgn"]).admits(SelfDualType::Symplectic));
        assert!(rep(&["rho19", "rho5"]).admits(SelfDualType::Symplectic));
        assert!(rep(&["rho19", "rho19"]).admits(SelfDualType::Orthogonal));
        assert!(!rep(&["rho19"]).admits(SelfDualType::Orthogonal));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_at_minus_one(&rep(&["rho22", "sgn"])), Sign::Plus);
        assert_eq!(det_at_minus_one(&rep(&["rho11"])), Sign::Plus);
        assert_eq!(det_at_minus_one(&rep(&["rho22"])), Sign::Minus);
    }

    #[test]
    fn exponents() {
        assert_eq!(
            sorted(exponents_of_factor(ArchConstituent::TwoDim(19), 2)),
            vec![-20, -18, 18, 20]
        );
        assert_eq!(sorted(exponents_of_factor(ArchConstituent::TwoDim(22), 1)), vec![-22, 22]);
        assert_eq!(sorted(exponents_of_factor(ArchConstituent::Sign, 3)), vec![-2, 0, 2]);
    }

    #[test]
    fn rho_zero_splits() {
        assert_eq!(ArchRep::rho(0), rep(&["1", "sgn"]));
        assert_eq!(ArchRep::rho(-7), rep(&["rho7"]));
        assert_eq!(ArchRep::new([ArchConstituent::TwoDim(0)]), Err(ArchError::ZeroAlpha));
        assert!("rho0".parse::<ArchConstituent>().is_err());
        let parsed: ArchRep = serde_json::from_str(r#"["rho0"]"#).unwrap();
        assert_eq!(parsed, rep(&["1", "sgn"]));
    }

    #[test]
    fn serde_round_trip() {
        let a = rep(&["rho22", "sgn"]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["rho22","sgn"]"#);
        assert_eq!(serde_json::from_str::<ArchRep>(&s).unwrap(), a);
    }

    #[test]
    fn rho_rho_exhaustive_properties() {
        for a in 1..=50u32 {
            for b in 1..=50u32 {
                let ab = root_number_rho_rho(a, b).unwrap();
                assert_eq!(ab, root_number_rho_rho(b, a).unwrap());
                if a % 2 == b % 2 {
                    assert_eq!(ab, Sign::Plus, "({a},{b})");
                }
            }
        }
    }

    fn constituent() -> impl Strategy<Value = ArchConstituent> {
        prop_oneof![
            (1u32..60).prop_map(ArchConstituent::TwoDim),
            Just(ArchConstituent::Trivial),
            Just(ArchConstituent::Sign),
        ]
    }

    proptest! {
        #[test]
        fn rho_sgn_real_iff_odd(a in 1u32..200, delta in 0u8..2) {
            let e = root_number_rho_sgn(a, delta).unwrap();
            prop_assert_eq!(e.is_real(), a % 2 == 1);
        }

        #[test]
        fn exponents_closed_under_negation(c in constituent(), d in 1u32..12) {
            let exps = exponents_of_factor(c, d);
            prop_assert_eq!(exps.len() as u32, c.dim() * d);
            if !c.is_quadratic() || d % 2 == 1 {
                let mut neg: Vec<HalfInt> = exps.iter().map(|h| h.neg()).collect();
                let mut orig = exps.clone();
                neg.sort();
                orig.sort();
                prop_assert_eq!(neg, orig);
            }
        }

        #[test]
        fn det_of_double_is_plus(cs in proptest::collection::vec(constituent(), 0..6)) {
            let a = ArchRep::new(cs).unwrap();
            prop_assert_eq!(det_at_minus_one(&a.plus(&a)), Sign::Plus);
            prop_assert_eq!(a.dim(), a.constituents().iter().map(|c| c.dim()).sum::<u32>());
        }
    }
}
