//! Global A-parameters `ψ = τ_1[d_1] ⊞ ⋯ ⊞ τ_r[d_r]` at level one.
//!
//! Rankin–Selberg root numbers are computed at the real place only: every
//! finite local factor is unramified, so it contributes nothing.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::archrep::{
    det_at_minus_one, root_number_pair, ArchConstituent, ArchRep, FourthRootUnit, SelfDualType, Sign,
};
use crate::lfunctions::{EigenformData, LocalShape};
use crate::sl2comb::{adjoint_cross_terms, AdjointSummand};

/// A level-one self-dual cuspidal representation of `GL_m`, described
/// symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalDatum {
    pub name: String,
    pub m: u32,
    #[serde(rename = "type")]
    pub kind: SelfDualType,
    pub arch: ArchRep,
    /// How the unramified Satake parameter is read off `form`.
    #[serde(default, skip_serializing_if = "LocalShape::is_opaque")]
    pub local: LocalShape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<EigenformData>,
}

impl CuspidalDatum {
    pub fn new(name: impl Into<String>, kind: SelfDualType, arch: ArchRep) -> Self {
        CuspidalDatum {
            name: name.into(),
            m: arch.dim(),
            kind,
            arch,
            local: LocalShape::Opaque,
            form: None,
        }
    }

    /// The trivial character of `GL_1`.
    pub fn trivial() -> Self {
        let mut t = CuspidalDatum::new("1", SelfDualType::Orthogonal, ArchRep::trivial());
        t.local = LocalShape::Trivial;
        t
    }

    /// `τ_f` for an elliptic eigenform of weight `2k`; `ρ_{2k-1}` at infinity.
    pub fn elliptic(name: impl Into<String>, weight: u32) -> Self {
        let mut t = CuspidalDatum::new(name, SelfDualType::Symplectic, ArchRep::rho(weight as i64 - 1));
        t.local = LocalShape::Standard;
        t
    }

    /// `Sym² τ_g` for an elliptic eigenform of weight `k`: `ρ_{2k-2} ⊕ sgn`.
    pub fn sym2_elliptic(name: impl Into<String>, weight: u32) -> Self {
        let arch = ArchRep::rho(2 * weight as i64 - 2).plus(&ArchRep::sign());
        let mut t = CuspidalDatum::new(name, SelfDualType::Orthogonal, arch);
        t.local = LocalShape::Sym2;
        t
    }

    /// The `GL_4` transfer of a degree-two Siegel eigenform of weight
    /// `det^k Sym(j)`: `ρ_{j+2k-3} ⊕ ρ_{j+1}`.
    pub fn siegel2_spin(name: impl Into<String>, k: u32, j: u32) -> Self {
        let arch = ArchRep::rho(j as i64 + 2 * k as i64 - 3).plus(&ArchRep::rho(j as i64 + 1));
        let mut t = CuspidalDatum::new(name, SelfDualType::Symplectic, arch);
        t.local = LocalShape::Standard;
        t
    }

    pub fn with_form(mut self, form: EigenformData) -> Self {
        self.form = Some(form);
        self
    }

    /// Internal coherence of one datum.
    pub fn check(&self, index: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.arch.dim() != self.m {
            out.push(Violation::ArchDimension {
                index,
                m: self.m,
                arch_dim: self.arch.dim(),
            });
        }
        if !self.arch.admits(self.kind) {
            out.push(Violation::ArchType { index, kind: self.kind });
        }
        out
    }
}

/// One summand `τ[d]` of a global parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub datum: CuspidalDatum,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalAParameter {
    pub constituents: Vec<Constituent>,
}

/// A failed condition in the definition of a discrete global A-parameter.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Violation {
    #[error("parameter has no constituents")]
    Empty,
    #[error("constituent {index}: d must be positive")]
    ZeroD { index: usize },
    #[error("constituent {index}: archimedean dimension {arch_dim} differs from m = {m}")]
    ArchDimension { index: usize, m: u32, arch_dim: u32 },
    #[error("constituent {index}: archimedean parameter is not {kind:?}")]
    ArchType { index: usize, kind: SelfDualType },
    #[error("total dimension {total} = sum m_i d_i is not odd")]
    EvenDimension { total: u64 },
    #[error("constituent {index}: odd d requires orthogonal")]
    OddNeedsOrthogonal { index: usize },
    #[error("constituent {index}: even d requires symplectic")]
    EvenNeedsSymplectic { index: usize },
    #[error("distinctness: constituents {first} and {second} repeat the same tau[d]")]
    Duplicate { first: usize, second: usize },
    #[error("central character: product of det(phi_i)(-1)^d_i is -1")]
    CentralCharacter,
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::Empty => "empty",
            Violation::ZeroD { .. } => "zero_d",
            Violation::ArchDimension { .. } => "arch_dimension",
            Violation::ArchType { .. } => "arch_type",
            Violation::EvenDimension { .. } => "even_dimension",
            Violation::OddNeedsOrthogonal { .. } => "odd_needs_orthogonal",
            Violation::EvenNeedsSymplectic { .. } => "even_needs_symplectic",
            Violation::Duplicate { .. } => "duplicate",
            Violation::CentralCharacter => "central_character",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsilonError {
    #[error("invalid parameter: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("parameter not globally coherent: eps({i} x {j}) = {value} is not a sign")]
    NotCoherent { i: usize, j: usize, value: FourthRootUnit },
    #[error("parameter not automorphically realizable: eps({i} x {j}) = -1 with d_{i} = d_{j} mod 2")]
    NotRealizable { i: usize, j: usize },
    #[error("element has {got} coordinates, component group has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
}

impl EpsilonError {
    pub fn code(&self) -> &'static str {
        match self {
            EpsilonError::Invalid(_) => "invalid_parameter",
            EpsilonError::NotCoherent { .. } => "not_coherent",
            EpsilonError::NotRealizable { .. } => "not_realizable",
            EpsilonError::RankMismatch { .. } => "rank_mismatch",
        }
    }
}

impl GlobalAParameter {
    pub fn new(constituents: Vec<(CuspidalDatum, u32)>) -> Self {
        GlobalAParameter {
            constituents: constituents
                .into_iter()
                .map(|(datum, d)| Constituent { datum, d })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.constituents.len()
    }

    /// `Σ m_i d_i`.
    pub fn total_dim(&self) -> u64 {
        self.constituents
            .iter()
            .map(|c| c.datum.m as u64 * c.d as u64)
            .sum()
    }

    /// `n` with `Σ m_i d_i = 2n+1`.
    pub fn n(&self) -> u64 {
        self.total_dim().saturating_sub(1) / 2
    }

    /// `τ[d] ⊞ self`, with the new constituent first.
    pub fn prepend(&self, datum: CuspidalDatum, d: u32) -> GlobalAParameter {
        let mut constituents = vec![Constituent { datum, d }];
        constituents.extend(self.constituents.iter().cloned());
        GlobalAParameter { constituents }
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.constituents.is_empty() {
            out.push(Violation::Empty);
        }
        for (i, c) in self.constituents.iter().enumerate() {
            if c.d == 0 {
                out.push(Violation::ZeroD { index: i });
            }
            out.extend(c.datum.check(i));
            if c.d % 2 == 1 && c.datum.kind != SelfDualType::Orthogonal {
                out.push(Violation::OddNeedsOrthogonal { index: i });
            }
            if c.d != 0 && c.d % 2 == 0 && c.datum.kind != SelfDualType::Symplectic {
                out.push(Violation::EvenNeedsSymplectic { index: i });
            }
        }
        let total = self.total_dim();
        if total.is_multiple_of(2) {
            out.push(Violation::EvenDimension { total });
        }
        for i in 0..self.constituents.len() {
            for j in (i + 1)..self.constituents.len() {
                let (a, b) = (&self.constituents[i], &self.constituents[j]);
                if a.d == b.d && a.datum.name == b.datum.name {
                    out.push(Violation::Duplicate { first: i, second: j });
                }
            }
        }
        let central: Sign = self
            .constituents
            .iter()
            .map(|c| det_at_minus_one(&c.datum.arch).pow(c.d as u64))
            .product();
        if central == Sign::Minus {
            out.push(Violation::CentralCharacter);
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn component_group(&self) -> ComponentGroup {
        ComponentGroup::new(self.rank())
    }

    /// `ε(τ_i × τ_j)` for every pair, as the archimedean root number.
    ///
    /// Fails when a value is not a sign, or when it is `-1` for a pair with
    /// `d_i ≡ d_j mod 2`.
    pub fn pairwise_root_numbers(&self) -> Result<Vec<Vec<Sign>>, EpsilonError> {
        let r = self.rank();
        let mut table = vec![vec![Sign::Plus; r]; r];
        for i in 0..r {
            for j in (i + 1)..r {
                let (a, b) = (&self.constituents[i], &self.constituents[j]);
                let value = root_number_pair(&a.datum.arch, &b.datum.arch);
                let s = value.as_sign().ok_or(EpsilonError::NotCoherent { i, j, value })?;
                if s == Sign::Minus && a.d % 2 == b.d % 2 {
                    return Err(EpsilonError::NotRealizable { i, j });
                }
                table[i][j] = s;
                table[j][i] = s;
            }
        }
        Ok(table)
    }

    /// Arthur's character on the basis `α_{τ_i[d_i]}`:
    /// `ε_ψ(α_i) = Π_{j≠i} ε(τ_i × τ_j)^{min(d_i, d_j)}`.
    pub fn epsilon_direct(&self) -> Result<SignCharacter, EpsilonError> {
        self.validate().map_err(EpsilonError::Invalid)?;
        let table = self.pairwise_root_numbers()?;
        let values = (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .filter(|&j| j != i)
                    .map(|j| {
                        let e = self.constituents[i].d.min(self.constituents[j].d);
                        table[i][j].pow(e as u64)
                    })
                    .product()
            })
            .collect();
        Ok(SignCharacter { values })
    }

    /// `ε_ψ(s_I)` from the `(-1)`-eigenspace of `Ad(s_I)` on `𝔰𝔬_{2n+1}`.
    ///
    /// Only cross blocks `(φ_i ⊗ φ_j) ⊠ S_{d_α}` with `d_α` even and exactly
    /// one of `i, j` in `I` contribute. A subset with odd `Σ_{i∈I} m_i d_i`
    /// does not define an element of `SO_{2n+1}`; it is replaced by its
    /// complement, using `ε_ψ(-1_{2n+1}) = 1`.
    pub fn epsilon_adjoint(&self, element: ComponentElement) -> Result<Sign, EpsilonError> {
        self.validate().map_err(EpsilonError::Invalid)?;
        let r = self.rank();
        let table = self.pairwise_root_numbers()?;
        let mut subset = element.0;
        let odd: u64 = (0..r)
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| self.constituents[i].datum.m as u64 * self.constituents[i].d as u64)
            .sum();
        if odd % 2 == 1 {
            subset = !subset & ComponentGroup::new(r).central().0;
        }
        let inside = |i: usize| subset >> i & 1 == 1;
        Ok(adjoint_cross_terms(self)
            .into_iter()
            .filter_map(|s| match s {
                AdjointSummand::Cross { i, j, d_alpha, .. }
                    if d_alpha % 2 == 0 && inside(i) != inside(j) =>
                {
                    Some(table[i][j])
                }
                _ => None,
            })
            .product())
    }

    /// The same character evaluated on every element by the adjoint route.
    pub fn epsilon_adjoint_table(&self) -> Result<Vec<(ComponentElement, Sign)>, EpsilonError> {
        self.component_group()
            .elements()
            .map(|e| self.epsilon_adjoint(e).map(|s| (e, s)))
            .collect()
    }

    /// Localization at the real place:
    /// `ψ_∞ = ⊕_i (φ_{i,∞} ⊠ S_{d_i})`, flattened into irreducible factors.
    pub fn localize_infinity(&self) -> LocalizedParameter {
        let factors = self
            .constituents
            .iter()
            .enumerate()
            .flat_map(|(source, c)| {
                c.datum.arch.constituents().iter().map(move |&rep| ArchFactor {
                    rep,
                    d: c.d,
                    source,
                })
            })
            .collect();
        LocalizedParameter {
            factors,
            rank: self.rank(),
        }
    }
}

impl fmt::Display for GlobalAParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .constituents
            .iter()
            .map(|c| format!("{}[{}]", c.datum.name, c.d))
            .collect();
        f.write_str(&parts.join(" ⊞ "))
    }
}

/// An element of `A_ψ ≅ (ℤ/2)^r`, bit `i` being the coefficient of `α_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentElement(pub u64);

impl ComponentElement {
    pub fn from_subset(indices: impl IntoIterator<Item = usize>) -> Self {
        ComponentElement(indices.into_iter().fold(0, |acc, i| acc ^ (1 << i)))
    }

    pub fn generator(i: usize) -> Self {
        ComponentElement(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn subset(self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|&i| self.contains(i)).collect()
    }
}

impl std::ops::Add for ComponentElement {
    type Output = ComponentElement;
    fn add(self, rhs: ComponentElement) -> ComponentElement {
        ComponentElement(self.0 ^ rhs.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentGroup {
    rank: usize,
}

impl ComponentGroup {
    pub fn new(rank: usize) -> Self {
        assert!(rank < 64, "component group rank {rank} too large");
        ComponentGroup { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u64 {
        1 << self.rank
    }

    pub fn generators(&self) -> impl Iterator<Item = ComponentElement> {
        (0..self.rank).map(ComponentElement::generator)
    }

    /// `z_ψ`, the sum of all generators.
    pub fn central(&self) -> ComponentElement {
        ComponentElement((1u64 << self.rank) - 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ComponentElement> {
        (0..self.order()).map(ComponentElement)
    }
}

/// A character `A_ψ → {±1}` given by its values on the basis generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignCharacter {
    pub values: Vec<Sign>,
}

impl SignCharacter {
    pub fn trivial(rank: usize) -> Self {
        SignCharacter {
            values: vec![Sign::Plus; rank],
        }
    }

    pub fn eval(&self, e: ComponentElement) -> Sign {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| e.contains(*i))
            .map(|(_, s)| *s)
            .product()
    }

    pub fn at_central(&self) -> Sign {
        self.values.iter().copied().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|s| *s == Sign::Plus)
    }
}

/// One irreducible factor `c ⊠ S_d` of a localized parameter, remembering
/// the global constituent it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchFactor {
    #[serde(with = "constituent_str")]
    pub rep: ArchConstituent,
    pub d: u32,
    pub source: usize,
}

mod constituent_str {
    use super::ArchConstituent;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &ArchConstituent, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(c)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ArchConstituent, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `ψ_∞` as a list of factors together with the localization map
/// `α_{τ_i[d_i]} ↦ α_{φ_{i,∞} ⊠ S_{d_i}}` (via [`ArchFactor::source`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedParameter {
    pub factors: Vec<ArchFactor>,
    /// Rank of the global component group the factors came from.
    pub rank: usize,
}

impl LocalizedParameter {
    pub fn from_factors(factors: Vec<(ArchConstituent, u32)>) -> Self {
        let rank = factors.len();
        LocalizedParameter {
            factors: factors
                .into_iter()
                .enumerate()
                .map(|(source, (rep, d))| ArchFactor { rep, d, source })
                .collect(),
            rank,
        }
    }

    pub fn dim(&self) -> u64 {
        self.factors.iter().map(|f| f.rep.dim() as u64 * f.d as u64).sum()
    }

    pub fn factors_of(&self, source: usize) -> impl Iterator<Item = &ArchFactor> {
        self.factors.iter().filter(move |f| f.source == source)
    }
}

impl fmt::Display for LocalizedParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}⊠S_{}", x.rep, x.d))
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}
