//! Adams–Johnson parameters of `Sp_{2n}(ℝ)`, their packets, and the
//! holomorphic lowest-weight members.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::archrep::{exponents_of_factor, ArchConstituent, Sign};
use crate::params::{LocalizedParameter, SignCharacter};

/// `ρ_α ⊠ S_d`, remembering the global constituent it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AJBlock {
    pub alpha: u32,
    pub d: u32,
    pub source: usize,
}

/// The quadratic tail `sgn^δ ⊠ S_{d_0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AJTail {
    pub delta: u8,
    pub d0: u32,
    pub source: usize,
}

/// An Adams–Johnson parameter with blocks in strictly decreasing `α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AJParameter {
    pub blocks: Vec<AJBlock>,
    pub tail: AJTail,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum AJViolation {
    #[error("block rho{alpha} x S_{d}: alpha + d must be odd")]
    BlockParity { alpha: u32, d: u32 },
    #[error("tail S_{d0}: d0 must be odd")]
    EvenTail { d0: u32 },
    #[error("expected exactly one quadratic factor, found {count}")]
    TailCount { count: usize },
    #[error("tail sgn^{delta}: delta must match sum of d_i = {sum_d} mod 2")]
    TailSign { delta: u8, sum_d: u32 },
    #[error("alpha = {alpha} repeated; parameter is not multiplicity free")]
    RepeatedAlpha { alpha: u32 },
    #[error("gap between blocks {i} and {}: {gap} < {needed}", .i + 1)]
    Gap { i: usize, gap: u32, needed: u32 },
    #[error("last block rho{alpha}: alpha < d_t + d0 = {needed}")]
    TailGap { alpha: u32, needed: u32 },
    #[error("block with d = 0")]
    ZeroD,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AJError {
    #[error("weight {k} has k_n <= n = {n}; outside the discrete lowest-weight regime")]
    OutsideRegime { k: WeightVector, n: usize },
    #[error("weight {k} has length {got}, parameter has rank {n}")]
    WeightLength { k: WeightVector, got: usize, n: usize },
    #[error("member signature does not match the blocks")]
    BadMember,
    #[error("internal parity error at block {block}")]
    Parity { block: usize },
}

impl AJError {
    pub fn code(&self) -> &'static str {
        match self {
            AJError::OutsideRegime { .. } => "outside_regime",
            AJError::WeightLength { .. } => "weight_length",
            AJError::BadMember => "bad_member",
            AJError::Parity { .. } => "parity",
        }
    }
}

/// `Σ_ψ ∋ w = ((p_1,q_1), …, (p_t,q_t))`, with `p_i + q_i = d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AJMember {
    pub signature: Vec<(u32, u32)>,
}

/// Holomorphic weight `(k_1 ≥ ⋯ ≥ k_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("weight {0:?} is not weakly decreasing")]
pub struct NotDecreasing(pub Vec<i64>);

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = NotDecreasing;
    fn try_from(k: Vec<i64>) -> Result<Self, NotDecreasing> {
        WeightVector::new(k)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(k: WeightVector) -> Vec<i64> {
        k.0
    }
}

impl WeightVector {
    pub fn new(k: Vec<i64>) -> Result<Self, NotDecreasing> {
        if k.windows(2).all(|w| w[0] >= w[1]) {
            Ok(WeightVector(k))
        } else {
            Err(NotDecreasing(k))
        }
    }

    pub fn scalar(k: i64, n: usize) -> Self {
        WeightVector(vec![k; n])
    }

    pub fn empty() -> Self {
        WeightVector(Vec::new())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `k_n > n`, vacuous for `n = 0`.
    pub fn is_discrete(&self) -> bool {
        self.0.last().is_none_or(|&k| k > self.0.len() as i64)
    }

    /// `(k_1 - 1, …, k_n - n)`.
    pub fn shifted(&self) -> Vec<i64> {
        self.0.iter().enumerate().map(|(i, k)| k - (i as i64 + 1)).collect()
    }

    /// Inverse of [`WeightVector::shifted`]; sorts its input decreasingly.
    pub fn from_shifted(mut x: Vec<i64>) -> Self {
        x.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(x.iter().enumerate().map(|(i, v)| v + i as i64 + 1).collect())
    }

    pub fn is_scalar(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(k_1-1, …, k_n-n, 0, -(k_n-n), …, -(k_1-1))`, decreasing.
pub fn infinitesimal_character(k: &WeightVector) -> Vec<i64> {
    let pos = k.shifted();
    let mut out = pos.clone();
    out.push(0);
    out.extend(pos.iter().rev().map(|x| -x));
    out
}

/// Scalar weights outside the discrete regime for which the
/// multiplicity-at-most-one statement fails: `n` even and
/// `{k1, k2} = {n/2, n/2 + 1}`.
pub fn smo_exception(n: u32, k1: u32, k2: u32) -> bool {
    n.is_multiple_of(2) && {
        let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
        lo == n / 2 && hi == n / 2 + 1
    }
}

/// The result of testing `L(V_k) ∈ Π_ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LowestWeight {
    /// Character of `L(V_k)` on the blocks followed by the tail.
    Member { character: SignCharacter },
    /// `d_0 ≠ 1`.
    TailNotTrivialString { d0: u32 },
    /// The block exponents differ from `{k_i - i}`.
    ExponentMismatch { expected: Vec<i64>, found: Vec<i64> },
}

impl LowestWeight {
    pub fn character(&self) -> Option<&SignCharacter> {
        match self {
            LowestWeight::Member { character } => Some(character),
            _ => None,
        }
    }
}

/// Checks the Adams–Johnson shape of a localized parameter and returns it in
/// canonical order.
pub fn is_adams_johnson(phi: &LocalizedParameter) -> Result<AJParameter, Vec<AJViolation>> {
    let mut blocks = Vec::new();
    let mut tails = Vec::new();
    for f in &phi.factors {
        match f.rep {
            ArchConstituent::TwoDim(alpha) => blocks.push(AJBlock { alpha, d: f.d, source: f.source }),
            q => tails.push(AJTail {
                delta: q.sign_power().unwrap_or(0),
                d0: f.d,
                source: f.source,
            }),
        }
    }
    if tails.len() != 1 {
        return Err(vec![AJViolation::TailCount { count: tails.len() }]);
    }
    AJParameter::from_parts(blocks, tails[0])
}

impl AJParameter {
    /// Builds a parameter from `(α_i, d_i)` and `(δ, d_0)`, numbering the
    /// sources in canonical order with the tail last.
    pub fn new(blocks: &[(u32, u32)], tail: (u8, u32)) -> Result<Self, Vec<AJViolation>> {
        let mut sorted = blocks.to_vec();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let t = sorted.len();
        AJParameter::from_parts(
            sorted
                .into_iter()
                .enumerate()
                .map(|(source, (alpha, d))| AJBlock { alpha, d, source })
                .collect(),
            AJTail { delta: tail.0, d0: tail.1, source: t },
        )
    }

    fn from_parts(mut blocks: Vec<AJBlock>, tail: AJTail) -> Result<Self, Vec<AJViolation>> {
        blocks.sort_by(|a, b| b.alpha.cmp(&a.alpha));
        let mut v = Vec::new();
        if tail.d0 == 0 || blocks.iter().any(|b| b.d == 0) {
            v.push(AJViolation::ZeroD);
        }
        for b in &blocks {
            if (b.alpha + b.d) % 2 == 0 {
                v.push(AJViolation::BlockParity { alpha: b.alpha, d: b.d });
            }
        }
        if tail.d0.is_multiple_of(2) {
            v.push(AJViolation::EvenTail { d0: tail.d0 });
        }
        let sum_d: u32 = blocks.iter().map(|b| b.d).sum();
        if tail.delta as u32 % 2 != sum_d % 2 {
            v.push(AJViolation::TailSign { delta: tail.delta, sum_d });
        }
        for (i, w) in blocks.windows(2).enumerate() {
            if w[0].alpha == w[1].alpha {
                v.push(AJViolation::RepeatedAlpha { alpha: w[0].alpha });
            } else if w[0].alpha - w[1].alpha < w[0].d + w[1].d {
                v.push(AJViolation::Gap {
                    i,
                    gap: w[0].alpha - w[1].alpha,
                    needed: w[0].d + w[1].d,
                });
            }
        }
        if let Some(last) = blocks.last() {
            if last.alpha < last.d + tail.d0 {
                v.push(AJViolation::TailGap { alpha: last.alpha, needed: last.d + tail.d0 });
            }
        }
        if v.is_empty() {
            Ok(AJParameter { blocks, tail })
        } else {
            Err(v)
        }
    }

    /// `n` with `2 Σ d_i + d_0 = 2n + 1`.
    pub fn n(&self) -> usize {
        (2 * self.blocks.iter().map(|b| b.d as usize).sum::<usize>() + self.tail.d0 as usize - 1) / 2
    }

    /// `δ_i = 0` for even `d_i`, else `(-1)^{Σ_{j<i} d_j}`.
    pub fn delta_i(&self, i: usize) -> i8 {
        if self.blocks[i].d.is_multiple_of(2) {
            0
        } else {
            Sign::from_parity(self.blocks[..i].iter().map(|b| b.d as i64).sum()).to_i8()
        }
    }

    /// `Π 𝒫_2(d_i)`, in lexicographic order of `p`.
    pub fn packet_members(&self) -> Vec<AJMember> {
        let mut out = vec![AJMember { signature: Vec::new() }];
        for b in &self.blocks {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..=b.d).rev().map(move |p| {
                        let mut s = w.signature.clone();
                        s.push((p, b.d - p));
                        AJMember { signature: s }
                    })
                })
                .collect();
        }
        out
    }

    pub fn packet_size(&self) -> u64 {
        self.blocks.iter().map(|b| b.d as u64 + 1).product()
    }

    /// `⟨α_i, π_w⟩ = (-1)^{(p_i - q_i - δ_i)/2}` on each block; the tail value
    /// is fixed by `⟨z, π_w⟩ = 1`.
    pub fn member_character(&self, w: &AJMember) -> Result<SignCharacter, AJError> {
        if w.signature.len() != self.blocks.len()
            || w.signature.iter().zip(&self.blocks).any(|((p, q), b)| p + q != b.d)
        {
            return Err(AJError::BadMember);
        }
        let mut values = Vec::with_capacity(self.blocks.len() + 1);
        for (i, &(p, q)) in w.signature.iter().enumerate() {
            let num = p as i64 - q as i64 - self.delta_i(i) as i64;
            if num.rem_euclid(2) != 0 {
                return Err(AJError::Parity { block: i });
            }
            values.push(Sign::from_parity(num / 2));
        }
        values.push(values.iter().copied().product());
        Ok(SignCharacter { values })
    }

    /// The member realizing `L(V_k)`: the compact signature `(d_i, 0)`.
    pub fn holomorphic_member(&self) -> AJMember {
        AJMember {
            signature: self.blocks.iter().map(|b| (b.d, 0)).collect(),
        }
    }

    /// `{(α_i+d_i-1)/2, …, (α_i-d_i+1)/2}` over all blocks, decreasing.
    pub fn positive_exponents(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .blocks
            .iter()
            .flat_map(|b| exponents_of_factor(ArchConstituent::TwoDim(b.alpha), b.d))
            .filter(|e| e.0 > 0)
            .map(|e| e.0 / 2)
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Membership of `L(V_k)` in the packet, with its character
    /// `(-1)^{(d_i - δ_i)/2}` on success.
    pub fn lowest_weight_test(&self, k: &WeightVector) -> Result<LowestWeight, AJError> {
        let n = self.n();
        if k.n() != n {
            return Err(AJError::WeightLength { k: k.clone(), got: k.n(), n });
        }
        if !k.is_discrete() {
            return Err(AJError::OutsideRegime { k: k.clone(), n });
        }
        if self.tail.d0 != 1 {
            return Ok(LowestWeight::TailNotTrivialString { d0: self.tail.d0 });
        }
        let found = self.positive_exponents();
        let expected = k.shifted();
        if found != expected {
            return Ok(LowestWeight::ExponentMismatch { expected, found });
        }
        let mut values: Vec<Sign> = (0..self.blocks.len())
            .map(|i| Sign::from_parity((self.blocks[i].d as i64 - self.delta_i(i) as i64) / 2))
            .collect();
        values.push(values.iter().copied().product());
        Ok(LowestWeight::Member {
            character: SignCharacter { values },
        })
    }

    /// The weight `k` whose `L(V_k)` lies in the packet, if `d_0 = 1`.
    pub fn lowest_weight(&self) -> Option<WeightVector> {
        (self.tail.d0 == 1).then(|| WeightVector::from_shifted(self.positive_exponents()))
    }
}

impl fmt::Display for AJParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "rho{}⊠S_{} ⊕ ", b.alpha, b.d)?;
        }
        let q = if self.tail.delta == 0 { "1" } else { "sgn" };
        write!(f, "{q}⊠S_{}", self.tail.d0)
    }
}
