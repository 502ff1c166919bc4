//! `SL_2` strings: tensor products of the `S_d` and the block decomposition
//! of `Ad ∘ ψ` on `𝔰𝔬_{2n+1}`.

use serde::{Deserialize, Serialize};

use crate::params::GlobalAParameter;

/// `S_{d1} ⊗ S_{d2} = S_{d1+d2-1} ⊕ S_{d1+d2-3} ⊕ ⋯ ⊕ S_{|d1-d2|+1}`.
pub fn clebsch_gordan(d1: u32, d2: u32) -> Vec<u32> {
    assert!(d1 >= 1 && d2 >= 1, "S_d needs d >= 1");
    let top = d1 + d2 - 1;
    (0..d1.min(d2)).map(|l| top - 2 * l).collect()
}

/// One block of `Λ²` of the standard representation restricted along `ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "block", rename_all = "snake_case")]
pub enum AdjointSummand {
    /// `Λ²(φ_i ⊠ S_{d_i})`; `s_I` always acts by `+1` here.
    Diagonal { index: usize, dim: u64 },
    /// `(φ_i ⊗ φ_j) ⊠ S_{d_α}` for `i < j`.
    Cross { i: usize, j: usize, d_alpha: u32, dim: u64 },
}

impl AdjointSummand {
    pub fn dim(&self) -> u64 {
        match *self {
            AdjointSummand::Diagonal { dim, .. } | AdjointSummand::Cross { dim, .. } => dim,
        }
    }
}

/// Diagonal blocks in constituent order, followed by the cross blocks of every
/// pair `i < j`.
pub fn adjoint_cross_terms(psi: &GlobalAParameter) -> Vec<AdjointSummand> {
    let cs = &psi.constituents;
    let mut out: Vec<AdjointSummand> = cs
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let n = c.datum.m as u64 * c.d as u64;
            AdjointSummand::Diagonal { index, dim: n * n.saturating_sub(1) / 2 }
        })
        .collect();
    for i in 0..cs.len() {
        for j in (i + 1)..cs.len() {
            let mm = cs[i].datum.m as u64 * cs[j].datum.m as u64;
            for d_alpha in clebsch_gordan(cs[i].d, cs[j].d) {
                out.push(AdjointSummand::Cross { i, j, d_alpha, dim: mm * d_alpha as u64 });
            }
        }
    }
    out
}
