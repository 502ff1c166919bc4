//! Unramified Satake parameters and the Euler factors they determine.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::data::{EigenformData, LocalShape};
use super::ring::{EulerFactor, HalfPower};
use super::LfError;
use crate::archrep::HalfInt;
use crate::params::{CuspidalDatum, GlobalAParameter};

/// A symbolic unitary number `u^power`; `label = None` is the literal 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitRef {
    pub label: Option<String>,
    pub power: i32,
}

impl UnitRef {
    pub fn one() -> Self {
        UnitRef { label: None, power: 0 }
    }

    pub fn named(label: impl Into<String>, power: i32) -> Self {
        if power == 0 {
            return UnitRef::one();
        }
        UnitRef { label: Some(label.into()), power }
    }

    pub fn inverse(&self) -> Self {
        UnitRef { label: self.label.clone(), power: -self.power }
    }
}

impl fmt::Display for UnitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.label, self.power) {
            (None, _) | (_, 0) => f.write_str("1"),
            (Some(l), 1) => write!(f, "α[{l}]"),
            (Some(l), e) => write!(f, "α[{l}]^{e}"),
        }
    }
}

/// `u · p^{e/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SatakeEigenvalue {
    pub unit: UnitRef,
    pub twice_exp: i64,
}

impl SatakeEigenvalue {
    pub fn inverse(&self) -> Self {
        SatakeEigenvalue { unit: self.unit.inverse(), twice_exp: -self.twice_exp }
    }
}

impl fmt::Display for SatakeEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_exp == 0 {
            write!(f, "{}", self.unit)
        } else {
            write!(f, "{}·p^{}", self.unit, HalfInt(self.twice_exp))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeParameter {
    pub p: u64,
    pub eigenvalues: Vec<SatakeEigenvalue>,
}

impl SatakeParameter {
    fn sorted(&self) -> Vec<SatakeEigenvalue> {
        let mut v = self.eigenvalues.clone();
        v.sort();
        v
    }

    /// The multiset is mapped to itself by inversion.
    pub fn is_inverse_closed(&self) -> bool {
        let mut inv: Vec<SatakeEigenvalue> = self.eigenvalues.iter().map(|e| e.inverse()).collect();
        inv.sort();
        inv == self.sorted()
    }

    /// The formal product of all eigenvalues is 1.
    pub fn has_trivial_product(&self) -> bool {
        let mut powers: BTreeMap<&str, i64> = BTreeMap::new();
        for e in &self.eigenvalues {
            if let Some(l) = &e.unit.label {
                *powers.entry(l).or_default() += e.unit.power as i64;
            }
        }
        powers.values().all(|&v| v == 0) && self.eigenvalues.iter().map(|e| e.twice_exp).sum::<i64>() == 0
    }
}

/// One constituent of an unramified local parameter: units `u_1 … u_m`
/// tensored with `S_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnramifiedBlock {
    pub units: Vec<UnitRef>,
    pub d: u32,
}

/// `⊕ u ⊠ S_d ↦ {u p^{(d-1)/2}, u p^{(d-3)/2}, …, u p^{-(d-1)/2}}`.
pub fn satake_unramified(p: u64, blocks: &[UnramifiedBlock]) -> SatakeParameter {
    let eigenvalues = blocks
        .iter()
        .flat_map(|b| {
            b.units.iter().flat_map(move |u| {
                (0..b.d as i64).map(move |l| SatakeEigenvalue {
                    unit: u.clone(),
                    twice_exp: b.d as i64 - 1 - 2 * l,
                })
            })
        })
        .collect();
    SatakeParameter { p, eigenvalues }
}

/// Symbolic Satake units of a cuspidal datum.
pub fn local_units(datum: &CuspidalDatum) -> Vec<UnitRef> {
    let labels: Vec<String> = match &datum.form {
        Some(form) => form.unit_labels(),
        None => (1..=datum.m / 2).map(|i| format!("{}#{i}", datum.name)).collect(),
    };
    match datum.local {
        LocalShape::Trivial => vec![UnitRef::one()],
        LocalShape::Sym2 => vec![
            UnitRef::named(&labels[0], 2),
            UnitRef::one(),
            UnitRef::named(&labels[0], -2),
        ],
        LocalShape::Standard | LocalShape::Opaque => {
            let mut out: Vec<UnitRef> = labels
                .iter()
                .flat_map(|l| [UnitRef::named(l, 1), UnitRef::named(l, -1)])
                .collect();
            if datum.m % 2 == 1 {
                out.push(UnitRef::one());
            }
            out
        }
    }
}

/// Satake parameter of the unramified member of `Π_{ψ_p}` together with the
/// traces `u + u^{-1}` that the data supplies.
pub fn parameter_satake(
    psi: &GlobalAParameter,
    p: u64,
) -> (SatakeParameter, BTreeMap<String, HalfPower>, Vec<LfError>) {
    let blocks: Vec<UnramifiedBlock> = psi
        .constituents
        .iter()
        .map(|c| UnramifiedBlock { units: local_units(&c.datum), d: c.d })
        .collect();
    let mut traces = BTreeMap::new();
    let mut missing = Vec::new();
    for c in &psi.constituents {
        if let Some(form) = &c.datum.form {
            match form.traces(p) {
                Ok(t) => traces.extend(t),
                Err(e) => missing.push(e),
            }
        }
    }
    (satake_unramified(p, &blocks), traces, missing)
}

/// `u^k + u^{-k}` from `t = u + u^{-1}` via `V_{j+1} = t V_j - V_{j-1}`.
fn power_trace(t: &HalfPower, k: u32) -> HalfPower {
    let p = t.prime();
    let (mut prev, mut cur) = (HalfPower::from_int(p, 2), t.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Π (1 - β X)` over the Satake multiset, with inverse unit pairs reduced to
/// traces.
pub fn std_euler_factor(
    c: &SatakeParameter,
    traces: &BTreeMap<String, HalfPower>,
) -> Result<EulerFactor, LfError> {
    let p = c.p;
    let mut pending: Vec<SatakeEigenvalue> = c.sorted();
    let mut out = EulerFactor::one(p);
    while let Some(e) = pending.pop() {
        let scale = HalfPower::sqrt_p_pow(p, e.twice_exp);
        match &e.unit.label {
            None => out = &out * &EulerFactor::linear(scale),
            Some(label) => {
                let partner = SatakeEigenvalue { unit: e.unit.inverse(), twice_exp: e.twice_exp };
                let pos = pending
                    .iter()
                    .position(|x| *x == partner)
                    .ok_or_else(|| LfError::Unpaired(e.to_string()))?;
                pending.remove(pos);
                let t = traces
                    .get(label)
                    .ok_or_else(|| LfError::InsufficientHeckeData { label: label.clone() })?;
                let v = power_trace(t, e.unit.power.unsigned_abs());
                out = &out
                    * &EulerFactor::quadratic(&v * &scale, HalfPower::sqrt_p_pow(p, 2 * e.twice_exp));
            }
        }
    }
    Ok(out)
}

/// `L_p(s + c, f)^{-1} = 1 - a_p p^{-c} X + p^{w-1-2c} X²` for `f` of weight `w`.
pub fn hecke_euler_factor(a_p: i64, weight: u32, shift: HalfInt, p: u64) -> EulerFactor {
    EulerFactor::quadratic(
        &HalfPower::from_int(p, a_p) * &HalfPower::sqrt_p_pow(p, -shift.doubled()),
        HalfPower::sqrt_p_pow(p, 2 * (weight as i64 - 1) - 2 * shift.doubled()),
    )
}

/// `L_p(s + c, F, spin)^{-1}` from the two unitary traces.
pub fn spin_euler_factor(traces: [&HalfPower; 2], shift: HalfInt) -> EulerFactor {
    let p = traces[0].prime();
    traces
        .iter()
        .map(|t| {
            EulerFactor::quadratic(
                *t * &HalfPower::sqrt_p_pow(p, -shift.doubled()),
                HalfPower::sqrt_p_pow(p, -2 * shift.doubled()),
            )
        })
        .fold(EulerFactor::one(p), |a, b| &a * &b)
}

/// `L_p(s + c, F)^{-1}` for the data attached to a lifted form.
pub fn shifted_form_factor(form: &EigenformData, shift: HalfInt, p: u64) -> Result<EulerFactor, LfError> {
    match form {
        EigenformData::Elliptic(h) => Ok(hecke_euler_factor(h.a_p(p)?, h.weight, shift, p)),
        EigenformData::Siegel2(_) => {
            let t = form.traces(p)?;
            let v: Vec<&HalfPower> = t.values().collect();
            Ok(spin_euler_factor([v[0], v[1]], shift))
        }
    }
}
