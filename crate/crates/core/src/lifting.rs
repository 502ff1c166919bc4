//! Multiplicity of holomorphic lowest-weight members and the lifting
//! `ψ_{f,g} = τ_f[2d] ⊞ ψ_g`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ajpackets::{is_adams_johnson, AJError, AJParameter, AJViolation, LowestWeight, WeightVector};
use crate::archrep::{ArchConstituent, ArchRep, HalfInt, SelfDualType, Sign};
use crate::params::{CuspidalDatum, EpsilonError, GlobalAParameter, SignCharacter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Epsilon(#[from] EpsilonError),
    #[error("localization is not Adams-Johnson: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotAJ(Vec<AJViolation>),
    #[error(transparent)]
    Packet(#[from] AJError),
    #[error("not a lowest-weight packet for k = {k}: {detail}")]
    NotLowestWeight { k: WeightVector, detail: String },
    #[error("interval hypothesis violated: {0}")]
    IntervalHypothesis(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not a discrete parameter: {0}")]
    NotDiscrete(String),
    #[error("source parameter is not certified for weight {k}: {reason}")]
    SourceNotCertified { k: WeightVector, reason: String },
    #[error("f has archimedean parameter {found}, expected {expected} for its weight")]
    FArchMismatch { expected: ArchRep, found: ArchRep },
    #[error("{instance}: {message}")]
    Constraint { instance: String, message: String },
}

impl LiftError {
    pub fn code(&self) -> &'static str {
        match self {
            LiftError::Epsilon(e) => e.code(),
            LiftError::NotAJ(_) => "not_adams_johnson",
            LiftError::Packet(e) => e.code(),
            LiftError::NotLowestWeight { .. } => "not_lowest_weight",
            LiftError::IntervalHypothesis(_) => "interval_hypothesis",
            LiftError::Hypothesis(_) => "hypothesis",
            LiftError::NotDiscrete(_) => "not_discrete",
            LiftError::SourceNotCertified { .. } => "source_not_certified",
            LiftError::FArchMismatch { .. } => "f_arch_mismatch",
            LiftError::Constraint { .. } => "constraint",
        }
    }
}

/// Both sides of the multiplicity formula on the basis of `A_ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub m: u8,
    pub epsilon: SignCharacter,
    pub local_character: SignCharacter,
    pub aj: AJParameter,
}

/// Pulls a character of `A_{ψ_∞}` (blocks then tail) back along the
/// localization map to `A_ψ`.
fn pull_back(aj: &AJParameter, ch: &SignCharacter, rank: usize) -> SignCharacter {
    let mut values = vec![Sign::Plus; rank];
    for (b, v) in aj.blocks.iter().zip(&ch.values) {
        values[b.source] = values[b.source] * *v;
    }
    values[aj.tail.source] = values[aj.tail.source] * ch.values[aj.blocks.len()];
    SignCharacter { values }
}

/// `m_{π,ψ}` for `π` with `π_∞ = L(V_k)` and `π_p` unramified everywhere.
pub fn multiplicity(psi: &GlobalAParameter, k: &WeightVector) -> Result<MultiplicityReport, LiftError> {
    psi.validate().map_err(EpsilonError::Invalid)?;
    let aj = is_adams_johnson(&psi.localize_infinity()).map_err(LiftError::NotAJ)?;
    let character = match aj.lowest_weight_test(k)? {
        LowestWeight::Member { character } => character,
        other => {
            return Err(LiftError::NotLowestWeight {
                k: k.clone(),
                detail: serde_json::to_string(&other).unwrap_or_default(),
            })
        }
    };
    let epsilon = psi.epsilon_direct()?;
    let local_character = pull_back(&aj, &character, psi.rank());
    let m = u8::from(local_character == epsilon);
    Ok(MultiplicityReport { m, epsilon, local_character, aj })
}

fn interval(hi: i64, lo: i64) -> Vec<i64> {
    (lo..=hi).rev().collect()
}

fn merge_weights(k: &WeightVector, extra: Vec<i64>, what: &str) -> Result<WeightVector, LiftError> {
    let base = k.shifted();
    if let Some(x) = extra.iter().find(|x| base.contains(x)) {
        return Err(LiftError::IntervalHypothesis(format!(
            "k_i - i = {x} lies in the {what} interval"
        )));
    }
    if let Some(x) = extra.iter().find(|&&x| x <= 0) {
        return Err(LiftError::IntervalHypothesis(format!("{what} interval reaches {x} <= 0")));
    }
    let mut all = base;
    all.extend(extra);
    Ok(WeightVector::from_shifted(all))
}

/// `{k'_i - i} = {k_i - i} ∪ {k+d-1, …, k-d}`.
pub fn lift_a_weights(k: &WeightVector, k_f: i64, d: u32) -> Result<WeightVector, LiftError> {
    let d = d as i64;
    merge_weights(k, interval(k_f + d - 1, k_f - d), "f")
}

/// `{k'_i - i} = {k_i - i} ∪ {j/2+k+d-2, …, j/2+k-d-1} ∪ {j/2+d, …, j/2-d+1}`.
pub fn lift_b_weights(k: &WeightVector, k_f: i64, j: i64, d: u32) -> Result<WeightVector, LiftError> {
    if j % 2 != 0 {
        return Err(LiftError::Hypothesis(format!("j = {j} must be even")));
    }
    let (h, d) = (j / 2, d as i64);
    if k_f <= 2 * d + 1 {
        return Err(LiftError::IntervalHypothesis(format!(
            "k = {k_f} <= 2d+1 = {}: the two spin intervals overlap",
            2 * d + 1
        )));
    }
    if let Some(x) = k.shifted().iter().find(|&&x| h - d < x && x <= h + k_f + d - 2) {
        return Err(LiftError::IntervalHypothesis(format!(
            "k_i - i = {x} lies in [{}, {}]",
            h - d + 1,
            h + k_f + d - 2
        )));
    }
    let mut extra = interval(h + k_f + d - 2, h + k_f - d - 1);
    extra.extend(interval(h + d, h - d + 1));
    merge_weights(k, extra, "spin")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftMode {
    A,
    B,
    General,
}

/// The classical weight the lifted form `f` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FSource {
    /// `f ∈ S_weight(SL_2(ℤ))`.
    Elliptic { weight: u32 },
    /// `f ∈ S_{k,j}(Sp_4(ℤ))`.
    Siegel2 { k: u32, j: u32 },
}

impl FSource {
    pub fn expected_arch(self) -> ArchRep {
        match self {
            FSource::Elliptic { weight } => ArchRep::rho(weight as i64 - 1),
            FSource::Siegel2 { k, j } => {
                ArchRep::rho(j as i64 + 2 * k as i64 - 3).plus(&ArchRep::rho(j as i64 + 1))
            }
        }
    }

    /// Shifts `c` with factors `L(s + c, f)` (elliptic) or `L(s + c, f, spin)`.
    pub fn shifts(self, d: u32) -> Vec<HalfInt> {
        let d = d as i64;
        match self {
            FSource::Elliptic { weight } => {
                let k = weight as i64 / 2;
                (1..=2 * d).map(|i| HalfInt::from_int(k + d - i)).collect()
            }
            FSource::Siegel2 { .. } => (1..=2 * d).map(|i| HalfInt(2 * d + 1 - 2 * i)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSpec {
    pub mode: LiftMode,
    pub g: GlobalAParameter,
    /// Weight of the source form `g`, certifying `ψ_g`.
    pub k: WeightVector,
    pub f: CuspidalDatum,
    pub f_source: FSource,
    pub d: u32,
}

/// One factor `L(s + shift, form[, spin])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedFactor {
    pub form: String,
    pub shift: HalfInt,
    pub spin: bool,
}

impl fmt::Display for ShiftedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = match self.shift.doubled() {
            0 => "s".to_string(),
            x if x > 0 => format!("s+{}", self.shift),
            _ => format!("s-{}", self.shift.neg()),
        };
        let spin = if self.spin { ",spin" } else { "" };
        write!(f, "L({arg},{}{spin})", self.form)
    }
}

/// `L(s, F, std) = base · Π factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// `None` when `g` lives on `Sp_0`, where the base is `ζ(s)`.
    pub base_form: Option<String>,
    pub factors: Vec<ShiftedFactor>,
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base_form {
            Some(g) => write!(f, "L(s,{g},std)")?,
            None => f.write_str("ζ(s)")?,
        }
        for x in &self.factors {
            write!(f, "·{x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftResult {
    pub mode: LiftMode,
    pub psi_lift: GlobalAParameter,
    pub k_prime: WeightVector,
    pub automorphic: bool,
    pub m: u8,
    /// `k'_n > n` for the lifted weight, reported for automorphic lifts.
    pub cuspidal: bool,
    pub epsilon: SignCharacter,
    pub local_character: SignCharacter,
    pub factorization: String,
    pub factors: Factorization,
}

impl LiftResult {
    /// `ψ_g`, recovered by dropping `τ_f[2d]`.
    pub fn g(&self) -> GlobalAParameter {
        GlobalAParameter { constituents: self.psi_lift.constituents[1..].to_vec() }
    }
}

fn check_discrete(psi: &GlobalAParameter) -> Result<(), LiftError> {
    let loc = psi.localize_infinity();
    let mut alphas: Vec<u32> = loc.factors.iter().filter_map(|f| f.rep.alpha()).collect();
    alphas.sort_unstable();
    if let Some(w) = alphas.windows(2).find(|w| w[0] == w[1]) {
        return Err(LiftError::NotDiscrete(format!("rho{} occurs twice", w[0])));
    }
    let mut exps: Vec<i64> = loc
        .factors
        .iter()
        .filter(|f| matches!(f.rep, ArchConstituent::TwoDim(_)))
        .flat_map(|f| crate::archrep::exponents_of_factor(f.rep, f.d))
        .map(|e| e.doubled())
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    if let Some(w) = exps.windows(2).find(|w| w[0] == w[1]) {
        return Err(LiftError::NotDiscrete(format!(
            "exponent {} is shared by two blocks",
            HalfInt(w[0])
        )));
    }
    Ok(())
}

fn theorem_weights(spec: &LiftSpec) -> Result<Option<WeightVector>, LiftError> {
    let k = &spec.k;
    let d = spec.d as i64;
    match (spec.mode, spec.f_source) {
        (LiftMode::General, _) => Ok(None),
        (LiftMode::A, FSource::Elliptic { weight }) => {
            let kf = weight as i64 / 2;
            if kf <= d {
                return Err(LiftError::Hypothesis(format!("k = {kf} must exceed d = {d}")));
            }
            let sh = k.shifted();
            let first = sh.last().is_some_and(|&last| kf + d - 1 < last);
            let second = sh.first().is_none_or(|&top| kf - d > top);
            if !first && !second {
                return Err(LiftError::IntervalHypothesis(format!(
                    "{{{}, …, {}}} is neither below nor above {{k_i - i}}",
                    kf + d - 1,
                    kf - d
                )));
            }
            lift_a_weights(k, kf, spec.d).map(Some)
        }
        (LiftMode::B, FSource::Siegel2 { k: kf, j }) => {
            if j % 2 != 0 {
                return Err(LiftError::Hypothesis(format!("j = {j} must be even")));
            }
            if (j as i64) < 2 * d {
                return Err(LiftError::Hypothesis(format!("j = {j} must exceed 2d-1 = {}", 2 * d - 1)));
            }
            lift_b_weights(k, kf as i64, j as i64, spec.d).map(Some)
        }
        (LiftMode::A, _) => Err(LiftError::Hypothesis("mode a needs an elliptic f".into())),
        (LiftMode::B, _) => Err(LiftError::Hypothesis("mode b needs a degree-two Siegel f".into())),
    }
}

/// Decides whether the lift `π_{f,g}` is automorphic and describes its
/// standard L-function.
pub fn evaluate_lift(spec: &LiftSpec) -> Result<LiftResult, LiftError> {
    let expected = spec.f_source.expected_arch();
    if spec.f.arch != expected {
        return Err(LiftError::FArchMismatch { expected, found: spec.f.arch.clone() });
    }
    if spec.d == 0 {
        return Err(LiftError::Hypothesis("d must be positive".into()));
    }
    match multiplicity(&spec.g, &spec.k) {
        Ok(r) if r.m == 1 => {}
        Ok(_) => {
            return Err(LiftError::SourceNotCertified {
                k: spec.k.clone(),
                reason: "multiplicity of psi_g is 0".into(),
            })
        }
        Err(e) => return Err(LiftError::SourceNotCertified { k: spec.k.clone(), reason: e.to_string() }),
    }
    let predicted = theorem_weights(spec)?;
    let psi = spec.g.prepend(spec.f.clone(), 2 * spec.d);
    psi.validate().map_err(EpsilonError::Invalid)?;
    check_discrete(&psi)?;
    let aj = is_adams_johnson(&psi.localize_infinity()).map_err(LiftError::NotAJ)?;
    let k_prime = aj.lowest_weight().ok_or_else(|| LiftError::NotLowestWeight {
        k: spec.k.clone(),
        detail: "tail is not a single character".into(),
    })?;
    if let Some(p) = &predicted {
        assert_eq!(p, &k_prime, "weight formula disagrees with the localized exponents");
    }
    let report = multiplicity(&psi, &k_prime)?;
    let factors = Factorization {
        base_form: (spec.g.n() > 0).then(|| "g".to_string()),
        factors: spec
            .f_source
            .shifts(spec.d)
            .into_iter()
            .map(|shift| ShiftedFactor {
                form: spec.f.name.clone(),
                shift,
                spin: matches!(spec.f_source, FSource::Siegel2 { .. }),
            })
            .collect(),
    };
    let automorphic = report.m == 1;
    Ok(LiftResult {
        mode: spec.mode,
        cuspidal: automorphic && k_prime.is_discrete(),
        psi_lift: psi,
        k_prime,
        automorphic,
        m: report.m,
        epsilon: report.epsilon,
        local_character: report.local_character,
        factorization: factors.to_string(),
        factors,
    })
}

/// Recomputes a result from its own `ψ` and `k'`, independently of the
/// decision path, and checks every recorded field.
pub fn recheck(result: &LiftResult) -> Result<(), String> {
    let r = multiplicity(&result.psi_lift, &result.k_prime).map_err(|e| e.to_string())?;
    if r.m != result.m || (result.m == 1) != result.automorphic {
        return Err(format!("multiplicity {} differs from recorded {}", r.m, result.m));
    }
    if r.epsilon != result.epsilon || r.local_character != result.local_character {
        return Err("recorded characters differ".into());
    }
    if result.factors.to_string() != result.factorization {
        return Err("factorization string differs from its structure".into());
    }
    if r.epsilon.at_central() != Sign::Plus || r.local_character.at_central() != Sign::Plus {
        return Err("a character is nontrivial on z".into());
    }
    if result.automorphic {
        let group = result.psi_lift.component_group();
        if let Some(e) = group.elements().find(|&e| r.epsilon.eval(e) != r.local_character.eval(e)) {
            return Err(format!("character equation fails at {:?}", e.subset(group.rank())));
        }
    }
    let loc_k = r.aj.lowest_weight().ok_or("no lowest weight")?;
    if loc_k != result.k_prime {
        return Err(format!("k' = {} but exponents give {loc_k}", result.k_prime));
    }
    Ok(())
}

/// Numeric inputs of the named instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedParams {
    pub k: Option<u32>,
    pub d: Option<u32>,
    pub n0: Option<u32>,
    pub m: Option<u32>,
}

fn constraint(instance: &str, message: impl Into<String>) -> LiftError {
    LiftError::Constraint { instance: instance.into(), message: message.into() }
}

fn need(instance: &str, v: Option<u32>, name: &str) -> Result<u32, LiftError> {
    v.ok_or_else(|| constraint(instance, format!("missing parameter {name}")))
}

fn sym2_g(weight: u32) -> GlobalAParameter {
    GlobalAParameter::new(vec![(CuspidalDatum::sym2_elliptic("Sym2 g", weight), 1)])
}

/// `ψ_g = 1[1]` on `Sp_0`.
pub fn empty_g() -> GlobalAParameter {
    GlobalAParameter::new(vec![(CuspidalDatum::trivial(), 1)])
}

pub const NAMED_INSTANCES: [&str; 5] = ["miyawaki1", "miyawaki2", "ibukiyama1", "ibukiyama2", "ikeda"];

/// Lift inputs for the classical conjectures.
pub fn named_instance(name: &str, params: NamedParams) -> Result<LiftSpec, LiftError> {
    match name {
        "miyawaki1" => {
            let k = need(name, params.k, "k")?;
            if k % 2 != 0 || k < 12 {
                return Err(constraint(name, format!("k = {k} must be even and at least 12")));
            }
            Ok(LiftSpec {
                mode: LiftMode::A,
                g: sym2_g(k),
                k: WeightVector::scalar(k as i64, 1),
                f: CuspidalDatum::elliptic("f", 2 * k - 4),
                f_source: FSource::Elliptic { weight: 2 * k - 4 },
                d: 1,
            })
        }
        "miyawaki2" => {
            let k = need(name, params.k, "k")?;
            if k % 2 != 0 || k < 14 {
                return Err(constraint(name, format!("k = {k} must be even and at least 14")));
            }
            Ok(LiftSpec {
                mode: LiftMode::A,
                g: sym2_g(k - 2),
                k: WeightVector::scalar(k as i64 - 2, 1),
                f: CuspidalDatum::elliptic("f", 2 * k - 2),
                f_source: FSource::Elliptic { weight: 2 * k - 2 },
                d: 1,
            })
        }
        "ikeda" => {
            let k = need(name, params.k, "k")?;
            let d = need(name, params.d, "d")?;
            if d == 0 || k <= d {
                return Err(constraint(name, format!("need 0 < d < k, got k = {k}, d = {d}")));
            }
            Ok(LiftSpec {
                mode: LiftMode::A,
                g: empty_g(),
                k: WeightVector::empty(),
                f: CuspidalDatum::elliptic("f", 2 * k),
                f_source: FSource::Elliptic { weight: 2 * k },
                d,
            })
        }
        "ibukiyama1" => {
            let n0 = need(name, params.n0, "n0")?;
            let m = need(name, params.m, "m")?;
            if n0 == 0 || n0 % 2 != 0 {
                return Err(constraint(name, format!("n0 = {n0} must be even and positive")));
            }
            if m % 2 != 0 {
                return Err(constraint(name, format!("m = {m} must be even")));
            }
            if m <= 2 * n0 {
                return Err(constraint(name, format!("m = {m} must exceed 2 n0 = {}", 2 * n0)));
            }
            let (k, j) = (n0 + 2, 2 * m - 3 * n0 - 2);
            Ok(LiftSpec {
                mode: LiftMode::B,
                g: empty_g(),
                k: WeightVector::empty(),
                f: CuspidalDatum::siegel2_spin("f", k, j),
                f_source: FSource::Siegel2 { k, j },
                d: n0 / 2,
            })
        }
        "ibukiyama2" => {
            let n0 = need(name, params.n0, "n0")?;
            let m = need(name, params.m, "m")?;
            if n0 < 2 {
                return Err(constraint(name, format!("n0 = {n0} must be at least 2")));
            }
            if m <= 2 * n0 {
                return Err(constraint(name, format!("m = {m} must exceed 2 n0 = {}", 2 * n0)));
            }
            let arch = ArchRep::rho(2 * m as i64 - 2)
                .plus(&ArchRep::rho(2 * m as i64 - 4 * n0 as i64))
                .plus(&ArchRep::trivial());
            let g = GlobalAParameter::new(vec![(
                CuspidalDatum::new("g", SelfDualType::Orthogonal, arch),
                1,
            )]);
            // ψ_g must be a single orthogonal τ[1] of rank 5, not τ'[1] ⊞ χ[1].
            if g.rank() != 1 || g.constituents[0].datum.m != 5 {
                return Err(constraint(name, "psi_g must be a single GL_5 constituent"));
            }
            let weight = 2 * (m - n0);
            Ok(LiftSpec {
                mode: LiftMode::General,
                g,
                k: WeightVector::new(vec![m as i64, m as i64 - 2 * n0 as i64 + 2])
                    .expect("decreasing"),
                f: CuspidalDatum::elliptic("f", weight),
                f_source: FSource::Elliptic { weight },
                d: n0 - 1,
            })
        }
        other => Err(constraint(other, "unknown instance")),
    }
}
