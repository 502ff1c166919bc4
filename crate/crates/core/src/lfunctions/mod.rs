//! Satake parameters, exact Euler factors over `ℚ(√p)`, and prime-by-prime
//! checks of lift factorizations.

mod data;
mod ring;
mod satake;

pub use data::{
    is_prime, load_eigenform_data, oracle_q_expansion, parse_eigenform_data, primes_up_to, EigenformData,
    HeckeData, LocalShape, SpinData, TraceValue, EIGENFORM_WEIGHTS,
};
pub use ring::{EulerFactor, HalfPower};
pub use satake::{
    hecke_euler_factor, local_units, parameter_satake, satake_unramified, shifted_form_factor,
    spin_euler_factor, std_euler_factor, SatakeEigenvalue, SatakeParameter, UnitRef, UnramifiedBlock,
};

use thiserror::Error;

use crate::lifting::LiftResult;
use crate::params::GlobalAParameter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfError {
    #[error("insufficient Hecke data: no trace for unit {label}")]
    InsufficientHeckeData { label: String },
    #[error("Satake eigenvalue {0} has no inverse partner")]
    Unpaired(String),
    #[error("{name}: no data at p = {p}")]
    MissingPrime { name: String, p: u64 },
    #[error("weight {weight} does not carry a unique level-one eigenform")]
    NotEigenformWeight { weight: u32 },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot parse number {0:?}")]
    BadNumber(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

impl LfError {
    pub fn code(&self) -> &'static str {
        match self {
            LfError::InsufficientHeckeData { .. } => "insufficient_hecke_data",
            LfError::Unpaired(_) => "unpaired_satake",
            LfError::MissingPrime { .. } => "missing_prime",
            LfError::NotEigenformWeight { .. } => "not_eigenform_weight",
            LfError::Parse { .. } => "parse",
            LfError::Io { .. } => "io",
            LfError::BadNumber(_) => "bad_number",
            LfError::NotPrime(_) => "not_prime",
        }
    }
}

/// `L_p(s, ψ, std)^{-1}` for the unramified member of `Π_{ψ_p}`.
pub fn parameter_euler_factor(psi: &GlobalAParameter, p: u64) -> Result<EulerFactor, LfError> {
    if !is_prime(p) {
        return Err(LfError::NotPrime(p));
    }
    let (satake, traces, mut missing) = parameter_satake(psi, p);
    std_euler_factor(&satake, &traces).map_err(|e| match e {
        LfError::InsufficientHeckeData { .. } if !missing.is_empty() => missing.remove(0),
        e => e,
    })
}

/// Both sides of `L_p(s, F, std) = L_p(s, g, std) Π L_p(s + c_i, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub p: u64,
    pub lhs: EulerFactor,
    pub rhs: EulerFactor,
    pub first_mismatch: Option<usize>,
}

impl FactorizationCheck {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the Satake side of the lifted parameter with the product of the
/// base factor and the shifted factors of `f`, using `f_data` for `f` on the
/// right side and for any `f` left without data on the left side.
pub fn verify_factorization(
    lift: &LiftResult,
    f_data: &EigenformData,
    p: u64,
) -> Result<FactorizationCheck, LfError> {
    let mut psi = lift.psi_lift.clone();
    if psi.constituents[0].datum.form.is_none() {
        psi.constituents[0].datum.form = Some(f_data.clone());
    }
    let lhs = parameter_euler_factor(&psi, p)?;
    let base = parameter_euler_factor(&lift.g(), p)?;
    let rhs = lift
        .factors
        .factors
        .iter()
        .map(|x| shifted_form_factor(f_data, x.shift, p))
        .try_fold(base, |acc, f| f.map(|f| &acc * &f))?;
    Ok(FactorizationCheck { p, first_mismatch: lhs.first_difference(&rhs), lhs, rhs })
}
