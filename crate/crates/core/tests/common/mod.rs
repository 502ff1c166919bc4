#![allow(dead_code)]

use std::path::PathBuf;

use amf_core::archrep::{ArchRep, SelfDualType};
use amf_core::lfunctions::{EigenformData, HeckeData};
use amf_core::lifting::{empty_g, named_instance, NamedParams};
use amf_core::params::{CuspidalDatum, GlobalAParameter};
use rand::rngs::StdRng;
use rand::Rng;

/// Largest prime stored in shipped eigenform fixtures.
pub const FIXTURE_PRIME_BOUND: u64 = 29;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_name(weight: u32) -> String {
    if weight == 12 {
        "Delta".into()
    } else {
        format!("f{weight}")
    }
}

pub fn oracle_form(weight: u32) -> EigenformData {
    EigenformData::Elliptic(
        HeckeData::from_oracle(fixture_name(weight), weight, FIXTURE_PRIME_BOUND).expect("oracle weight"),
    )
}

pub fn elliptic_with_data(weight: u32) -> CuspidalDatum {
    CuspidalDatum::elliptic(fixture_name(weight), weight).with_form(oracle_form(weight))
}

pub fn sym2_with_data(weight: u32) -> CuspidalDatum {
    CuspidalDatum::sym2_elliptic(format!("Sym2 {}", fixture_name(weight)), weight)
        .with_form(oracle_form(weight))
}

/// `ψ` for the Ikeda lift of `Δ` with `d = 2`.
pub fn ikeda_delta_d2() -> GlobalAParameter {
    empty_g().prepend(elliptic_with_data(12), 4)
}

/// Miyawaki parameters with the eigenform data the instances point at.
pub fn miyawaki1_param() -> GlobalAParameter {
    let spec = named_instance("miyawaki1", NamedParams { k: Some(12), ..Default::default() }).unwrap();
    let f = spec.f.with_form(EigenformData::Elliptic(
        HeckeData::from_oracle("f", 20, FIXTURE_PRIME_BOUND).unwrap(),
    ));
    GlobalAParameter::new(vec![(f, 2), (sym2_with_data(12), 1)])
}

pub fn miyawaki2_param() -> GlobalAParameter {
    let spec = named_instance("miyawaki2", NamedParams { k: Some(14), ..Default::default() }).unwrap();
    let f = spec.f.with_form(EigenformData::Elliptic(
        HeckeData::from_oracle("f", 26, FIXTURE_PRIME_BOUND).unwrap(),
    ));
    GlobalAParameter::new(vec![(f, 2), (sym2_with_data(12), 1)])
}

pub fn ibukiyama1_param() -> GlobalAParameter {
    let spec = named_instance("ibukiyama1", NamedParams { n0: Some(2), m: Some(6), ..Default::default() }).unwrap();
    spec.g.prepend(spec.f, 2 * spec.d)
}

/// Random symbolic cuspidal datum drawn from the three families used by the
/// epsilon equivalence checks, with `α ≤ 40`, together with a compatible `d`.
pub fn random_constituent(rng: &mut StdRng) -> (CuspidalDatum, u32) {
    match rng.gen_range(0..3) {
        0 => {
            let a = rng.gen_range(1..=20u32);
            let d = 2 * rng.gen_range(1..=2u32);
            (CuspidalDatum::elliptic(format!("e{a}"), 2 * a), d)
        }
        1 => {
            let b = rng.gen_range(1..=20u32);
            let arch = ArchRep::rho(2 * b as i64).plus(&ArchRep::sign());
            let d = 2 * rng.gen_range(0..=1u32) + 1;
            (CuspidalDatum::new(format!("s{b}"), SelfDualType::Orthogonal, arch), d)
        }
        _ => {
            let (name, arch) = if rng.gen_bool(0.5) {
                ("1", ArchRep::trivial())
            } else {
                ("sgn", ArchRep::sign())
            };
            let d = 2 * rng.gen_range(0..=4u32) + 1;
            (CuspidalDatum::new(name, SelfDualType::Orthogonal, arch), d)
        }
    }
}

/// A random parameter of rank at most 4, not necessarily valid; callers
/// filter on size and validity.
pub fn random_parameter(rng: &mut StdRng) -> GlobalAParameter {
    let r = rng.gen_range(1..=4);
    let cs: Vec<(CuspidalDatum, u32)> = (0..r).map(|_| random_constituent(rng)).collect();
    GlobalAParameter::new(cs)
}
