mod common;

use amf_core::ajpackets::{is_adams_johnson, WeightVector};
use amf_core::lfunctions::{
    parameter_euler_factor, parameter_satake, verify_factorization, EIGENFORM_WEIGHTS,
};
use amf_core::lifting::{
    empty_g, evaluate_lift, lift_a_weights, multiplicity, recheck, FSource, LiftError, LiftMode, LiftResult,
    LiftSpec,
};
use amf_core::params::{CuspidalDatum, GlobalAParameter};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{elliptic_with_data, oracle_form, sym2_with_data};

/// A certified source `(ψ_g, k)`, drawn from empty, `Sym²`, Saito–Kurokawa
/// and Ikeda shapes.
fn random_source(rng: &mut StdRng) -> Option<(GlobalAParameter, WeightVector)> {
    let g = match rng.gen_range(0..4) {
        0 => empty_g(),
        1 => GlobalAParameter::new(vec![(
            CuspidalDatum::sym2_elliptic("g", 2 * rng.gen_range(2..=20u32)),
            1,
        )]),
        2 => empty_g().prepend(CuspidalDatum::elliptic("g", 2 * rng.gen_range(2..=20u32)), 2),
        _ => {
            let e = rng.gen_range(1..=3u32);
            empty_g().prepend(CuspidalDatum::elliptic("g", 2 * rng.gen_range(e + 1..=20)), 2 * e)
        }
    };
    let aj = is_adams_johnson(&g.localize_infinity()).ok()?;
    let k = aj.lowest_weight()?;
    (multiplicity(&g, &k).ok()?.m == 1).then_some((g, k))
}

fn assert_consistent(r: &LiftResult) {
    recheck(r).unwrap();
    let text = serde_json::to_string(r).unwrap();
    let back: LiftResult = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn mode_a_matches_closed_form() {
    let mut rng = StdRng::seed_from_u64(11);
    let (mut decided, mut first, mut second) = (0, 0, 0);
    while decided < 200 {
        let Some((g, k)) = random_source(&mut rng) else { continue };
        let kf = rng.gen_range(2..=24i64);
        let d = rng.gen_range(1..=4u32);
        let spec = LiftSpec {
            mode: LiftMode::A,
            g: g.clone(),
            k: k.clone(),
            f: CuspidalDatum::elliptic("f", 2 * kf as u32),
            f_source: FSource::Elliptic { weight: 2 * kf as u32 },
            d,
        };
        let sh = k.shifted();
        let n = k.n() as i64;
        let di = d as i64;
        let is_first = sh.last().is_some_and(|&x| kf + di - 1 < x);
        let is_second = sh.first().is_none_or(|&x| kf - di > x);
        let r = match evaluate_lift(&spec) {
            Ok(r) => r,
            Err(LiftError::Hypothesis(_)) => {
                assert!(kf <= di || !(is_first || is_second), "{g}, k = {k}, k_f = {kf}, d = {d}");
                continue;
            }
            Err(LiftError::IntervalHypothesis(_) | LiftError::NotDiscrete(_)) => continue,
            Err(e) => panic!("{g} with k = {k}, f weight {}, d = {d}: {e}", 2 * kf),
        };
        assert!(kf > di && (is_first || is_second));
        let expected = if is_first { (kf - di - n) % 2 == 0 } else { (kf - di) % 2 == 0 };
        assert_eq!(r.automorphic, expected, "{g}, k = {k}, k_f = {kf}, d = {d}");
        let kp = r.k_prime.as_slice();
        let np = kp.len() as i64;
        let floor = sh.last().copied().map_or(kf - di, |x| x.min(kf - di));
        assert_eq!(kp[kp.len() - 1] - np, floor);
        assert_eq!(lift_a_weights(&k, kf, d).unwrap(), r.k_prime);
        assert_consistent(&r);
        decided += 1;
        if is_first {
            first += 1;
        } else {
            second += 1;
        }
    }
    assert!(first > 20 && second > 20, "cases: {first} / {second}");
}

#[test]
fn mode_b_matches_closed_form() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut decided = 0;
    let mut automorphic = 0;
    while decided < 200 {
        let Some((g, k)) = random_source(&mut rng) else { continue };
        let d = rng.gen_range(1..=2u32);
        let kf = rng.gen_range(2 * d + 2..=2 * d + 12);
        let j = 2 * rng.gen_range(d..=d + 10);
        let spec = LiftSpec {
            mode: LiftMode::B,
            g: g.clone(),
            k: k.clone(),
            f: CuspidalDatum::siegel2_spin("F", kf, j),
            f_source: FSource::Siegel2 { k: kf, j },
            d,
        };
        let r = match evaluate_lift(&spec) {
            Ok(r) => r,
            Err(LiftError::IntervalHypothesis(_) | LiftError::NotDiscrete(_) | LiftError::NotAJ(_)) => continue,
            Err(e) => panic!("{g} with k = {k}, F = ({kf}, {j}), d = {d}: {e}"),
        };
        assert_eq!(r.automorphic, kf % 2 == 0, "{g}, k = {k}, F = ({kf}, {j}), d = {d}");
        assert_consistent(&r);
        decided += 1;
        automorphic += usize::from(r.automorphic);
    }
    assert!(automorphic > 20 && automorphic < 180);
}

#[test]
fn odd_j_is_rejected() {
    let spec = LiftSpec {
        mode: LiftMode::B,
        g: empty_g(),
        k: WeightVector::empty(),
        f: CuspidalDatum::siegel2_spin("F", 6, 5),
        f_source: FSource::Siegel2 { k: 6, j: 5 },
        d: 1,
    };
    assert!(matches!(evaluate_lift(&spec), Err(LiftError::Hypothesis(_))));
}

#[test]
fn mismatched_f_arch_is_rejected() {
    let spec = LiftSpec {
        mode: LiftMode::A,
        g: empty_g(),
        k: WeightVector::empty(),
        f: CuspidalDatum::elliptic("f", 20),
        f_source: FSource::Elliptic { weight: 18 },
        d: 1,
    };
    assert!(matches!(evaluate_lift(&spec), Err(LiftError::FArchMismatch { .. })));
}

#[test]
fn uncertified_source_is_rejected() {
    let g = empty_g().prepend(CuspidalDatum::elliptic("Delta", 12), 2);
    let spec = LiftSpec {
        mode: LiftMode::A,
        g,
        k: WeightVector::scalar(7, 2),
        f: CuspidalDatum::elliptic("f", 40),
        f_source: FSource::Elliptic { weight: 40 },
        d: 1,
    };
    assert!(matches!(evaluate_lift(&spec), Err(LiftError::SourceNotCertified { .. })));
}

/// Every automorphic lift of eigenform data over a certified source with
/// data satisfies the Euler factor identity at every prime with data.
#[test]
fn factorization_holds_for_all_data_lifts() {
    let sources: Vec<(GlobalAParameter, WeightVector)> = vec![
        (empty_g(), WeightVector::empty()),
        (GlobalAParameter::new(vec![(sym2_with_data(12), 1)]), WeightVector::scalar(12, 1)),
        (empty_g().prepend(elliptic_with_data(18), 2), WeightVector::scalar(10, 2)),
    ];
    let mut checked = 0;
    for (g, k) in &sources {
        for w in EIGENFORM_WEIGHTS {
            for d in 1..=3u32 {
                let f = elliptic_with_data(w);
                let spec = LiftSpec {
                    mode: LiftMode::General,
                    g: g.clone(),
                    k: k.clone(),
                    f: f.clone(),
                    f_source: FSource::Elliptic { weight: w },
                    d,
                };
                let Ok(r) = evaluate_lift(&spec) else { continue };
                assert_consistent(&r);
                if !r.automorphic {
                    continue;
                }
                for p in [2u64, 3, 5, 7, 11, 13, 29] {
                    let c = verify_factorization(&r, f.form.as_ref().unwrap(), p).unwrap();
                    assert!(c.holds(), "{} at p = {p}", r.psi_lift);
                    assert!(c.lhs.is_rational(), "irrational coefficient for {}", r.psi_lift);
                    assert_eq!(c.lhs.degree() as u64, 2 * r.psi_lift.n() + 1);
                    let (satake, _, _) = parameter_satake(&r.psi_lift, p);
                    assert!(satake.is_inverse_closed() && satake.has_trivial_product());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} checks ran");
}

#[test]
fn miyawaki_euler_factor_is_rational() {
    let psi = common::miyawaki1_param();
    for p in [2u64, 3, 5] {
        let f = parameter_euler_factor(&psi, p).unwrap();
        assert_eq!(f.degree(), 7);
        assert!(f.is_rational());
    }
}

#[test]
fn opaque_data_reports_insufficient_hecke_data() {
    let psi = empty_g().prepend(CuspidalDatum::elliptic("f", 18), 2);
    let err = parameter_euler_factor(&psi, 2).unwrap_err();
    assert_eq!(err.code(), "insufficient_hecke_data");
    let psi = empty_g().prepend(CuspidalDatum::elliptic("f", 18).with_form(oracle_form(18)), 2);
    assert!(parameter_euler_factor(&psi, 31).is_err());
    assert!(matches!(
        parameter_euler_factor(&psi, 4),
        Err(amf_core::lfunctions::LfError::NotPrime(4))
    ));
}
