//! End-to-end acceptance criteria. Each criterion runs under its time budget
//! and reports one PASS/FAIL line on stderr.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use amf_core::ajpackets::{smo_exception, AJParameter, WeightVector};
use amf_core::archrep::Sign;
use amf_core::lfunctions::{verify_factorization, EigenformData, HeckeData};
use amf_core::lifting::{evaluate_lift, named_instance, FSource, LiftError, LiftMode, LiftSpec, NamedParams};
use amf_core::lifting::empty_g;
use amf_core::params::CuspidalDatum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{random_parameter, FIXTURE_PRIME_BOUND};

fn criterion_1_epsilon_equivalence() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut seen = BTreeSet::new();
    let mut ok = 0usize;
    let mut attempts = 0usize;
    while ok < 600 {
        attempts += 1;
        assert!(attempts < 2_000_000, "generator stalled at {ok} parameters");
        let psi = random_parameter(&mut rng);
        if psi.n() > 4 || psi.validate().is_err() || !seen.insert(format!("{psi:?}")) {
            continue;
        }
        let direct = psi.epsilon_direct();
        let table = psi.epsilon_adjoint_table();
        match (&direct, &table) {
            (Ok(chi), Ok(t)) => {
                assert_eq!(t.len() as u64, psi.component_group().order());
                for (e, s) in t {
                    assert_eq!(chi.eval(*e), *s, "{psi} at {:?}", e.subset(psi.rank()));
                }
                assert_eq!(chi.at_central(), Sign::Plus, "{psi}");
                ok += 1;
            }
            (Err(a), Err(b)) => assert_eq!(a, b, "{psi}"),
            _ => panic!("methods disagree on {psi}: {direct:?} vs {table:?}"),
        }
    }
    assert!(ok >= 500);
}

fn criterion_2_miyawaki() {
    for (name, k, expected) in [
        ("miyawaki1", 12, "L(s,g,std)·L(s+10,f)·L(s+9,f)"),
        ("miyawaki2", 14, "L(s,g,std)·L(s+13,f)·L(s+12,f)"),
    ] {
        let spec = named_instance(name, NamedParams { k: Some(k), ..Default::default() }).unwrap();
        let r = evaluate_lift(&spec).unwrap();
        assert_eq!(r.k_prime, WeightVector::scalar(k as i64, 3), "{name}");
        assert!(r.automorphic && r.m == 1, "{name}");
        assert_eq!(r.factorization, expected, "{name}");
        // Shift pattern L(s+k-2,f)L(s+k-3,f) resp. L(s+k-1,f)L(s+k-2,f).
        let top = if name == "miyawaki1" { k - 2 } else { k - 1 };
        let shifts: Vec<i64> = r.factors.factors.iter().map(|f| f.shift.to_integer().unwrap()).collect();
        assert_eq!(shifts, vec![top as i64, top as i64 - 1]);
    }
}

fn criterion_3_ikeda_parity() {
    for two_k in (6..=40u32).step_by(2) {
        let k = two_k / 2;
        for d in 1..=6u32 {
            let spec = LiftSpec {
                mode: LiftMode::A,
                g: empty_g(),
                k: WeightVector::empty(),
                f: CuspidalDatum::elliptic("f", two_k),
                f_source: FSource::Elliptic { weight: two_k },
                d,
            };
            let result = evaluate_lift(&spec);
            if k <= d {
                assert!(matches!(result, Err(LiftError::Hypothesis(_))), "k={k} d={d}: {result:?}");
                continue;
            }
            let r = result.unwrap();
            assert_eq!(r.automorphic, k % 2 == d % 2, "k={k} d={d}");
            assert_eq!(r.k_prime, WeightVector::scalar((k + d) as i64, 2 * d as usize));
        }
    }
}

fn criterion_4_ibukiyama1() {
    for m in [6u32, 8] {
        let spec = named_instance("ibukiyama1", NamedParams { n0: Some(2), m: Some(m), ..Default::default() }).unwrap();
        let r = evaluate_lift(&spec).unwrap();
        assert_eq!(r.k_prime, WeightVector::scalar(m as i64, 4));
        assert_eq!(r.automorphic, m % 2 == 0);
        assert_eq!(r.psi_lift.n(), 4);
    }
}

fn criterion_5_euler_identity() {
    let cases: [(u32, u32); 2] = [(18, 1), (12, 2)];
    for (weight, d) in cases {
        let data = HeckeData::from_oracle("f", weight, FIXTURE_PRIME_BOUND).unwrap();
        if weight == 12 {
            assert_eq!(data.a_p(2).unwrap(), -24);
        }
        let form = EigenformData::Elliptic(data.clone());
        let spec = LiftSpec {
            mode: LiftMode::A,
            g: empty_g(),
            k: WeightVector::empty(),
            f: CuspidalDatum::elliptic("f", weight).with_form(form.clone()),
            f_source: FSource::Elliptic { weight },
            d,
        };
        let r = evaluate_lift(&spec).unwrap();
        assert!(r.automorphic);
        for p in [2u64, 3, 5] {
            let check = verify_factorization(&r, &form, p).unwrap();
            assert!(check.holds(), "weight {weight}, p = {p}");
            assert_eq!(check.lhs.degree(), 4 * d as usize + 1);
            assert!(check.lhs.is_rational());
            let mut bad = data.clone();
            *bad.ap.get_mut(&p).unwrap() += 1;
            let check = verify_factorization(&r, &EigenformData::Elliptic(bad), p).unwrap();
            assert!(!check.holds(), "mutated a_{p} still verifies");
        }
    }
}

fn criterion_6_packets() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut count = 0;
    let mut all_ones = 0;
    while count < 200 {
        let t = rng.gen_range(0..=4usize);
        let ones = rng.gen_bool(0.3);
        let d0 = if ones { 1 } else { 2 * rng.gen_range(0..=2u32) + 1 };
        let mut blocks = Vec::new();
        let (mut alpha, mut prev_d) = (0u32, d0);
        for i in 0..t {
            let d = if ones { 1 } else { rng.gen_range(1..=4u32) };
            let need = d + prev_d;
            alpha = if i == 0 { need } else { alpha + need } + rng.gen_range(0..=3);
            if (alpha + d) % 2 == 0 {
                alpha += 1;
            }
            blocks.push((alpha, d));
            prev_d = d;
        }
        let sum_d: u32 = blocks.iter().map(|b| b.1).sum();
        let p = AJParameter::new(&blocks, ((sum_d % 2) as u8, d0)).expect("generated parameter is AJ");
        let members = p.packet_members();
        let expected: u64 = p.blocks.iter().map(|b| b.d as u64 + 1).product();
        assert_eq!(members.len() as u64, expected);
        let all_d_one = p.tail.d0 == 1 && p.blocks.iter().all(|b| b.d == 1);
        for w in &members {
            let c = p.member_character(w).unwrap();
            assert_eq!(c.at_central(), Sign::Plus);
            if all_d_one {
                for (i, &(pi, qi)) in w.signature.iter().enumerate() {
                    let v = if i % 2 == 0 { pi as i64 - qi as i64 } else { qi as i64 - pi as i64 };
                    assert_eq!(c.values[i].to_i8() as i64, v);
                }
            }
        }
        all_ones += usize::from(all_d_one);
        count += 1;
    }
    assert!(all_ones > 20, "too few all-ones parameters: {all_ones}");
}

fn criterion_7_smo() {
    for n in 1..=20u32 {
        for k1 in 1..=25u32 {
            for k2 in 1..=25u32 {
                if k1 == k2 {
                    continue;
                }
                let pair: BTreeSet<u32> = [k1, k2].into();
                let expected = n % 2 == 0 && pair == BTreeSet::from([n / 2, n / 2 + 1]);
                assert_eq!(smo_exception(n, k1, k2), expected, "n={n} k1={k1} k2={k2}");
            }
        }
    }
}

#[test]
fn acceptance_suite() {
    type Criterion = (u8, &'static str, fn(), Duration);
    let criteria: [Criterion; 7] = [
        (1, "epsilon algorithm equivalence", criterion_1_epsilon_equivalence, Duration::from_secs(60)),
        (2, "Miyawaki lifts", criterion_2_miyawaki, Duration::from_secs(1)),
        (3, "Ikeda and Saito-Kurokawa parity", criterion_3_ikeda_parity, Duration::from_secs(1)),
        (4, "Ibukiyama type I", criterion_4_ibukiyama1, Duration::from_secs(1)),
        (5, "Euler factor identity", criterion_5_euler_identity, Duration::from_secs(1)),
        (6, "Adams-Johnson packet suite", criterion_6_packets, Duration::from_secs(10)),
        (7, "SMO exception table", criterion_7_smo, Duration::from_secs(1)),
    ];
    let mut failures = Vec::new();
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(()) if elapsed <= budget => ("PASS", String::new()),
            Ok(()) => ("FAIL", format!(" over budget {budget:?}")),
            Err(_) => ("FAIL", " assertion failed".to_string()),
        };
        if status == "FAIL" {
            failures.push(id);
        }
        let _ = writeln!(
            std::io::stderr(),
            "acceptance criterion {id} ({name}): {status} in {:.3}s{detail}",
            elapsed.as_secs_f64()
        );
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
