//! Hecke eigenvalue data for the forms feeding cuspidal data, and the
//! q-expansion oracle that produces it.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ring::HalfPower;
use super::LfError;

/// How the unramified Satake parameter of a cuspidal datum is expressed
/// through its eigenform data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalShape {
    /// Symbolic units only; no numeric Euler factor is available.
    #[default]
    Opaque,
    /// The trivial character.
    Trivial,
    /// The Satake units of the attached form itself.
    Standard,
    /// `Sym²` of an elliptic form: `α², 1, α^{-2}`.
    Sym2,
}

impl LocalShape {
    pub fn is_opaque(&self) -> bool {
        *self == LocalShape::Opaque
    }
}

/// Classical Hecke eigenvalues `a_p` of a level-one elliptic eigenform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeData {
    pub name: String,
    pub weight: u32,
    #[serde(with = "prime_map")]
    pub ap: BTreeMap<u64, i64>,
}

/// `γ + γ^{-1}` for a pair of unitary spin Satake units at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceValue {
    #[serde(default = "zero_str")]
    pub rational: String,
    #[serde(default = "zero_str")]
    pub sqrt: String,
}

fn zero_str() -> String {
    "0".into()
}

impl TraceValue {
    pub fn to_half_power(&self, p: u64) -> Result<HalfPower, LfError> {
        let parse = |s: &str| -> Result<BigRational, LfError> {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| LfError::BadNumber(s.to_string()))
        };
        Ok(HalfPower::new(p, parse(&self.rational)?, parse(&self.sqrt)?))
    }
}

/// A degree-two Siegel eigenform of weight `det^k Sym^j`, with optional
/// spin Satake traces in unitary normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinData {
    pub name: String,
    pub k: u32,
    pub j: u32,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_prime_map")]
    pub spin_satake: Option<BTreeMap<u64, [TraceValue; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawEigenform")]
pub enum EigenformData {
    Elliptic(HeckeData),
    Siegel2(SpinData),
}

/// Flat form of [`EigenformData`]; deserializing it streams, so errors keep
/// their position in the input.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEigenform {
    kind: String,
    name: String,
    weight: Option<u32>,
    #[serde(default, with = "opt_prime_map")]
    ap: Option<BTreeMap<u64, i64>>,
    k: Option<u32>,
    j: Option<u32>,
    #[serde(default, with = "opt_prime_map")]
    spin_satake: Option<BTreeMap<u64, [TraceValue; 2]>>,
}

impl TryFrom<RawEigenform> for EigenformData {
    type Error = String;
    fn try_from(r: RawEigenform) -> Result<Self, String> {
        let missing = |f: &str| format!("{} data needs field {f:?}", r.kind);
        match r.kind.as_str() {
            "elliptic" => Ok(EigenformData::Elliptic(HeckeData {
                weight: r.weight.ok_or_else(|| missing("weight"))?,
                ap: r.ap.clone().ok_or_else(|| missing("ap"))?,
                name: r.name,
            })),
            "siegel2" => Ok(EigenformData::Siegel2(SpinData {
                k: r.k.ok_or_else(|| missing("k"))?,
                j: r.j.ok_or_else(|| missing("j"))?,
                name: r.name,
                spin_satake: r.spin_satake,
            })),
            other => Err(format!("unknown kind {other:?}, expected \"elliptic\" or \"siegel2\"")),
        }
    }
}

impl EigenformData {
    pub fn name(&self) -> &str {
        match self {
            EigenformData::Elliptic(h) => &h.name,
            EigenformData::Siegel2(s) => &s.name,
        }
    }

    /// Unit labels, one per inverse pair of Satake units.
    pub fn unit_labels(&self) -> Vec<String> {
        match self {
            EigenformData::Elliptic(h) => vec![h.name.clone()],
            EigenformData::Siegel2(s) => vec![format!("{}#1", s.name), format!("{}#2", s.name)],
        }
    }

    /// `u + u^{-1}` at `p` for every unit label.
    pub fn traces(&self, p: u64) -> Result<BTreeMap<String, HalfPower>, LfError> {
        match self {
            EigenformData::Elliptic(h) => Ok(BTreeMap::from([(h.name.clone(), h.unitary_trace(p)?)])),
            EigenformData::Siegel2(s) => {
                let pair = s
                    .spin_satake
                    .as_ref()
                    .and_then(|m| m.get(&p))
                    .ok_or_else(|| LfError::MissingPrime { name: s.name.clone(), p })?;
                let labels = self.unit_labels();
                Ok(BTreeMap::from([
                    (labels[0].clone(), pair[0].to_half_power(p)?),
                    (labels[1].clone(), pair[1].to_half_power(p)?),
                ]))
            }
        }
    }
}

impl HeckeData {
    pub fn a_p(&self, p: u64) -> Result<i64, LfError> {
        self.ap
            .get(&p)
            .copied()
            .ok_or_else(|| LfError::MissingPrime { name: self.name.clone(), p })
    }

    /// `α + α^{-1} = a_p p^{-(w-1)/2}`.
    pub fn unitary_trace(&self, p: u64) -> Result<HalfPower, LfError> {
        let a = self.a_p(p)?;
        Ok(&HalfPower::from_int(p, a) * &HalfPower::sqrt_p_pow(p, -(self.weight as i64 - 1)))
    }

    /// Eigenvalues from the oracle at every prime `≤ bound`.
    pub fn from_oracle(name: impl Into<String>, weight: u32, bound: u64) -> Result<Self, LfError> {
        let coeffs = oracle_q_expansion(weight, bound as usize)?;
        let ap = primes_up_to(bound)
            .into_iter()
            .map(|p| {
                let v = coeffs[p as usize]
                    .to_i64()
                    .ok_or_else(|| LfError::BadNumber(coeffs[p as usize].to_string()))?;
                Ok((p, v))
            })
            .collect::<Result<_, LfError>>()?;
        Ok(HeckeData { name: name.into(), weight, ap })
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Level-one weights whose cusp space is one-dimensional.
pub const EIGENFORM_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn eisenstein(c: i64, power: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::from(1);
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let sigma: BigInt = (1..=n as u64)
            .filter(|d| (n as u64).is_multiple_of(*d))
            .map(|d| BigInt::from(d).pow(power))
            .sum();
        *slot = sigma * c;
    }
    out
}

/// `Δ = q Π (1 - q^n)^{24}`, coefficients of `q^0 … q^{len-1}`.
fn delta_series(len: usize) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); len];
    prod[0] = BigInt::from(1);
    for n in 1..len {
        for _ in 0..24 {
            // multiply in place by (1 - q^n), highest degree first
            for i in (n..len).rev() {
                let t = prod[i - n].clone();
                prod[i] -= t;
            }
        }
    }
    let mut out = vec![BigInt::zero(); len];
    out[1..len].clone_from_slice(&prod[..len - 1]);
    out
}

/// Coefficients `a_0 … a_count` of the normalized level-one eigenform of the
/// given weight, built from `Δ`, `E_4 = 1 + 240 Σ σ_3(n) q^n` and
/// `E_6 = 1 - 504 Σ σ_5(n) q^n`.
pub fn oracle_q_expansion(weight: u32, count: usize) -> Result<Vec<BigInt>, LfError> {
    let len = count + 1;
    let delta = delta_series(len);
    let e4 = eisenstein(240, 3, len);
    let e6 = eisenstein(-504, 5, len);
    let factors: Vec<&Vec<BigInt>> = match weight {
        12 => vec![],
        16 => vec![&e4],
        18 => vec![&e6],
        20 => vec![&e4, &e4],
        22 => vec![&e4, &e6],
        26 => vec![&e4, &e4, &e6],
        w => return Err(LfError::NotEigenformWeight { weight: w }),
    };
    Ok(factors.into_iter().fold(delta, |acc, e| mul_trunc(&acc, e, len)))
}

/// Reads an eigenform JSON file.
pub fn load_eigenform_data(path: impl AsRef<Path>) -> Result<EigenformData, LfError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LfError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_eigenform_data(&text).map_err(|e| match e {
        LfError::Parse { line, column, message, .. } => LfError::Parse {
            path: path.display().to_string(),
            line,
            column,
            message,
        },
        other => other,
    })
}

pub fn parse_eigenform_data(text: &str) -> Result<EigenformData, LfError> {
    serde_json::from_str(text).map_err(|e| LfError::Parse {
        path: "<input>".into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_prime<E: serde::de::Error>(k: &str) -> Result<u64, E> {
    let p: u64 = k.parse().map_err(|_| E::custom(format!("key {k:?} is not an integer")))?;
    if !is_prime(p) {
        return Err(E::custom(format!("key {p} is not prime")));
    }
    Ok(p)
}

mod prime_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer, V: Serialize>(m: &BTreeMap<u64, V>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D, V>(d: D) -> Result<BTreeMap<u64, V>, D::Error>
    where
        D: Deserializer<'de>,
        V: Deserialize<'de>,
    {
        let raw = BTreeMap::<String, V>::deserialize(d)?;
        raw.into_iter().map(|(k, v)| Ok((parse_prime(&k)?, v))).collect()
    }
}

mod opt_prime_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer, V: Serialize>(
        m: &Option<BTreeMap<u64, V>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => super::prime_map::serialize(m, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D, V>(d: D) -> Result<Option<BTreeMap<u64, V>>, D::Error>
    where
        D: Deserializer<'de>,
        V: Deserialize<'de>,
    {
        let raw = Option::<BTreeMap<String, V>>::deserialize(d)?;
        raw.map(|m| m.into_iter().map(|(k, v)| Ok((parse_prime(&k)?, v))).collect())
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent `τ(n)` oracle: expand `Π (1-q^n)^{24}` via the
    /// pentagonal-free route `η^{24} = (η^3)^8`, using Jacobi's identity
    /// `Π (1-q^n)^3 = Σ (-1)^m (2m+1) q^{m(m+1)/2}`.
    fn tau_via_jacobi(len: usize) -> Vec<BigInt> {
        let mut eta3 = vec![BigInt::zero(); len];
        let mut m = 0usize;
        while m * (m + 1) / 2 < len {
            let sign = if m.is_multiple_of(2) { 1 } else { -1 };
            eta3[m * (m + 1) / 2] = BigInt::from(sign * (2 * m as i64 + 1));
            m += 1;
        }
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = BigInt::from(1);
        for _ in 0..8 {
            acc = mul_trunc(&acc, &eta3, len);
        }
        let mut out = vec![BigInt::zero(); len];
        out[1..].clone_from_slice(&acc[..len - 1]);
        out
    }

    #[test]
    fn delta_matches_jacobi() {
        assert_eq!(oracle_q_expansion(12, 60).unwrap(), tau_via_jacobi(61));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_q_expansion(12, 3).unwrap()[2], BigInt::from(-24));
        assert_eq!(oracle_q_expansion(12, 3).unwrap()[3], BigInt::from(252));
        assert_eq!(oracle_q_expansion(18, 3).unwrap()[2], BigInt::from(-528));
        assert!(matches!(
            oracle_q_expansion(24, 3),
            Err(LfError::NotEigenformWeight { weight: 24 })
        ));
    }

    #[test]
    fn oracle_is_multiplicative() {
        for w in EIGENFORM_WEIGHTS {
            let a = oracle_q_expansion(w, 40).unwrap();
            assert_eq!(a[1], BigInt::from(1));
            // a_{mn} = a_m a_n for coprime m, n
            assert_eq!(&a[2] * &a[3], a[6].clone(), "weight {w}");
            assert_eq!(&a[5] * &a[7], a[35].clone(), "weight {w}");
            // a_{p^2} = a_p^2 - p^{w-1}
            let p2 = BigInt::from(2).pow(w - 1);
            assert_eq!(&a[2] * &a[2] - p2, a[4].clone(), "weight {w}");
        }
    }

    #[test]
    fn json_schema() {
        let text = r#"{"name": "Delta", "kind": "elliptic", "weight": 12, "ap": {"2": -24, "3": 252}}"#;
        let d = parse_eigenform_data(text).unwrap();
        match &d {
            EigenformData::Elliptic(h) => {
                assert_eq!(h.a_p(2).unwrap(), -24);
                assert_eq!(h.a_p(3).unwrap(), 252);
            }
            _ => panic!("wrong kind"),
        }
        let back: EigenformData = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);

        let bad = "{\"name\": \"x\",\n \"kind\": \"elliptic\", \"weight\": 12, \"ap\": {\"4\": 1}}";
        match parse_eigenform_data(bad) {
            Err(LfError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }

        let spin = r#"{"kind": "siegel2", "name": "F", "k": 4, "j": 4,
            "spin_satake": {"2": [{"rational": "1/2"}, {"sqrt": "-1/3"}]}}"#;
        let d = parse_eigenform_data(spin).unwrap();
        let t = d.traces(2).unwrap();
        assert_eq!(t["F#2"].to_string(), "-1/3√2");
    }
}
