//! Exact arithmetic in `ℚ(√p)` and polynomials over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b√p` for a fixed prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPower {
    p: u64,
    a: BigRational,
    b: BigRational,
}

impl HalfPower {
    pub fn new(p: u64, a: BigRational, b: BigRational) -> Self {
        HalfPower { p, a, b }
    }

    pub fn zero(p: u64) -> Self {
        HalfPower::new(p, BigRational::zero(), BigRational::zero())
    }

    pub fn one(p: u64) -> Self {
        HalfPower::from_int(p, 1)
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        HalfPower::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u64, a: BigRational) -> Self {
        HalfPower::new(p, a, BigRational::zero())
    }

    /// `p^{e/2}`.
    pub fn sqrt_p_pow(p: u64, e: i64) -> Self {
        let base = BigRational::from_integer(BigInt::from(p));
        let pow = |n: i64| -> BigRational {
            let mag = num_traits::pow(base.clone(), n.unsigned_abs() as usize);
            if n < 0 {
                mag.recip()
            } else {
                mag
            }
        };
        if e.rem_euclid(2) == 0 {
            HalfPower::from_rational(p, pow(e / 2))
        } else {
            HalfPower::new(p, BigRational::zero(), pow((e - 1).div_euclid(2)))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, other: &HalfPower) {
        assert_eq!(self.p, other.p, "mixing Q(sqrt p) for different primes");
    }

    pub fn scale(&self, c: &BigRational) -> HalfPower {
        HalfPower::new(self.p, &self.a * c, &self.b * c)
    }
}

impl Add for &HalfPower {
    type Output = HalfPower;
    fn add(self, rhs: &HalfPower) -> HalfPower {
        self.check(rhs);
        HalfPower::new(self.p, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &HalfPower {
    type Output = HalfPower;
    fn sub(self, rhs: &HalfPower) -> HalfPower {
        self.check(rhs);
        HalfPower::new(self.p, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &HalfPower {
    type Output = HalfPower;
    fn mul(self, rhs: &HalfPower) -> HalfPower {
        self.check(rhs);
        let p = BigRational::from_integer(BigInt::from(self.p));
        HalfPower::new(
            self.p,
            &self.a * &rhs.a + &self.b * &rhs.b * p,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &HalfPower {
    type Output = HalfPower;
    fn neg(self) -> HalfPower {
        HalfPower::new(self.p, -&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HalfPower {
            type Output = HalfPower;
            fn $m(self, rhs: HalfPower) -> HalfPower {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for HalfPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√{}", self.p);
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&fmt_rational(&self.a)),
            (true, false) => write!(f, "{}{}", fmt_rational(&self.b), root),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}{}", fmt_rational(&self.a), sign, fmt_rational(&self.b.abs()), root)
            }
        }
    }
}

/// A local factor `L_p(s)^{-1}` as a polynomial in `X = p^{-s}`, lowest
/// degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    p: u64,
    coeffs: Vec<HalfPower>,
}

impl EulerFactor {
    pub fn one(p: u64) -> Self {
        EulerFactor { p, coeffs: vec![HalfPower::one(p)] }
    }

    /// Builds a factor from coefficients, trimming trailing zeros.
    ///
    /// Panics unless the constant term is 1.
    pub fn from_coeffs(p: u64, mut coeffs: Vec<HalfPower>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(HalfPower::is_zero) {
            coeffs.pop();
        }
        assert!(
            coeffs.first() == Some(&HalfPower::one(p)),
            "Euler factor must have constant term 1"
        );
        EulerFactor { p, coeffs }
    }

    /// `1 - c X`.
    pub fn linear(c: HalfPower) -> Self {
        let p = c.prime();
        EulerFactor::from_coeffs(p, vec![HalfPower::one(p), -&c])
    }

    /// `1 - t X + s X²`.
    pub fn quadratic(t: HalfPower, s: HalfPower) -> Self {
        let p = t.prime();
        EulerFactor::from_coeffs(p, vec![HalfPower::one(p), -&t, s])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[HalfPower] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> HalfPower {
        self.coeffs.get(i).cloned().unwrap_or_else(|| HalfPower::zero(self.p))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(HalfPower::is_rational)
    }

    /// Index of the first coefficient where the two factors differ.
    pub fn first_difference(&self, other: &EulerFactor) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&i| self.coeff(i) != other.coeff(i))
    }
}

impl Mul for &EulerFactor {
    type Output = EulerFactor;
    fn mul(self, rhs: &EulerFactor) -> EulerFactor {
        assert_eq!(self.p, rhs.p);
        let mut out = vec![HalfPower::zero(self.p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        EulerFactor::from_coeffs(self.p, out)
    }
}

impl Mul for EulerFactor {
    type Output = EulerFactor;
    fn mul(self, rhs: EulerFactor) -> EulerFactor {
        &self * &rhs
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let body = if c.is_rational() {
                let a = c.rational_part();
                let neg = a.is_negative();
                let mag = fmt_rational(&a.abs());
                let coef = if i > 0 && a.abs().is_one() { String::new() } else { mag };
                (neg, coef)
            } else {
                (false, format!("({c})"))
            };
            if first {
                write!(f, "{}{}{}", if body.0 { "-" } else { "" }, body.1, mono)?;
            } else {
                write!(f, " {} {}{}", if body.0 { "-" } else { "+" }, body.1, mono)?;
            }
            first = false;
        }
        Ok(())
    }
}
