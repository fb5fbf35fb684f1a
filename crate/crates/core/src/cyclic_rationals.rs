//! Exact arithmetic in ℚ/ℤ.
//!
//! Every Hasse invariant lives here. Values are stored as a reduced fraction
//! `a/b` with `0 <= a < b`, so structural equality is value equality and the
//! type can be used directly as a map key.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseCyclicError {
    #[error("invalid fraction {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// An element of ℚ/ℤ in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicRational {
    num: BigUint,
    den: BigUint,
}

impl CyclicRational {
    /// Builds `num/den mod 1`. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let num = num.into();
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let den = den.magnitude().clone();
        let r = num.mod_floor(&BigInt::from_biguint(Sign::Plus, den.clone()));
        let r = r.magnitude().clone();
        Self::reduce(r, den)
    }

    fn reduce(num: BigUint, den: BigUint) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        CyclicRational { num: num / &g, den: den / g }
    }

    pub fn zero() -> Self {
        CyclicRational { num: BigUint::zero(), den: BigUint::one() }
    }

    pub fn half() -> Self {
        Self::new(1, 2)
    }

    /// `k / n` for machine-sized inputs.
    pub fn from_parts(k: i64, n: u64) -> Self {
        Self::new(k, n)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let a = &self.num * (&den / &self.den);
        let b = &other.num * (&den / &other.den);
        Self::reduce((a + b) % &den, den)
    }

    pub fn negate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        CyclicRational { num: &self.den - &self.num, den: self.den.clone() }
    }

    /// Additive order: the least `N >= 1` with `N * self = 0`.
    pub fn order(&self) -> BigUint {
        self.den.clone()
    }

    /// Order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.den.to_u64()
    }

    pub fn scalar_mul(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let prod = k * BigInt::from_biguint(Sign::Plus, self.num.clone());
        Self::new(prod, BigInt::from_biguint(Sign::Plus, self.den.clone()))
    }

    /// True iff `self` lies in `(1/n)ℤ/ℤ`.
    pub fn is_killed_by(&self, n: u64) -> bool {
        (BigUint::from(n) % &self.den).is_zero()
    }
}

impl Default for CyclicRational {
    fn default() -> Self {
        Self::zero()
    }
}

/// Orders by the representative in `[0, 1)`.
impl Ord for CyclicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for CyclicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &CyclicRational {
    type Output = CyclicRational;
    fn add(self, rhs: Self) -> CyclicRational {
        CyclicRational::add(self, rhs)
    }
}

impl Sub for &CyclicRational {
    type Output = CyclicRational;
    fn sub(self, rhs: Self) -> CyclicRational {
        self.add(&rhs.negate())
    }
}

impl Neg for &CyclicRational {
    type Output = CyclicRational;
    fn neg(self) -> CyclicRational {
        self.negate()
    }
}

impl Neg for CyclicRational {
    type Output = CyclicRational;
    fn neg(self) -> CyclicRational {
        self.negate()
    }
}

impl fmt::Display for CyclicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `"a/b"` or a bare integer, with any sign; the value is reduced mod 1.
impl FromStr for CyclicRational {
    type Err = ParseCyclicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| ParseCyclicError::Syntax(s.to_string()))?;
        let den: BigInt = d.parse().map_err(|_| ParseCyclicError::Syntax(s.to_string()))?;
        if den.is_zero() {
            return Err(ParseCyclicError::ZeroDenominator(s.to_string()));
        }
        Ok(Self::new(num, den))
    }
}

impl Serialize for CyclicRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
