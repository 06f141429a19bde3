//! Exact non-negative rationals and the toughness value domain.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `a/b` with `a >= 0`, `b > 0`.
///
/// Zero is stored as `0/1`. Displays and serializes as `"a/b"` even for
/// integers, so `1` prints as `1/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(Ratio<BigUint>);

impl ExactRational {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidRational(format!("{numer}/0")));
        }
        Ok(Self(Ratio::new(BigUint::from(numer), BigUint::from(denom))))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn frac(numer: u64, denom: u64) -> Self {
        Self::new(numer, denom).expect("zero denominator")
    }

    pub fn integer(value: u64) -> Self {
        Self(Ratio::from_integer(BigUint::from(value)))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numerator and denominator when both fit in a `u64`.
    pub fn to_u64_parts(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    /// `floor(self * k)`, saturating at `u64::MAX`.
    pub fn floor_mul(&self, k: u64) -> u64 {
        let v = self.numer() * BigUint::from(k) / self.denom();
        v.to_u64().unwrap_or(u64::MAX)
    }
}

impl Add for &ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &rhs.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"a/b"` or a bare integer; the result is reduced.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let s = s.trim();
        let (numer, denom) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let all_digits = |x: &str| !x.is_empty() && x.bytes().all(|c| c.is_ascii_digit());
        if !all_digits(numer) || !all_digits(denom) {
            return Err(bad());
        }
        let numer: BigUint = numer.parse().map_err(|_| bad())?;
        let denom: BigUint = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Self(Ratio::new(numer, denom)))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Toughness of a graph: `Zero` for disconnected graphs, `Infinite` for
/// complete graphs, otherwise an exact positive rational.
///
/// The derived order is `Zero < Finite(_) < Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ToughnessValue {
    Zero,
    Finite(ExactRational),
    Infinite,
}

impl ToughnessValue {
    fn rank(&self) -> u8 {
        match self {
            Self::Zero => 0,
            Self::Finite(_) => 1,
            Self::Infinite => 2,
        }
    }

    pub fn finite(&self) -> Option<&ExactRational> {
        match self {
            Self::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl PartialOrd for ToughnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ToughnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ToughnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("0"),
            Self::Finite(r) => write!(f, "{r}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ToughnessValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
