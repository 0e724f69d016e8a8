//! Exact dyadic coordinates in `[0, 1]`.
//!
//! Every placement the strategy makes is a midpoint of two existing points,
//! so dyadic rationals are closed under all constructions and comparison is
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest denominator exponent. The numerator is a `u128`, so `2^MAX_EXP`
/// must fit with room for one doubling.
pub const MAX_EXP: u32 = 120;

/// `num / 2^exp`, normalized: `num` is odd, or `num == 0` with `exp == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    num: u128,
    exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error("expected a < b, got {0} and {1}")]
    InvalidOrder(Coord, Coord),
    #[error("value {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("denominator 2^{0} exceeds 2^{MAX_EXP}")]
    Precision(u32),
    #[error("malformed coordinate {0:?}, expected \"num/2^k\"")]
    Malformed(String),
}

impl Coord {
    pub const ZERO: Coord = Coord { num: 0, exp: 0 };
    pub const ONE: Coord = Coord { num: 1, exp: 0 };

    /// Builds `num / 2^exp` and normalizes it.
    pub fn new(num: u128, exp: u32) -> Result<Coord, CoordError> {
        if exp > MAX_EXP {
            return Err(CoordError::Precision(exp));
        }
        if num > (1u128 << exp) {
            return Err(CoordError::OutOfRange(format!("{num}/2^{exp}")));
        }
        Ok(Self::normalized(num, exp))
    }

    fn normalized(mut num: u128, mut exp: u32) -> Coord {
        if num == 0 {
            return Coord::ZERO;
        }
        let tz = num.trailing_zeros().min(exp);
        num >>= tz;
        exp -= tz;
        Coord { num, exp }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.exp
    }

    /// Numerator rescaled to denominator `2^exp`; `exp` must be at least `self.exp`.
    fn scaled(&self, exp: u32) -> u128 {
        self.num << (exp - self.exp)
    }

    /// Exact `(a + b) / 2`. Requires `a < b`.
    pub fn midpoint(a: Coord, b: Coord) -> Result<Coord, CoordError> {
        if a >= b {
            return Err(CoordError::InvalidOrder(a, b));
        }
        let exp = a.exp.max(b.exp) + 1;
        if exp > MAX_EXP {
            return Err(CoordError::Precision(exp));
        }
        let sum = a.scaled(exp - 1) + b.scaled(exp - 1);
        Ok(Self::normalized(sum, exp))
    }

    /// `1 - x`, the reflection through `1/2`.
    pub fn reflect(&self) -> Coord {
        Self::normalized((1u128 << self.exp) - self.num, self.exp)
    }

    /// Lossy conversion for display and proportional rendering only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (self.exp as f64).exp2()
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        self.scaled(exp).cmp(&other.scaled(exp))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coord {
    type Err = CoordError;

    fn from_str(s: &str) -> Result<Coord, CoordError> {
        let bad = || CoordError::Malformed(s.to_string());
        let (num, den) = s.split_once("/2^").ok_or_else(bad)?;
        let num: u128 = num.parse().map_err(|_| bad())?;
        let exp: u32 = den.parse().map_err(|_| bad())?;
        let c = Coord::new(num, exp)?;
        // Only the normalized spelling is accepted, so parse and print are inverse.
        if c.num != num || c.exp != exp {
            return Err(bad());
        }
        Ok(c)
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Coord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
