//! Exact nonnegative fixed-point weights.
//!
//! Values are stored as integer micro-units (six fractional decimal digits),
//! so path sums and distance comparisons are exact.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of micro-units in one weight unit.
pub const SCALE: u64 = 1_000_000;
const FRACTION_DIGITS: usize = 6;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightParseError {
    Negative,
    Malformed,
    TooManyDigits,
    Overflow,
}

impl fmt::Display for WeightParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            WeightParseError::Negative => "negative weight",
            WeightParseError::Malformed => "malformed decimal",
            WeightParseError::TooManyDigits => "more than 6 fractional digits",
            WeightParseError::Overflow => "weight out of range",
        };
        f.write_str(msg)
    }
}

impl std::error::Error for WeightParseError {}

impl Weight {
    pub const ZERO: Weight = Weight(0);

    pub const fn from_micros(micros: u64) -> Self {
        Weight(micros)
    }

    pub const fn from_int(units: u64) -> Self {
        Weight(units * SCALE)
    }

    pub const fn micros(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }

    pub fn checked_add(self, other: Weight) -> Option<Weight> {
        self.0.checked_add(other.0).map(Weight)
    }

    /// `self ≤ (1 + eps) · reference`, evaluated exactly with `eps` given in
    /// micro-units.
    pub fn within_stretch(self, reference: Weight, eps_micros: u64) -> bool {
        (self.0 as u128) * (SCALE as u128) <= (reference.0 as u128) * ((SCALE + eps_micros) as u128)
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0.checked_add(rhs.0).expect("weight overflow"))
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl FromStr for Weight {
    type Err = WeightParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = if let Some(rest) = s.strip_prefix('-') {
            if rest.chars().all(|c| c.is_ascii_digit() || c == '.') && !rest.is_empty() {
                return Err(WeightParseError::Negative);
            }
            return Err(WeightParseError::Malformed);
        } else {
            s.strip_prefix('+').unwrap_or(s)
        };
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(WeightParseError::Malformed);
        }
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(WeightParseError::Malformed);
        }
        if frac_part.len() > FRACTION_DIGITS {
            return Err(WeightParseError::TooManyDigits);
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| WeightParseError::Overflow)?
        };
        let mut frac_val: u64 = 0;
        for (i, c) in frac_part.chars().enumerate() {
            frac_val += (c as u64 - '0' as u64) * 10u64.pow((FRACTION_DIGITS - 1 - i) as u32);
        }
        int_val
            .checked_mul(SCALE)
            .and_then(|v| v.checked_add(frac_val))
            .map(Weight)
            .ok_or(WeightParseError::Overflow)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            write!(f, "{int}")
        } else {
            let digits = format!("{frac:06}");
            write!(f, "{int}.{}", digits.trim_end_matches('0'))
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct WeightVisitor;

impl Visitor<'_> for WeightVisitor {
    type Value = Weight;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a nonnegative decimal with at most 6 fractional digits")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Weight, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Weight, E> {
        v.checked_mul(SCALE)
            .map(Weight)
            .ok_or_else(|| E::custom(WeightParseError::Overflow))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Weight, E> {
        if v < 0 {
            return Err(E::custom(WeightParseError::Negative));
        }
        self.visit_u64(v as u64)
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Weight, E> {
        if v < 0.0 || !v.is_finite() {
            return Err(E::custom(WeightParseError::Negative));
        }
        Ok(Weight((v * SCALE as f64).round() as u64))
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(WeightVisitor)
    }
}
