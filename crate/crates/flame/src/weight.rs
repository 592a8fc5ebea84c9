//! Exact nonnegative edge weights.
//!
//! Weights are decimals with at most nine fractional digits, stored as an
//! integer count of 1e-9 units so that comparisons and sums are exact.

use std::fmt;
use std::str::FromStr;

/// Number of 1e-9 units in 1.
pub const WEIGHT_SCALE: u128 = 1_000_000_000;

/// Exact nonnegative weight in 1e-9 units. Sums accumulate in 128 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(u128);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(WEIGHT_SCALE);

    /// Weight equal to the whole number `units`.
    pub fn from_units(units: u64) -> Weight {
        Weight(units as u128 * WEIGHT_SCALE)
    }

    /// Weight from a raw count of 1e-9 units.
    pub fn from_raw(raw: u128) -> Weight {
        Weight(raw)
    }

    pub fn raw(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, rhs: Weight) -> Option<Weight> {
        self.0.checked_add(rhs.0).map(Weight)
    }

    /// Exact sum; panics on (astronomically unlikely) 128-bit overflow.
    pub fn sum<I: IntoIterator<Item = Weight>>(weights: I) -> Weight {
        weights.into_iter().fold(Weight::ZERO, |acc, w| {
            acc.checked_add(w).expect("weight sum overflows 128 bits")
        })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / WEIGHT_SCALE;
        let frac = self.0 % WEIGHT_SCALE;
        if frac == 0 {
            write!(f, "{int}")
        } else {
            let digits = format!("{frac:09}");
            write!(f, "{int}.{}", digits.trim_end_matches('0'))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightParseError {
    Malformed,
    Negative,
    TooManyFractionDigits,
    Overflow,
}

impl fmt::Display for WeightParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightParseError::Malformed => write!(f, "malformed weight"),
            WeightParseError::Negative => write!(f, "negative weight"),
            WeightParseError::TooManyFractionDigits => {
                write!(f, "weight has more than 9 fractional digits")
            }
            WeightParseError::Overflow => write!(f, "weight out of range"),
        }
    }
}

impl std::error::Error for WeightParseError {}

impl FromStr for Weight {
    type Err = WeightParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.starts_with('-') {
            return Err(WeightParseError::Negative);
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(WeightParseError::Malformed);
        }
        if s.contains('.') && (frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()))
        {
            return Err(WeightParseError::Malformed);
        }
        if frac_part.len() > 9 {
            return Err(WeightParseError::TooManyFractionDigits);
        }
        let int: u128 = int_part.parse().map_err(|_| WeightParseError::Overflow)?;
        let mut frac: u128 = 0;
        for b in frac_part.bytes() {
            frac = frac * 10 + (b - b'0') as u128;
        }
        frac *= 10u128.pow(9 - frac_part.len() as u32);
        int.checked_mul(WEIGHT_SCALE)
            .and_then(|v| v.checked_add(frac))
            .map(Weight)
            .ok_or(WeightParseError::Overflow)
    }
}
