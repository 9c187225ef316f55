//! Exact half-integer indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// A number from `{…, -1, -1/2, 0, 1/2, 1, …}`, stored as twice its value so
/// that arithmetic never rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const MINUS_HALF: HalfInt = HalfInt { twice: -1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// The half-integer `twice / 2`.
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// Converts a float that is an exact multiple of one half.
    pub fn from_f64(v: f64) -> Option<Self> {
        let t = 2.0 * v;
        if t.is_finite() && t.fract() == 0.0 && t.abs() <= i32::MAX as f64 {
            Some(HalfInt { twice: t as i32 })
        } else {
            None
        }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True for the odd multiples of one half.
    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// The integer value, if there is one.
    pub const fn as_int(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// True when `self - other` is an integer.
    pub const fn congruent(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// Values `self, self + 1, …, end` (empty if `end < self`).
    pub fn steps_to(self, end: HalfInt) -> impl Iterator<Item = HalfInt> {
        (self.twice..=end.twice)
            .step_by(2)
            .map(HalfInt::from_twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfIntError(String);

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a half-integer: {:?}", self.0)
    }
}

impl std::error::Error for ParseHalfIntError {}

/// Accepts `3/2`, `-1/2`, `2`, and decimal forms such as `1.5`.
impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| err())?;
            match den.trim() {
                "2" => Ok(HalfInt::from_twice(num)),
                "1" => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(err),
                _ => Err(err()),
            }
        } else {
            let v: f64 = s.parse().map_err(|_| err())?;
            HalfInt::from_f64(v).ok_or_else(err)
        }
    }
}
