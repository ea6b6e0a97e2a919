//! The five idempotent semirings and their scalar arithmetic.
//!
//! | Semiring  | ⊕   | ⊗   | zero      | one       |
//! |-----------|-----|-----|-----------|-----------|
//! | `MaxPlus` | max | +   | `NEG_INF` | 0         |
//! | `MinPlus` | min | +   | `POS_INF` | 0         |
//! | `MaxMin`  | max | min | `NEG_INF` | `POS_INF` |
//! | `MinMax`  | min | max | `POS_INF` | `NEG_INF` |
//! | `Boolean` | or  | and | 0         | 1         |
//!
//! Values are 32-bit signed integers with the two extremes reserved as
//! infinities. Finite `+` saturates into `[NEG_INF + 1, POS_INF - 1]`, so a
//! sum of finite values is never mistaken for a sentinel.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Scalar element shared by every semiring.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(transparent)]
pub struct TropicalValue(pub(crate) i32);

impl TropicalValue {
    /// −∞, the zero of `MaxPlus`/`MaxMin` and the one of `MinMax`.
    pub const NEG_INF: TropicalValue = TropicalValue(i32::MIN);
    /// +∞, the zero of `MinPlus`/`MinMax` and the one of `MaxMin`.
    pub const POS_INF: TropicalValue = TropicalValue(i32::MAX);
    /// Smallest finite value.
    pub const MIN_FINITE: TropicalValue = TropicalValue(i32::MIN + 1);
    /// Largest finite value.
    pub const MAX_FINITE: TropicalValue = TropicalValue(i32::MAX - 1);

    #[inline]
    pub const fn new(raw: i32) -> Self {
        TropicalValue(raw)
    }

    #[inline]
    pub const fn raw(self) -> i32 {
        self.0
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != i32::MIN && self.0 != i32::MAX
    }

    /// Saturating finite addition computed in 64 bits.
    #[inline]
    pub(crate) fn saturating_sum(a: i32, b: i32) -> i32 {
        (a as i64 + b as i64).clamp(i32::MIN as i64 + 1, i32::MAX as i64 - 1) as i32
    }
}

impl From<i32> for TropicalValue {
    fn from(raw: i32) -> Self {
        TropicalValue(raw)
    }
}

impl From<TropicalValue> for i32 {
    fn from(v: TropicalValue) -> Self {
        v.0
    }
}

impl fmt::Debug for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            i32::MIN => f.write_str("-inf"),
            i32::MAX => f.write_str("inf"),
            v => write!(f, "{v}"),
        }
    }
}

impl FromStr for TropicalValue {
    type Err = Error;

    /// Parses a decimal integer in the finite range, or `inf`, `+inf`, `-inf`.
    fn from_str(token: &str) -> Result<Self, Self::Err> {
        match token {
            "inf" | "+inf" => return Ok(TropicalValue::POS_INF),
            "-inf" => return Ok(TropicalValue::NEG_INF),
            _ => {}
        }
        let wide: i64 = token
            .parse()
            .map_err(|_| Error::InvalidValue(token.to_string()))?;
        if wide < TropicalValue::MIN_FINITE.0 as i64 || wide > TropicalValue::MAX_FINITE.0 as i64 {
            return Err(Error::InvalidValue(token.to_string()));
        }
        Ok(TropicalValue(wide as i32))
    }
}

impl Serialize for TropicalValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_finite() {
            serializer.serialize_i32(self.0)
        } else {
            serializer.collect_str(self)
        }
    }
}

impl<'de> Deserialize<'de> for TropicalValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Token(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => v.to_string().parse().map_err(serde::de::Error::custom),
            Repr::Token(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Selects one of the five (⊕, ⊗, 0, 1) structures.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiring {
    /// (max, +): longest paths, scheduling.
    MaxPlus,
    /// (min, +): shortest paths.
    MinPlus,
    /// (max, min): bottleneck / widest paths.
    MaxMin,
    /// (min, max): minimax paths.
    MinMax,
    /// (or, and): reachability.
    Boolean,
}

impl Semiring {
    pub const ALL: [Semiring; 5] = [
        Semiring::MaxPlus,
        Semiring::MinPlus,
        Semiring::MaxMin,
        Semiring::MinMax,
        Semiring::Boolean,
    ];

    /// Additive identity, also the multiplicative annihilator.
    #[inline]
    pub const fn zero(self) -> TropicalValue {
        match self {
            Semiring::MaxPlus | Semiring::MaxMin => TropicalValue::NEG_INF,
            Semiring::MinPlus | Semiring::MinMax => TropicalValue::POS_INF,
            Semiring::Boolean => TropicalValue(0),
        }
    }

    /// Multiplicative identity.
    #[inline]
    pub const fn one(self) -> TropicalValue {
        match self {
            Semiring::MaxPlus | Semiring::MinPlus => TropicalValue(0),
            Semiring::MaxMin => TropicalValue::POS_INF,
            Semiring::MinMax => TropicalValue::NEG_INF,
            Semiring::Boolean => TropicalValue(1),
        }
    }

    #[inline]
    pub fn add(self, a: TropicalValue, b: TropicalValue) -> TropicalValue {
        match self {
            Semiring::MaxPlus | Semiring::MaxMin => a.max(b),
            Semiring::MinPlus | Semiring::MinMax => a.min(b),
            Semiring::Boolean => TropicalValue(a.0 | b.0),
        }
    }

    #[inline]
    pub fn mul(self, a: TropicalValue, b: TropicalValue) -> TropicalValue {
        match self {
            Semiring::MaxPlus => {
                if a == TropicalValue::NEG_INF || b == TropicalValue::NEG_INF {
                    TropicalValue::NEG_INF
                } else {
                    TropicalValue(TropicalValue::saturating_sum(a.0, b.0))
                }
            }
            Semiring::MinPlus => {
                if a == TropicalValue::POS_INF || b == TropicalValue::POS_INF {
                    TropicalValue::POS_INF
                } else {
                    TropicalValue(TropicalValue::saturating_sum(a.0, b.0))
                }
            }
            Semiring::MaxMin => a.min(b),
            Semiring::MinMax => a.max(b),
            Semiring::Boolean => TropicalValue(a.0 & b.0),
        }
    }

    /// Natural order of an idempotent semiring: `a ≤ b` iff `a ⊕ b = b`.
    #[inline]
    pub fn natural_leq(self, a: TropicalValue, b: TropicalValue) -> bool {
        self.add(a, b) == b
    }

    /// Maps an arbitrary raw value into the semiring's domain. Only Boolean
    /// needs this (nonzero becomes 1); used at matrix construction.
    #[inline]
    pub fn normalize(self, v: TropicalValue) -> TropicalValue {
        match self {
            Semiring::Boolean => TropicalValue((v.0 != 0) as i32),
            _ => v,
        }
    }

    /// Lowercase token used in files and on the command line.
    pub const fn token(self) -> &'static str {
        match self {
            Semiring::MaxPlus => "maxplus",
            Semiring::MinPlus => "minplus",
            Semiring::MaxMin => "maxmin",
            Semiring::MinMax => "minmax",
            Semiring::Boolean => "boolean",
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        Semiring::ALL
            .into_iter()
            .find(|s| s.token() == token)
            .ok_or_else(|| Error::UnknownSemiring(token.to_string()))
    }
}

/// Statically dispatched semiring operations for the hot kernels.
///
/// Each implementation must agree bit-for-bit with [`Semiring::add`] and
/// [`Semiring::mul`]. Adding a semiring means a new enum variant, one impl
/// here, and one arm in [`dispatch!`].
pub(crate) trait Kernel {
    const ZERO: i32;
    const ONE: i32;
    fn add(a: i32, b: i32) -> i32;
    fn mul(a: i32, b: i32) -> i32;
}

pub(crate) struct MaxPlusKernel;
pub(crate) struct MinPlusKernel;
pub(crate) struct MaxMinKernel;
pub(crate) struct MinMaxKernel;
pub(crate) struct BooleanKernel;

impl Kernel for MaxPlusKernel {
    const ZERO: i32 = i32::MIN;
    const ONE: i32 = 0;
    #[inline(always)]
    fn add(a: i32, b: i32) -> i32 {
        a.max(b)
    }
    #[inline(always)]
    fn mul(a: i32, b: i32) -> i32 {
        let sum = TropicalValue::saturating_sum(a, b);
        if (a == i32::MIN) | (b == i32::MIN) {
            i32::MIN
        } else {
            sum
        }
    }
}

impl Kernel for MinPlusKernel {
    const ZERO: i32 = i32::MAX;
    const ONE: i32 = 0;
    #[inline(always)]
    fn add(a: i32, b: i32) -> i32 {
        a.min(b)
    }
    #[inline(always)]
    fn mul(a: i32, b: i32) -> i32 {
        let sum = TropicalValue::saturating_sum(a, b);
        if (a == i32::MAX) | (b == i32::MAX) {
            i32::MAX
        } else {
            sum
        }
    }
}

impl Kernel for MaxMinKernel {
    const ZERO: i32 = i32::MIN;
    const ONE: i32 = i32::MAX;
    #[inline(always)]
    fn add(a: i32, b: i32) -> i32 {
        a.max(b)
    }
    #[inline(always)]
    fn mul(a: i32, b: i32) -> i32 {
        a.min(b)
    }
}

impl Kernel for MinMaxKernel {
    const ZERO: i32 = i32::MAX;
    const ONE: i32 = i32::MIN;
    #[inline(always)]
    fn add(a: i32, b: i32) -> i32 {
        a.min(b)
    }
    #[inline(always)]
    fn mul(a: i32, b: i32) -> i32 {
        a.max(b)
    }
}

impl Kernel for BooleanKernel {
    const ZERO: i32 = 0;
    const ONE: i32 = 1;
    #[inline(always)]
    fn add(a: i32, b: i32) -> i32 {
        a | b
    }
    #[inline(always)]
    fn mul(a: i32, b: i32) -> i32 {
        a & b
    }
}

/// Expands `$body` once per semiring with `$k` bound to its [`Kernel`].
macro_rules! dispatch {
    ($s:expr, $k:ident => $body:expr) => {
        match $s {
            $crate::semiring::Semiring::MaxPlus => {
                type $k = $crate::semiring::MaxPlusKernel;
                $body
            }
            $crate::semiring::Semiring::MinPlus => {
                type $k = $crate::semiring::MinPlusKernel;
                $body
            }
            $crate::semiring::Semiring::MaxMin => {
                type $k = $crate::semiring::MaxMinKernel;
                $body
            }
            $crate::semiring::Semiring::MinMax => {
                type $k = $crate::semiring::MinMaxKernel;
                $body
            }
            $crate::semiring::Semiring::Boolean => {
                type $k = $crate::semiring::BooleanKernel;
                $body
            }
        }
    };
}
pub(crate) use dispatch;
