//! Scalar operations on the unit interval.
//!
//! The three t-norms handled by the crate, their residual implicators, the
//! clamped shifts `(x - d)+` and `min(x + d, 1)`, and the two scalar kernels
//! that give the least shift satisfying a row-level inequality for the
//! product and Lukasiewicz t-norms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance band accepted around `[0, 1]` when constructing a [`UnitValue`].
/// Values inside the band are clamped, values outside are rejected.
pub const INPUT_EPSILON: f64 = 1e-9;

/// A real number in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < -INPUT_EPSILON || value > 1.0 + INPUT_EPSILON {
            return Err(Error::Domain(value));
        }
        Ok(UnitValue(value.clamp(0.0, 1.0)))
    }

    /// Wraps the result of an internal computation that is in `[0, 1]` up to
    /// rounding.
    #[inline]
    pub(crate) fn saturating(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        UnitValue(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for UnitValue {}

impl Ord for UnitValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl TryFrom<f64> for UnitValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        UnitValue::new(value)
    }
}

impl From<UnitValue> for f64 {
    fn from(value: UnitValue) -> f64 {
        value.0
    }
}

impl fmt::Debug for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<'de> Deserialize<'de> for UnitValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = f64::deserialize(deserializer)?;
        UnitValue::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Selects a t-norm together with its residual implicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNormKind {
    /// `min(x, y)`, residuum is the Goedel implication.
    Minimum,
    /// `x * y`, residuum is the Goguen implication.
    Product,
    /// `(x + y - 1)+`, residuum is `min(1 - x + y, 1)`.
    Lukasiewicz,
}

impl TNormKind {
    pub const ALL: [TNormKind; 3] = [TNormKind::Minimum, TNormKind::Product, TNormKind::Lukasiewicz];

    pub fn name(self) -> &'static str {
        match self {
            TNormKind::Minimum => "minimum",
            TNormKind::Product => "product",
            TNormKind::Lukasiewicz => "lukasiewicz",
        }
    }

    #[inline]
    pub(crate) fn t(self, x: f64, y: f64) -> f64 {
        match self {
            TNormKind::Minimum => x.min(y),
            TNormKind::Product => x * y,
            TNormKind::Lukasiewicz => positive(x + y - 1.0),
        }
    }

    #[inline]
    pub(crate) fn implies(self, x: f64, y: f64) -> f64 {
        match self {
            TNormKind::Minimum => {
                if x <= y {
                    1.0
                } else {
                    y
                }
            }
            TNormKind::Product => {
                if x <= y {
                    1.0
                } else {
                    y / x
                }
            }
            TNormKind::Lukasiewicz => (1.0 - x + y).min(1.0),
        }
    }
}

impl fmt::Display for TNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "minimum" | "min" => Ok(TNormKind::Minimum),
            "product" | "prod" => Ok(TNormKind::Product),
            "lukasiewicz" | "luka" => Ok(TNormKind::Lukasiewicz),
            other => Err(format!("unknown t-norm `{other}`")),
        }
    }
}

#[inline]
pub(crate) fn positive(x: f64) -> f64 {
    x.max(0.0)
}

/// `T(x, y)` for the selected t-norm.
pub fn tnorm(kind: TNormKind, x: UnitValue, y: UnitValue) -> UnitValue {
    UnitValue::saturating(kind.t(x.0, y.0))
}

/// The residual implicator `I_T(x, y) = max { z | T(x, z) <= y }`.
pub fn residual(kind: TNormKind, x: UnitValue, y: UnitValue) -> UnitValue {
    UnitValue::saturating(kind.implies(x.0, y.0))
}

/// `(x - delta)+`
pub fn clamp_down(x: UnitValue, delta: UnitValue) -> UnitValue {
    UnitValue::saturating(positive(x.0 - delta.0))
}

/// `min(x + delta, 1)`
pub fn clamp_up(x: UnitValue, delta: UnitValue) -> UnitValue {
    UnitValue::saturating((x.0 + delta.0).min(1.0))
}

#[inline]
pub(crate) fn sigma_gg_raw(u: f64, x: f64, y: f64, z: f64) -> f64 {
    let phi = if u > 0.0 { positive(x * y - u * z) / (u + y) } else { x };
    positive(x - u).max(phi.min(positive(y - z)))
}

#[inline]
pub(crate) fn sigma_l_raw(u: f64, x: f64, y: f64, z: f64) -> f64 {
    let v = x + u - 1.0;
    x.min(positive(v).max(positive(v + y - z) / 2.0))
}

/// Least `d` in `[0, 1]` such that `(x - d)+ <= u * (y ->GG min(z + d, 1))`,
/// where `->GG` is the Goguen implication.
pub fn sigma_gg(u: UnitValue, x: UnitValue, y: UnitValue, z: UnitValue) -> UnitValue {
    UnitValue::saturating(sigma_gg_raw(u.0, x.0, y.0, z.0))
}

/// Least `d` in `[0, 1]` such that
/// `(x - d)+ <= max(0, (y ->L min(z + d, 1)) - u)`,
/// where `->L` is the Lukasiewicz implication.
pub fn sigma_l(u: UnitValue, x: UnitValue, y: UnitValue, z: UnitValue) -> UnitValue {
    UnitValue::saturating(sigma_l_raw(u.0, x.0, y.0, z.0))
}
