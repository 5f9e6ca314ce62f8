//! Normalized delivery time values.
//!
//! An NDT is a nonnegative extended real. Infinity shows up when a zero-rate
//! fronthaul has to carry a nonzero load.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A normalized delivery time, finite or `+inf`. Never negative, never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ndt(f64);

impl Ndt {
    pub const ZERO: Ndt = Ndt(0.0);
    pub const INFINITY: Ndt = Ndt(f64::INFINITY);

    /// Wraps `value`, rejecting NaN and negatives (`-0.0` becomes `0.0`).
    pub fn new(value: f64) -> Option<Ndt> {
        if value.is_nan() || value < 0.0 {
            None
        } else {
            Some(Ndt(value + 0.0))
        }
    }

    /// `load / rate`, clamped below at zero. A nonpositive load costs nothing
    /// even when the rate is zero; a positive load over a zero rate is `+inf`.
    pub fn ratio(load: f64, rate: f64) -> Ndt {
        debug_assert!(rate >= 0.0);
        if load <= 0.0 {
            Ndt::ZERO
        } else if rate == 0.0 {
            Ndt::INFINITY
        } else {
            Ndt(load / rate)
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn max(self, other: Ndt) -> Ndt {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Ndt) -> Ndt {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `weight * self`, where a zero weight discards the value even if it is
    /// infinite (an unused policy contributes nothing).
    pub fn scale(self, weight: f64) -> Ndt {
        debug_assert!(weight >= 0.0);
        if weight == 0.0 {
            Ndt::ZERO
        } else {
            Ndt(self.0 * weight)
        }
    }
}

impl Eq for Ndt {}

impl PartialOrd for Ndt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ndt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for Ndt {
    type Output = Ndt;

    fn add(self, rhs: Ndt) -> Ndt {
        Ndt(self.0 + rhs.0)
    }
}

impl fmt::Display for Ndt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

impl From<Ndt> for f64 {
    fn from(value: Ndt) -> f64 {
        value.0
    }
}

// JSON has no infinity, so it travels as the string "inf".
impl Serialize for Ndt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Ndt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Ndt, D::Error> {
        struct NdtVisitor;

        impl Visitor<'_> for NdtVisitor {
            type Value = Ndt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Ndt, E> {
                Ndt::new(v).ok_or_else(|| E::custom(format!("invalid NDT {v}")))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ndt, E> {
                Ok(Ndt(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ndt, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Ndt, E> {
                match v {
                    "inf" => Ok(Ndt::INFINITY),
                    _ => Err(E::custom(format!("invalid NDT {v:?}"))),
                }
            }
        }

        deserializer.deserialize_any(NdtVisitor)
    }
}

/// Fronthaul and edge NDTs of one delivery scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdtPair {
    pub delta_f: Ndt,
    pub delta_e: Ndt,
}

impl NdtPair {
    pub fn new(delta_f: Ndt, delta_e: Ndt) -> Self {
        Self { delta_f, delta_e }
    }

    /// Fronthaul and edge run concurrently: the slower one sets the latency.
    pub fn pipelined(self) -> Ndt {
        self.delta_f.max(self.delta_e)
    }

    /// Fronthaul finishes before the edge starts.
    pub fn serial(self) -> Ndt {
        self.delta_f + self.delta_e
    }
}

/// Latency of pipelined fronthaul/edge transmission, `max(delta_e, delta_f)`.
pub fn pipelined_ndt(pair: NdtPair) -> Ndt {
    pair.pipelined()
}

/// Latency of serial fronthaul-then-edge transmission, `delta_e + delta_f`.
pub fn serial_ndt(pair: NdtPair) -> Ndt {
    pair.serial()
}
