//! Evaluation results shared by every module.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

/// How a value was obtained, or why it is not an ordinary finite number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Regular,
    /// Finite limit computed at a removable singularity.
    RegularizedAtPole,
    /// Magnitude exceeded the double range; the value is clamped.
    OverflowGuarded,
    /// Genuine pole. The stored value is zero and meaningless.
    Pole,
    /// Exact zero forced by a Gamma pole in a denominator.
    Zero,
    /// The evaluation point is close enough to a pole that digits were lost.
    NearPole,
    /// Extrapolated limit did not settle to the requested tolerance.
    AccuracyLoss,
}

impl Status {
    pub fn is_finite_value(self) -> bool {
        !matches!(self, Status::Pole)
    }

    /// Combine statuses of factors. Poles dominate, then warnings.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        fn rank(s: Status) -> u8 {
            match s {
                Pole => 6,
                OverflowGuarded => 5,
                AccuracyLoss => 4,
                NearPole => 3,
                RegularizedAtPole => 2,
                Zero => 1,
                Regular => 0,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: C64,
    pub abs_err: f64,
    pub status: Status,
}

impl EvalResult {
    pub fn new(value: C64, abs_err: f64, status: Status) -> Self {
        EvalResult { value, abs_err, status }
    }

    pub fn regular(value: C64, abs_err: f64) -> Self {
        Self::new(value, abs_err, Status::Regular)
    }

    pub fn exact(value: C64) -> Self {
        Self::new(value, 0.0, Status::Regular)
    }

    pub fn pole() -> Self {
        Self::new(C64::new(0.0, 0.0), f64::INFINITY, Status::Pole)
    }

    pub fn zero() -> Self {
        Self::new(C64::new(0.0, 0.0), 0.0, Status::Zero)
    }

    pub fn scale(self, s: C64) -> Self {
        EvalResult {
            value: self.value * s,
            abs_err: self.abs_err * s.norm(),
            status: self.status,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": { "re": self.value.re, "im": self.value.im },
            "abs_err": self.abs_err,
            "status": self.status,
        })
    }
}

/// Relative distance between two values, scaled by the larger modulus.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}
