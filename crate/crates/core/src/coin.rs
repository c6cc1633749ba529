//! Coin angles, the reflection-form coin matrices and the per-step protocols.
//!
//! Angles cross every public boundary as multiples of π (`0.25` is π/4) so
//! that the special angles of the walk are exactly representable.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Distance (radians) below which an angle counts as one of the excluded
/// values `{0, π/2, π, 3π/2}`.
pub const EXCLUSION_TOL: f64 = 1e-12;

/// `(sin πx, cos πx)` with exact values on multiples of 1/2.
pub fn sincos_pi(x: f64) -> (f64, f64) {
    let r = x.rem_euclid(2.0);
    let twice = 2.0 * r;
    if twice == twice.round() {
        return match twice as i64 % 4 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    (PI * r).sin_cos()
}

/// The pair (θ₁, θ₂) with cached sines and cosines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinAngles {
    theta1_over_pi: f64,
    theta2_over_pi: f64,
    pub c1: f64,
    pub s1: f64,
    pub c2: f64,
    pub s2: f64,
}

impl CoinAngles {
    /// Builds the pair from multiples of π; inputs are reduced into `[0, 2)`.
    pub fn from_pi_multiples(theta1_over_pi: f64, theta2_over_pi: f64) -> Result<Self> {
        if !theta1_over_pi.is_finite() || !theta2_over_pi.is_finite() {
            return Err(WalkError::InvalidArgument(format!(
                "non-finite coin angle ({theta1_over_pi}, {theta2_over_pi})"
            )));
        }
        let t1 = theta1_over_pi.rem_euclid(2.0);
        let t2 = theta2_over_pi.rem_euclid(2.0);
        let (s1, c1) = sincos_pi(t1);
        let (s2, c2) = sincos_pi(t2);
        Ok(Self {
            theta1_over_pi: t1,
            theta2_over_pi: t2,
            c1,
            s1,
            c2,
            s2,
        })
    }

    pub fn theta1_over_pi(&self) -> f64 {
        self.theta1_over_pi
    }

    pub fn theta2_over_pi(&self) -> f64 {
        self.theta2_over_pi
    }

    pub fn theta1(&self) -> f64 {
        self.theta1_over_pi * PI
    }

    pub fn theta2(&self) -> f64 {
        self.theta2_over_pi * PI
    }

    /// True when neither angle lies within [`EXCLUSION_TOL`] of a multiple of π/2.
    pub fn valid_for_limit_laws(&self) -> bool {
        exclusion_distance(self.theta1_over_pi) > EXCLUSION_TOL
            && exclusion_distance(self.theta2_over_pi) > EXCLUSION_TOL
    }

    pub fn require_valid(&self) -> Result<()> {
        if self.valid_for_limit_laws() {
            Ok(())
        } else {
            Err(WalkError::InvalidAngles {
                theta1_over_pi: self.theta1_over_pi,
                theta2_over_pi: self.theta2_over_pi,
            })
        }
    }

    pub fn u1(&self) -> CoinMatrix {
        CoinMatrix::from_sin_cos(self.s1, self.c1)
    }

    pub fn u2(&self) -> CoinMatrix {
        CoinMatrix::from_sin_cos(self.s2, self.c2)
    }
}

/// Radian distance from `theta_over_pi · π` to the nearest multiple of π/2.
pub fn exclusion_distance(theta_over_pi: f64) -> f64 {
    let r = theta_over_pi.rem_euclid(0.5);
    r.min(0.5 - r) * PI
}

/// Real 2×2 coin `[[c, s], [s, -c]]`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix(pub [[f64; 2]; 2]);

impl CoinMatrix {
    fn from_sin_cos(s: f64, c: f64) -> Self {
        CoinMatrix([[c, s], [s, -c]])
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Coin matrix for an angle given in radians.
pub fn coin_matrix(theta: f64) -> CoinMatrix {
    let (s, c) = theta.sin_cos();
    CoinMatrix::from_sin_cos(s, c)
}

/// Which coin-flip operation to apply: `X = U₂⊗U₁`, `Y = U₁⊗U₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoinLabel {
    X,
    Y,
}

/// Ordered pair of coin flips making up one time step. The first label is
/// applied first: `XY` is `S·Y·S·X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Protocol {
    XY,
    XX,
    YY,
}

impl Protocol {
    pub fn substeps(self) -> [CoinLabel; 2] {
        match self {
            Protocol::XY => [CoinLabel::X, CoinLabel::Y],
            Protocol::XX => [CoinLabel::X, CoinLabel::X],
            Protocol::YY => [CoinLabel::Y, CoinLabel::Y],
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Protocol::XY => "XY",
            Protocol::XX => "XX",
            Protocol::YY => "YY",
        };
        f.write_str(s)
    }
}

impl FromStr for Protocol {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "XY" => Ok(Protocol::XY),
            "XX" => Ok(Protocol::XX),
            "YY" => Ok(Protocol::YY),
            other => Err(WalkError::InvalidArgument(format!(
                "unknown protocol {other:?}, expected XY, XX or YY"
            ))),
        }
    }
}
