//! Coin-space amplitudes, initial states and the lattice wavefunction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// A complex probability amplitude.
pub type ComplexAmp = Complex64;

/// Maximum accepted deviation of an input norm from 1.
pub const NORM_INPUT_TOL: f64 = 1e-9;

/// Amplitudes on the coin basis, ordered `|00⟩, |01⟩, |10⟩, |11⟩`
/// with `|j₁⟩⊗|j₂⟩ = |j₁j₂⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoinState4(pub [ComplexAmp; 4]);

impl CoinState4 {
    pub const ZERO: CoinState4 = CoinState4([Complex64::new(0.0, 0.0); 4]);

    pub fn new(a00: ComplexAmp, a01: ComplexAmp, a10: ComplexAmp, a11: ComplexAmp) -> Self {
        CoinState4([a00, a01, a10, a11])
    }

    pub fn a00(&self) -> ComplexAmp {
        self.0[0]
    }
    pub fn a01(&self) -> ComplexAmp {
        self.0[1]
    }
    pub fn a10(&self) -> ComplexAmp {
        self.0[2]
    }
    pub fn a11(&self) -> ComplexAmp {
        self.0[3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }
}

/// The coin part `(q₀, q₁, q₂, q₃)` of a walker localized at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    q: [ComplexAmp; 4],
}

impl InitialState {
    /// Accepts amplitudes whose norm is within 1e-9 of 1 and rescales them
    /// to unit norm.
    pub fn new(q0: ComplexAmp, q1: ComplexAmp, q2: ComplexAmp, q3: ComplexAmp) -> Result<Self> {
        let q = [q0, q1, q2, q3];
        if q.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(WalkError::InvalidArgument(
                "initial amplitudes must be finite".into(),
            ));
        }
        let norm = q.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_INPUT_TOL {
            return Err(WalkError::Norm { norm });
        }
        Ok(Self {
            q: q.map(|a| a / norm),
        })
    }

    pub fn from_array(q: [ComplexAmp; 4]) -> Result<Self> {
        Self::new(q[0], q[1], q[2], q[3])
    }

    /// Real-valued convenience constructor.
    pub fn real(q0: f64, q1: f64, q2: f64, q3: f64) -> Result<Self> {
        Self::new(q0.into(), q1.into(), q2.into(), q3.into())
    }

    /// `(cos(φ/2), i·sin(φ/2), 0, 0)` with φ given as a multiple of π.
    pub fn phi_family(phi_over_pi: f64) -> Self {
        let (s, c) = crate::coin::sincos_pi(phi_over_pi / 2.0);
        Self {
            q: [
                Complex64::new(c, 0.0),
                Complex64::new(0.0, s),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        }
    }

    pub fn amplitudes(&self) -> [ComplexAmp; 4] {
        self.q
    }

    pub fn q0(&self) -> ComplexAmp {
        self.q[0]
    }
    pub fn q1(&self) -> ComplexAmp {
        self.q[1]
    }
    pub fn q2(&self) -> ComplexAmp {
        self.q[2]
    }
    pub fn q3(&self) -> ComplexAmp {
        self.q[3]
    }

    pub fn as_coin_state(&self) -> CoinState4 {
        CoinState4(self.q)
    }
}

/// Wavefunction on a contiguous window of the lattice.
///
/// `t` counts full time steps (two coin–shift substeps each).
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub t: usize,
    min_x: i64,
    amps: Vec<CoinState4>,
}

impl WalkState {
    /// Walker at the origin at `t = 0`.
    pub fn localized(init: &InitialState) -> Self {
        Self {
            t: 0,
            min_x: 0,
            amps: vec![init.as_coin_state()],
        }
    }

    /// Builds a state from raw parts; `amps[i]` sits at `min_x + i`.
    pub fn from_parts(t: usize, min_x: i64, amps: Vec<CoinState4>) -> Self {
        Self { t, min_x, amps }
    }

    pub fn min_x(&self) -> i64 {
        self.min_x
    }

    pub fn max_x(&self) -> i64 {
        self.min_x + self.amps.len() as i64 - 1
    }

    pub fn amplitudes(&self) -> &[CoinState4] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [CoinState4] {
        &mut self.amps
    }

    pub fn get(&self, x: i64) -> CoinState4 {
        let i = x - self.min_x;
        if i < 0 || i >= self.amps.len() as i64 {
            CoinState4::ZERO
        } else {
            self.amps[i as usize]
        }
    }

    /// Positions with nonzero amplitude, paired with the amplitude.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &CoinState4)> {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, a)| (self.min_x + i as i64, a))
    }

    /// Smallest window `[lo, hi]` holding every nonzero amplitude.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.amps.iter().position(|a| !a.is_zero())?;
        let hi = self.amps.iter().rposition(|a| !a.is_zero())?;
        Some((self.min_x + lo as i64, self.min_x + hi as i64))
    }

    pub fn total_norm(&self) -> f64 {
        self.amps.iter().map(CoinState4::norm_sqr).sum()
    }
}
