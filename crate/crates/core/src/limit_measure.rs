//! Pointwise long-time limit of `P(X_t = x)` for the two-period walk.
//!
//! Every η function is a combination of two geometric channels: one carried
//! by the coefficient `s₁ − s₂` with ratio `ν₁^{±1}`, one carried by
//! `s₁ + s₂` with ratio `ν₂^{±1}`. The indicators pick, per channel, the
//! power whose modulus is below one, so each channel is stored here as a
//! single decaying ratio `ρ` and `η(x)` is a sum of `coefficient · ρ^{|x|}`.

use num_complex::Complex64;

use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::state::InitialState;

/// Powers below this are flushed to zero.
pub const UNDERFLOW_CUTOFF: f64 = 1e-300;

/// `|s₁ ∓ s₂|` below this counts as an exact tie; the channel then carries a
/// zero coefficient and is skipped.
pub const CHANNEL_TIE_TOL: f64 = 1e-14;

/// Default memo radius; lookups beyond it fall back to direct evaluation.
pub const DEFAULT_MEMO_RADIUS: usize = 512;

pub fn indicator(p: bool) -> u8 {
    u8::from(p)
}

pub fn kronecker0(x: i64) -> u8 {
    u8::from(x == 0)
}

#[derive(Debug, Clone)]
struct Channel {
    /// `s₁ − s₂` or `s₁ + s₂`.
    coef: f64,
    /// `I(s₁ < s₂)` resp. `I(s₁ < −s₂)`; otherwise the `>` indicator holds.
    lower: bool,
    ratio: f64,
    powers: Vec<f64>,
}

impl Channel {
    fn new(coef: f64, lower: bool, nu: f64, radius: usize) -> Option<Self> {
        if coef.abs() <= CHANNEL_TIE_TOL {
            return None;
        }
        let ratio = if lower { nu } else { nu.recip() };
        let mut powers = Vec::with_capacity(radius + 3);
        let mut p = 1.0;
        for _ in 0..radius + 3 {
            powers.push(p);
            p *= ratio;
            if p.abs() < UNDERFLOW_CUTOFF {
                p = 0.0;
            }
        }
        Some(Self {
            coef,
            lower,
            ratio,
            powers,
        })
    }

    fn pow(&self, n: u64) -> f64 {
        match self.powers.get(n as usize) {
            Some(&p) => p,
            None => decaying_pow(self.ratio, n),
        }
    }
}

/// `base^n` by squaring, flushing to zero once the running value underflows.
fn decaying_pow(base: f64, mut n: u64) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= b;
            if acc.abs() < UNDERFLOW_CUTOFF {
                return 0.0;
            }
        }
        n >>= 1;
        if n > 0 {
            b *= b;
            if b.abs() < UNDERFLOW_CUTOFF {
                return 0.0;
            }
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Eta {
    One,
    Two,
    Three,
}

/// Per-coin-pair constants for the limit measure.
#[derive(Debug, Clone)]
pub struct LimitMeasureContext {
    coins: CoinAngles,
    nu1: f64,
    nu2: f64,
    difference: Option<Channel>,
    sum: Option<Channel>,
}

impl LimitMeasureContext {
    pub fn new(coins: CoinAngles) -> Result<Self> {
        Self::with_memo_radius(coins, DEFAULT_MEMO_RADIUS)
    }

    /// Precomputes the channel powers for `|x| ≤ radius + 2`.
    pub fn with_memo_radius(coins: CoinAngles, radius: usize) -> Result<Self> {
        coins.require_valid()?;
        let (s1, c1, s2, c2) = (coins.s1, coins.c1, coins.s2, coins.c2);
        let nu1 = (1.0 + s1) * (1.0 - s2) / (c1 * c2);
        let nu2 = -(1.0 + s1) * (1.0 + s2) / (c1 * c2);
        let difference = Channel::new(s1 - s2, s1 < s2, nu1, radius);
        let sum = Channel::new(s1 + s2, s1 < -s2, nu2, radius);
        Ok(Self {
            coins,
            nu1,
            nu2,
            difference,
            sum,
        })
    }

    pub fn coins(&self) -> &CoinAngles {
        &self.coins
    }

    pub fn nu1(&self) -> f64 {
        self.nu1
    }

    pub fn nu2(&self) -> f64 {
        self.nu2
    }

    /// Largest decaying ratio among the active channels (0 if none).
    pub fn decay_ratio(&self) -> f64 {
        self.channels().map(|c| c.ratio.abs()).fold(0.0, f64::max)
    }

    fn channels(&self) -> impl Iterator<Item = &Channel> {
        self.difference.iter().chain(self.sum.iter())
    }

    /// Multiplier of `coef · ρ^{|x|}` for one η, branch and channel.
    fn branch_factor(&self, eta: Eta, nonneg: bool, is_difference: bool, lower: bool) -> f64 {
        let (s1, c1) = (self.coins.s1, self.coins.c1);
        // The partner ratio appearing as a constant factor in η₂.
        let partner = if is_difference { self.nu2 } else { self.nu1 };
        match (eta, nonneg, lower) {
            (Eta::One, _, true) => -0.25,
            (Eta::One, _, false) => 0.25,
            (Eta::Two, true, true) => 0.25 * partner,
            (Eta::Two, true, false) => -0.25 / partner,
            (Eta::Two, false, true) => 0.25 / partner,
            (Eta::Two, false, false) => -0.25 * partner,
            (Eta::Three, true, true) => 0.25 * c1 / (1.0 - s1),
            (Eta::Three, true, false) => 0.25 * c1 / (1.0 + s1),
            (Eta::Three, false, true) => -0.25 * c1 / (1.0 + s1),
            (Eta::Three, false, false) => -0.25 * c1 / (1.0 - s1),
        }
    }

    fn eta(&self, eta: Eta, x: i64) -> f64 {
        // η₁ depends on |x| only; η₂, η₃ switch branch at x = -1.
        let nonneg = x >= 0;
        let n = x.unsigned_abs();
        let mut total = 0.0;
        for (ch, is_difference) in [(&self.difference, true), (&self.sum, false)] {
            if let Some(ch) = ch {
                let p = ch.pow(n);
                if p != 0.0 {
                    total += ch.coef * self.branch_factor(eta, nonneg, is_difference, ch.lower) * p;
                }
            }
        }
        total
    }

    pub fn eta1(&self, x: i64) -> f64 {
        self.eta(Eta::One, x)
    }

    pub fn eta2(&self, x: i64) -> f64 {
        self.eta(Eta::Two, x)
    }

    pub fn eta3(&self, x: i64) -> f64 {
        self.eta(Eta::Three, x)
    }

    /// Constant `K` with `|η_j(x)| ≤ K·ρ^{|x|}` for every η and branch,
    /// where `ρ` is [`Self::decay_ratio`].
    pub fn eta_envelope(&self) -> f64 {
        let rho = self.decay_ratio();
        let mut k: f64 = 0.0;
        for eta in [Eta::One, Eta::Two, Eta::Three] {
            for nonneg in [true, false] {
                let mut s = 0.0;
                for (ch, is_difference) in [(&self.difference, true), (&self.sum, false)] {
                    if let Some(ch) = ch {
                        // ρ_ch^{n} ≤ ρ^{n} since |ρ_ch| ≤ ρ.
                        s += (ch.coef * self.branch_factor(eta, nonneg, is_difference, ch.lower))
                            .abs();
                    }
                }
                k = k.max(s);
            }
        }
        if rho == 0.0 {
            0.0
        } else {
            k
        }
    }

    pub fn xi1(&self, x: i64, q: [Complex64; 4]) -> Complex64 {
        let [q0, q1, q2, q3] = q;
        q0 * self.eta1(x) - q1 * self.eta3(x) - q2 * self.eta3(-x - 1) - q3 * self.eta1(x + 1)
    }

    pub fn xi2(&self, x: i64, q: [Complex64; 4]) -> Complex64 {
        let [q0, q1, q2, q3] = q;
        let delta = f64::from(kronecker0(x));
        -q0 * self.eta3(-x)
            + q1 * (delta - self.eta1(x))
            + q2 * self.eta2(-x)
            + q3 * self.eta3(-x - 1)
    }

    /// `lim_{t→∞} P(X_t = x)`.
    pub fn limit_prob(&self, x: i64, init: &InitialState) -> f64 {
        let q = init.amplitudes();
        let [q0, q1, q2, q3] = q;
        self.xi1(x, q).norm_sqr()
            + self.xi1(-x, [q3, -q2, -q1, q0]).norm_sqr()
            + self.xi2(x, q).norm_sqr()
            + self.xi2(-x, [-q3, q2, q1, -q0]).norm_sqr()
    }

    /// `Σ_{x=a}^{b} lim P(X_t = x)`.
    pub fn partial_mass(&self, init: &InitialState, a: i64, b: i64) -> Result<f64> {
        if a > b {
            return Err(WalkError::InvalidArgument(format!(
                "partial_mass needs a <= b, got a = {a}, b = {b}"
            )));
        }
        Ok((a..=b).map(|x| self.limit_prob(x, init)).sum())
    }
}
