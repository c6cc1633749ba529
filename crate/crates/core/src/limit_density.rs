//! Weak limit of `X_t / t`: an atom `Δ` at the origin plus a continuous
//! density on `(-2|c_m|, 2|c_m|)`, together with the spectral quantities that
//! fix the support.

use num_complex::Complex64;

use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::limit_measure::LimitMeasureContext;
use crate::quadrature::density_rule;
use crate::state::InitialState;

/// Highest moment exposed by [`DensityContext::moment`].
pub const MAX_MOMENT: u32 = 4;

/// Radicand threshold below which the group velocity is undefined.
pub const DEGENERATE_RADICAND: f64 = 1e-15;

/// Indices of the coins with the smaller and larger `|cos θ|`.
/// Ties resolve to `m = 1, M = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMaxCoin {
    pub m: u8,
    pub big_m: u8,
    pub c_m: f64,
    pub s_m: f64,
    pub s_big_m: f64,
}

impl MinMaxCoin {
    pub fn new(coins: &CoinAngles) -> Self {
        if coins.c1.abs() <= coins.c2.abs() {
            Self {
                m: 1,
                big_m: 2,
                c_m: coins.c1,
                s_m: coins.s1,
                s_big_m: coins.s2,
            }
        } else {
            Self {
                m: 2,
                big_m: 1,
                c_m: coins.c2,
                s_m: coins.s2,
                s_big_m: coins.s1,
            }
        }
    }

    /// Right end of the density support, `2|c_m|`.
    pub fn support_edge(&self) -> f64 {
        2.0 * self.c_m.abs()
    }
}

fn re_conj(a: Complex64, b: Complex64) -> f64 {
    (a * b.conj()).re
}

/// Atom of the limit law at the origin, from η₁(0), η₁(1), η₂(0), η₃(0), η₃(−1).
pub fn delta_mass_with(ctx: &LimitMeasureContext, init: &InitialState) -> f64 {
    let [q0, q1, q2, q3] = init.amplitudes();
    let (n0, n1, n2, n3) = (q0.norm_sqr(), q1.norm_sqr(), q2.norm_sqr(), q3.norm_sqr());
    // The η₃(−1) cross term enters with a plus sign; this is the sign that
    // reproduces Σ_x lim P(X_t = x) for complex and mixed-sign states.
    n1 + n2 + (n0 - n1 - n2 + n3) * ctx.eta1(0)
        - 2.0
            * (re_conj(q0, q3) * ctx.eta1(1) - re_conj(q1, q2) * ctx.eta2(0)
                + (re_conj(q0, q1) - re_conj(q2, q3)) * ctx.eta3(0)
                + (re_conj(q0, q2) - re_conj(q1, q3)) * ctx.eta3(-1))
}

pub fn delta_mass(coins: &CoinAngles, init: &InitialState) -> Result<f64> {
    let ctx = LimitMeasureContext::with_memo_radius(*coins, 2)?;
    Ok(delta_mass_with(&ctx, init))
}

/// Numerator coefficients of the density: `f ∝ d₀ + d₁x + d₂x²`.
pub fn d_coeffs(coins: &CoinAngles, init: &InitialState) -> Result<(f64, f64, f64)> {
    coins.require_valid()?;
    let mm = MinMaxCoin::new(coins);
    let (s1, c1, s2, c2) = (coins.s1, coins.c1, coins.s2, coins.c2);
    let [q0, q1, q2, q3] = init.amplitudes();
    let (n0, n1, n2, n3) = (q0.norm_sqr(), q1.norm_sqr(), q2.norm_sqr(), q3.norm_sqr());
    let t1 = s1 / c1;
    let t2 = s2 / c2;
    let ratio = mm.s_big_m / (c1 * c2 * mm.s_m);

    let d0 = 2.0 * (1.0 + 2.0 * mm.c_m * mm.c_m * ratio * (re_conj(q1, q2) - re_conj(q0, q3)));
    let d1 = -2.0
        * (n0 - n3
            + t1 * (re_conj(q0, q1) + re_conj(q2, q3))
            + t2 * (re_conj(q0, q2) + re_conj(q1, q3)));
    let d2 = 0.5 * (n0 - n1 - n2 + n3)
        + t1 * (re_conj(q0, q1) - re_conj(q2, q3))
        + t2 * (re_conj(q0, q2) - re_conj(q1, q3))
        + t1 * t2 * (re_conj(q0, q3) + re_conj(q1, q2))
        + ratio * (re_conj(q0, q3) - re_conj(q1, q2));
    Ok((d0, d1, d2))
}

/// Everything needed to evaluate the weak limit for one (coins, state) pair.
#[derive(Debug, Clone)]
pub struct DensityContext {
    pub coins: CoinAngles,
    pub init: InitialState,
    pub mm: MinMaxCoin,
    pub delta: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

impl DensityContext {
    pub fn new(coins: &CoinAngles, init: &InitialState) -> Result<Self> {
        let ctx = LimitMeasureContext::with_memo_radius(*coins, 2)?;
        Ok(Self::with_measure(&ctx, init))
    }

    /// Reuses an existing limit-measure context for the atom.
    pub fn with_measure(ctx: &LimitMeasureContext, init: &InitialState) -> Self {
        let coins = *ctx.coins();
        let (d0, d1, d2) = d_coeffs(&coins, init).expect("context coins are valid");
        Self {
            coins,
            init: *init,
            mm: MinMaxCoin::new(&coins),
            delta: delta_mass_with(ctx, init),
            d0,
            d1,
            d2,
        }
    }

    pub fn support_edge(&self) -> f64 {
        self.mm.support_edge()
    }

    fn numerator(&self, x: f64) -> f64 {
        self.mm.s_m.abs() * (self.d0 + self.d1 * x + self.d2 * x * x)
    }

    /// Continuous part of the limit density; zero off the open support.
    pub fn density(&self, x: f64) -> f64 {
        let edge = self.support_edge();
        if !(x > -edge && x < edge) {
            return 0.0;
        }
        let c2 = self.mm.c_m * self.mm.c_m;
        self.numerator(x) / (std::f64::consts::PI * (4.0 - x * x) * (4.0 * c2 - x * x).sqrt())
    }

    /// `∫ x^power f(x) dx` over `[a, b] ∩ support`, via `x = 2|c_m| sin φ`.
    fn integrate_weighted(&self, a: f64, b: f64, power: u32) -> f64 {
        let edge = self.support_edge();
        let lo = a.max(-edge);
        let hi = b.min(edge);
        if lo >= hi {
            return 0.0;
        }
        let phi_lo = (lo / edge).clamp(-1.0, 1.0).asin();
        let phi_hi = (hi / edge).clamp(-1.0, 1.0).asin();
        density_rule().integrate(phi_lo, phi_hi, |phi| {
            let x = edge * phi.sin();
            x.powi(power as i32) * self.numerator(x) / (std::f64::consts::PI * (4.0 - x * x))
        })
    }

    /// `∫_a^b f`.
    pub fn continuous_mass(&self, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Err(WalkError::InvalidArgument(format!(
                "continuous_mass needs a <= b, got a = {a}, b = {b}"
            )));
        }
        Ok(self.integrate_weighted(a, b, 0))
    }

    /// Mass of the whole continuous part.
    pub fn total_continuous_mass(&self) -> f64 {
        let e = self.support_edge();
        self.integrate_weighted(-e, e, 0)
    }

    /// `lim E[(X_t/t)^r] = 0^r Δ + ∫ x^r f(x) dx` for `r ≤ 4`.
    pub fn moment(&self, r: u32) -> Result<f64> {
        if r > MAX_MOMENT {
            return Err(WalkError::InvalidArgument(format!(
                "moments are available up to r = {MAX_MOMENT}, got {r}"
            )));
        }
        let atom = if r == 0 { self.delta } else { 0.0 };
        let e = self.support_edge();
        Ok(atom + self.integrate_weighted(-e, e, r))
    }

    /// Limit of `P(X_t / t ≤ x)` for `x ≠ 0`.
    pub fn limit_cdf(&self, x: f64) -> f64 {
        let e = self.support_edge();
        let atom = if x >= 0.0 { self.delta } else { 0.0 };
        atom + self.integrate_weighted(-e, x, 0)
    }
}

fn spectral_argument(coins: &CoinAngles, k: f64) -> f64 {
    coins.c1 * coins.c2 * k.cos() + coins.s1 * coins.s2
}

/// `λ_j(k)`, `j ∈ {1, 2}`.
pub fn eigenvalue(coins: &CoinAngles, k: f64, j: u8) -> Result<Complex64> {
    let sign = parity_sign(j)?;
    let a = spectral_argument(coins, k);
    let root = (1.0 - a * a).max(0.0).sqrt();
    Ok(Complex64::new(a, -sign * root))
}

/// `2iλ'_j(k)/λ_j(k) = (-1)^j 2c₁c₂ sin k / √(1 − (c₁c₂ cos k + s₁s₂)²)`.
pub fn group_velocity(coins: &CoinAngles, k: f64, j: u8) -> Result<f64> {
    let sign = parity_sign(j)?;
    let a = spectral_argument(coins, k);
    let radicand = 1.0 - a * a;
    if radicand <= DEGENERATE_RADICAND {
        return Err(WalkError::Degenerate { k, radicand });
    }
    Ok(sign * 2.0 * coins.c1 * coins.c2 * k.sin() / radicand.sqrt())
}

fn parity_sign(j: u8) -> Result<f64> {
    match j {
        1 => Ok(-1.0),
        2 => Ok(1.0),
        _ => Err(WalkError::InvalidArgument(format!(
            "eigenvalue index must be 1 or 2, got {j}"
        ))),
    }
}
