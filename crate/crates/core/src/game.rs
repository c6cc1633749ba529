//! Winning/losing analysis of the walk viewed as a game: the walker wins when
//! it ends up right of the origin more often than left of it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::{CoinAngles, Protocol};
use crate::error::{Result, WalkError};
use crate::evolution::{side_split, Walker};
use crate::limit_density::DensityContext;
use crate::limit_measure::LimitMeasureContext;
use crate::state::InitialState;

/// Default dead zone on the margin for a draw.
pub const DEFAULT_EPS: f64 = 1e-6;

/// Default truncation of the lattice sums.
pub const DEFAULT_N: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameLabel {
    Winning,
    Losing,
    Draw,
}

impl GameLabel {
    pub fn from_margin(margin: f64, eps: f64) -> Self {
        if margin > eps {
            GameLabel::Winning
        } else if margin < -eps {
            GameLabel::Losing
        } else {
            GameLabel::Draw
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GameLabel::Winning => "Winning",
            GameLabel::Losing => "Losing",
            GameLabel::Draw => "Draw",
        }
    }
}

impl std::fmt::Display for GameLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameVerdict {
    pub mu_r: f64,
    pub mu_l: f64,
    pub margin: f64,
    pub label: GameLabel,
}

impl GameVerdict {
    pub fn new(mu_l: f64, mu_r: f64, eps: f64) -> Self {
        let margin = mu_r - mu_l;
        Self {
            mu_r,
            mu_l,
            margin,
            label: GameLabel::from_margin(margin, eps),
        }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(WalkError::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(WalkError::InvalidArgument(format!(
            "eps must be positive and finite, got {eps}"
        )));
    }
    Ok(())
}

/// `(μ_L(n), μ_R(n))` from an existing limit-measure context.
pub fn mu_sides_with(ctx: &LimitMeasureContext, init: &InitialState, n: u64) -> (f64, f64) {
    let dens = DensityContext::with_measure(ctx, init);
    let edge = dens.support_edge();
    let mut right = 0.0;
    let mut left = 0.0;
    for x in 1..=n as i64 {
        right += ctx.limit_prob(x, init);
        left += ctx.limit_prob(-x, init);
    }
    let cont_r = dens.continuous_mass(0.0, edge).expect("ordered bounds");
    let cont_l = dens.continuous_mass(-edge, 0.0).expect("ordered bounds");
    (left + cont_l, right + cont_r)
}

/// `μ_L(n) = Σ_{x=-n}^{-1} lim P(X_t=x) + ∫_{-∞}^0 f` and the mirrored `μ_R(n)`.
pub fn mu_sides(coins: &CoinAngles, init: &InitialState, n: u64) -> Result<(f64, f64)> {
    check_n(n)?;
    let ctx = LimitMeasureContext::with_memo_radius(*coins, n as usize)?;
    Ok(mu_sides_with(&ctx, init, n))
}

pub fn classify(coins: &CoinAngles, init: &InitialState, n: u64, eps: f64) -> Result<GameVerdict> {
    check_eps(eps)?;
    let (mu_l, mu_r) = mu_sides(coins, init, n)?;
    Ok(GameVerdict::new(mu_l, mu_r, eps))
}

/// Upper bound on `Σ_{|x|>n} lim P(X_t = x)`.
///
/// Each ξ is a four-term combination of η values at arguments whose modulus is
/// at least `|x| − 1`, so with `Q = Σ|q_j|`, envelope `K` and ratio `ρ`,
/// `lim P(X_t = x) ≤ 4Q²K²ρ^{2|x|−2}`; summing both tails gives
/// `8Q²K²ρ^{2n}/(1 − ρ²)`.
pub fn truncation_bound(ctx: &LimitMeasureContext, init: &InitialState, n: u64) -> f64 {
    let rho = ctx.decay_ratio();
    if rho == 0.0 {
        return 0.0;
    }
    let q: f64 = init.amplitudes().iter().map(|a| a.norm()).sum();
    let k = ctx.eta_envelope();
    let rho2 = rho * rho;
    8.0 * q * q * k * k * rho2.powf(n as f64) / (1.0 - rho2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseCell {
    Valid(GameVerdict),
    Invalid,
}

impl PhaseCell {
    pub fn verdict(&self) -> Option<&GameVerdict> {
        match self {
            PhaseCell::Valid(v) => Some(v),
            PhaseCell::Invalid => None,
        }
    }
}

/// Verdicts on a θ₁ × θ₂ grid; angles in multiples of π.
/// `cells` is row-major with θ₁ as the row index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub theta1_axis: Vec<f64>,
    pub theta2_axis: Vec<f64>,
    pub cells: Vec<PhaseCell>,
}

impl PhaseGrid {
    pub fn cell(&self, i: usize, j: usize) -> &PhaseCell {
        &self.cells[i * self.theta2_axis.len() + j]
    }

    /// `(θ₁/π, θ₂/π, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &PhaseCell)> + '_ {
        let cols = self.theta2_axis.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.theta1_axis[k / cols], self.theta2_axis[k % cols], c))
    }

    pub fn count(&self, label: GameLabel) -> usize {
        self.cells
            .iter()
            .filter(|c| c.verdict().is_some_and(|v| v.label == label))
            .count()
    }
}

fn sweep_cell(t1: f64, t2: f64, init: &InitialState, n: u64, eps: f64) -> PhaseCell {
    match CoinAngles::from_pi_multiples(t1, t2).and_then(|c| classify(&c, init, n, eps)) {
        Ok(v) => PhaseCell::Valid(v),
        Err(_) => PhaseCell::Invalid,
    }
}

/// Classifies every cell. Cells are evaluated in parallel on the current rayon
/// pool and stored by index, so the output does not depend on scheduling.
pub fn phase_sweep(
    theta1_axis: &[f64],
    theta2_axis: &[f64],
    init: &InitialState,
    n: u64,
    eps: f64,
) -> Result<PhaseGrid> {
    if theta1_axis.is_empty() || theta2_axis.is_empty() {
        return Err(WalkError::InvalidArgument(
            "sweep axes must be nonempty".into(),
        ));
    }
    check_n(n)?;
    check_eps(eps)?;
    let cols = theta2_axis.len();
    let cells = (0..theta1_axis.len() * cols)
        .into_par_iter()
        .map(|k| sweep_cell(theta1_axis[k / cols], theta2_axis[k % cols], init, n, eps))
        .collect();
    Ok(PhaseGrid {
        theta1_axis: theta1_axis.to_vec(),
        theta2_axis: theta2_axis.to_vec(),
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatePoint {
    pub phi_over_pi: f64,
    pub verdict: GameVerdict,
}

/// Verdicts along `q = (cos(φ/2), i sin(φ/2), 0, 0)`, φ in multiples of π.
pub fn state_sweep(
    coins: &CoinAngles,
    phi_axis: &[f64],
    n: u64,
    eps: f64,
) -> Result<Vec<StatePoint>> {
    check_n(n)?;
    check_eps(eps)?;
    let ctx = LimitMeasureContext::with_memo_radius(*coins, n as usize)?;
    Ok(phi_axis
        .par_iter()
        .map(|&phi| {
            let init = InitialState::phi_family(phi);
            let (mu_l, mu_r) = mu_sides_with(&ctx, &init, n);
            StatePoint {
                phi_over_pi: phi,
                verdict: GameVerdict::new(mu_l, mu_r, eps),
            }
        })
        .collect())
}

/// `(t, P_R(t) − P_L(t))` for `t = 1..=t_max`.
pub fn game_time_series(
    protocol: Protocol,
    coins: &CoinAngles,
    init: &InitialState,
    t_max: usize,
) -> Result<Vec<(usize, f64)>> {
    if t_max == 0 {
        return Err(WalkError::InvalidArgument(
            "t_max must be at least 1".into(),
        ));
    }
    let mut walker = Walker::new(init, *coins, protocol, t_max);
    let mut out = Vec::with_capacity(t_max);
    for _ in 0..t_max {
        walker.step();
        out.push((walker.t(), side_split(&walker.distribution()).margin()));
    }
    Ok(out)
}
