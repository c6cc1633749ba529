//! Exact state-vector evolution of the walk and the position statistics
//! derived from it.

use crate::coin::{CoinAngles, CoinLabel, CoinMatrix, Protocol};
use crate::error::{Result, WalkError};
use crate::state::{CoinState4, InitialState, WalkState};

/// Applies `A⊗B` to a coin vector in the `|j₁j₂⟩` basis.
#[inline]
fn apply_tensor(a: &CoinMatrix, b: &CoinMatrix, v: &mut CoinState4) {
    let b = &b.0;
    let a = &a.0;
    let s = &mut v.0;
    // B on the second factor.
    for j1 in 0..2 {
        let (p, q) = (s[2 * j1], s[2 * j1 + 1]);
        s[2 * j1] = p * b[0][0] + q * b[0][1];
        s[2 * j1 + 1] = p * b[1][0] + q * b[1][1];
    }
    // A on the first factor.
    for j2 in 0..2 {
        let (p, q) = (s[j2], s[2 + j2]);
        s[j2] = p * a[0][0] + q * a[0][1];
        s[2 + j2] = p * a[1][0] + q * a[1][1];
    }
}

fn factors(label: CoinLabel, coins: &CoinAngles) -> (CoinMatrix, CoinMatrix) {
    match label {
        CoinLabel::X => (coins.u2(), coins.u1()),
        CoinLabel::Y => (coins.u1(), coins.u2()),
    }
}

/// Coin flip at every site: `X` applies `U₂⊗U₁`, `Y` applies `U₁⊗U₂`.
pub fn apply_coin(state: &WalkState, label: CoinLabel, coins: &CoinAngles) -> WalkState {
    let (a, b) = factors(label, coins);
    let mut out = state.clone();
    for v in out.amplitudes_mut() {
        apply_tensor(&a, &b, v);
    }
    out
}

/// Conditional shift: `|00⟩` moves left, `|11⟩` moves right, `|01⟩`, `|10⟩` stay.
/// The window grows by one site on each side.
pub fn apply_shift(state: &WalkState) -> WalkState {
    let src = state.amplitudes();
    let mut amps = vec![CoinState4::ZERO; src.len() + 2];
    for (i, v) in src.iter().enumerate() {
        // Old index i sits at new index i + 1.
        amps[i].0[0] = v.0[0];
        amps[i + 1].0[1] = v.0[1];
        amps[i + 1].0[2] = v.0[2];
        amps[i + 2].0[3] = v.0[3];
    }
    WalkState::from_parts(state.t, state.min_x() - 1, amps)
}

/// Incremental evolution over a lattice preallocated for `t_max` steps.
#[derive(Debug, Clone)]
pub struct Walker {
    coins: CoinAngles,
    protocol: Protocol,
    t: usize,
    t_max: usize,
    offset: usize,
    // Half-width of the window that may hold amplitude.
    reach: usize,
    lattice: Vec<CoinState4>,
}

impl Walker {
    pub fn new(init: &InitialState, coins: CoinAngles, protocol: Protocol, t_max: usize) -> Self {
        let offset = 2 * t_max + 2;
        let mut lattice = vec![CoinState4::ZERO; 2 * offset + 1];
        lattice[offset] = init.as_coin_state();
        Self {
            coins,
            protocol,
            t: 0,
            t_max,
            offset,
            reach: 0,
            lattice,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    fn window(&self) -> std::ops::Range<usize> {
        self.offset - self.reach..self.offset + self.reach + 1
    }

    fn substep(&mut self, label: CoinLabel) {
        let (a, b) = factors(label, &self.coins);
        let w = self.window();
        for v in &mut self.lattice[w.clone()] {
            apply_tensor(&a, &b, v);
        }
        let lo = w.start - 1;
        let hi = w.end;
        // |00⟩: x <- x + 1, walk upwards so sources are read before overwrite.
        for i in lo..hi {
            self.lattice[i].0[0] = self.lattice[i + 1].0[0];
        }
        // |11⟩: x <- x - 1, walk downwards.
        for i in (lo + 1..=hi).rev() {
            self.lattice[i].0[3] = self.lattice[i - 1].0[3];
        }
        self.lattice[lo].0[3] = Default::default();
        self.lattice[hi].0[0] = Default::default();
        self.reach += 1;
    }

    /// Advances one full step (two substeps). Panics past `t_max`.
    pub fn step(&mut self) {
        assert!(
            self.t < self.t_max,
            "walker preallocated for {} steps",
            self.t_max
        );
        for label in self.protocol.substeps() {
            self.substep(label);
        }
        self.t += 1;
    }

    pub fn distribution(&self) -> PositionDistribution {
        let w = self.window();
        let min_x = w.start as i64 - self.offset as i64;
        let probs = self.lattice[w].iter().map(CoinState4::norm_sqr).collect();
        PositionDistribution {
            t: self.t,
            min_x,
            probs,
        }
    }

    pub fn state(&self) -> WalkState {
        let w = self.window();
        let min_x = w.start as i64 - self.offset as i64;
        WalkState::from_parts(self.t, min_x, self.lattice[w].to_vec())
    }
}

/// State after `t` full steps of `protocol` from a walker localized at the origin.
pub fn evolve(init: &InitialState, coins: &CoinAngles, protocol: Protocol, t: usize) -> WalkState {
    let mut w = Walker::new(init, *coins, protocol, t);
    for _ in 0..t {
        w.step();
    }
    w.state()
}

/// `P(X_t = x)` on a contiguous window starting at `min_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    pub t: usize,
    min_x: i64,
    probs: Vec<f64>,
}

impl PositionDistribution {
    pub fn min_x(&self) -> i64 {
        self.min_x
    }

    pub fn max_x(&self) -> i64 {
        self.min_x + self.probs.len() as i64 - 1
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: i64) -> f64 {
        let i = x - self.min_x;
        if i < 0 || i >= self.probs.len() as i64 {
            0.0
        } else {
            self.probs[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.min_x + i as i64, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// `p(x) = Σ_j |⟨x, j|Ψ⟩|²` for every site of the state's window.
pub fn distribution(state: &WalkState) -> PositionDistribution {
    PositionDistribution {
        t: state.t,
        min_x: state.min_x(),
        probs: state
            .amplitudes()
            .iter()
            .map(CoinState4::norm_sqr)
            .collect(),
    }
}

/// Probability mass left of, at, and right of the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideSplit {
    pub p_left: f64,
    pub p_origin: f64,
    pub p_right: f64,
}

impl SideSplit {
    pub fn margin(&self) -> f64 {
        self.p_right - self.p_left
    }
}

pub fn side_split(dist: &PositionDistribution) -> SideSplit {
    let mut split = SideSplit {
        p_left: 0.0,
        p_origin: 0.0,
        p_right: 0.0,
    };
    for (x, p) in dist.iter() {
        match x.cmp(&0) {
            std::cmp::Ordering::Less => split.p_left += p,
            std::cmp::Ordering::Equal => split.p_origin += p,
            std::cmp::Ordering::Greater => split.p_right += p,
        }
    }
    split
}

/// `Σ_x (x/t)^r p(x)`.
pub fn empirical_moment(dist: &PositionDistribution, r: u32) -> Result<f64> {
    if dist.t == 0 {
        return Err(WalkError::InvalidArgument(
            "empirical moment needs t >= 1".into(),
        ));
    }
    let t = dist.t as f64;
    Ok(dist
        .iter()
        .map(|(x, p)| (x as f64 / t).powi(r as i32) * p)
        .sum())
}
