//! Two-period quantum walk on the line with a four-state coin: exact
//! evolution, the long-time limit measure, the weak limit of `X_t / t`, and
//! the right-versus-left game built on top of them.
//!
//! Angles are given as multiples of π throughout the public API.

pub mod coin;
pub mod error;
pub mod evolution;
pub mod game;
pub mod limit_density;
pub mod limit_measure;
pub mod quadrature;
pub mod state;

pub use coin::{coin_matrix, CoinAngles, CoinLabel, CoinMatrix, Protocol};
pub use error::{Result, WalkError};
pub use evolution::{
    apply_coin, apply_shift, distribution, empirical_moment, evolve, side_split,
    PositionDistribution, SideSplit, Walker,
};
pub use game::{
    classify, game_time_series, mu_sides, phase_sweep, state_sweep, truncation_bound, GameLabel,
    GameVerdict, PhaseCell, PhaseGrid, StatePoint,
};
pub use limit_density::{
    d_coeffs, delta_mass, eigenvalue, group_velocity, DensityContext, MinMaxCoin,
};
pub use limit_measure::{indicator, kronecker0, LimitMeasureContext};
pub use state::{CoinState4, ComplexAmp, InitialState, WalkState};
