use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use qwalk_core::{CoinAngles, InitialState, Protocol, WalkError};
use serde::{Deserialize, Serialize};

/// Two-period four-state quantum walk: simulation, limit laws and game analysis.
///
/// Angles and φ are given as multiples of π (`--theta1 0.25` means π/4).
/// Initial states are eight comma-separated numbers `re,im` for q₀…q₃.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version)]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evolve the walk and write `x,probability`.
    Simulate(SimulateArgs),
    /// Write the pointwise long-time limit `x,limit_probability`.
    Limit(LimitArgs),
    /// Write the continuous limit density and its coefficients, or print a moment.
    Density(DensityArgs),
    /// Write `t,pr_minus_pl` for one protocol.
    Game(GameArgs),
    /// Classify every cell of a θ₁ × θ₂ grid.
    Phase(PhaseArgs),
    /// Classify the states `(cos(φ/2), i sin(φ/2), 0, 0)` along a φ axis.
    StateSweep(StateSweepArgs),
    /// Repeat a run from its manifest.
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CoinArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: f64,
}

impl CoinArgs {
    pub fn coins(&self) -> Result<CoinAngles, WalkError> {
        CoinAngles::from_pi_multiples(self.theta1, self.theta2)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coins: CoinArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value = "XY")]
    pub protocol: String,
    /// Add a `limit_probability` column for |x| ≤ 200.
    #[arg(long)]
    pub with_limit: bool,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LimitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coins: CoinArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Rows for -radius ≤ x ≤ radius.
    #[arg(long, default_value_t = 200)]
    pub radius: i64,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coins: CoinArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Interior grid points on the support.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Print the r-th moment of the limit law (r ≤ 4) to stdout.
    #[arg(long)]
    pub moment: Option<u32>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GameArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coins: CoinArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub t_max: usize,
    #[arg(long, default_value = "XY")]
    pub protocol: String,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PhaseArgs {
    /// Comma list (`0.1,0.2`) or inclusive range `start:stop:count`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta1_axis: String,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2_axis: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StateSweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coins: CoinArgs,
    /// Comma list or inclusive range `start:stop:count`, in multiples of π.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_axis: String,
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    pub manifest: PathBuf,
    /// Write here instead of the recorded output path.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Rejected before any computation starts.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

pub fn parse_state(spec: &str) -> Result<InitialState, anyhow::Error> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| config(format!("--q: {e} in {spec:?}")))?;
    if parts.len() != 8 {
        return Err(config(format!(
            "--q expects 8 numbers (re,im for q0..q3), got {}",
            parts.len()
        ))
        .into());
    }
    let q: Vec<Complex64> = parts
        .chunks(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    Ok(InitialState::new(q[0], q[1], q[2], q[3])?)
}

pub fn parse_protocol(s: &str) -> Result<Protocol, anyhow::Error> {
    Ok(s.parse::<Protocol>()?)
}

pub fn parse_axis(spec: &str) -> Result<Vec<f64>, anyhow::Error> {
    let bad = |e: std::num::ParseFloatError| config(format!("axis {spec:?}: {e}"));
    let axis: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(config(format!("axis range {spec:?} must be start:stop:count")).into());
        }
        let start: f64 = parts[0].trim().parse().map_err(bad)?;
        let stop: f64 = parts[1].trim().parse().map_err(bad)?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|e| config(format!("axis {spec:?}: {e}")))?;
        match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect(),
        }
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(bad)?
    };
    if axis.is_empty() {
        return Err(config(format!("axis {spec:?} is empty")).into());
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(config(format!("axis {spec:?} has non-finite entries")).into());
    }
    Ok(axis)
}
