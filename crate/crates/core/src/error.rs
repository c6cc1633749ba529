use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("initial coin state has norm {norm}, expected 1 (tolerance 1e-9)")]
    Norm { norm: f64 },

    #[error(
        "coin angles ({theta1_over_pi}π, {theta2_over_pi}π) touch the excluded set {{0, π/2, π, 3π/2}}; limit laws are undefined"
    )]
    InvalidAngles {
        theta1_over_pi: f64,
        theta2_over_pi: f64,
    },

    #[error("degenerate spectrum at k = {k}: radicand {radicand} <= 1e-15")]
    Degenerate { k: f64, radicand: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;
