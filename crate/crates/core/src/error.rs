use thiserror::Error;

/// Errors produced by the numerical kernels and their configuration layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` must be strictly positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("cutoff {omega_cut} rad/s lies below the fundamental mode {fundamental} rad/s")]
    CutoffBelowFundamental { omega_cut: f64, fundamental: f64 },

    #[error("mode index {index} outside the retained range 1..={n_max}")]
    ModeIndex { index: i64, n_max: usize },

    #[error("position {x} m lies outside the cavity [0, {length}] m")]
    Position { x: f64, length: f64 },

    #[error("finite-difference step must lie in (0, 1), got {0}")]
    Step(f64),

    #[error("grid needs at least 2 points, got {0}")]
    GridSize(usize),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("Fock basis dimension {dim} exceeds the limit {limit}")]
    BasisTooLarge { dim: usize, limit: usize },

    #[error("invalid Fock basis: {0}")]
    Basis(String),

    #[error("time-splitting extrapolation did not stabilize (last change {change:e})")]
    Extrapolation { change: f64 },

    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
