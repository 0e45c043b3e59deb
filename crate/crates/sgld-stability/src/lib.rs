//! Simulation and verification toolkit for stochastic gradient Langevin
//! dynamics (SGLD) under stability analysis.
//!
//! The crate has three layers:
//!
//! * **Simulation** — [`loss`] defines loss families with certified
//!   assumption constants, [`dynamics`] provides the SGLD kernels
//!   (discrete step, fixed-batch Euler windows, projected / anisotropic /
//!   multistep variants) and [`couplings`] runs paired chains under
//!   synchronous or reflection couplings.
//! * **Analysis** — [`transport`] implements distortion metrics, coupling
//!   estimators and exact small-sample transport oracles; [`bounds`]
//!   evaluates every closed-form constant (contraction rates, moment,
//!   divergence and discretization bounds, generalization theorems).
//! * **Orchestration** — [`harness`] wires configs, reproducible RNG
//!   streams, experiments and report emission; the `sgld-stability`
//!   binary exposes it as a CLI.
//!
//! Start with the runnable examples (`cargo run --example ...`), each of
//! which exercises one capability end to end.

// Validation guards use `!(x >= 0.0)` on purpose: the negated form is true
// for NaN, which `x < 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod couplings;
pub mod dynamics;
pub mod harness;
pub mod loss;
pub mod rng;
pub mod stats;
pub mod transport;
pub mod vecmath;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("empty batch")]
    EmptyBatch,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("batch size {k} out of range for dataset of size {n}")]
    BatchSize { k: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("constant `{0}` not declared for the requested certificate")]
    MissingConstant(&'static str),
    #[error("sample size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("assignment oracle capped at {cap} points, got {got}")]
    OracleTooLarge { cap: usize, got: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
