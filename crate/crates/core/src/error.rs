use thiserror::Error;

/// Errors produced by the physics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The squeezing parameter r_j = (1/4) ln((w~+chi)/(w~-chi)) diverges.
    #[error("squeeze diverges on resonator {resonator}: |chi| = {chi} >= omega_tilde = {omega_tilde}")]
    SqueezeDiverges {
        resonator: usize,
        chi: f64,
        omega_tilde: f64,
    },

    #[error("optical linewidth must be positive, got kappa = {0}")]
    NonPositiveRate(f64),

    #[error("invalid parameter {name} = {value}")]
    InvalidParam { name: &'static str, value: f64 },

    #[error("steady state did not converge in {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("no exceptional point in drive bracket [{lo}, {hi}] (best gap {gap:e})")]
    NoEPInBracket { lo: f64, hi: f64, gap: f64 },

    #[error("perturbation strength is zero for the selected sensing scheme")]
    ZeroPerturbation,

    #[error("resonator mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("scattering coefficients hit a pole at probe frequency omega = {omega}")]
    PoleHit { omega: f64 },

    #[error("fewer than two mechanically dominated eigenvectors; branch assignment is ambiguous")]
    AmbiguousBranch,
}

pub type Result<T> = std::result::Result<T, Error>;
