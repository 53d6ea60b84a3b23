//! Deterministic analysis toolkit for exceptional-point sensing in two
//! coupled, parametrically driven optomechanical cavities.
//!
//! The crate builds the squeeze-dressed parameters and classical steady
//! state, assembles the effective non-Hermitian two-mode Hamiltonian,
//! locates exceptional points and quantifies their perturbation response
//! (splitting and shifting schemes, numeric and closed-form), computes
//! cavity transmissions and thermal output spectra, and validates the
//! adiabatic elimination against the full four-mode linear system.
//!
//! All quantities are dimensionless, in units of the mechanical frequency.

pub mod eigenmodes;
pub mod error;
pub mod full_model;
pub mod linalg;
pub mod params;
pub mod roots;
pub mod scattering;
pub mod steady_state;

pub use eigenmodes::{
    build_heff, delta_lambda_analytic, delta_lambda_numeric, effective_model, eigen_sweep,
    eigenvalues, enhancement_factor, locate_ep, mass_equivalent, AnalyticDelta, BranchRule,
    EPResult, EffectiveHamiltonian, EigenPair, Enhancement, Scheme, EP_GAP_TOL,
};
pub use error::{Error, Result};
pub use full_model::{build_full_matrix, mechanical_branch, propagate, FourModeMatrix};
pub use params::{derive, squeeze_moments, DerivedParams, Perturbation, SystemParams};
pub use scattering::{
    output_spectrum, smatrix, transmission_spectrum, GridSpec, ScatteringMatrix, SpectrumGrid,
};
pub use steady_state::{solve_ideal, solve_self_consistent, DetuningMode, SteadyState};
