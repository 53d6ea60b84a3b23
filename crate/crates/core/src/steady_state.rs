//! Classical mean fields, effective couplings, and optically induced
//! damping rates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{DerivedParams, SystemParams};

/// Which detuning enters the cavity response when the squeeze is on.
///
/// The degeneracy-lifted mechanical frequency Delta_m differs from the bare
/// mechanical frequency once chi != 0, and the sideband condition can be
/// stated against either. `Bare` keeps the configured laser detunings;
/// `SqueezedSideband` re-pins them to -Delta_m^1 / +Delta_m^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetuningMode {
    #[default]
    Bare,
    SqueezedSideband,
}

/// Mean-field solution with the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    /// Intracavity optical amplitudes.
    pub alpha_1: Complex64,
    pub alpha_2: Complex64,
    /// Mechanical mean fields.
    pub beta_1: Complex64,
    pub beta_2: Complex64,
    /// Backaction-shifted detunings Delta_j + 2 g_tilde_j Re beta_j.
    pub delta_eff_1: f64,
    pub delta_eff_2: f64,
    /// Effective couplings G_j = g_tilde_j |alpha_j| (real by convention;
    /// the amplitude phase is discarded).
    pub g_eff_1: f64,
    pub g_eff_2: f64,
    /// Per-cavity optically induced dampings 4 G_j^2 / kappa.
    pub gamma_opt_1: f64,
    pub gamma_opt_2: f64,
    /// Symmetrized optical damping (gamma_opt_1 + gamma_opt_2) / 2, the
    /// single Gamma the effective model works with.
    pub gamma_opt: f64,
    /// Effective mechanical dampings gamma_1 + Gamma and gamma_2 - Gamma.
    pub gamma_eff_1: f64,
    pub gamma_eff_2: f64,
    /// Whether the cavity response was evaluated on the exact mechanical
    /// sidebands (red at -Delta_m^1, blue at +Delta_m^2), the condition the
    /// rotating-wave step of the effective model assumes.
    pub sideband_resonant: bool,
    /// Fixed-point iterations used (0 for the ideal solver).
    pub iterations: usize,
}

const SIDEBAND_TOL: f64 = 1e-9;

fn cavity_amplitude(kappa: f64, alpha_in: f64, detuning: f64) -> Complex64 {
    // alpha = sqrt(kappa) alpha_in / (i Delta + kappa / 2)
    kappa.sqrt() * alpha_in / Complex64::new(kappa / 2.0, detuning)
}

/// Mechanical mean fields for given cavity amplitudes: the stationary
/// solution of the linear 2x2 system driven by the radiation pressure
/// offsets i g_tilde_j |alpha_j|^2.
fn mechanical_mean_fields(
    params: &SystemParams,
    derived: &DerivedParams,
    alpha_1: Complex64,
    alpha_2: Complex64,
) -> (Complex64, Complex64) {
    let a11 = Complex64::new(params.gamma_1() / 2.0, derived.delta_m_1);
    let a22 = Complex64::new(params.gamma_2() / 2.0, derived.delta_m_2);
    let a12 = Complex64::new(0.0, -derived.j_tilde);
    let det = a11 * a22 - a12 * a12;
    let rhs1 = Complex64::i() * derived.g_tilde_1 * alpha_1.norm_sqr();
    let rhs2 = Complex64::i() * derived.g_tilde_2 * alpha_2.norm_sqr();
    let beta_1 = (a22 * rhs1 - a12 * rhs2) / det;
    let beta_2 = (a11 * rhs2 - a12 * rhs1) / det;
    (beta_1, beta_2)
}

fn assemble(
    params: &SystemParams,
    derived: &DerivedParams,
    alpha_1: Complex64,
    alpha_2: Complex64,
    beta_1: Complex64,
    beta_2: Complex64,
    response_detunings: (f64, f64),
    iterations: usize,
) -> SteadyState {
    let g_eff_1 = derived.g_tilde_1 * alpha_1.norm();
    let g_eff_2 = derived.g_tilde_2 * alpha_2.norm();
    let gamma_opt_1 = 4.0 * g_eff_1 * g_eff_1 / params.kappa;
    let gamma_opt_2 = 4.0 * g_eff_2 * g_eff_2 / params.kappa;
    let gamma_opt = 0.5 * (gamma_opt_1 + gamma_opt_2);
    let (d1, d2) = response_detunings;
    SteadyState {
        alpha_1,
        alpha_2,
        beta_1,
        beta_2,
        delta_eff_1: params.delta_1 + 2.0 * derived.g_tilde_1 * beta_1.re,
        delta_eff_2: params.delta_2 + 2.0 * derived.g_tilde_2 * beta_2.re,
        g_eff_1,
        g_eff_2,
        gamma_opt_1,
        gamma_opt_2,
        gamma_opt,
        gamma_eff_1: params.gamma_1() + gamma_opt,
        gamma_eff_2: params.gamma_2() - gamma_opt,
        sideband_resonant: (d1 + derived.delta_m_1).abs() <= SIDEBAND_TOL
            && (d2 - derived.delta_m_2).abs() <= SIDEBAND_TOL,
        iterations,
    }
}

/// Steady state under the exact-sideband assumption: the cavity response is
/// evaluated at fixed detunings (no backaction loop). This is the mode the
/// effective-model analysis rests on and the default for all figure data.
pub fn solve_ideal(
    params: &SystemParams,
    derived: &DerivedParams,
    mode: DetuningMode,
) -> Result<SteadyState> {
    params.validate()?;
    let (d1, d2) = match mode {
        DetuningMode::Bare => (params.delta_1, params.delta_2),
        DetuningMode::SqueezedSideband => (-derived.delta_m_1, derived.delta_m_2),
    };
    let alpha_1 = cavity_amplitude(params.kappa, params.alpha_in, d1);
    let alpha_2 = cavity_amplitude(params.kappa, params.alpha_in, d2);
    let (beta_1, beta_2) = mechanical_mean_fields(params, derived, alpha_1, alpha_2);
    Ok(assemble(
        params, derived, alpha_1, alpha_2, beta_1, beta_2, (d1, d2), 0,
    ))
}

/// Joint fixed point of the coupled alpha / beta / Delta-tilde system,
/// by damped fixed-point iteration (under-relaxation 0.5). Quantifies the
/// error of the exact-sideband assumption used by [`solve_ideal`].
pub fn solve_self_consistent(
    params: &SystemParams,
    derived: &DerivedParams,
    tol: f64,
    max_iter: usize,
) -> Result<SteadyState> {
    params.validate()?;
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_iter >= 1);
    const RELAX: f64 = 0.5;

    let zero = Complex64::new(0.0, 0.0);
    let (mut a1, mut a2, mut b1, mut b2) = (zero, zero, zero, zero);
    let scale = (params.kappa.sqrt() * params.alpha_in.abs() / (params.kappa / 2.0)).max(1.0);
    let mut residual = f64::MAX;
    for it in 1..=max_iter {
        let d1 = params.delta_1 + 2.0 * derived.g_tilde_1 * b1.re;
        let d2 = params.delta_2 + 2.0 * derived.g_tilde_2 * b2.re;
        let na1 = cavity_amplitude(params.kappa, params.alpha_in, d1);
        let na2 = cavity_amplitude(params.kappa, params.alpha_in, d2);
        let (nb1, nb2) = mechanical_mean_fields(params, derived, na1, na2);
        residual = [(na1 - a1), (na2 - a2), (nb1 - b1), (nb2 - b2)]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            / scale;
        a1 += RELAX * (na1 - a1);
        a2 += RELAX * (na2 - a2);
        b1 += RELAX * (nb1 - b1);
        b2 += RELAX * (nb2 - b2);
        if residual <= tol {
            let d1 = params.delta_1 + 2.0 * derived.g_tilde_1 * b1.re;
            let d2 = params.delta_2 + 2.0 * derived.g_tilde_2 * b2.re;
            return Ok(assemble(
                params, derived, a1, a2, b1, b2, (d1, d2), it,
            ));
        }
    }
    Err(Error::NoConvergence { max_iter, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive;

    fn baseline() -> (SystemParams, DerivedParams) {
        let p = SystemParams::default();
        let d = derive(&p).unwrap();
        (p, d)
    }

    #[test]
    fn no_drive_gives_zero_fields() {
        let (p, d) = {
            let p = SystemParams::default().with_alpha_in(0.0);
            let d = derive(&p).unwrap();
            (p, d)
        };
        let s = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        assert_eq!(s.alpha_1.norm(), 0.0);
        assert_eq!(s.beta_1.norm(), 0.0);
        assert_eq!(s.gamma_opt, 0.0);
        assert_eq!(s.gamma_eff_1, p.gamma_m);
        assert_eq!(s.gamma_eff_2, p.gamma_m);
    }

    #[test]
    fn baseline_amplitudes_match_closed_form() {
        // Frozen from a 40-digit evaluation of
        // sqrt(0.1) * 420 / sqrt(1 + 0.0025), then 4 G^2 / kappa.
        let (p, d) = baseline();
        let s = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        assert!((s.alpha_1.norm() - 132.64995278952173).abs() < 1e-10);
        assert!((s.g_eff_1 - 0.033162488197380433).abs() < 1e-14);
        assert!((s.gamma_opt - 0.04399002493765586).abs() < 1e-14);
        assert!((s.gamma_eff_1 - 0.04499002493765586).abs() < 1e-14);
        assert!((s.gamma_eff_2 + 0.04299002493765586).abs() < 1e-14);
        assert!(s.sideband_resonant);
    }

    #[test]
    fn detuning_modes_agree_when_chi_is_zero() {
        let (p, d) = baseline();
        let bare = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        let sq = solve_ideal(&p, &d, DetuningMode::SqueezedSideband).unwrap();
        assert!((bare.gamma_opt - sq.gamma_opt).abs() < 1e-16);
    }

    #[test]
    fn squeezed_sideband_mode_differs_when_chi_is_on() {
        let p = SystemParams::default().with_chi(0.3);
        let d = derive(&p).unwrap();
        let bare = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        let sq = solve_ideal(&p, &d, DetuningMode::SqueezedSideband).unwrap();
        assert!(!bare.sideband_resonant);
        assert!(sq.sideband_resonant);
        assert!(bare.gamma_opt < sq.gamma_opt);
    }

    #[test]
    fn optical_damping_scales_quadratically_with_drive() {
        let (p, d) = baseline();
        let s1 = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        for c in [0.5, 2.0, 3.7] {
            let pc = p.with_alpha_in(c * p.alpha_in);
            let sc = solve_ideal(&pc, &d, DetuningMode::Bare).unwrap();
            let expected = c * c * s1.gamma_opt;
            assert!((sc.gamma_opt - expected).abs() / expected < 1e-13);
        }
    }

    #[test]
    fn effective_damping_bookkeeping() {
        // gamma_eff_1 + gamma_eff_2 = gamma_1 + gamma_2 identically.
        let (p, d) = baseline();
        for a in [0.0, 120.0, 420.0, 600.0] {
            let s = solve_ideal(&p.with_alpha_in(a), &d, DetuningMode::Bare).unwrap();
            let sum = s.gamma_eff_1 + s.gamma_eff_2;
            assert!((sum - (p.gamma_1() + p.gamma_2())).abs() < 1e-15);
        }
    }

    #[test]
    fn self_consistent_zero_drive_converges_immediately() {
        let p = SystemParams::default().with_alpha_in(0.0);
        let d = derive(&p).unwrap();
        let s = solve_self_consistent(&p, &d, 1e-12, 10_000).unwrap();
        assert_eq!(s.iterations, 1);
        assert_eq!(s.alpha_1.norm(), 0.0);
    }

    #[test]
    fn self_consistent_reduces_to_decoupled_cavity_as_g_vanishes() {
        let mut last_dev = f64::MAX;
        for g in [2.5e-4, 2.5e-5, 2.5e-6] {
            let p = SystemParams {
                g,
                ..SystemParams::default()
            };
            let d = derive(&p).unwrap();
            let s = solve_self_consistent(&p, &d, 1e-12, 10_000).unwrap();
            let ideal = cavity_amplitude(p.kappa, p.alpha_in, p.delta_1);
            let dev = (s.alpha_1.norm() - ideal.norm()).abs() / ideal.norm();
            assert!(dev < last_dev);
            last_dev = dev;
        }
        assert!(last_dev < 1e-6);
    }

    #[test]
    fn backaction_shift_is_small_at_baseline() {
        // Frozen fixed point |alpha_1| = 132.94949774674 (reference damped
        // iteration run to 1e-14); within 1% of the ideal 132.64995.
        let (p, d) = baseline();
        let s = solve_self_consistent(&p, &d, 1e-13, 10_000).unwrap();
        assert!((s.alpha_1.norm() - 132.94949774674).abs() < 1e-6);
        let ideal = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
        let rel = (s.alpha_1.norm() - ideal.alpha_1.norm()).abs() / ideal.alpha_1.norm();
        assert!(rel < 0.01, "backaction shift {rel}");
    }
}
