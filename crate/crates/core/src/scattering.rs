//! Frequency-domain scattering coefficients, cavity transmissions, and
//! thermal output spectra of the input-output relations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{derive, DerivedParams, SystemParams};
use crate::steady_state::{solve_ideal, DetuningMode, SteadyState};

/// The eight scattering coefficients at one probe frequency. Row 1 maps the
/// inputs onto the first cavity output, row 2 onto the second; columns run
/// over (optical in 1, optical in 2 conj, mechanical in 1, mechanical in 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringMatrix {
    pub omega: f64,
    pub s11: Complex64,
    pub s12: Complex64,
    pub s13: Complex64,
    pub s14: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
    pub s23: Complex64,
    pub s24: Complex64,
}

/// Probe-frequency grid. `center = None` centers the window on the mean
/// squeezed mechanical frequency. Defaults: half-width 0.1, 2001 points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: Option<f64>,
    pub halfwidth: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            center: None,
            halfwidth: 0.1,
            count: 2001,
        }
    }
}

impl GridSpec {
    pub fn frequencies(&self, derived: &DerivedParams) -> Vec<f64> {
        assert!(self.count >= 2, "grid needs at least two points");
        assert!(self.halfwidth > 0.0, "grid half-width must be positive");
        let center = self
            .center
            .unwrap_or(0.5 * (derived.delta_m_1 + derived.delta_m_2));
        let lo = center - self.halfwidth;
        let step = 2.0 * self.halfwidth / (self.count - 1) as f64;
        (0..self.count).map(|k| lo + step * k as f64).collect()
    }

    pub fn step(&self) -> f64 {
        2.0 * self.halfwidth / (self.count - 1) as f64
    }
}

/// Tabulated transmissions and output spectra on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub omega: Vec<f64>,
    pub s11_sq: Vec<f64>,
    pub s22_sq: Vec<f64>,
    pub s_out_1: Vec<f64>,
    pub s_out_2: Vec<f64>,
}

impl SpectrumGrid {
    /// Indices of strict local maxima of a column (plateau-free signals).
    pub fn local_maxima(values: &[f64]) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 1..values.len().saturating_sub(1) {
            if values[i] > values[i - 1] && values[i] > values[i + 1] {
                out.push(i);
            }
        }
        out
    }
}

/// Scattering coefficients at one probe frequency. The shared resonant
/// denominator xi_eff = xi_1 xi_2 + J_tilde^2 vanishes exactly on a real
/// frequency only when gain fully compensates loss; that case is reported
/// as a pole hit.
pub fn smatrix(
    params: &SystemParams,
    derived: &DerivedParams,
    steady: &SteadyState,
    omega: f64,
) -> Result<ScatteringMatrix> {
    let xi1 = Complex64::new(steady.gamma_eff_1 / 2.0, derived.delta_m_1 - omega);
    let xi2 = Complex64::new(steady.gamma_eff_2 / 2.0, derived.delta_m_2 - omega);
    let j = derived.j_tilde;
    let xi_eff = xi1 * xi2 + j * j;
    if xi_eff.norm() < 1e-300 {
        return Err(Error::PoleHit { omega });
    }
    let sqrt_kappa = params.kappa.sqrt();
    let sqrt_g1 = steady.gamma_opt_1.sqrt();
    let sqrt_g2 = steady.gamma_opt_2.sqrt();
    let sqrt_gm = params.gamma_m.sqrt();
    let g1 = steady.g_eff_1;
    let g2 = steady.g_eff_2;
    let denom = sqrt_kappa * xi_eff;
    let i = Complex64::i();

    Ok(ScatteringMatrix {
        omega,
        s11: 1.0 - 2.0 * g1 * xi2 * sqrt_g1 / denom,
        s12: -2.0 * i * g1 * j * sqrt_g2 / denom,
        s13: 2.0 * i * g1 * xi2 * sqrt_gm / denom,
        s14: 2.0 * g1 * j * sqrt_gm / denom,
        s21: 2.0 * i * g2 * j * sqrt_g1 / denom,
        s22: 1.0 + 2.0 * g2 * xi1 * sqrt_g2 / denom,
        s23: 2.0 * g2 * j * sqrt_gm / denom,
        s24: -2.0 * i * g2 * xi1 * sqrt_gm / denom,
    })
}

fn evaluate_grid(params: &SystemParams, grid: &GridSpec, mode: DetuningMode) -> Result<SpectrumGrid> {
    let derived = derive(params)?;
    let steady = solve_ideal(params, &derived, mode)?;
    let omega = grid.frequencies(&derived);
    let w1 = 2.0 * derived.n_s_1 + 1.0;
    let w2 = 2.0 * derived.n_s_2 + 1.0;

    let mut out = SpectrumGrid {
        omega: Vec::with_capacity(omega.len()),
        s11_sq: Vec::with_capacity(omega.len()),
        s22_sq: Vec::with_capacity(omega.len()),
        s_out_1: Vec::with_capacity(omega.len()),
        s_out_2: Vec::with_capacity(omega.len()),
    };
    for w in omega {
        let s = smatrix(params, &derived, &steady, w)?;
        out.omega.push(w);
        out.s11_sq.push(s.s11.norm_sqr());
        out.s22_sq.push(s.s22.norm_sqr());
        out.s_out_1.push(
            s.s11.norm_sqr() + s.s12.norm_sqr() + w1 * s.s13.norm_sqr() + w2 * s.s14.norm_sqr(),
        );
        out.s_out_2.push(
            s.s21.norm_sqr() + s.s22.norm_sqr() + w1 * s.s23.norm_sqr() + w2 * s.s24.norm_sqr(),
        );
    }
    Ok(out)
}

/// Cavity transmissions |S_11|^2, |S_22|^2 over the grid.
pub fn transmission_spectrum(
    params: &SystemParams,
    grid: &GridSpec,
    mode: DetuningMode,
) -> Result<SpectrumGrid> {
    evaluate_grid(params, grid, mode)
}

/// Symmetrized output spectra S_out^(1,2), the transmissions plus the
/// thermally weighted mechanical-noise channels (weights 2 N_s + 1).
pub fn output_spectrum(
    params: &SystemParams,
    grid: &GridSpec,
    mode: DetuningMode,
) -> Result<SpectrumGrid> {
    evaluate_grid(params, grid, mode)
}
