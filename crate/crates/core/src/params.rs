//! Physical inputs and the squeezing-transformed (tilded) quantities.
//!
//! All rates and frequencies are dimensionless, in units of the mechanical
//! frequency; drive amplitudes carry the matching square-root unit.

use crate::error::{Error, Result};

/// Perturbations applied on top of the reference system. All default to
/// zero; a frequency perturbation acts on resonator 2, a dissipation
/// mismatch on resonator 1, and parametric-drive fluctuations on both.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Perturbation {
    /// Frequency shift of resonator 2 (e.g. from a mass deposition).
    pub delta_omega: f64,
    /// Dissipation mismatch, folded as gamma_1 -> gamma_m + delta_gamma.
    pub delta_gamma: f64,
    /// Parametric-drive fluctuation on resonator 1.
    pub delta_chi_1: f64,
    /// Parametric-drive fluctuation on resonator 2.
    pub delta_chi_2: f64,
}

impl Perturbation {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn frequency(delta_omega: f64) -> Self {
        Self {
            delta_omega,
            ..Self::default()
        }
    }

    pub fn dissipation(delta_gamma: f64) -> Self {
        Self {
            delta_gamma,
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta_omega == 0.0
            && self.delta_gamma == 0.0
            && self.delta_chi_1 == 0.0
            && self.delta_chi_2 == 0.0
    }
}

/// Complete set of physical inputs for the two-cavity system.
///
/// Defaults are the degenerate benchmark: kappa = 0.1, Delta_1 = -1,
/// Delta_2 = +1, gamma_m = 1e-3, g = 2.5e-4, J_m = 2.2e-2, chi = 0,
/// alpha_in = 420.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Mechanical frequencies.
    pub omega_1: f64,
    pub omega_2: f64,
    /// Parametric reference frequency; omega_tilde_j = omega_j - omega_d.
    pub omega_d: f64,
    /// Parametric drive amplitudes (spring-constant modulation depth).
    pub chi_1: f64,
    pub chi_2: f64,
    /// Parametric phase, fixed to zero throughout.
    pub phi_d: f64,
    /// Single-photon optomechanical coupling.
    pub g: f64,
    /// Phonon hopping rate between the resonators.
    pub j_m: f64,
    /// Optical linewidth (same for both cavities).
    pub kappa: f64,
    /// Mechanical linewidth (same for both resonators before perturbation).
    pub gamma_m: f64,
    /// Laser detunings; cavity 1 red (-), cavity 2 blue (+).
    pub delta_1: f64,
    pub delta_2: f64,
    /// Drive amplitude.
    pub alpha_in: f64,
    /// Thermal phonon occupations.
    pub n_th_1: f64,
    pub n_th_2: f64,
    pub perturbation: Perturbation,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega_1: 1.0,
            omega_2: 1.0,
            omega_d: 0.0,
            chi_1: 0.0,
            chi_2: 0.0,
            phi_d: 0.0,
            g: 2.5e-4,
            j_m: 2.2e-2,
            kappa: 0.1,
            gamma_m: 1e-3,
            delta_1: -1.0,
            delta_2: 1.0,
            alpha_in: 420.0,
            n_th_1: 0.0,
            n_th_2: 0.0,
            perturbation: Perturbation::none(),
        }
    }
}

impl SystemParams {
    /// Frame-shifted frequency of resonator 1.
    pub fn omega_tilde_1(&self) -> f64 {
        self.omega_1 - self.omega_d
    }

    /// Frame-shifted frequency of resonator 2, with the frequency
    /// perturbation folded in exactly.
    pub fn omega_tilde_2(&self) -> f64 {
        self.omega_2 + self.perturbation.delta_omega - self.omega_d
    }

    /// Parametric amplitude on resonator 1 including its fluctuation.
    pub fn chi_eff_1(&self) -> f64 {
        self.chi_1 + self.perturbation.delta_chi_1
    }

    /// Parametric amplitude on resonator 2 including its fluctuation.
    pub fn chi_eff_2(&self) -> f64 {
        self.chi_2 + self.perturbation.delta_chi_2
    }

    /// Mechanical linewidth of resonator 1; carries the dissipation mismatch.
    pub fn gamma_1(&self) -> f64 {
        self.gamma_m + self.perturbation.delta_gamma
    }

    /// Mechanical linewidth of resonator 2.
    pub fn gamma_2(&self) -> f64 {
        self.gamma_m
    }

    pub fn validate(&self) -> Result<()> {
        if self.kappa <= 0.0 {
            return Err(Error::NonPositiveRate(self.kappa));
        }
        if self.gamma_m < 0.0 {
            return Err(Error::InvalidParam {
                name: "gamma_m",
                value: self.gamma_m,
            });
        }
        if self.j_m < 0.0 {
            return Err(Error::InvalidParam {
                name: "j_m",
                value: self.j_m,
            });
        }
        if self.n_th_1 < 0.0 {
            return Err(Error::InvalidParam {
                name: "n_th_1",
                value: self.n_th_1,
            });
        }
        if self.n_th_2 < 0.0 {
            return Err(Error::InvalidParam {
                name: "n_th_2",
                value: self.n_th_2,
            });
        }
        for (j, (chi, omega_tilde)) in [
            (self.chi_eff_1(), self.omega_tilde_1()),
            (self.chi_eff_2(), self.omega_tilde_2()),
        ]
        .into_iter()
        .enumerate()
        {
            if chi.abs() >= omega_tilde {
                return Err(Error::SqueezeDiverges {
                    resonator: j + 1,
                    chi,
                    omega_tilde,
                });
            }
        }
        Ok(())
    }

    pub fn with_alpha_in(mut self, alpha_in: f64) -> Self {
        self.alpha_in = alpha_in;
        self
    }

    /// Set both parametric amplitudes to the same value.
    pub fn with_chi(mut self, chi: f64) -> Self {
        self.chi_1 = chi;
        self.chi_2 = chi;
        self
    }

    pub fn with_perturbation(mut self, perturbation: Perturbation) -> Self {
        self.perturbation = perturbation;
        self
    }

    /// Copy of the parameters with all perturbations removed.
    pub fn unperturbed(&self) -> Self {
        self.with_perturbation(Perturbation::none())
    }
}

/// Squeeze-dressed quantities entering the effective model.
///
/// For non-degenerate resonators the per-mode quantities (r_j, g_tilde_j,
/// the thermal moments) use the per-mode squeeze r_j, while the shared
/// hopping J_tilde uses the mean squeeze; the two conventions coincide in
/// the degenerate default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub r_1: f64,
    pub r_2: f64,
    /// Squeeze-reduced optomechanical couplings g exp(-r_j).
    pub g_tilde_1: f64,
    pub g_tilde_2: f64,
    /// Squeezed mechanical frequencies sqrt(omega_tilde_j^2 - chi_j^2).
    pub delta_m_1: f64,
    pub delta_m_2: f64,
    /// Dressed hopping J_m cosh(2 r_mean).
    pub j_tilde: f64,
    /// Squeezed thermal moments of the mechanical baths.
    pub n_s_1: f64,
    pub n_s_2: f64,
    pub m_s_1: f64,
    pub m_s_2: f64,
}

impl DerivedParams {
    pub fn r_mean(&self) -> f64 {
        0.5 * (self.r_1 + self.r_2)
    }
}

/// Squeezed thermal moments (N_s, M_s) of a bath at occupation `n_th`
/// seen through a squeeze of strength `r`:
/// N_s = (n+1) sinh^2 r + n cosh^2 r, M_s = (2n+1) sinh r cosh r.
pub fn squeeze_moments(n_th: f64, r: f64) -> (f64, f64) {
    let sh = r.sinh();
    let ch = r.cosh();
    let n_s = (n_th + 1.0) * sh * sh + n_th * ch * ch;
    let m_s = (2.0 * n_th + 1.0) * sh * ch;
    (n_s, m_s)
}

/// Evaluate the squeezing transformation for the given inputs. The
/// perturbations carried by `params` (frequency shift, parametric
/// fluctuations) are folded in exactly before the closed forms are applied.
pub fn derive(params: &SystemParams) -> Result<DerivedParams> {
    params.validate()?;
    let (w1, w2) = (params.omega_tilde_1(), params.omega_tilde_2());
    let (chi1, chi2) = (params.chi_eff_1(), params.chi_eff_2());

    let r_1 = 0.25 * ((w1 + chi1) / (w1 - chi1)).ln();
    let r_2 = 0.25 * ((w2 + chi2) / (w2 - chi2)).ln();
    let r_mean = 0.5 * (r_1 + r_2);

    let (n_s_1, m_s_1) = squeeze_moments(params.n_th_1, r_1);
    let (n_s_2, m_s_2) = squeeze_moments(params.n_th_2, r_2);

    Ok(DerivedParams {
        r_1,
        r_2,
        g_tilde_1: params.g * (-r_1).exp(),
        g_tilde_2: params.g * (-r_2).exp(),
        delta_m_1: (w1 * w1 - chi1 * chi1).sqrt(),
        delta_m_2: (w2 * w2 - chi2 * chi2).sqrt(),
        j_tilde: params.j_m * (2.0 * r_mean).cosh(),
        n_s_1,
        n_s_2,
        m_s_1,
        m_s_2,
    })
}
