//! The pre-elimination four-mode linear system and validators for the
//! adiabatic reduction to the two-mode effective model.
//!
//! The matrix lives in the co-rotating frames of the post-RWA equations,
//! so its diagonal carries only decay (-kappa/2, -gamma_j/2) and no
//! mechanical frequencies: eigenvalues are compared to the effective model
//! modulo the known frame offset (the mean squeezed frequency), i.e. as
//! decay/oscillation rates rather than absolute frequencies.

use num_complex::Complex64;

use crate::eigenmodes::{BranchRule, EigenPair};
use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::params::{DerivedParams, SystemParams};
use crate::steady_state::SteadyState;

/// Dynamics matrix over the state (da_1, db_1, da_2^dag, db_2): cavity 1
/// couples to its resonator as a beam splitter (red sideband), cavity 2 as
/// two-mode squeezing (blue sideband).
#[derive(Debug, Clone, PartialEq)]
pub struct FourModeMatrix {
    pub matrix: SquareMatrix,
}

/// Indices of the mechanical components in the state ordering.
const MECH: [usize; 2] = [1, 3];

pub fn build_full_matrix(
    params: &SystemParams,
    derived: &DerivedParams,
    steady: &SteadyState,
) -> FourModeMatrix {
    let z = Complex64::new(0.0, 0.0);
    let i = Complex64::i();
    let g1 = Complex64::new(steady.g_eff_1, 0.0);
    let g2 = Complex64::new(steady.g_eff_2, 0.0);
    let j = Complex64::new(derived.j_tilde, 0.0);
    let kappa_half = Complex64::new(-params.kappa / 2.0, 0.0);
    let gamma1_half = Complex64::new(-params.gamma_1() / 2.0, 0.0);
    let gamma2_half = Complex64::new(-params.gamma_2() / 2.0, 0.0);

    let matrix = SquareMatrix::from_rows(&[
        &[kappa_half, i * g1, z, z],
        &[i * g1.conj(), gamma1_half, z, i * j],
        &[z, z, kappa_half, -i * g2.conj()],
        &[z, i * j, i * g2, gamma2_half],
    ]);
    FourModeMatrix { matrix }
}

impl FourModeMatrix {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.matrix.eigenvalues()
    }

    /// Eigenvalues with the mechanical weight |v_b1|^2 + |v_b2|^2 of their
    /// (unit-norm) eigenvectors, sorted by descending weight.
    pub fn weighted_eigenvalues(&self) -> Vec<(Complex64, f64)> {
        let mut out: Vec<(Complex64, f64)> = self
            .matrix
            .eigenvalues()
            .into_iter()
            .map(|lambda| {
                let v = self.matrix.eigenvector(lambda);
                let weight: f64 = MECH.iter().map(|&k| v[k].norm_sqr()).sum();
                (lambda, weight)
            })
            .collect();
        out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        out
    }
}

/// The two mechanically dominated eigenvalues, converted to the effective
/// Hamiltonian convention lambda_H = i lambda_dyn (still in the rotating
/// frame; add the mean squeezed frequency to compare absolute positions).
/// Ambiguous when strong coupling pushes the second-largest mechanical
/// weight below one half.
pub fn mechanical_branch(m: &FourModeMatrix) -> Result<EigenPair> {
    let weighted = m.weighted_eigenvalues();
    // Hybridized polaritons sit exactly at weight 1/2; keep them.
    const THRESHOLD: f64 = 0.5 - 1e-9;
    if weighted.len() < 2 || weighted[1].1 < THRESHOLD {
        return Err(Error::AmbiguousBranch);
    }
    let a = Complex64::i() * weighted[0].0;
    let b = Complex64::i() * weighted[1].0;
    let (lambda_plus, lambda_minus) = if (a.re, a.im) >= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    };
    Ok(EigenPair {
        lambda_plus,
        lambda_minus,
        branch_rule: BranchRule::DescendingReal,
    })
}

/// Propagate a state through exp(M t) by scaling and squaring.
pub fn propagate(m: &FourModeMatrix, state0: &[Complex64; 4], t: f64) -> [Complex64; 4] {
    assert!(t >= 0.0, "propagation runs forward in time");
    let propagator = m.matrix.scale(Complex64::new(t, 0.0)).expm();
    let v = propagator.mul_vec(state0.as_slice());
    [v[0], v[1], v[2], v[3]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenmodes::locate_ep;
    use crate::params::derive;
    use crate::steady_state::{solve_ideal, DetuningMode};

    fn assemble(params: &SystemParams) -> FourModeMatrix {
        let d = derive(params).unwrap();
        let s = solve_ideal(params, &d, DetuningMode::Bare).unwrap();
        build_full_matrix(params, &d, &s)
    }

    fn baseline_at_ep() -> SystemParams {
        let p = SystemParams::default();
        let ep = locate_ep(&p, (1.0, 1000.0), DetuningMode::Bare).unwrap();
        p.with_alpha_in(ep.alpha_in_ep)
    }

    fn sorted_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn no_coupling_decouples_into_blocks() {
        let p = SystemParams {
            g: 0.0,
            ..SystemParams::default()
        };
        let m = assemble(&p);
        let eigs = sorted_by_re(m.eigenvalues());
        // Two cavity poles at -kappa/2 and the bare mechanical dimer
        // -gamma/2 +- i J (rotating frame).
        assert!((eigs[0] - Complex64::new(-0.05, 0.0)).norm() < 1e-7);
        assert!((eigs[1] - Complex64::new(-0.05, 0.0)).norm() < 1e-7);
        let mech: Vec<_> = eigs[2..].to_vec();
        for e in &mech {
            assert!((e.re + 5e-4).abs() < 1e-10);
            assert!((e.im.abs() - 2.2e-2).abs() < 1e-10);
        }
    }

    #[test]
    fn bare_mechanical_branch_at_zero_coupling() {
        let p = SystemParams {
            g: 0.0,
            ..SystemParams::default()
        };
        let pair = mechanical_branch(&assemble(&p)).unwrap();
        // lambda_H = i lambda_dyn maps -gamma/2 +- iJ onto -+ J - i gamma/2.
        assert!((pair.lambda_plus - Complex64::new(2.2e-2, -5e-4)).norm() < 1e-9);
        assert!((pair.lambda_minus - Complex64::new(-2.2e-2, -5e-4)).norm() < 1e-9);
    }

    #[test]
    fn no_hopping_gives_independent_optomechanical_blocks() {
        let p = SystemParams {
            j_m: 0.0,
            ..baseline_at_ep()
        };
        let m = assemble(&p);
        // Block structure: entries linking subsystem 1 (rows 0, 1) and
        // subsystem 2 (rows 2, 3) all vanish.
        for i in 0..2 {
            for j in 2..4 {
                assert_eq!(m.matrix[(i, j)].norm(), 0.0);
                assert_eq!(m.matrix[(j, i)].norm(), 0.0);
            }
        }
        // Blue block hosts the gain mode; frozen from the quadratic
        // -(kappa+gamma)/4 + sqrt((kappa-gamma)^2/16 + G^2).
        let eigs = m.eigenvalues();
        let max_re = eigs.iter().map(|e| e.re).fold(f64::MIN, f64::max);
        assert!((max_re - 0.016133101).abs() < 1e-6);
    }

    #[test]
    fn baseline_ep_spectrum_matches_reference() {
        // Frozen from an independent dense eigensolve: the slow mode, the
        // red-cavity polariton pair, and the fast gain mode.
        let m = assemble(&baseline_at_ep());
        let eigs = m.eigenvalues();
        let expected = [
            Complex64::new(-0.06593426184187898, 0.0),
            Complex64::new(-0.01752672803762068, -0.0215545752323312),
            Complex64::new(-0.01752672803762068, 0.0215545752323312),
            Complex64::new(-1.228208287970346e-5, 0.0),
        ];
        for want in expected {
            let dist = eigs
                .iter()
                .map(|e| (e - want).norm())
                .fold(f64::MAX, f64::min);
            assert!(dist < 1e-8, "no eigenvalue near {want}: {dist:e}");
        }
    }

    #[test]
    fn mechanical_weights_at_the_ep_drive() {
        // Hybridization at kappa / G ~ 3: the slow mode carries ~0.694
        // mechanical weight, the polariton pair 0.580 each.
        let m = assemble(&baseline_at_ep());
        let weighted = m.weighted_eigenvalues();
        assert!((weighted[0].1 - 0.694340175605).abs() < 1e-6);
        assert!((weighted[1].1 - 0.580010501365).abs() < 1e-6);
        let pair = mechanical_branch(&m).unwrap();
        // Best branch tracks the effective model's -i gamma/2 within
        // ~0.5e-3; the polariton branch sits ~0.0275 away (0.62 Gamma), the
        // price of evaluating the adiabatic reduction right at the EP at
        // kappa = 0.1.
        let eff = Complex64::new(0.0, -5e-4);
        let e_plus = (pair.lambda_plus - eff).norm();
        let e_minus = (pair.lambda_minus - eff).norm();
        let (best, worst) = (e_plus.min(e_minus), e_plus.max(e_minus));
        assert!(best < 5e-4, "best-branch error {best}");
        assert!((worst - 0.02746833).abs() < 1e-5, "polariton error {worst}");
    }

    #[test]
    fn adiabatic_error_shrinks_with_kappa() {
        // Gamma held at its EP value while kappa grows; the worst-branch
        // distance to the effective -gamma/2 must fall monotonically.
        let gamma_target = 0.044;
        let base = SystemParams::default();
        let mut last = f64::MAX;
        for kappa in [0.1, 0.3, 1.0, 3.0] {
            let p0 = SystemParams {
                kappa,
                ..base
            };
            let d = derive(&p0).unwrap();
            let trial = solve_ideal(&p0, &d, DetuningMode::Bare).unwrap();
            let g_needed = (gamma_target * kappa).sqrt() / 2.0;
            let p = SystemParams {
                g: p0.g * g_needed / trial.g_eff_1,
                ..p0
            };
            let pair = mechanical_branch(&assemble(&p)).unwrap();
            let eff = Complex64::new(0.0, -5e-4);
            let err = (pair.lambda_plus - eff)
                .norm()
                .max((pair.lambda_minus - eff).norm());
            assert!(err < last, "kappa = {kappa}: {err} !< {last}");
            last = err;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn propagate_identity_at_zero_time() {
        let m = assemble(&baseline_at_ep());
        let state = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.0),
            Complex64::new(0.0, 0.7),
            Complex64::new(1.0, -0.4),
        ];
        let out = propagate(&m, &state, 0.0);
        for (a, b) in out.iter().zip(&state) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn cavity_state_decays_at_half_kappa() {
        let p = SystemParams {
            g: 0.0,
            ..SystemParams::default()
        };
        let m = assemble(&p);
        let state = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        // Log-amplitude fit over a decade of decay.
        let (t1, t2) = (5.0, 25.0);
        let a1 = propagate(&m, &state, t1)[0].norm();
        let a2 = propagate(&m, &state, t2)[0].norm();
        let rate = -(a2 / a1).ln() / (t2 - t1);
        assert!((rate - 0.05).abs() / 0.05 < 1e-10);
    }

    #[test]
    fn propagation_matches_eigen_expansion() {
        // Independent route: expand the initial state in eigenvectors and
        // sum c_k exp(lambda_k t) v_k; must agree with the Pade propagator.
        let p = SystemParams::default().with_alpha_in(350.0);
        let m = assemble(&p);
        let eigs = m.eigenvalues();
        let vectors: Vec<Vec<Complex64>> =
            eigs.iter().map(|&l| m.matrix.eigenvector(l)).collect();
        let state = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        // Solve V c = state.
        let mut vmat = SquareMatrix::zeros(4);
        for (j, v) in vectors.iter().enumerate() {
            for i in 0..4 {
                vmat[(i, j)] = v[i];
            }
        }
        let coeffs = vmat.solve(state.as_slice()).unwrap();
        for &t in &[3.0, 40.0, 170.0] {
            let direct = propagate(&m, &state, t);
            for i in 0..4 {
                let series: Complex64 = (0..4)
                    .map(|k| coeffs[k] * (eigs[k] * t).exp() * vectors[k][i])
                    .sum();
                assert!(
                    (direct[i] - series).norm() < 1e-7,
                    "t = {t}, component {i}"
                );
            }
        }
    }

    #[test]
    fn mechanical_ringdown_beats_at_the_branch_splitting() {
        // Away from the EP the mechanical pair is complex-conjugate;
        // |b_1(t)| beats at the imaginary splitting of the branch. Decay
        // fits must match the branch decay within 2%.
        let p = SystemParams::default().with_alpha_in(350.0);
        let m = assemble(&p);
        let pair = mechanical_branch(&m).unwrap();
        // In H convention the splitting sits in the real parts.
        let beat = (pair.lambda_plus.re - pair.lambda_minus.re).abs();
        assert!((beat - 0.03615992393919344).abs() < 1e-8);

        let state = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        // Successive minima of |b_1(t)| are one beat period apart. The
        // first minimum is still contaminated by the fast optical
        // transients, so measure from the second onward.
        let dt = 0.25;
        let samples: Vec<f64> = (0..4000)
            .map(|k| propagate(&m, &state, dt * k as f64)[1].norm())
            .collect();
        let minima: Vec<usize> = (1..samples.len() - 1)
            .filter(|&i| samples[i] < samples[i - 1] && samples[i] < samples[i + 1])
            .collect();
        assert!(minima.len() >= 4, "found {} minima", minima.len());
        let period = dt * (minima[2] - minima[1]) as f64;
        let expected = 2.0 * std::f64::consts::PI / beat;
        assert!(
            (period - expected).abs() / expected < 0.02,
            "beat period {period} vs {expected}"
        );
        // Log-amplitude fit of the envelope maxima against the branch
        // decay rate (-Im lambda in the H convention).
        let branch_decay = -pair.lambda_plus.im;
        let peak1 = samples[minima[1]..minima[2]]
            .iter()
            .cloned()
            .fold(f64::MIN, f64::max);
        let peak2 = samples[minima[2]..minima[3]]
            .iter()
            .cloned()
            .fold(f64::MIN, f64::max);
        let rate = -(peak2 / peak1).ln() / period;
        assert!(
            (rate - branch_decay).abs() / branch_decay < 0.02,
            "decay {rate} vs {branch_decay}"
        );
    }
}
