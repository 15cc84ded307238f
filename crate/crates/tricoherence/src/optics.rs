//! Preparation and Stokes tomography of a two-spatial-mode beam.
//!
//! The simulated bench prepares the state
//! `cos(θ/2)·|G_a⟩⊗|e_a⟩ + sin(θ/2)·|G_b⟩⊗|e_b⟩` with temporal overlap
//! `⟨e_a|e_b⟩ = γ = δ·e^{iφ}`, pushes it through mode-space optical elements
//! (Dove prism, mode converter, attenuation filter) and reads out port
//! intensities of a mode-splitting interferometer. Three measurement
//! settings reconstruct the Stokes parameters of the two-mode space.
//!
//! Conventions: a Dove prism at angle `α` acts as the proper rotation by
//! `2α` on the `(G_a, G_b)` coefficient pair; the mode converter is
//! `diag(1, i)`. Noiseless runs then satisfy `S1/S0 = cosθ`,
//! `S2/S0 = δ·sinθ·cosφ` and `S3/S0 = δ·sinθ·sinφ`.

use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::coherence::CoherenceMatrix;
use crate::error::{Error, Result};
use crate::field::{BipartitePureState, Dof};

const GAMMA_TOL: f64 = 1e-12;
/// Samples per fringe period recorded by the preparation-stage scan.
const FRINGE_SAMPLES: usize = 64;

/// Discrete spectral model: frequencies `ω_k` (rad per unit time) with
/// normalized powers `w_k`.
///
/// The complex overlap accumulated by a relative delay `τ` between the two
/// interferometer paths is `γ(τ) = Σ_k w_k·e^{−iω_k·τ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModel {
    frequencies: Vec<f64>,
    weights: Vec<f64>,
}

impl SpectralModel {
    /// Builds a model from frequencies and nonnegative weights; the weights
    /// are normalized to unit total power.
    pub fn new(frequencies: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() || frequencies.len() != weights.len() {
            return Err(Error::Dimension(
                "frequencies and weights must be non-empty and equally long".into(),
            ));
        }
        if frequencies.iter().any(|w| !w.is_finite())
            || weights.iter().any(|w| !w.is_finite() || *w < 0.0)
        {
            return Err(Error::Domain(
                "frequencies must be finite and weights finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Domain("total spectral weight must be positive".into()));
        }
        Ok(Self {
            frequencies,
            weights: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    /// Single-frequency model; the overlap stays on the unit circle.
    pub fn monochromatic(omega: f64) -> Self {
        Self {
            frequencies: vec![omega],
            weights: vec![1.0],
        }
    }

    /// Gaussian power spectrum over `modes` equally spaced frequencies
    /// covering `center ± 4·width`.
    pub fn gaussian(modes: usize, center: f64, width: f64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Dimension("need at least one spectral mode".into()));
        }
        if width <= 0.0 {
            return Err(Error::Domain("spectral width must be positive".into()));
        }
        let span = 8.0 * width;
        let frequencies: Vec<f64> = (0..modes)
            .map(|k| {
                if modes == 1 {
                    center
                } else {
                    center - 4.0 * width + span * k as f64 / (modes - 1) as f64
                }
            })
            .collect();
        let weights = frequencies
            .iter()
            .map(|w| (-((w - center) / width).powi(2) / 2.0).exp())
            .collect();
        Self::new(frequencies, weights)
    }

    /// Default broadband source: 64 Gaussian-weighted modes around a
    /// dimensionless carrier.
    pub fn broadband() -> Self {
        Self::gaussian(64, 10.0, 1.0).expect("static parameters are valid")
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Complex overlap `γ(τ) = Σ_k w_k·e^{−iω_k·τ}`, with `|γ| ≤ 1`.
    pub fn overlap(&self, tau: f64) -> Complex64 {
        self.frequencies
            .iter()
            .zip(&self.weights)
            .map(|(&omega, &w)| Complex64::from_polar(w, -omega * tau))
            .sum()
    }
}

/// Which interferometer arm an element acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arm {
    A,
    B,
}

/// Identity of an optical element acting on the two-mode space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementKind {
    Identity,
    /// Dove prism physically rotated by `alpha` radians.
    DovePrism { alpha: f64 },
    /// Cylindrical-lens pair adding a relative `i` phase to the second mode.
    ModeConverter,
    /// Intensity filter of transmittance `t` in one arm.
    Filter { transmittance: f64, arm: Arm },
}

/// A labeled 2×2 operator on the `(G_a, G_b)` coefficient pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementTransform {
    kind: ElementKind,
    matrix: [[Complex64; 2]; 2],
}

impl ElementTransform {
    pub fn identity() -> Self {
        Self {
            kind: ElementKind::Identity,
            matrix: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        }
    }

    /// Dove prism at `alpha`: rotation of the mode pair by `2α`, so `α = π/4`
    /// maps `G_a` to `G_b`.
    pub fn dove_prism(alpha: f64) -> Self {
        let (sin, cos) = (2.0 * alpha).sin_cos();
        Self {
            kind: ElementKind::DovePrism { alpha },
            matrix: [
                [Complex64::new(cos, 0.0), Complex64::new(-sin, 0.0)],
                [Complex64::new(sin, 0.0), Complex64::new(cos, 0.0)],
            ],
        }
    }

    /// Mode converter `diag(1, i)`: quarter-wave analog in the mode space.
    pub fn mode_converter() -> Self {
        Self {
            kind: ElementKind::ModeConverter,
            matrix: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            ],
        }
    }

    /// Amplitude scaling of one arm by `√t` with `t ∈ [0, 1]`.
    pub fn attenuation_filter(transmittance: f64, arm: Arm) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::Domain(format!(
                "transmittance must lie in [0, 1], got {transmittance}"
            )));
        }
        let root = transmittance.sqrt();
        let (a, b) = match arm {
            Arm::A => (root, 1.0),
            Arm::B => (1.0, root),
        };
        Ok(Self {
            kind: ElementKind::Filter { transmittance, arm },
            matrix: [
                [Complex64::new(a, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(b, 0.0)],
            ],
        })
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.matrix
    }

    /// True when `M†M = I` within 1e-12.
    pub fn is_unitary(&self) -> bool {
        let m = &self.matrix;
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                let expected = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((dot - expected).norm());
            }
        }
        dev <= 1e-12
    }

    /// Left-multiplies the spatial coefficient pair of `state` and
    /// renormalizes (a no-op except after a filter).
    ///
    /// The state's first side must be the two-dimensional spatial one.
    pub fn apply(&self, state: &BipartitePureState) -> Result<BipartitePureState> {
        require_spatial_rows(state)?;
        let a = state.coeffs();
        let out = Array2::from_shape_fn(a.dim(), |(i, k)| {
            self.matrix[i][0] * a[(0, k)] + self.matrix[i][1] * a[(1, k)]
        });
        BipartitePureState::from_unnormalized(out, state.labels()).map_err(|_| {
            Error::NullProjection("element transform removed all amplitude".into())
        })
    }
}

fn require_spatial_rows(state: &BipartitePureState) -> Result<()> {
    if state.labels().0 != Dof::Space || state.dims().0 != 2 {
        return Err(Error::Dimension(format!(
            "expected a state with the two spatial modes on the first side, \
             got {:?} of shape {:?}",
            state.labels(),
            state.dims()
        )));
    }
    Ok(())
}

/// Prepared two-mode state with the given splitting angle and temporal
/// overlap, using two temporal modes.
pub fn prepare_state(theta: f64, gamma: Complex64) -> Result<BipartitePureState> {
    prepare_state_in(theta, gamma, 2)
}

/// Same as [`prepare_state`] but embedded in `temporal_modes ≥ 2` temporal
/// dimensions. The overlap only ever involves two of them, so observables do
/// not depend on the embedding size.
pub fn prepare_state_in(
    theta: f64,
    gamma: Complex64,
    temporal_modes: usize,
) -> Result<BipartitePureState> {
    if temporal_modes < 2 {
        return Err(Error::Dimension(
            "need at least two temporal modes to realize an arbitrary overlap".into(),
        ));
    }
    let magnitude = gamma.norm();
    if magnitude > 1.0 + GAMMA_TOL {
        return Err(Error::Domain(format!(
            "overlap magnitude must not exceed 1, got {magnitude}"
        )));
    }
    let ortho = (1.0 - gamma.norm_sqr()).max(0.0).sqrt();
    let (sin_half, cos_half) = (theta / 2.0).sin_cos();
    let mut coeffs = Array2::zeros((2, temporal_modes));
    // e_a is the first temporal basis vector; e_b = γ·e_a + √(1−|γ|²)·e_2,
    // so ⟨e_a|e_b⟩ = γ exactly.
    coeffs[(0, 0)] = Complex64::new(cos_half, 0.0);
    coeffs[(1, 0)] = gamma * sin_half;
    coeffs[(1, 1)] = Complex64::new(ortho * sin_half, 0.0);
    BipartitePureState::new(coeffs, (Dof::Space, Dof::Time))
}

/// Port intensities of the mode-splitting interferometer: port a receives
/// the `G_a` component, port b the `G_b` component.
pub fn mzim_intensities(state: &BipartitePureState) -> Result<(f64, f64)> {
    require_spatial_rows(state)?;
    let a = state.coeffs();
    let mut intensity_a = 0.0;
    let mut intensity_b = 0.0;
    for k in 0..a.dim().1 {
        intensity_a += a[(0, k)].norm_sqr();
        intensity_b += a[(1, k)].norm_sqr();
    }
    Ok((intensity_a, intensity_b))
}

/// Stokes parameters of the two-mode space, in input-intensity units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    /// Length of the reduced vector `(S1, S2, S3)`.
    pub fn polarized_norm(&self) -> f64 {
        (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3).sqrt()
    }

    /// Sphere radius normalized to `S0`.
    pub fn degree(&self) -> f64 {
        self.polarized_norm() / self.s0
    }
}

/// Port intensity pair recorded in one measurement setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortIntensities {
    pub port_a: f64,
    pub port_b: f64,
}

/// Result of one full tomography pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyReport {
    /// Port intensities for the three settings, in order: bare
    /// interferometer, prism at π/8, converter followed by prism at π/8.
    pub intensities: [PortIntensities; 3],
    /// Assembled Stokes parameters (noisy when `noise_sigma > 0`).
    pub stokes: StokesVector,
    /// `(S1, S2, S3)` referred to the known unit input intensity rather than
    /// the noisy `S0`, so detector noise enters each parameter additively.
    pub normalized: [f64; 3],
    /// Sphere radius of `normalized`.
    pub p: f64,
    /// Complement `√(1 − P²)` implied by the radius alone.
    pub c: f64,
    /// `|P² + C² − 1|` for the two values above; nonzero only when noise
    /// pushes the radius past 1.
    pub residual: f64,
}

/// Runs the three measurement settings on `state` and assembles the Stokes
/// parameters.
///
/// Setting 1 reads the bare ports (`S0 = I_a + I_b`, `S1 = I_a − I_b`).
/// Setting 2 inserts a Dove prism at π/8; its port b then carries the
/// `(G_a + G_b)/√2` component, so `S2 = I_b − I_a`. Setting 3 inserts the
/// mode converter before the same prism; port a then carries
/// `(G_a + i·G_b)/√2`, so `S3 = I_a − I_b`. With `noise_sigma > 0`, seeded
/// Gaussian noise of that standard deviation is added to each of the six
/// port intensities before differencing.
pub fn measure_stokes(
    state: &BipartitePureState,
    noise_sigma: f64,
    seed: u64,
) -> Result<TomographyReport> {
    if noise_sigma < 0.0 || !noise_sigma.is_finite() {
        return Err(Error::Domain(format!(
            "noise sigma must be finite and nonnegative, got {noise_sigma}"
        )));
    }

    let (i1a, i1b) = mzim_intensities(state)?;
    let rotated = ElementTransform::dove_prism(std::f64::consts::FRAC_PI_8).apply(state)?;
    let (i2a, i2b) = mzim_intensities(&rotated)?;
    let converted = ElementTransform::mode_converter().apply(state)?;
    let circular = ElementTransform::dove_prism(std::f64::consts::FRAC_PI_8).apply(&converted)?;
    let (i3a, i3b) = mzim_intensities(&circular)?;

    let mut ports = [i1a, i1b, i2a, i2b, i3a, i3b];
    if noise_sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, noise_sigma)
            .map_err(|e| Error::Domain(format!("invalid noise distribution: {e}")))?;
        for port in &mut ports {
            *port += normal.sample(&mut rng);
        }
    }

    let stokes = StokesVector {
        s0: ports[0] + ports[1],
        s1: ports[0] - ports[1],
        s2: ports[3] - ports[2],
        s3: ports[4] - ports[5],
    };
    // The input is unit-normalized by the state's invariant, so the port
    // differences are already in normalized units.
    let normalized = [stokes.s1, stokes.s2, stokes.s3];
    let p = (normalized[0] * normalized[0]
        + normalized[1] * normalized[1]
        + normalized[2] * normalized[2])
        .sqrt();
    let c = (1.0 - p * p).max(0.0).sqrt();
    Ok(TomographyReport {
        intensities: [
            PortIntensities {
                port_a: ports[0],
                port_b: ports[1],
            },
            PortIntensities {
                port_a: ports[2],
                port_b: ports[3],
            },
            PortIntensities {
                port_a: ports[4],
                port_b: ports[5],
            },
        ],
        stokes,
        normalized,
        p,
        c,
        residual: (p * p + c * c - 1.0).abs(),
    })
}

/// Preparation-stage estimates obtained without the tomography elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrepStageEstimate {
    /// Splitting angle recovered from the arm intensities, in `[0, π]`.
    pub theta: f64,
    /// Overlap magnitude recovered from the fringe visibility.
    pub delta: f64,
    /// Concurrence `|sinθ̂|·√(1 − δ̂²)` implied by the two estimates.
    pub concurrence: f64,
}

/// Simulates the preparation-stage measurement: individual arm intensities
/// give `θ̂` via `cosθ = (I_a − I_b)/(I_a + I_b)`, and the fringe recorded by
/// scanning the relative phase after a π/4 Dove prism recombines the arms
/// gives `δ̂` from its visibility. The resulting concurrence estimate is
/// independent of the Stokes tomography.
pub fn prepstage_estimate(
    theta_true: f64,
    gamma_true: Complex64,
    noise_sigma: f64,
    seed: u64,
) -> Result<PrepStageEstimate> {
    if gamma_true.norm() > 1.0 + GAMMA_TOL {
        return Err(Error::Domain(format!(
            "overlap magnitude must not exceed 1, got {}",
            gamma_true.norm()
        )));
    }
    if noise_sigma < 0.0 || !noise_sigma.is_finite() {
        return Err(Error::Domain(format!(
            "noise sigma must be finite and nonnegative, got {noise_sigma}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = if noise_sigma > 0.0 {
        Some(
            Normal::new(0.0, noise_sigma)
                .map_err(|e| Error::Domain(format!("invalid noise distribution: {e}")))?,
        )
    } else {
        None
    };
    let noisy = |value: f64, rng: &mut ChaCha8Rng| -> f64 {
        match &normal {
            Some(n) => value + n.sample(rng),
            None => value,
        }
    };

    let half = theta_true / 2.0;
    let arm_a = noisy(half.cos().powi(2), &mut rng);
    let arm_b = noisy(half.sin().powi(2), &mut rng);
    let total = arm_a + arm_b;
    if total <= 0.0 {
        return Err(Error::Numerical(
            "combined arm intensity is not positive".into(),
        ));
    }
    let theta_est = ((arm_a - arm_b) / total).clamp(-1.0, 1.0).acos();

    // Recombined intensity through a π/4 prism while the stage scans one
    // fringe period: I(ψ) = I_a + I_b − δ·sinθ·cos(φ − ψ).
    let fringe_amplitude = theta_true.sin() * gamma_true.norm();
    let phi = gamma_true.arg();
    let mut first_harmonic = Complex64::new(0.0, 0.0);
    for j in 0..FRINGE_SAMPLES {
        let psi = TAU * j as f64 / FRINGE_SAMPLES as f64;
        let sample = noisy(1.0 - fringe_amplitude * (phi - psi).cos(), &mut rng);
        first_harmonic += sample * Complex64::from_polar(1.0, psi);
    }
    let amplitude = 2.0 * first_harmonic.norm() / FRINGE_SAMPLES as f64;

    let cross = 2.0 * (arm_a.max(0.0) * arm_b.max(0.0)).sqrt();
    let delta_est = if cross < 1e-12 {
        // One arm is dark: the fringe carries no overlap information, and the
        // concurrence estimate vanishes through sinθ̂ regardless.
        0.0
    } else {
        (amplitude / cross).clamp(0.0, 1.0)
    };
    let concurrence = theta_est.sin().abs() * (1.0 - delta_est * delta_est).max(0.0).sqrt();
    Ok(PrepStageEstimate {
        theta: theta_est,
        delta: delta_est,
        concurrence,
    })
}

/// Eigenvalue-route coherence summary of a prepared state: `(P, C)` from the
/// reduced-matrix eigenvalues.
pub fn eigen_coherence(state: &BipartitePureState) -> Result<(f64, f64)> {
    let matrix = CoherenceMatrix::from_state(state)?;
    Ok((matrix.degree_of_polarization(), matrix.concurrence()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn overlap_at_zero_delay_is_unity() {
        let model = SpectralModel::gaussian(16, 5.0, 0.5).unwrap();
        let gamma = model.overlap(0.0);
        assert_abs_diff_eq!((gamma - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn overlap_monochromatic_stays_on_unit_circle() {
        let omega = 3.0;
        let model = SpectralModel::monochromatic(omega);
        for tau in [0.1, 0.7, 2.0] {
            let gamma = model.overlap(tau);
            assert_abs_diff_eq!(gamma.norm(), 1.0, epsilon = 1e-12);
            let expected = (-omega * tau).rem_euclid(TAU);
            assert_abs_diff_eq!(gamma.arg().rem_euclid(TAU), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn overlap_matches_brute_force_sum_and_decays() {
        let model = SpectralModel::gaussian(64, 10.0, 1.0).unwrap();
        let tau = 1.0;
        // Oracle: naive summation over the spectrum.
        let mut expected = c(0.0, 0.0);
        for (w, omega) in model.weights().iter().zip(model.frequencies()) {
            expected += c(w * (omega * tau).cos(), -w * (omega * tau).sin());
        }
        assert_abs_diff_eq!((model.overlap(tau) - expected).norm(), 0.0, epsilon = 1e-12);

        let mut last = f64::INFINITY;
        for step in 0..9 {
            let magnitude = model.overlap(0.2 * step as f64).norm();
            assert!(magnitude < last, "|γ| must decay over the sampled delays");
            last = magnitude;
        }
    }

    #[test]
    fn prepare_pure_first_mode() {
        let state = prepare_state(0.0, c(0.3, 0.1)).unwrap();
        assert_eq!(state.labels(), (Dof::Space, Dof::Time));
        assert_abs_diff_eq!(state.coeffs()[(0, 0)].re, 1.0, epsilon = 1e-15);
        let (p, conc) = eigen_coherence(&state).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(conc, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn prepare_unit_overlap_is_fully_coherent() {
        let state = prepare_state(FRAC_PI_2, c(1.0, 0.0)).unwrap();
        // ⟨e_a|e_b⟩ reproduced from the rows themselves.
        let a = state.coeffs();
        let norm_a = (a[(0, 0)].norm_sqr() + a[(0, 1)].norm_sqr()).sqrt();
        let norm_b = (a[(1, 0)].norm_sqr() + a[(1, 1)].norm_sqr()).sqrt();
        let overlap =
            (a[(0, 0)].conj() * a[(1, 0)] + a[(0, 1)].conj() * a[(1, 1)]) / (norm_a * norm_b);
        assert_abs_diff_eq!((overlap - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        let (p, _) = eigen_coherence(&state).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn prepare_partial_overlap_schmidt_values() {
        let gamma = Complex64::from_polar(0.890, -FRAC_PI_2);
        let state = prepare_state(FRAC_PI_2, gamma).unwrap();
        let schmidt = state.schmidt().unwrap();
        assert_abs_diff_eq!(schmidt.eigenvalues()[0], 0.945, epsilon = 1e-12);
        assert_abs_diff_eq!(schmidt.eigenvalues()[1], 0.055, epsilon = 1e-12);
    }

    #[test]
    fn prepare_rejects_overlap_above_unity() {
        assert!(matches!(
            prepare_state(0.3, c(1.01, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn prepare_embedding_does_not_change_observables() {
        let gamma = Complex64::from_polar(0.52, 1.2);
        let small = prepare_state(1.1, gamma).unwrap();
        let wide = prepare_state_in(1.1, gamma, 8).unwrap();
        assert_eq!(wide.dims(), (2, 8));
        let (p_small, c_small) = eigen_coherence(&small).unwrap();
        let (p_wide, c_wide) = eigen_coherence(&wide).unwrap();
        assert_abs_diff_eq!(p_small, p_wide, epsilon = 1e-12);
        assert_abs_diff_eq!(c_small, c_wide, epsilon = 1e-12);
    }

    #[test]
    fn dove_prism_cases() {
        let identity = ElementTransform::dove_prism(0.0);
        let m = identity.matrix();
        assert_abs_diff_eq!((m[0][0] - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[0][1].norm(), 0.0, epsilon = 1e-15);

        // π/4 rotates the first mode into the second.
        let quarter = ElementTransform::dove_prism(FRAC_PI_4);
        let state = prepare_state(0.0, c(0.0, 0.0)).unwrap();
        let rotated = quarter.apply(&state).unwrap();
        let (ia, ib) = mzim_intensities(&rotated).unwrap();
        assert_abs_diff_eq!(ia, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ib, 1.0, epsilon = 1e-12);

        // π/8 splits it evenly, with the fixed sign convention.
        let eighth = ElementTransform::dove_prism(FRAC_PI_8);
        let split = eighth.apply(&state).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(split.coeffs()[(0, 0)].re, inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(split.coeffs()[(1, 0)].re, inv_sqrt2, epsilon = 1e-12);
    }

    #[test]
    fn mode_converter_cases() {
        let mc = ElementTransform::mode_converter();
        let pure_a = prepare_state(0.0, c(0.0, 0.0)).unwrap();
        let unchanged = mc.apply(&pure_a).unwrap();
        assert_abs_diff_eq!(
            (unchanged.coeffs()[(0, 0)] - c(1.0, 0.0)).norm(),
            0.0,
            epsilon = 1e-12
        );

        let pure_b = prepare_state(PI, c(0.0, 0.0)).unwrap();
        let phased = mc.apply(&pure_b).unwrap();
        // sin(π/2) = 1, so the second row holds e_b with an i phase.
        assert_abs_diff_eq!(
            (phased.coeffs()[(1, 1)] - c(0.0, 1.0)).norm(),
            0.0,
            epsilon = 1e-12
        );

        let balanced = prepare_state(FRAC_PI_2, c(1.0, 0.0)).unwrap();
        let quarter = mc.apply(&balanced).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(
            (quarter.coeffs()[(0, 0)] - c(inv_sqrt2, 0.0)).norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            (quarter.coeffs()[(1, 0)] - c(0.0, inv_sqrt2)).norm(),
            0.0,
            epsilon = 1e-12
        );

        // Applying it twice flips the sign of the second mode.
        let twice = mc.apply(&quarter).unwrap();
        assert_abs_diff_eq!(
            (twice.coeffs()[(1, 0)] - c(-inv_sqrt2, 0.0)).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn filter_cases() {
        let identity = ElementTransform::attenuation_filter(1.0, Arm::B).unwrap();
        let balanced = prepare_state(FRAC_PI_2, c(0.5, 0.0)).unwrap();
        let unchanged = identity.apply(&balanced).unwrap();
        assert_abs_diff_eq!(
            (unchanged.coeffs()[(0, 0)] - balanced.coeffs()[(0, 0)]).norm(),
            0.0,
            epsilon = 1e-12
        );

        let dark = ElementTransform::attenuation_filter(0.0, Arm::B).unwrap();
        let pure_a = dark.apply(&balanced).unwrap();
        let (ia, ib) = mzim_intensities(&pure_a).unwrap();
        assert_abs_diff_eq!(ia, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ib, 0.0, epsilon = 1e-12);

        // Half transmittance on one arm of a balanced state: tan(θ/2) = √0.5.
        let half = ElementTransform::attenuation_filter(0.5, Arm::B).unwrap();
        let attenuated = half.apply(&balanced).unwrap();
        let (ia, ib) = mzim_intensities(&attenuated).unwrap();
        let theta_eff = (ia - ib).acos();
        assert_abs_diff_eq!(ia - ib, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(theta_eff, 2.0 * (0.5_f64.sqrt()).atan(), epsilon = 1e-12);
        assert_abs_diff_eq!(theta_eff, 1.231, epsilon = 1e-3);

        assert!(matches!(
            ElementTransform::attenuation_filter(1.5, Arm::A),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ElementTransform::attenuation_filter(-0.1, Arm::A),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn filter_annihilating_the_state_is_a_null_projection() {
        let pure_b = prepare_state(PI, c(0.0, 0.0)).unwrap();
        let dark = ElementTransform::attenuation_filter(0.0, Arm::B).unwrap();
        assert!(matches!(
            dark.apply(&pure_b),
            Err(Error::NullProjection(_))
        ));
    }

    #[test]
    fn apply_requires_spatial_rows() {
        let mut a = Array2::zeros((2, 2));
        a[(0, 0)] = c(1.0, 0.0);
        let st_state = BipartitePureState::new(a, (Dof::Spin, Dof::Time)).unwrap();
        assert!(matches!(
            ElementTransform::identity().apply(&st_state),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn unitary_elements_preserve_the_norm() {
        let state = prepare_state(1.3, Complex64::from_polar(0.6, 0.8)).unwrap();
        for element in [
            ElementTransform::dove_prism(0.37),
            ElementTransform::mode_converter(),
        ] {
            assert!(element.is_unitary());
            let out = element.apply(&state).unwrap();
            assert_abs_diff_eq!(out.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mzim_port_intensities() {
        let pure_a = prepare_state(0.0, c(0.0, 0.0)).unwrap();
        let (ia, ib) = mzim_intensities(&pure_a).unwrap();
        assert_abs_diff_eq!(ia, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ib, 0.0, epsilon = 1e-12);

        let balanced = prepare_state(FRAC_PI_2, c(0.4, 0.0)).unwrap();
        let (ia, ib) = mzim_intensities(&balanced).unwrap();
        assert_abs_diff_eq!(ia, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(ib, 0.5, epsilon = 1e-12);

        let two_thirds = prepare_state(2.0 * PI / 3.0, c(0.4, 0.0)).unwrap();
        let (ia, ib) = mzim_intensities(&two_thirds).unwrap();
        assert_abs_diff_eq!(ia, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(ib, 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(ia + ib, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn stokes_of_pure_first_mode() {
        let state = prepare_state(0.0, c(0.0, 0.0)).unwrap();
        let report = measure_stokes(&state, 0.0, 0).unwrap();
        assert_abs_diff_eq!(report.stokes.s0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.normalized[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.normalized[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.normalized[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn stokes_of_real_overlap() {
        let delta = 0.62;
        let state = prepare_state(FRAC_PI_2, c(delta, 0.0)).unwrap();
        let report = measure_stokes(&state, 0.0, 0).unwrap();
        assert_abs_diff_eq!(report.normalized[0], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(report.normalized[1], delta, epsilon = 1e-10);
        assert_abs_diff_eq!(report.normalized[2], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn stokes_of_circular_analog_state() {
        let gamma = Complex64::from_polar(0.890, -FRAC_PI_2);
        let state = prepare_state(FRAC_PI_2, gamma).unwrap();
        let report = measure_stokes(&state, 0.0, 0).unwrap();
        assert_abs_diff_eq!(report.normalized[0], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(report.normalized[1], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(report.normalized[2], -0.890, epsilon = 1e-10);
        assert_abs_diff_eq!(report.p, 0.890, epsilon = 1e-10);
    }

    #[test]
    fn stokes_identities_on_samples() {
        for &(theta, delta, phi) in &[
            (0.4, 0.9, 0.3),
            (2.1, 0.33, -1.2),
            (4.4, 0.77, 2.9),
            (FRAC_PI_2, 1.0, FRAC_PI_4),
        ] {
            let state = prepare_state(theta, Complex64::from_polar(delta, phi)).unwrap();
            let report = measure_stokes(&state, 0.0, 0).unwrap();
            assert_abs_diff_eq!(report.normalized[0], theta.cos(), epsilon = 1e-10);
            assert_abs_diff_eq!(
                report.normalized[1],
                delta * theta.sin() * phi.cos(),
                epsilon = 1e-10
            );
            assert_abs_diff_eq!(
                report.normalized[2],
                delta * theta.sin() * phi.sin(),
                epsilon = 1e-10
            );
            let (p_eigen, _) = eigen_coherence(&state).unwrap();
            assert_abs_diff_eq!(report.p, p_eigen, epsilon = 1e-10);
        }
    }

    #[test]
    fn stokes_noise_is_seed_deterministic() {
        let state = prepare_state(1.0, c(0.5, 0.2)).unwrap();
        let a = measure_stokes(&state, 0.03, 42).unwrap();
        let b = measure_stokes(&state, 0.03, 42).unwrap();
        let c_ = measure_stokes(&state, 0.03, 43).unwrap();
        assert_eq!(a, b);
        assert!(a.stokes.s1 != c_.stokes.s1);
    }

    #[test]
    fn prepstage_maximally_entangled() {
        let est = prepstage_estimate(FRAC_PI_2, c(0.0, 0.0), 0.0, 0).unwrap();
        assert_abs_diff_eq!(est.theta, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(est.delta, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.concurrence, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn prepstage_separable() {
        let est = prepstage_estimate(PI, c(0.7, 0.1), 0.0, 0).unwrap();
        assert_abs_diff_eq!(est.concurrence, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn prepstage_partial_overlap() {
        let gamma = Complex64::from_polar(0.307, 5.0 * FRAC_PI_4);
        let est = prepstage_estimate(FRAC_PI_2, gamma, 0.0, 0).unwrap();
        assert_abs_diff_eq!(est.theta, FRAC_PI_2, epsilon = 1e-10);
        assert_abs_diff_eq!(est.delta, 0.307, epsilon = 1e-10);
        let expected = (1.0 - 0.307_f64 * 0.307).sqrt();
        assert_abs_diff_eq!(est.concurrence, expected, epsilon = 1e-10);
        assert_abs_diff_eq!(est.concurrence, 0.952, epsilon = 5e-4);
    }

    #[test]
    fn prepstage_with_noise_is_reproducible_and_close() {
        let gamma = Complex64::from_polar(0.6, 0.9);
        let a = prepstage_estimate(1.2, gamma, 0.01, 7).unwrap();
        let b = prepstage_estimate(1.2, gamma, 0.01, 7).unwrap();
        assert_eq!(a, b);
        assert_abs_diff_eq!(a.theta, 1.2, epsilon = 0.05);
        assert_abs_diff_eq!(a.delta, 0.6, epsilon = 0.05);
    }
}
