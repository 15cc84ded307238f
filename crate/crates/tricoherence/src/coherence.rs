//! Degree of polarization, concurrence, and the quadratic complementarity
//! constraint `P² + C² = 1` obeyed by every pairwise coherence.
//!
//! For a unit bipartite pure state with a two-dimensional side, both
//! quantities come from the eigenvalues `λ1 ≥ λ2` of the reduced 2×2
//! coherence matrix: `P = λ1 − λ2` and `C = 2√(λ1·λ2)`. The same arithmetic
//! applies to all three pairings (spin-time, spin-space, time-space); only
//! the label differs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{BipartitePureState, CoherencePair};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-12;

/// Reduced 2×2 Hermitian matrix of a bipartite pure state, with unit trace.
///
/// Validity (Hermiticity, unit trace, positive semidefiniteness up to
/// rounding) is checked at construction, so eigenvalue accessors cannot fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceMatrix {
    entries: [[Complex64; 2]; 2],
}

impl CoherenceMatrix {
    /// Wraps explicit entries, validating Hermiticity, unit trace and
    /// positive semidefiniteness.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let herm_dev = (entries[0][1] - entries[1][0].conj())
            .norm()
            .max(entries[0][0].im.abs())
            .max(entries[1][1].im.abs());
        if herm_dev > HERMITIAN_TOL {
            return Err(Error::Numerical(format!(
                "matrix is not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let trace = entries[0][0].re + entries[1][1].re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Numerical(format!(
                "coherence matrix must have unit trace, got {trace}"
            )));
        }
        // Store an exactly Hermitian copy so later arithmetic cannot drift.
        let off = 0.5 * (entries[0][1] + entries[1][0].conj());
        let matrix = Self {
            entries: [
                [Complex64::new(entries[0][0].re, 0.0), off],
                [off.conj(), Complex64::new(entries[1][1].re, 0.0)],
            ],
        };
        let (_, l2) = matrix.raw_eigenvalues();
        if l2 < -PSD_TOL {
            return Err(Error::Numerical(format!(
                "coherence matrix has negative eigenvalue {l2:.3e}"
            )));
        }
        Ok(matrix)
    }

    /// Diagonal matrix with the given eigenvalues (which must be nonnegative
    /// and sum to 1).
    pub fn from_eigenvalues(l1: f64, l2: f64) -> Result<Self> {
        Self::new([
            [Complex64::new(l1, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(l2, 0.0)],
        ])
    }

    /// Reduces a bipartite pure state over its non-two-dimensional side.
    ///
    /// When the rows hold the two-dimensional degree of freedom the result is
    /// `A·A†`; when the columns do, the sides are swapped first. With both
    /// sides two-dimensional the reduction is taken over the columns.
    pub fn from_state(state: &BipartitePureState) -> Result<Self> {
        let (n1, n2) = state.dims();
        let a = state.coeffs();
        let (rows, reduce_over, row_index): (usize, usize, bool) = if n1 == 2 {
            (n1, n2, true)
        } else if n2 == 2 {
            (n2, n1, false)
        } else {
            return Err(Error::Dimension(format!(
                "coherence matrix requires a two-dimensional side, got {n1}x{n2}"
            )));
        };
        debug_assert_eq!(rows, 2);
        let entry = |i: usize, j: usize| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..reduce_over {
                let (ai, aj) = if row_index {
                    (a[(i, k)], a[(j, k)])
                } else {
                    (a[(k, i)], a[(k, j)])
                };
                acc += ai * aj.conj();
            }
            acc
        };
        let e00 = entry(0, 0);
        let e11 = entry(1, 1);
        let e01 = entry(0, 1);
        Self::new([[e00, e01], [e01.conj(), e11]])
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    fn raw_eigenvalues(&self) -> (f64, f64) {
        let a = self.entries[0][0].re;
        let c = self.entries[1][1].re;
        let half_diff = 0.5 * (a - c);
        let radius = (half_diff * half_diff + self.entries[0][1].norm_sqr()).sqrt();
        let half_trace = 0.5 * (a + c);
        (half_trace + radius, half_trace - radius)
    }

    /// Eigenvalues `(λ1, λ2)` with `λ1 ≥ λ2`, clamped into `[0, 1]`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let (l1, l2) = self.raw_eigenvalues();
        (l1.clamp(0.0, 1.0), l2.clamp(0.0, 1.0))
    }

    /// Degree of polarization `P = λ1 − λ2`.
    pub fn degree_of_polarization(&self) -> f64 {
        let (l1, l2) = self.eigenvalues();
        (l1 - l2).clamp(0.0, 1.0)
    }

    /// Concurrence `C = 2√(λ1·λ2)` of the underlying pure state.
    pub fn concurrence(&self) -> f64 {
        let (l1, l2) = self.eigenvalues();
        (2.0 * (l1 * l2).sqrt()).clamp(0.0, 1.0)
    }
}

/// Deviation from the complementarity constraint: `|P² + C² − 1|`.
pub fn constraint_residual(p: f64, c: f64) -> f64 {
    (p * p + c * c - 1.0).abs()
}

/// Coherence summary of one pairwise projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceReport {
    pub pair: CoherencePair,
    pub p: f64,
    pub c: f64,
    pub residual: f64,
}

impl CoherenceReport {
    /// Computes `P`, `C` and the constraint residual for a bipartite state.
    pub fn for_state(state: &BipartitePureState) -> Result<Self> {
        let matrix = CoherenceMatrix::from_state(state)?;
        let p = matrix.degree_of_polarization();
        let c = matrix.concurrence();
        Ok(Self {
            pair: state.pair(),
            p,
            c,
            residual: constraint_residual(p, c),
        })
    }
}

/// Parameters of a two-mode state: the intensity-splitting angle `theta`,
/// the temporal-overlap magnitude `delta ∈ [0, 1]` and its phase `phi`
/// (both angles in radians). The complex overlap is `γ = δ·e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrParams {
    theta: f64,
    delta: f64,
    phi: f64,
}

impl TrParams {
    pub fn new(theta: f64, delta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::Domain(format!(
                "overlap magnitude must lie in [0, 1], got {delta}"
            )));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        Ok(Self { theta, delta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Complex overlap `γ = δ·e^{iφ}` of the two unit temporal amplitudes.
    pub fn gamma(&self) -> Complex64 {
        Complex64::from_polar(self.delta, self.phi)
    }
}

/// Closed-form degree of polarization `P = √(cos²θ + δ²·sin²θ)`.
pub fn analytic_p(params: &TrParams) -> f64 {
    let cos = params.theta.cos();
    let sin = params.theta.sin();
    (cos * cos + params.delta * params.delta * sin * sin)
        .sqrt()
        .min(1.0)
}

/// Closed-form concurrence `C = |sinθ|·√(1 − δ²)`, the complement of
/// [`analytic_p`] under `P² + C² = 1`.
pub fn analytic_c(params: &TrParams) -> f64 {
    (params.theta.sin().abs() * (1.0 - params.delta * params.delta).max(0.0).sqrt()).min(1.0)
}
