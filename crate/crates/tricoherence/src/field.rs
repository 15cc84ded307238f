//! Three-degree-of-freedom field tensor and its pairwise projections.
//!
//! A beam is modeled as a complex coefficient tensor `d[(i, k, m)]` over an
//! abstract orthonormal basis for each degree of freedom: spin (`i`, always
//! two-dimensional), temporal modes (`k`, `K` of them) and transverse spatial
//! modes (`m`, `M` of them). No mode functions are ever evaluated; all
//! analysis is coefficient arithmetic, so the basis labels stay abstract.
//!
//! Projecting onto a single basis vector of one degree of freedom isolates a
//! [`BipartitePureState`] over the remaining pair, whose coherence properties
//! are quantified in [`crate::coherence`].

use ndarray::{s, Array2, Array3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Norm below which a projected slice is treated as identically zero.
const NULL_TOL: f64 = 1e-12;
/// Tolerance on unit normalization accepted by [`BipartitePureState::new`].
const UNIT_TOL: f64 = 1e-8;
/// Eigenvalues of a positive-semidefinite Gram matrix may drift this far
/// below zero before the decomposition is rejected.
const PSD_TOL: f64 = 1e-12;

/// One of the three independent degrees of freedom of the beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dof {
    Spin,
    Time,
    Space,
}

impl Dof {
    /// Single-letter tag used in pair labels: `s`, `t` or `r`.
    pub fn tag(self) -> char {
        match self {
            Dof::Spin => 's',
            Dof::Time => 't',
            Dof::Space => 'r',
        }
    }
}

/// An unordered pair of degrees of freedom, naming one of the three
/// pairwise coherences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoherencePair {
    SpinTime,
    SpinSpace,
    TimeSpace,
}

impl CoherencePair {
    /// Two-letter label: `st`, `sr` or `tr`.
    pub fn short_label(self) -> &'static str {
        match self {
            CoherencePair::SpinTime => "st",
            CoherencePair::SpinSpace => "sr",
            CoherencePair::TimeSpace => "tr",
        }
    }

    /// The pair spanned by two distinct degrees of freedom, in any order.
    pub fn from_dofs(a: Dof, b: Dof) -> Option<Self> {
        match (a, b) {
            (Dof::Spin, Dof::Time) | (Dof::Time, Dof::Spin) => Some(CoherencePair::SpinTime),
            (Dof::Spin, Dof::Space) | (Dof::Space, Dof::Spin) => Some(CoherencePair::SpinSpace),
            (Dof::Time, Dof::Space) | (Dof::Space, Dof::Time) => Some(CoherencePair::TimeSpace),
            _ => None,
        }
    }
}

/// Full three-degree-of-freedom field: a complex tensor of shape `(2, K, M)`.
///
/// The first axis is spin, the second indexes temporal modes, the third
/// spatial modes. Coefficients are dimensionless amplitudes; a field carries
/// unit intensity after [`FieldState::normalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    coeffs: Array3<Complex64>,
}

impl FieldState {
    /// Wraps a coefficient tensor, validating its shape and finiteness.
    ///
    /// The tensor is not normalized here; call [`normalize`](Self::normalize)
    /// to impose unit intensity.
    pub fn new(coeffs: Array3<Complex64>) -> Result<Self> {
        let (spin, temporal, spatial) = coeffs.dim();
        if spin != 2 {
            return Err(Error::Dimension(format!(
                "spin axis must have dimension 2, got {spin}"
            )));
        }
        if temporal == 0 || spatial == 0 {
            return Err(Error::Dimension(
                "temporal and spatial axes must be non-empty".into(),
            ));
        }
        if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::Domain("field coefficients must be finite".into()));
        }
        Ok(Self { coeffs })
    }

    /// A seeded random field with unit intensity, with independent complex
    /// Gaussian coefficients before normalization.
    pub fn random<R: Rng + ?Sized>(temporal: usize, spatial: usize, rng: &mut R) -> Result<Self> {
        let coeffs = Array3::from_shape_fn((2, temporal, spatial), |_| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        Self::new(coeffs)?.normalize()
    }

    /// Total intensity `Σ |d|²`.
    pub fn intensity(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn temporal_modes(&self) -> usize {
        self.coeffs.dim().1
    }

    pub fn spatial_modes(&self) -> usize {
        self.coeffs.dim().2
    }

    pub fn coeffs(&self) -> &Array3<Complex64> {
        &self.coeffs
    }

    /// Returns the same field scaled to unit intensity.
    pub fn normalize(&self) -> Result<FieldState> {
        let norm = self.intensity().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroField);
        }
        Ok(FieldState {
            coeffs: self.coeffs.mapv(|c| c / norm),
        })
    }

    /// Projects onto spatial mode `m` (0-based), leaving the normalized
    /// spin-time state `c[(i, k)] ∝ d[(i, k, m)]`.
    pub fn project_spatial(&self, m: usize) -> Result<BipartitePureState> {
        if m >= self.spatial_modes() {
            return Err(Error::Dimension(format!(
                "spatial index {m} out of range 0..{}",
                self.spatial_modes()
            )));
        }
        let slice = self.coeffs.slice(s![.., .., m]).to_owned();
        if frobenius_norm(&slice) < NULL_TOL {
            return Err(Error::NullProjection(format!(
                "field has no amplitude in spatial mode {m}"
            )));
        }
        BipartitePureState::from_unnormalized(slice, (Dof::Spin, Dof::Time))
    }

    /// Projects onto temporal mode `k` (0-based), leaving the normalized
    /// spin-space state `b[(i, m)] ∝ d[(i, k, m)]`.
    pub fn project_temporal(&self, k: usize) -> Result<BipartitePureState> {
        if k >= self.temporal_modes() {
            return Err(Error::Dimension(format!(
                "temporal index {k} out of range 0..{}",
                self.temporal_modes()
            )));
        }
        let slice = self.coeffs.slice(s![.., k, ..]).to_owned();
        if frobenius_norm(&slice) < NULL_TOL {
            return Err(Error::NullProjection(format!(
                "field has no amplitude in temporal mode {k}"
            )));
        }
        BipartitePureState::from_unnormalized(slice, (Dof::Spin, Dof::Space))
    }

    /// Projects onto a unit spin direction, leaving the normalized time-space
    /// state `a[(k, m)] ∝ Σ_i conj(dir_i) d[(i, k, m)]`.
    pub fn project_spin(&self, direction: [Complex64; 2]) -> Result<BipartitePureState> {
        let dir_norm = (direction[0].norm_sqr() + direction[1].norm_sqr()).sqrt();
        if (dir_norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!(
                "spin direction must have unit norm, got {dir_norm}"
            )));
        }
        let (_, temporal, spatial) = self.coeffs.dim();
        let projected = Array2::from_shape_fn((temporal, spatial), |(k, m)| {
            direction[0].conj() * self.coeffs[(0, k, m)]
                + direction[1].conj() * self.coeffs[(1, k, m)]
        });
        if frobenius_norm(&projected) < NULL_TOL {
            return Err(Error::NullProjection(
                "field has no amplitude along the given spin direction".into(),
            ));
        }
        BipartitePureState::from_unnormalized(projected, (Dof::Time, Dof::Space))
    }
}

/// Unit-normalized pure state of two degrees of freedom, stored as a
/// coefficient matrix whose rows index the first labeled degree of freedom.
///
/// The smaller side must have dimension 1 or 2: the coherence analysis in
/// this crate is built on two-mode ("polarization-like") reductions, and a
/// one-dimensional side is the degenerate separable case.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    coeffs: Array2<Complex64>,
    labels: (Dof, Dof),
}

impl BipartitePureState {
    /// Wraps an already unit-normalized coefficient matrix.
    pub fn new(coeffs: Array2<Complex64>, labels: (Dof, Dof)) -> Result<Self> {
        validate_state_shape(&coeffs, labels)?;
        let norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!(
                "state must be unit-normalized, got squared norm {norm_sqr}"
            )));
        }
        Ok(Self { coeffs, labels })
    }

    /// Scales an arbitrary nonzero coefficient matrix to unit norm.
    pub fn from_unnormalized(coeffs: Array2<Complex64>, labels: (Dof, Dof)) -> Result<Self> {
        validate_state_shape(&coeffs, labels)?;
        let norm = frobenius_norm(&coeffs);
        if norm < NULL_TOL {
            return Err(Error::Domain("state has zero norm".into()));
        }
        Ok(Self {
            coeffs: coeffs.mapv(|c| c / norm),
            labels,
        })
    }

    /// A seeded random unit state of shape `(n1, n2)`.
    pub fn random<R: Rng + ?Sized>(
        n1: usize,
        n2: usize,
        labels: (Dof, Dof),
        rng: &mut R,
    ) -> Result<Self> {
        let coeffs = Array2::from_shape_fn((n1, n2), |_| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        Self::from_unnormalized(coeffs, labels)
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    pub fn labels(&self) -> (Dof, Dof) {
        self.labels
    }

    /// `(rows, columns)` of the coefficient matrix.
    pub fn dims(&self) -> (usize, usize) {
        self.coeffs.dim()
    }

    /// Which of the three pairwise coherences this state belongs to.
    pub fn pair(&self) -> CoherencePair {
        CoherencePair::from_dofs(self.labels.0, self.labels.1)
            .expect("labels are validated distinct at construction")
    }

    /// Squared Frobenius norm; 1 up to rounding for a valid state.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Schmidt decomposition `A = Σ_j √λ_j u_j v_j†`.
    ///
    /// Eigenvalues are obtained from the Gram matrix of the smaller side
    /// (`A·A†` when there are no more rows than columns, `A†·A` otherwise),
    /// which is at most 2×2 here, and returned in non-increasing order. The
    /// vectors attached to zero eigenvalues are an arbitrary orthonormal
    /// completion.
    pub fn schmidt(&self) -> Result<SchmidtResult> {
        let (n1, n2) = self.dims();
        let a = &self.coeffs;
        if n1 <= n2 {
            let gram = gram_rows(a);
            let (eigenvalues, left) = eigh_small(&gram)?;
            let right = partner_vectors(a, &eigenvalues, &left, Side::Right);
            Ok(SchmidtResult {
                eigenvalues,
                left,
                right,
            })
        } else {
            let gram = gram_cols(a);
            let (eigenvalues, right) = eigh_small(&gram)?;
            let left = partner_vectors(a, &eigenvalues, &right, Side::Left);
            Ok(SchmidtResult {
                eigenvalues,
                left,
                right,
            })
        }
    }
}

fn validate_state_shape(coeffs: &Array2<Complex64>, labels: (Dof, Dof)) -> Result<()> {
    let (n1, n2) = coeffs.dim();
    if n1 == 0 || n2 == 0 {
        return Err(Error::Dimension("state axes must be non-empty".into()));
    }
    if n1.min(n2) > 2 {
        return Err(Error::Dimension(format!(
            "the smaller side must have dimension 1 or 2, got {n1}x{n2}"
        )));
    }
    if labels.0 == labels.1 {
        return Err(Error::Domain(
            "the two sides must carry distinct degrees of freedom".into(),
        ));
    }
    if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(Error::Domain("state coefficients must be finite".into()));
    }
    Ok(())
}

fn frobenius_norm(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Gram matrix over the row side: `G = A·A†`.
fn gram_rows(a: &Array2<Complex64>) -> Array2<Complex64> {
    let (n, cols) = a.dim();
    let mut g = Array2::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..cols {
                acc += a[(i, k)] * a[(j, k)].conj();
            }
            g[(i, j)] = acc;
            g[(j, i)] = acc.conj();
        }
    }
    g
}

/// Gram matrix over the column side: `H = A†·A`.
fn gram_cols(a: &Array2<Complex64>) -> Array2<Complex64> {
    let (rows, n) = a.dim();
    let mut g = Array2::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rows {
                acc += a[(k, i)].conj() * a[(k, j)];
            }
            g[(i, j)] = acc;
            g[(j, i)] = acc.conj();
        }
    }
    g
}

/// Closed-form eigendecomposition of a 1×1 or 2×2 Hermitian matrix.
///
/// Returns eigenvalues in non-increasing order (tiny negatives clamped to
/// zero) and the matching orthonormal eigenvectors as columns.
fn eigh_small(g: &Array2<Complex64>) -> Result<(Vec<f64>, Array2<Complex64>)> {
    let n = g.dim().0;
    match n {
        1 => {
            let lambda = clamp_eigenvalue(g[(0, 0)].re)?;
            Ok((vec![lambda], Array2::from_elem((1, 1), Complex64::new(1.0, 0.0))))
        }
        2 => {
            let a = g[(0, 0)].re;
            let c = g[(1, 1)].re;
            let b = g[(0, 1)];
            let half_trace = 0.5 * (a + c);
            let half_diff = 0.5 * (a - c);
            let radius = (half_diff * half_diff + b.norm_sqr()).sqrt();
            let l1 = clamp_eigenvalue(half_trace + radius)?;
            let l2 = clamp_eigenvalue(half_trace - radius)?;

            let mut vectors = Array2::zeros((2, 2));
            if b.norm_sqr() == 0.0 {
                // Already diagonal; order the basis vectors by eigenvalue.
                let (first, second) = if a >= c { (0, 1) } else { (1, 0) };
                vectors[(first, 0)] = Complex64::new(1.0, 0.0);
                vectors[(second, 1)] = Complex64::new(1.0, 0.0);
            } else {
                // Pick the better-conditioned of the two row equations.
                let (x, y) = if half_diff <= 0.0 {
                    (b, Complex64::new(radius - half_diff, 0.0))
                } else {
                    (Complex64::new(radius + half_diff, 0.0), b.conj())
                };
                let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
                let v1 = (x / norm, y / norm);
                vectors[(0, 0)] = v1.0;
                vectors[(1, 0)] = v1.1;
                vectors[(0, 1)] = -v1.1.conj();
                vectors[(1, 1)] = v1.0.conj();
            }
            Ok((vec![l1, l2], vectors))
        }
        _ => Err(Error::Dimension(format!(
            "expected a 1x1 or 2x2 Gram matrix, got {n}x{n}"
        ))),
    }
}

fn clamp_eigenvalue(lambda: f64) -> Result<f64> {
    if lambda < -PSD_TOL {
        return Err(Error::Numerical(format!(
            "Gram matrix has negative eigenvalue {lambda}"
        )));
    }
    Ok(lambda.max(0.0))
}

enum Side {
    Left,
    Right,
}

/// Builds the Schmidt vectors on the larger side from the eigenvectors of the
/// smaller side's Gram matrix: `v_j = A†u_j/√λ_j` (or `u_j = A·v_j/√λ_j`),
/// with an orthonormal completion where `λ_j` vanishes.
fn partner_vectors(
    a: &Array2<Complex64>,
    eigenvalues: &[f64],
    small_vectors: &Array2<Complex64>,
    side: Side,
) -> Array2<Complex64> {
    let (rows, cols) = a.dim();
    let (dim, rank) = match side {
        Side::Right => (cols, eigenvalues.len()),
        Side::Left => (rows, eigenvalues.len()),
    };
    let mut out = Array2::<Complex64>::zeros((dim, rank));
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        if lambda > 1e-14 {
            let scale = lambda.sqrt();
            for p in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                match side {
                    // v_j[p] = Σ_i conj(A[i, p]) u_j[i] / √λ_j
                    Side::Right => {
                        for i in 0..rows {
                            acc += a[(i, p)].conj() * small_vectors[(i, j)];
                        }
                    }
                    // u_j[p] = Σ_i A[p, i] v_j[i] / √λ_j
                    Side::Left => {
                        for i in 0..cols {
                            acc += a[(p, i)] * small_vectors[(i, j)];
                        }
                    }
                }
                out[(p, j)] = acc / scale;
            }
        } else {
            complete_orthonormal(&mut out, j);
        }
    }
    out
}

/// Fills column `j` with a unit vector orthogonal to all earlier columns.
fn complete_orthonormal(columns: &mut Array2<Complex64>, j: usize) {
    let dim = columns.dim().0;
    for candidate in 0..dim {
        let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); dim];
        v[candidate] = Complex64::new(1.0, 0.0);
        for prev in 0..j {
            let overlap: Complex64 = (0..dim)
                .map(|p| columns[(p, prev)].conj() * v[p])
                .sum();
            for p in 0..dim {
                v[p] -= overlap * columns[(p, prev)];
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            for p in 0..dim {
                columns[(p, j)] = v[p] / norm;
            }
            return;
        }
    }
    unreachable!("an orthonormal completion always exists for rank <= dim");
}

/// Result of a Schmidt decomposition: eigenvalues `λ_j` of the reduced
/// matrix (summing to 1 for a unit state) and orthonormal left/right vectors
/// such that `A = Σ_j √λ_j u_j v_j†`.
#[derive(Debug, Clone)]
pub struct SchmidtResult {
    eigenvalues: Vec<f64>,
    left: Array2<Complex64>,
    right: Array2<Complex64>,
}

impl SchmidtResult {
    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Left Schmidt vectors as the columns of an `(n1, r)` matrix.
    pub fn left_vectors(&self) -> &Array2<Complex64> {
        &self.left
    }

    /// Right Schmidt vectors as the columns of an `(n2, r)` matrix.
    pub fn right_vectors(&self) -> &Array2<Complex64> {
        &self.right
    }

    /// Rebuilds the coefficient matrix `Σ_j √λ_j u_j v_j†`.
    pub fn reconstruct(&self) -> Array2<Complex64> {
        let n1 = self.left.dim().0;
        let n2 = self.right.dim().0;
        let mut a = Array2::zeros((n1, n2));
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let scale = lambda.max(0.0).sqrt();
            for p in 0..n1 {
                for q in 0..n2 {
                    a[(p, q)] += scale * self.left[(p, j)] * self.right[(q, j)].conj();
                }
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn field_from_entries(
        temporal: usize,
        spatial: usize,
        entries: &[((usize, usize, usize), Complex64)],
    ) -> FieldState {
        let mut coeffs = Array3::zeros((2, temporal, spatial));
        for &(idx, value) in entries {
            coeffs[idx] = value;
        }
        FieldState::new(coeffs).unwrap()
    }

    #[test]
    fn normalize_single_entry() {
        let field = field_from_entries(1, 1, &[((0, 0, 0), c(2.0, 0.0))]);
        let normalized = field.normalize().unwrap();
        assert_eq!(normalized.coeffs()[(0, 0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn normalize_symmetric_pair() {
        let field = field_from_entries(1, 1, &[((0, 0, 0), c(1.0, 0.0)), ((1, 0, 0), c(1.0, 0.0))]);
        let normalized = field.normalize().unwrap();
        let expected = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(normalized.coeffs()[(0, 0, 0)].re, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(normalized.coeffs()[(1, 0, 0)].re, expected, epsilon = 1e-15);
    }

    #[test]
    fn normalize_random_tensor_has_unit_intensity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let field = FieldState::random(3, 2, &mut rng).unwrap();
        // Oracle: direct summation of |d|².
        let total: f64 = field.coeffs().iter().map(|d| d.norm_sqr()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn normalize_zero_field_fails() {
        let field = field_from_entries(2, 2, &[]);
        assert!(matches!(field.normalize(), Err(Error::ZeroField)));
    }

    #[test]
    fn project_spatial_single_mode_is_identity() {
        let amp = 1.0 / 2.0_f64.sqrt();
        let field = field_from_entries(
            2,
            2,
            &[((0, 0, 0), c(amp, 0.0)), ((1, 1, 0), c(0.0, amp))],
        );
        let projected = field.project_spatial(0).unwrap();
        assert_eq!(projected.labels(), (Dof::Spin, Dof::Time));
        assert_abs_diff_eq!(projected.coeffs()[(0, 0)].re, amp, epsilon = 1e-12);
        assert_abs_diff_eq!(projected.coeffs()[(1, 1)].im, amp, epsilon = 1e-12);
    }

    #[test]
    fn project_spatial_orthogonal_mode_is_null() {
        let field = field_from_entries(1, 2, &[((0, 0, 1), c(1.0, 0.0))]);
        assert!(matches!(
            field.project_spatial(0),
            Err(Error::NullProjection(_))
        ));
    }

    #[test]
    fn project_spatial_matches_slice_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let field = FieldState::random(3, 2, &mut rng).unwrap();
        let projected = field.project_spatial(0).unwrap();
        // Oracle: take the m = 0 slice and divide by its norm.
        let mut slice_norm = 0.0;
        for i in 0..2 {
            for k in 0..3 {
                slice_norm += field.coeffs()[(i, k, 0)].norm_sqr();
            }
        }
        let slice_norm = slice_norm.sqrt();
        for i in 0..2 {
            for k in 0..3 {
                let expected = field.coeffs()[(i, k, 0)] / slice_norm;
                assert_abs_diff_eq!(
                    (projected.coeffs()[(i, k)] - expected).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn project_temporal_single_mode() {
        let field = field_from_entries(2, 2, &[((0, 1, 0), c(0.6, 0.0)), ((1, 1, 1), c(0.8, 0.0))]);
        let projected = field.project_temporal(1).unwrap();
        assert_eq!(projected.labels(), (Dof::Spin, Dof::Space));
        assert_abs_diff_eq!(projected.coeffs()[(0, 0)].re, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(projected.coeffs()[(1, 1)].re, 0.8, epsilon = 1e-12);
        assert!(matches!(
            field.project_temporal(0),
            Err(Error::NullProjection(_))
        ));
    }

    #[test]
    fn project_temporal_matches_slice_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let field = FieldState::random(3, 2, &mut rng).unwrap();
        let projected = field.project_temporal(2).unwrap();
        let mut slice_norm = 0.0;
        for i in 0..2 {
            for m in 0..2 {
                slice_norm += field.coeffs()[(i, 2, m)].norm_sqr();
            }
        }
        let slice_norm = slice_norm.sqrt();
        for i in 0..2 {
            for m in 0..2 {
                let expected = field.coeffs()[(i, 2, m)] / slice_norm;
                assert_abs_diff_eq!(
                    (projected.coeffs()[(i, m)] - expected).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn project_spin_identity_and_null() {
        // Fully h-polarized field.
        let field = field_from_entries(2, 1, &[((0, 0, 0), c(0.6, 0.0)), ((0, 1, 0), c(0.8, 0.0))]);
        let h = [c(1.0, 0.0), c(0.0, 0.0)];
        let v = [c(0.0, 0.0), c(1.0, 0.0)];
        let projected = field.project_spin(h).unwrap();
        assert_eq!(projected.labels(), (Dof::Time, Dof::Space));
        assert_abs_diff_eq!(projected.coeffs()[(0, 0)].re, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(projected.coeffs()[(1, 0)].re, 0.8, epsilon = 1e-12);
        assert!(matches!(
            field.project_spin(v),
            Err(Error::NullProjection(_))
        ));
    }

    #[test]
    fn project_spin_matches_contraction_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let field = FieldState::random(3, 2, &mut rng).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let dir = [c(inv_sqrt2, 0.0), c(0.0, inv_sqrt2)];
        let projected = field.project_spin(dir).unwrap();
        // Oracle: contract the spin axis by hand, then normalize.
        let mut raw = Array2::<Complex64>::zeros((3, 2));
        for k in 0..3 {
            for m in 0..2 {
                raw[(k, m)] = dir[0].conj() * field.coeffs()[(0, k, m)]
                    + dir[1].conj() * field.coeffs()[(1, k, m)];
            }
        }
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for k in 0..3 {
            for m in 0..2 {
                assert_abs_diff_eq!(
                    (projected.coeffs()[(k, m)] - raw[(k, m)] / norm).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn project_spin_requires_unit_direction() {
        let field = field_from_entries(1, 1, &[((0, 0, 0), c(1.0, 0.0))]);
        assert!(matches!(
            field.project_spin([c(2.0, 0.0), c(0.0, 0.0)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn orthogonal_spin_projections_reassemble_the_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let field = FieldState::random(3, 2, &mut rng).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let dir = [c(inv_sqrt2, 0.0), c(0.0, inv_sqrt2)];
        let perp = [c(inv_sqrt2, 0.0), c(0.0, -inv_sqrt2)];

        // Unnormalized components recovered by scaling each projection with
        // the norm of the corresponding contraction.
        let component = |d: [Complex64; 2]| -> Array2<Complex64> {
            let mut raw = Array2::<Complex64>::zeros((3, 2));
            for k in 0..3 {
                for m in 0..2 {
                    raw[(k, m)] = d[0].conj() * field.coeffs()[(0, k, m)]
                        + d[1].conj() * field.coeffs()[(1, k, m)];
                }
            }
            raw
        };
        let comp_dir = component(dir);
        let comp_perp = component(perp);
        for i in 0..2 {
            for k in 0..3 {
                for m in 0..2 {
                    let rebuilt = dir[i] * comp_dir[(k, m)] + perp[i] * comp_perp[(k, m)];
                    assert_abs_diff_eq!(
                        (rebuilt - field.coeffs()[(i, k, m)]).norm(),
                        0.0,
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn bipartite_state_validation() {
        let unit = Array2::from_shape_fn((2, 2), |(i, j)| {
            if i == 0 && j == 0 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!(BipartitePureState::new(unit.clone(), (Dof::Spin, Dof::Time)).is_ok());
        assert!(matches!(
            BipartitePureState::new(unit.mapv(|z| z * 2.0), (Dof::Spin, Dof::Time)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            BipartitePureState::new(unit.clone(), (Dof::Spin, Dof::Spin)),
            Err(Error::Domain(_))
        ));
        let big = Array2::from_elem((3, 3), c(1.0 / 3.0, 0.0));
        assert!(matches!(
            BipartitePureState::new(big, (Dof::Spin, Dof::Time)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn schmidt_product_state() {
        let mut a = Array2::zeros((2, 2));
        a[(0, 0)] = c(1.0, 0.0);
        let state = BipartitePureState::new(a, (Dof::Spin, Dof::Time)).unwrap();
        let schmidt = state.schmidt().unwrap();
        assert_abs_diff_eq!(schmidt.eigenvalues()[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(schmidt.eigenvalues()[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_maximally_entangled() {
        let amp = 1.0 / 2.0_f64.sqrt();
        let mut a = Array2::zeros((2, 2));
        a[(0, 0)] = c(amp, 0.0);
        a[(1, 1)] = c(amp, 0.0);
        let state = BipartitePureState::new(a, (Dof::Spin, Dof::Time)).unwrap();
        let schmidt = state.schmidt().unwrap();
        assert_abs_diff_eq!(schmidt.eigenvalues()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(schmidt.eigenvalues()[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_two_mode_overlap_state() {
        // Balanced two-mode state whose temporal amplitudes overlap by 0.890:
        // eigenvalues are (1 ± 0.890)/2.
        let delta = 0.890_f64;
        let half = 1.0 / 2.0_f64.sqrt();
        let mut a = Array2::zeros((2, 2));
        a[(0, 0)] = c(half, 0.0);
        a[(1, 0)] = c(half * delta, 0.0);
        a[(1, 1)] = c(half * (1.0 - delta * delta).sqrt(), 0.0);
        let state = BipartitePureState::new(a, (Dof::Space, Dof::Time)).unwrap();
        let schmidt = state.schmidt().unwrap();
        assert_abs_diff_eq!(schmidt.eigenvalues()[0], 0.945, epsilon = 1e-12);
        assert_abs_diff_eq!(schmidt.eigenvalues()[1], 0.055, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_rank_one_outer_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let u: Vec<Complex64> = (0..2)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v: Vec<Complex64> = (0..5)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let a = Array2::from_shape_fn((2, 5), |(i, j)| u[i] * v[j].conj());
        let state = BipartitePureState::from_unnormalized(a, (Dof::Spin, Dof::Time)).unwrap();
        let schmidt = state.schmidt().unwrap();
        assert_abs_diff_eq!(schmidt.eigenvalues()[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(schmidt.eigenvalues()[1], 0.0, epsilon = 1e-12);
    }

    fn check_schmidt_invariants(state: &BipartitePureState) {
        let schmidt = state.schmidt().unwrap();
        let lam = schmidt.eigenvalues();
        let total: f64 = lam.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        for w in lam.windows(2) {
            assert!(w[0] >= w[1] - 1e-14, "eigenvalues must be non-increasing");
        }
        // Orthonormality of both vector sets.
        for cols in [schmidt.left_vectors(), schmidt.right_vectors()] {
            let r = cols.dim().1;
            for i in 0..r {
                for j in 0..r {
                    let overlap: Complex64 = (0..cols.dim().0)
                        .map(|p| cols[(p, i)].conj() * cols[(p, j)])
                        .sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(overlap.norm(), expected, epsilon = 1e-10);
                }
            }
        }
        // Reconstruction.
        let rebuilt = schmidt.reconstruct();
        let mut max_err: f64 = 0.0;
        for (idx, value) in state.coeffs().indexed_iter() {
            max_err = max_err.max((rebuilt[idx] - value).norm());
        }
        assert!(max_err <= 1e-10, "reconstruction error {max_err}");
    }

    proptest! {
        #[test]
        fn schmidt_invariants_hold_for_random_states(seed in 0u64..500, wide in proptest::bool::ANY, n in 1usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n1, n2) = if wide { (2, n) } else { (n, 2) };
            let labels = if wide { (Dof::Spin, Dof::Time) } else { (Dof::Time, Dof::Space) };
            let state = BipartitePureState::random(n1, n2, labels, &mut rng).unwrap();
            check_schmidt_invariants(&state);
        }

        #[test]
        fn projections_are_unit_normalized(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = FieldState::random(4, 2, &mut rng).unwrap();
            let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
            let states = [
                field.project_spatial(1).unwrap(),
                field.project_temporal(2).unwrap(),
                field.project_spin([c(inv_sqrt2, 0.0), c(0.0, inv_sqrt2)]).unwrap(),
            ];
            for state in &states {
                prop_assert!((state.norm_sqr() - 1.0).abs() <= 1e-12);
            }
        }
    }
}
