//! Pairwise optical coherences of a three-degree-of-freedom beam.
//!
//! An idealized beam carries three independent degrees of freedom — spin,
//! time and transverse space — and projecting out any one of them leaves a
//! bipartite pure state of the other two. Each such state supports a degree
//! of polarization `P` and a concurrence `C` tied together by the
//! complementarity constraint `P² + C² = 1`. This crate provides:
//!
//! - [`field`]: the coefficient tensor of the full field, its contextual
//!   projections, and Schmidt decomposition of the projected states;
//! - [`coherence`]: the 2×2 coherence matrix, `P`, `C`, the constraint
//!   residual, and the closed-form `(θ, δ, φ)` expressions;
//! - [`optics`]: a simulated two-spatial-mode bench — state preparation from
//!   a splitting angle and a complex temporal overlap, mode-space optical
//!   elements, Stokes tomography with an optional seeded noise model, and an
//!   independent preparation-stage estimator;
//! - [`scenario`]: ready-made drivers (single analysis, reference-state
//!   comparison, Poincaré-sphere and spiral datasets, end-to-end tomography)
//!   with CSV/JSON export.
//!
//! The `examples/` directory walks through each capability; the
//! `tricoherence` binary exposes the drivers as subcommands.

pub mod coherence;
pub mod error;
pub mod field;
pub mod optics;
pub mod scenario;

pub use coherence::{analytic_c, analytic_p, CoherenceMatrix, CoherenceReport, TrParams};
pub use error::{Error, Result};
pub use field::{BipartitePureState, CoherencePair, Dof, FieldState, SchmidtResult};
pub use optics::{
    measure_stokes, mzim_intensities, prepare_state, prepare_state_in, prepstage_estimate, Arm,
    ElementKind, ElementTransform, PrepStageEstimate, SpectralModel, StokesVector,
    TomographyReport,
};
pub use scenario::{GridSpec, ResultRow, TomographyRun};
