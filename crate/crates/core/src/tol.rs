//! Numerical tolerances shared by every verdict in the crate.
//!
//! All tolerances are absolute. A matrix counts as positive semidefinite when
//! its smallest eigenvalue is at least [`PSD_FLOOR`].

/// Maximum entrywise deviation `|m - m†|` for a Hermitian matrix.
pub const HERMITIAN: f64 = 1e-12;
/// Maximum deviation of a trace from one.
pub const TRACE: f64 = 1e-12;
/// Smallest eigenvalue still accepted as non-negative.
pub const PSD_FLOOR: f64 = -1e-9;
/// Input tolerance for the eigensolver's Hermiticity precondition.
pub const EIGEN_INPUT_HERMITIAN: f64 = 1e-9;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;
/// Unitarity and projector checks.
pub const OPERATOR: f64 = 1e-12;
/// Measurement branches with probability at or below this are reported absent.
pub const BRANCH_PROBABILITY: f64 = 1e-12;
/// Scenario premises (marginal on a disc, diagonal marginal).
pub const PREMISE: f64 = 1e-9;
/// Bloch vectors may exceed unit length by this much.
pub const BLOCH_NORM: f64 = 1e-12;
/// Width of the band around a closed-form boundary excluded from comparisons.
pub const BOUNDARY_BAND: f64 = 1e-9;
