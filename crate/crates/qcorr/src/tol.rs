//! Numerical tolerances used across the crate.
//!
//! Double precision leaves ample headroom at dimension 4, so the state
//! invariants are pinned near machine precision while anything downstream of
//! the measurement optimizer gets the looser 1e-9.

/// Maximum |a(i,j) - conj(a(j,i))| for a matrix to count as Hermitian in the
/// density-matrix invariants.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Maximum |trace - 1| for a density matrix.
pub const TRACE_TOL: f64 = 1e-12;

/// Eigenvalues in `[EIGENVALUE_FLOOR, 0)` are clamped to 0 before entropies;
/// anything more negative is a hard error.
pub const EIGENVALUE_FLOOR: f64 = -1e-12;

/// Hermiticity defect accepted by the eigensolver entry points.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops, relative to
/// the matrix scale.
pub const JACOBI_OFF_TOL: f64 = 1e-14;

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Entries off the diagonal/anti-diagonal must stay below this magnitude for
/// the analytic X-state paths to apply.
pub const X_STRUCTURE_TOL: f64 = 1e-13;

/// Probability vectors must sum to 1 within this.
pub const PROBABILITY_SUM_TOL: f64 = 1e-10;

/// Measurement outcomes with probability below this contribute zero
/// conditional entropy (avoids 0/0 in the conditional state).
pub const ZERO_OUTCOME_PROB: f64 = 1e-14;

/// Discord values in `[-DISCORD_CLAMP, 0)` are reported as 0; more negative
/// values signal a broken optimizer or invalid state and are errors.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// State-vector norms must be 1 within this.
pub const NORM_TOL: f64 = 1e-12;

/// Default refinement tolerance on the minimized conditional entropy.
pub const DEFAULT_REFINE_TOL: f64 = 1e-9;
