//! Two-qubit quantum correlations for Werner states built from entangled
//! squeezed states.
//!
//! The crate constructs the perfect and quasi Werner density matrices of a
//! squeezed-state qubit encoding, then quantifies their correlations:
//! quantum mutual information, classical correlation under optimal projective
//! measurement, quantum discord, and Wootters concurrence.
//!
//! * [`matcore`] -- minimal dense complex-matrix kernel (products, Kronecker
//!   products, partial traces, Hermitian eigenvalues via cyclic Jacobi).
//! * [`states`] -- squeezed-state scalars, the cat-basis Bell-like vectors
//!   and the Werner mixtures, with a truncated-Fock overlap oracle.
//! * [`measures`] -- entropies, discord with (theta, phi) minimization, and
//!   concurrence with an X-state closed-form cross-check.

pub mod error;
pub mod matcore;
pub mod measures;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use matcore::{
    hermitian_eigenvalues, partial_trace, tensor_product, validate_density, ComplexMatrix,
    DensityMatrix, DensityReport, Subsystem,
};
pub use measures::{
    analyze, classical_correlation, classical_mutual_information, concurrence, concurrence_x_state,
    conditional_entropy_after_measurement, measurement_projectors, minimize_conditional_entropy,
    quantum_discord, quantum_mutual_information, shannon_entropy, spin_flip, von_neumann_entropy,
    CorrelationReport, DiscordReport, MeasurementBasis, MinimizationResult, OptimizerOpts,
};
pub use states::{
    fock_overlap, perfect_werner, psi_minus, psi_plus, quasi_werner, squeezed_overlap,
    werner_mixture, PureStateVector, SqueezedFamily, WernerFamily, WernerParams,
    DEFAULT_FOCK_TERMS,
};
