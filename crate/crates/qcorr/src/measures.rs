//! Classical and quantum correlation quantifiers.
//!
//! Entropies are in bits throughout: base-2 logarithms make the pure Bell
//! state come out at discord 1. Quantum discord follows the measurement
//! route: project one subsystem with a rank-1 pair parameterized by
//! `(theta, phi)`, average the conditional entropy of the other subsystem,
//! and minimize over the measurement angles with a coarse grid plus
//! golden-section coordinate descent. Concurrence runs through the
//! spin-flipped spectrum with the X-state closed form kept as an independent
//! cross-check.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matcore::{
    eig2, hermitian_eigenvalues, hermitian_sqrt, one_sided_singular_values, partial_trace_raw,
    tensor_product, ComplexMatrix, DensityMatrix, Subsystem,
};
use crate::tol;

/// Projective measurement pair on one qubit, parameterized by
/// `theta in [0, pi]` and `phi in [0, 2*pi)`:
///
/// `|P1> = cos(theta)|+> + e^{i phi} sin(theta)|->`
/// `|P2> = sin(theta)|+> - e^{i phi} cos(theta)|->`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !phi.is_finite() || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidArgument(format!(
                "phi must lie in [0, 2*pi), got {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Options for the conditional-entropy minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOpts {
    /// Grid points along theta (inclusive of both endpoints of `[0, pi]`).
    pub grid_theta: usize,
    /// Grid points along phi over the half-open `[0, 2*pi)`.
    pub grid_phi: usize,
    /// Stop refining once a descent round improves the entropy by less than
    /// this many bits.
    pub refine_tol: f64,
    /// Which subsystem the projectors act on. The states treated here are
    /// exchange-symmetric, so either side gives the same discord.
    pub measured: Subsystem,
}

impl Default for OptimizerOpts {
    fn default() -> Self {
        Self {
            grid_theta: 64,
            grid_phi: 64,
            refine_tol: tol::DEFAULT_REFINE_TOL,
            measured: Subsystem::Y,
        }
    }
}

/// Outcome of [`minimize_conditional_entropy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationResult {
    pub theta_star: f64,
    pub phi_star: f64,
    pub s_min: f64,
}

/// Discord and its decomposition for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordReport {
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub theta_star: f64,
    pub phi_star: f64,
    pub s_cond_min: f64,
}

/// Every correlation quantifier for one state, as produced by [`analyze`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub discord: f64,
    pub concurrence: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub theta_star: f64,
    pub phi_star: f64,
    pub s_cond_min: f64,
}

/// Shannon entropy of a probability distribution, in bits, with
/// `0 log 0 := 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("empty distribution".to_string()));
    }
    let mut sum = 0.0;
    for &x in p {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "probabilities must be finite and >= 0, got {x}"
            )));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > tol::PROBABILITY_SUM_TOL {
        return Err(Error::InvalidArgument(format!(
            "probabilities sum to {sum}, not 1 within {:.1e}",
            tol::PROBABILITY_SUM_TOL
        )));
    }
    Ok(entropy_bits(p.iter().copied()))
}

fn entropy_bits(values: impl Iterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    for v in values {
        if v > 0.0 {
            s -= v * v.log2();
        }
    }
    s.max(0.0)
}

/// Classical mutual information `H(X) + H(Y) - H(X,Y)` of a joint
/// distribution given as rows over X and columns over Y.
pub fn classical_mutual_information(joint: &[Vec<f64>]) -> Result<f64> {
    if joint.is_empty() || joint[0].is_empty() {
        return Err(Error::InvalidArgument("empty joint table".to_string()));
    }
    let cols = joint[0].len();
    let mut total = 0.0;
    for row in joint {
        if row.len() != cols {
            return Err(Error::InvalidArgument("ragged joint table".to_string()));
        }
        for &x in row {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "joint probabilities must be finite and >= 0, got {x}"
                )));
            }
            total += x;
        }
    }
    if (total - 1.0).abs() > tol::PROBABILITY_SUM_TOL {
        return Err(Error::InvalidArgument(format!(
            "joint probabilities sum to {total}, not 1"
        )));
    }
    let hx = entropy_bits(joint.iter().map(|row| row.iter().sum::<f64>()));
    let hy = entropy_bits((0..cols).map(|j| joint.iter().map(|row| row[j]).sum::<f64>()));
    let hxy = entropy_bits(joint.iter().flatten().copied());
    Ok(hx + hy - hxy)
}

/// Von Neumann entropy in bits. Eigenvalues within [`tol::EIGENVALUE_FLOOR`]
/// of zero are clamped to zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let evs = hermitian_eigenvalues(rho.matrix())?;
    entropy_from_spectrum(&evs)
}

fn entropy_from_spectrum(evs: &[f64]) -> Result<f64> {
    for &l in evs {
        if l < tol::EIGENVALUE_FLOOR {
            return Err(Error::Numerical(format!(
                "eigenvalue {l:.3e} below the clamping floor"
            )));
        }
    }
    Ok(entropy_bits(evs.iter().map(|&l| l.max(0.0))))
}

/// Quantum mutual information `S(rho_X) + S(rho_Y) - S(rho_XY)` of a
/// two-qubit state, in bits.
pub fn quantum_mutual_information(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "mutual information needs a two-qubit state".to_string(),
        ));
    }
    let sx = entropy_from_spectrum(&marginal_spectrum(rho.matrix(), Subsystem::X))?;
    let sy = entropy_from_spectrum(&marginal_spectrum(rho.matrix(), Subsystem::Y))?;
    let sxy = von_neumann_entropy(rho)?;
    Ok(sx + sy - sxy)
}

fn marginal_spectrum(mat: &ComplexMatrix, keep: Subsystem) -> Vec<f64> {
    let red = partial_trace_raw(mat, keep);
    let (lo, hi) = eig2(red.get(0, 0).re, red.get(1, 1).re, red.get(0, 1));
    vec![hi, lo]
}

/// The rank-1 orthogonal projector pair for a measurement basis.
pub fn measurement_projectors(basis: &MeasurementBasis) -> (ComplexMatrix, ComplexMatrix) {
    projector_pair(basis.theta, basis.phi)
}

fn projector_pair(theta: f64, phi: f64) -> (ComplexMatrix, ComplexMatrix) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phi);
    let v1 = [Complex64::new(c, 0.0), e * s];
    let v2 = [Complex64::new(s, 0.0), -e * c];
    (outer2(&v1), outer2(&v2))
}

fn outer2(v: &[Complex64; 2]) -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        vec![
            v[0] * v[0].conj(),
            v[0] * v[1].conj(),
            v[1] * v[0].conj(),
            v[1] * v[1].conj(),
        ],
    )
    .expect("2x2 is valid")
}

/// Average conditional entropy of the unmeasured subsystem after projecting
/// Y with the given basis, plus the two outcome probabilities.
///
/// For outcome `j`: `p_j = Tr[(I (x) P_j) rho]` and the conditional state on
/// X is `Tr_Y[(I (x) P_j) rho (I (x) P_j)] / p_j`; the projected Y factor is
/// pure so the 2x2 reduction carries the full entropy. Outcomes with
/// `p_j < 1e-14` contribute zero.
pub fn conditional_entropy_after_measurement(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
) -> Result<(f64, [f64; 2])> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "measurement needs a two-qubit state".to_string(),
        ));
    }
    Ok(conditional_entropy_raw(
        rho.matrix(),
        basis.theta,
        basis.phi,
        Subsystem::Y,
    ))
}

/// Unvalidated evaluator used by the optimizer: angles are taken mod the
/// trigonometric period, and conditional-state eigenvalues are clamped at
/// zero since division by a small outcome probability can amplify roundoff.
fn conditional_entropy_raw(
    mat: &ComplexMatrix,
    theta: f64,
    phi: f64,
    measured: Subsystem,
) -> (f64, [f64; 2]) {
    let id2 = ComplexMatrix::identity(2).expect("dim 2 is valid");
    let (proj1, proj2) = projector_pair(theta, phi);
    let kept = match measured {
        Subsystem::Y => Subsystem::X,
        Subsystem::X => Subsystem::Y,
    };
    let mut entropy = 0.0;
    let mut probs = [0.0; 2];
    for (k, proj) in [proj1, proj2].iter().enumerate() {
        let op = match measured {
            Subsystem::Y => tensor_product(&id2, proj),
            Subsystem::X => tensor_product(proj, &id2),
        }
        .expect("factors are 2x2");
        let sandwiched = op
            .matmul(mat)
            .and_then(|m| m.matmul(&op))
            .expect("dimensions agree");
        let p = sandwiched.trace().re;
        probs[k] = p;
        if p < tol::ZERO_OUTCOME_PROB {
            continue;
        }
        let red = partial_trace_raw(&sandwiched, kept);
        let inv = 1.0 / p;
        let (lo, hi) = eig2(
            red.get(0, 0).re * inv,
            red.get(1, 1).re * inv,
            red.get(0, 1) * inv,
        );
        entropy += p * entropy_bits([lo, hi].into_iter());
    }
    (entropy, probs)
}

/// Classical correlation `J = S(rho_X) - S(rho_X | {P_j^Y})` for one fixed
/// measurement basis on Y.
pub fn classical_correlation(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<f64> {
    let (s_cond, _) = conditional_entropy_after_measurement(rho, basis)?;
    let sx = entropy_from_spectrum(&marginal_spectrum(rho.matrix(), Subsystem::X))?;
    Ok(sx - s_cond)
}

/// Minimizes the measured conditional entropy over `(theta, phi)`.
///
/// A `grid_theta x grid_phi` scan locates the best cell (ties broken toward
/// smaller theta, then smaller phi), then alternating golden-section line
/// searches within one grid step refine it until a round gains less than
/// `refine_tol`. Deterministic for fixed options.
pub fn minimize_conditional_entropy(
    rho: &DensityMatrix,
    opts: &OptimizerOpts,
) -> Result<MinimizationResult> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "measurement needs a two-qubit state".to_string(),
        ));
    }
    if opts.grid_theta < 2 || opts.grid_phi < 2 {
        return Err(Error::InvalidArgument(
            "optimizer grid must be at least 2x2".to_string(),
        ));
    }
    let mat = rho.matrix();
    let eval = |theta: f64, phi: f64| conditional_entropy_raw(mat, theta, phi, opts.measured).0;

    let theta_step = PI / (opts.grid_theta - 1) as f64;
    let phi_step = 2.0 * PI / opts.grid_phi as f64;
    let mut best = MinimizationResult {
        theta_star: 0.0,
        phi_star: 0.0,
        s_min: f64::INFINITY,
    };
    for i in 0..opts.grid_theta {
        let theta = theta_step * i as f64;
        for j in 0..opts.grid_phi {
            let phi = phi_step * j as f64;
            let s = eval(theta, phi);
            if s < best.s_min {
                best = MinimizationResult {
                    theta_star: theta,
                    phi_star: phi,
                    s_min: s,
                };
            }
        }
    }

    const MAX_ROUNDS: usize = 50;
    for _ in 0..MAX_ROUNDS {
        let before = best.s_min;
        let (theta, s) = golden_min(
            |t| eval(t, best.phi_star),
            (best.theta_star - theta_step).max(0.0),
            (best.theta_star + theta_step).min(PI),
        );
        if s < best.s_min {
            best.theta_star = theta;
            best.s_min = s;
        }
        let (phi, s) = golden_min(
            |p| eval(best.theta_star, p),
            best.phi_star - phi_step,
            best.phi_star + phi_step,
        );
        if s < best.s_min {
            best.phi_star = phi.rem_euclid(2.0 * PI);
            best.s_min = s;
        }
        if before - best.s_min < opts.refine_tol {
            break;
        }
    }
    Ok(best)
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`. Returns the
/// best sampled point.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    const INV_PHI2: f64 = 0.381_966_011_250_105_15;
    let mut x1 = lo + INV_PHI2 * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if hi - lo < 1e-12 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + INV_PHI2 * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Quantum discord `D = S(rho_meas) - S(rho_XY) + min_s S(cond)` together
/// with the mutual information and the classical correlation at the optimum.
///
/// Values in `[-1e-9, 0)` are clamped to zero; anything more negative is
/// reported as a numerical failure.
pub fn quantum_discord(rho: &DensityMatrix, opts: &OptimizerOpts) -> Result<DiscordReport> {
    let sx = entropy_from_spectrum(&marginal_spectrum(rho.matrix(), Subsystem::X))?;
    let sy = entropy_from_spectrum(&marginal_spectrum(rho.matrix(), Subsystem::Y))?;
    let sxy = von_neumann_entropy(rho)?;
    let min = minimize_conditional_entropy(rho, opts)?;
    let (s_measured, s_kept) = match opts.measured {
        Subsystem::Y => (sy, sx),
        Subsystem::X => (sx, sy),
    };
    let raw = s_measured - sxy + min.s_min;
    if raw < -tol::DISCORD_CLAMP {
        return Err(Error::Numerical(format!(
            "discord {raw:.3e} below -{:.1e}: optimizer or state is broken",
            tol::DISCORD_CLAMP
        )));
    }
    Ok(DiscordReport {
        discord: raw.max(0.0),
        mutual_information: sx + sy - sxy,
        classical_correlation: s_kept - min.s_min,
        theta_star: min.theta_star,
        phi_star: min.phi_star,
        s_cond_min: min.s_min,
    })
}

/// Spin-flipped state `(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let sy = ComplexMatrix::pauli_y();
    let yy = tensor_product(&sy, &sy).expect("factors are 2x2");
    yy.matmul(&rho.matrix().conjugate())
        .and_then(|m| m.matmul(&yy))
        .expect("dimensions agree")
}

/// Wootters concurrence through the spin-flipped spectrum.
///
/// `rho * rho_tilde` is not Hermitian in general; its eigenvalues equal
/// those of the similar Hermitian form `sqrt(rho) rho_tilde sqrt(rho)`,
/// which factors as `b b^dagger` with
/// `b = sqrt(rho) (sigma_y (x) sigma_y) conj(sqrt(rho))`. The required
/// square-rooted eigenvalues are therefore the singular values of `b`,
/// computed directly so that near-zero values keep full absolute accuracy
/// (taking sqrt of an eigenvalue with 1e-16 roundoff would floor the error
/// at 1e-8). Sorted descending they give `C = max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "concurrence needs a two-qubit state".to_string(),
        ));
    }
    let sy = ComplexMatrix::pauli_y();
    let yy = tensor_product(&sy, &sy).expect("factors are 2x2");
    let root = hermitian_sqrt(rho.matrix())?;
    let factored = root.matmul(&yy)?.matmul(&root.conjugate())?;
    let lambdas = one_sided_singular_values(&factored)?;
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Closed-form concurrence for X-structured states,
/// `2 max{0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)}`.
/// Used as the cross-check for the spectral pipeline; errors when the state
/// is not X-structured.
pub fn concurrence_x_state(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "concurrence needs a two-qubit state".to_string(),
        ));
    }
    let mat = rho.matrix();
    if !mat.is_x_structured() {
        return Err(Error::InvalidArgument(
            "state is not X-structured".to_string(),
        ));
    }
    let corner =
        mat.get(0, 3).norm() - (mat.get(1, 1).re.max(0.0) * mat.get(2, 2).re.max(0.0)).sqrt();
    let middle =
        mat.get(1, 2).norm() - (mat.get(0, 0).re.max(0.0) * mat.get(3, 3).re.max(0.0)).sqrt();
    Ok(2.0 * corner.max(middle).max(0.0))
}

/// Full correlation report: discord decomposition plus concurrence.
pub fn analyze(rho: &DensityMatrix, opts: &OptimizerOpts) -> Result<CorrelationReport> {
    let d = quantum_discord(rho, opts)?;
    let c = concurrence(rho)?;
    Ok(CorrelationReport {
        discord: d.discord,
        concurrence: c,
        mutual_information: d.mutual_information,
        classical_correlation: d.classical_correlation,
        theta_star: d.theta_star,
        phi_star: d.phi_star,
        s_cond_min: d.s_cond_min,
    })
}
