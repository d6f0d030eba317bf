//! Squeezed-state scalars and the perfect / quasi Werner density matrices.
//!
//! A single squeeze parameter `r` fixes the overlap `M = 1/sqrt(cosh 2r)`
//! between the two opposite-phase squeezed states, and from it every
//! normalization and superposition coefficient used by the state builders.
//! `fock_overlap` recomputes the overlap by brute force from the Fock-space
//! expansion of the squeezed vacuum and serves as the independent oracle for
//! the closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};
use crate::tol;

/// All r-derived scalars for one squeeze parameter.
///
/// `bell_norm_*` normalize the entangled superpositions of squeezed-state
/// pairs, `cat_norm_*` the even/odd single-mode cat states, and
/// `(alpha, beta)` are the coefficients of the non-maximally entangled state
/// in the orthonormal cat basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedFamily {
    pub r: f64,
    /// Overlap `M = 1/sqrt(cosh 2r)` of the two squeezed states, in (0, 1].
    pub overlap: f64,
    /// `n+ = [2(1 + M^2)]^(-1/2)`.
    pub bell_norm_plus: f64,
    /// `n- = [2(1 - M^2)]^(-1/2)`.
    pub bell_norm_minus: f64,
    /// `N+ = [2(1 + M)]^(-1/2)`.
    pub cat_norm_plus: f64,
    /// `N- = [2(1 - M)]^(-1/2)`; diverges as r -> 0, hence the r > 0 domain.
    pub cat_norm_minus: f64,
    /// `alpha = (1 + M) / sqrt(2(1 + M^2))`, the |++> coefficient.
    pub alpha: f64,
    /// `beta = (1 - M) / sqrt(2(1 + M^2))`, the |--> coefficient.
    pub beta: f64,
}

impl SqueezedFamily {
    /// Evaluates the whole family at squeeze parameter `r > 0`.
    ///
    /// `r = 0` is rejected: the odd-cat normalization `N-` diverges there.
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "squeeze parameter must be finite and > 0, got {r}"
            )));
        }
        let m = squeezed_overlap(r)?;
        let alpha = (1.0 + m) / (2.0 * (1.0 + m * m)).sqrt();
        let beta = (1.0 - m) / (2.0 * (1.0 + m * m)).sqrt();
        Ok(Self {
            r,
            overlap: m,
            bell_norm_plus: 1.0 / (2.0 * (1.0 + m * m)).sqrt(),
            bell_norm_minus: 1.0 / (2.0 * (1.0 - m * m)).sqrt(),
            cat_norm_plus: 1.0 / (2.0 * (1.0 + m)).sqrt(),
            cat_norm_minus: 1.0 / (2.0 * (1.0 - m)).sqrt(),
            alpha,
            beta,
        })
    }
}

/// Closed-form overlap `<xi|-xi> = 1/sqrt(cosh 2r)` for `r >= 0`.
pub fn squeezed_overlap(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "squeeze parameter must be finite and >= 0, got {r}"
        )));
    }
    Ok(1.0 / (2.0 * r).cosh().sqrt())
}

/// Brute-force overlap from the truncated Fock expansion of the squeezed
/// vacuum:
///
/// `<xi|-xi> = (1/cosh r) * sum_{n=0}^{n_max} [(2n)!/(n!)^2] (-tanh^2 r / 4)^n`
///
/// Terms follow the ratio recurrence
/// `t_{n+1} = t_n * (2n+2)(2n+1)/(n+1)^2 * (-tanh^2 r / 4)`
/// so no factorial is ever formed. The series converges geometrically with
/// ratio `tanh^2 r`; at the default `n_max = 500` the truncation error stays
/// below 1e-9 for `r <= 2` (larger `r` needs a longer tail).
pub fn fock_overlap(r: f64, n_max: usize) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "squeeze parameter must be finite and >= 0, got {r}"
        )));
    }
    if n_max < 1 {
        return Err(Error::InvalidArgument(
            "Fock truncation must be at least 1".to_string(),
        ));
    }
    let x = -(r.tanh() * r.tanh()) / 4.0;
    let mut term = 1.0;
    let mut sum = term;
    for n in 0..n_max {
        let nf = n as f64;
        term *= (2.0 * nf + 2.0) * (2.0 * nf + 1.0) / ((nf + 1.0) * (nf + 1.0)) * x;
        sum += term;
    }
    Ok(sum / r.cosh())
}

/// Default Fock truncation for the overlap oracle.
pub const DEFAULT_FOCK_TERMS: usize = 500;

/// Normalized two-qubit pure state in the cat basis `{|++>, |+->, |-+>, |-->}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateVector {
    amps: [Complex64; 4],
}

impl PureStateVector {
    /// Validates the unit norm and wraps the amplitudes.
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol::NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state vector norm^2 = {norm_sqr} is not 1 within {:.1e}",
                tol::NORM_TOL
            )));
        }
        Ok(Self { amps })
    }

    pub fn amps(&self) -> &[Complex64; 4] {
        &self.amps
    }

    /// Rank-1 projector |psi><psi|.
    pub fn projector(&self) -> ComplexMatrix {
        let mut entries = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                entries.push(self.amps[i] * self.amps[j].conj());
            }
        }
        ComplexMatrix::new(4, entries).expect("4x4 is valid")
    }
}

/// The non-maximally entangled superposition `alpha|++> + beta|-->` at
/// squeeze parameter `r > 0`.
pub fn psi_plus(r: f64) -> Result<PureStateVector> {
    let fam = SqueezedFamily::new(r)?;
    PureStateVector::new([
        Complex64::new(fam.alpha, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(fam.beta, 0.0),
    ])
}

/// The maximally entangled `(|+-> + |-+>)/sqrt(2)`; r-independent in the
/// cat basis.
pub fn psi_minus() -> PureStateVector {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    PureStateVector::new([Complex64::ZERO, h, h, Complex64::ZERO])
        .expect("norm is 1 by construction")
}

/// Werner mixture `(1-a) I/4 + a |psi><psi|`.
pub fn werner_mixture(psi: &PureStateVector, a: f64) -> Result<DensityMatrix> {
    check_mixing(a)?;
    let mixed = ComplexMatrix::identity(4)?.scale(Complex64::new((1.0 - a) / 4.0, 0.0));
    let pure = psi.projector().scale(Complex64::new(a, 0.0));
    DensityMatrix::new(mixed.add(&pure)?)
}

/// Quasi-Werner density matrix over `alpha|++> + beta|-->`, written out in
/// closed form: diagonal
/// `((1-a)/4 + a(1+M)^2/(2(1+M^2)), (1-a)/4, (1-a)/4, (1-a)/4 + a(1-M)^2/(2(1+M^2)))`
/// with corners `a(1+M)(1-M)/(2(1+M^2))`.
pub fn quasi_werner(a: f64, r: f64) -> Result<DensityMatrix> {
    check_mixing(a)?;
    let fam = SqueezedFamily::new(r)?;
    let m = fam.overlap;
    let denom = 2.0 * (1.0 + m * m);
    let corner = a * (1.0 + m) * (1.0 - m) / denom;
    let base = (1.0 - a) / 4.0;
    let mut mat = ComplexMatrix::zeros(4)?;
    mat.set(
        0,
        0,
        Complex64::new(base + a * (1.0 + m) * (1.0 + m) / denom, 0.0),
    );
    mat.set(1, 1, Complex64::new(base, 0.0));
    mat.set(2, 2, Complex64::new(base, 0.0));
    mat.set(
        3,
        3,
        Complex64::new(base + a * (1.0 - m) * (1.0 - m) / denom, 0.0),
    );
    mat.set(0, 3, Complex64::new(corner, 0.0));
    mat.set(3, 0, Complex64::new(corner, 0.0));
    DensityMatrix::new(mat)
}

/// Perfect-Werner density matrix: diagonal
/// `((1+a)/4, (1-a)/4, (1-a)/4, (1+a)/4)` with corners `a/2`, independent of
/// any squeeze parameter.
///
/// The pure part sits on the outer corners, i.e. on `(|++> + |-->)/sqrt(2)`
/// rather than on the central block of [`psi_minus`]. The two placements are
/// related by relabeling one local basis and share spectrum, concurrence and
/// discord.
pub fn perfect_werner(a: f64) -> Result<DensityMatrix> {
    check_mixing(a)?;
    let mut mat = ComplexMatrix::zeros(4)?;
    mat.set(0, 0, Complex64::new((1.0 + a) / 4.0, 0.0));
    mat.set(1, 1, Complex64::new((1.0 - a) / 4.0, 0.0));
    mat.set(2, 2, Complex64::new((1.0 - a) / 4.0, 0.0));
    mat.set(3, 3, Complex64::new((1.0 + a) / 4.0, 0.0));
    mat.set(0, 3, Complex64::new(a / 2.0, 0.0));
    mat.set(3, 0, Complex64::new(a / 2.0, 0.0));
    DensityMatrix::new(mat)
}

fn check_mixing(a: f64) -> Result<()> {
    if !a.is_finite() || !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidArgument(format!(
            "mixing parameter must lie in [0, 1], got {a}"
        )));
    }
    Ok(())
}

/// Which Werner construction a parameter set refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WernerFamily {
    Perfect,
    Quasi,
}

impl WernerFamily {
    pub fn label(&self) -> &'static str {
        match self {
            WernerFamily::Perfect => "perfect",
            WernerFamily::Quasi => "quasi",
        }
    }
}

/// Validated (family, a, r) triple; `r` is required (and positive) exactly
/// when the family is quasi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    family: WernerFamily,
    a: f64,
    r: Option<f64>,
}

impl WernerParams {
    pub fn perfect(a: f64) -> Result<Self> {
        check_mixing(a)?;
        Ok(Self {
            family: WernerFamily::Perfect,
            a,
            r: None,
        })
    }

    pub fn quasi(a: f64, r: f64) -> Result<Self> {
        check_mixing(a)?;
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "quasi family needs squeeze parameter r > 0, got {r}"
            )));
        }
        Ok(Self {
            family: WernerFamily::Quasi,
            a,
            r: Some(r),
        })
    }

    pub fn family(&self) -> WernerFamily {
        self.family
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn r(&self) -> Option<f64> {
        self.r
    }

    /// Builds the corresponding density matrix.
    pub fn density(&self) -> Result<DensityMatrix> {
        match self.family {
            WernerFamily::Perfect => perfect_werner(self.a),
            WernerFamily::Quasi => quasi_werner(self.a, self.r.expect("validated at construction")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::validate_density;
    use approx::assert_abs_diff_eq;

    // Frozen from the Fock-series oracle at n_max = 500 (agrees with the
    // closed form to < 1e-15 at these r).
    const M_07: f64 = 0.681851884509372;
    const ALPHA_07: f64 = 0.982574522216126;
    const BETA_07: f64 = 0.185869062223251;
    const N_PLUS_07: f64 = 0.584221792219689;

    #[test]
    fn overlap_endpoints() {
        assert_abs_diff_eq!(squeezed_overlap(0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(squeezed_overlap(0.7).unwrap(), M_07, epsilon = 1e-14);
        assert!(squeezed_overlap(20.0).unwrap() < 1e-8);
        assert!(squeezed_overlap(-0.1).is_err());
    }

    #[test]
    fn fock_overlap_matches_closed_form() {
        assert_abs_diff_eq!(fock_overlap(0.0, 10).unwrap(), 1.0, epsilon = 1e-15);
        for &r in &[0.7, 2.0] {
            let series = fock_overlap(r, DEFAULT_FOCK_TERMS).unwrap();
            let closed = squeezed_overlap(r).unwrap();
            assert!(
                (series - closed).abs() <= 1e-9,
                "r = {r}: |{series} - {closed}| > 1e-9"
            );
        }
        assert!(fock_overlap(0.5, 0).is_err());
    }

    #[test]
    fn family_values_at_r07() {
        let fam = SqueezedFamily::new(0.7).unwrap();
        assert_abs_diff_eq!(fam.overlap, M_07, epsilon = 1e-14);
        assert_abs_diff_eq!(fam.alpha, ALPHA_07, epsilon = 1e-14);
        assert_abs_diff_eq!(fam.beta, BETA_07, epsilon = 1e-14);
        assert_abs_diff_eq!(fam.bell_norm_plus, N_PLUS_07, epsilon = 1e-14);
        assert_abs_diff_eq!(
            fam.alpha * fam.alpha + fam.beta * fam.beta,
            1.0,
            epsilon = 1e-12
        );
        // Formula invariants.
        let m = fam.overlap;
        assert_abs_diff_eq!(
            fam.bell_norm_minus,
            1.0 / (2.0 * (1.0 - m * m)).sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            fam.cat_norm_plus,
            1.0 / (2.0 * (1.0 + m)).sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            fam.cat_norm_minus,
            1.0 / (2.0 * (1.0 - m)).sqrt(),
            epsilon = 1e-14
        );
    }

    // The pair normalization can be rebuilt from scratch: the squared norm
    // of |xi,xi> + |-xi,-xi> is 2(1 + <xi|-xi>^2) with the overlap taken
    // from the Fock series instead of the closed form.
    #[test]
    fn bell_norm_matches_fock_normalization() {
        for &r in &[0.4, 0.7, 1.3] {
            let fam = SqueezedFamily::new(r).unwrap();
            let overlap = fock_overlap(r, DEFAULT_FOCK_TERMS).unwrap();
            let rebuilt = 1.0 / (2.0 * (1.0 + overlap * overlap)).sqrt();
            assert_abs_diff_eq!(fam.bell_norm_plus, rebuilt, epsilon = 1e-12);
        }
    }

    #[test]
    fn coefficients_ordered_across_r() {
        for &r in &[0.05, 0.3, 0.7, 1.5, 3.0, 8.0] {
            let fam = SqueezedFamily::new(r).unwrap();
            assert!(fam.alpha >= fam.beta && fam.beta >= 0.0, "r = {r}");
            assert!(fam.overlap > 0.0 && fam.overlap <= 1.0);
        }
    }

    #[test]
    fn family_large_r_limit() {
        let fam = SqueezedFamily::new(10.0).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!(fam.alpha > inv_sqrt2 && fam.alpha < inv_sqrt2 + 1e-4);
        assert!(fam.beta < inv_sqrt2 && fam.beta > inv_sqrt2 - 1e-4);
        assert_abs_diff_eq!(fam.alpha * fam.beta, 0.5, epsilon = 1e-8);
    }

    #[test]
    fn family_rejects_r_zero() {
        assert!(SqueezedFamily::new(0.0).is_err());
        assert!(psi_plus(0.0).is_err());
    }

    #[test]
    fn psi_plus_amplitudes() {
        let psi = psi_plus(0.7).unwrap();
        assert_abs_diff_eq!(psi.amps()[0].re, ALPHA_07, epsilon = 1e-14);
        assert_abs_diff_eq!(psi.amps()[3].re, BETA_07, epsilon = 1e-14);
        assert_eq!(psi.amps()[1], Complex64::ZERO);
        assert_eq!(psi.amps()[2], Complex64::ZERO);

        // beta grows with r: the state approaches the balanced Bell form.
        let beta_25 = psi_plus(2.5).unwrap().amps()[3].re;
        assert_abs_diff_eq!(beta_25, 0.620854548636716, epsilon = 1e-13);
        assert!(beta_25 > BETA_07);
    }

    #[test]
    fn psi_minus_amplitudes() {
        let psi = psi_minus();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(psi.amps()[1].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.amps()[2].re, h, epsilon = 1e-15);
        let norm: f64 = psi.amps().iter().map(|a| a.norm_sqr()).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn werner_mixture_limits() {
        let id4 = DensityMatrix::maximally_mixed(4).unwrap();
        let at_zero = werner_mixture(&psi_plus(0.7).unwrap(), 0.0).unwrap();
        assert!(at_zero.matrix().max_abs_diff(id4.matrix()) < 1e-15);

        let at_one = werner_mixture(&psi_minus(), 1.0).unwrap();
        for (i, j, want) in [
            (1, 1, 0.5),
            (1, 2, 0.5),
            (2, 1, 0.5),
            (2, 2, 0.5),
            (0, 0, 0.0),
            (3, 3, 0.0),
        ] {
            assert_abs_diff_eq!(at_one.matrix().get(i, j).re, want, epsilon = 1e-15);
        }

        assert!(werner_mixture(&psi_minus(), 1.5).is_err());
        assert!(werner_mixture(&psi_minus(), -0.1).is_err());
    }

    #[test]
    fn quasi_matches_mixture_closed_form() {
        let direct = quasi_werner(0.7, 0.7).unwrap();
        let mixed = werner_mixture(&psi_plus(0.7).unwrap(), 0.7).unwrap();
        assert!(direct.matrix().max_abs_diff(mixed.matrix()) < 1e-12);
    }

    #[test]
    fn quasi_corner_is_alpha_beta() {
        // a * alpha * beta = tanh^2(r)/2 at a = 1.
        let rho = quasi_werner(1.0, 0.7).unwrap();
        assert_abs_diff_eq!(
            rho.matrix().get(0, 3).re,
            0.182630205008771,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            rho.matrix().get(0, 3).re,
            0.7f64.tanh().powi(2) / 2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn quasi_trace_one_and_valid() {
        for &a in &[0.0, 0.3, 1.0] {
            for &r in &[0.1, 0.7, 5.0] {
                let rho = quasi_werner(a, r).unwrap();
                assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-14);
                assert!(validate_density(rho.matrix()).passes());
            }
        }
        assert!(quasi_werner(0.5, 0.0).is_err());
        assert!(quasi_werner(1.1, 0.7).is_err());
    }

    #[test]
    fn perfect_endpoints() {
        let id4 = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(
            perfect_werner(0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(id4.matrix())
                < 1e-15
        );

        let pure = perfect_werner(1.0).unwrap();
        for (i, j, want) in [
            (0, 0, 0.5),
            (3, 3, 0.5),
            (0, 3, 0.5),
            (3, 0, 0.5),
            (1, 1, 0.0),
        ] {
            assert_abs_diff_eq!(pure.matrix().get(i, j).re, want, epsilon = 1e-15);
        }
        assert!(perfect_werner(-0.2).is_err());
    }

    #[test]
    fn perfect_matches_corner_bell_mixture() {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let corner_bell = PureStateVector::new([h, Complex64::ZERO, Complex64::ZERO, h]).unwrap();
        for &a in &[0.2, 0.6, 1.0] {
            let direct = perfect_werner(a).unwrap();
            let mixed = werner_mixture(&corner_bell, a).unwrap();
            assert!(direct.matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        }
    }

    #[test]
    fn werner_params_validation() {
        assert!(WernerParams::perfect(0.5).is_ok());
        assert!(WernerParams::perfect(1.2).is_err());
        assert!(WernerParams::quasi(0.5, 0.7).is_ok());
        assert!(WernerParams::quasi(0.5, 0.0).is_err());
        let p = WernerParams::quasi(0.3, 1.5).unwrap();
        let direct = quasi_werner(0.3, 1.5).unwrap();
        assert!(p.density().unwrap().matrix().max_abs_diff(direct.matrix()) < 1e-15);
    }
}
