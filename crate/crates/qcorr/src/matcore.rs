//! Dense complex-matrix kernel for one- and two-qubit operators.
//!
//! Covers exactly what the correlation measures need: products, adjoints,
//! Kronecker products, partial traces, density-matrix validation and
//! Hermitian eigenvalues. Eigenvalues come from a cyclic Jacobi sweep with
//! complex rotations; Hermitian matrices with X structure (only the diagonal
//! and anti-diagonal populated) take an analytic 2x2-block fast path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Two-qubit basis ordering used everywhere: `{|++>, |+->, |-+>, |-->}`,
/// i.e. row/column index `2*x + y` for subsystem states `x, y in {+, -}`.
/// Subsystem X is the first (slow) index, Y the second (fast) one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    X,
    Y,
}

/// Dense row-major complex matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. `dim` must be 2 or 4 and
    /// `entries` must have length `dim * dim`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::InvalidArgument(format!(
                "matrix dimension must be 2 or 4, got {dim}"
            )));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex64::ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        Ok(m)
    }

    /// Pauli y, the spin-flip generator.
    pub fn pauli_y() -> Self {
        let i = Complex64::I;
        Self {
            dim: 2,
            entries: vec![Complex64::ZERO, -i, i, Complex64::ZERO],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Standard matrix product. Errors if the dimensions differ.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self {
            dim: n,
            entries: vec![Complex64::ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {0}x{0} and {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise |self - rhs|; infinity on dimension mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        if self.dim != rhs.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest |a(i,j) - conj(a(j,i))| over all index pairs.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                defect = defect.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        defect
    }

    /// True when every entry off the diagonal and anti-diagonal is below
    /// [`tol::X_STRUCTURE_TOL`] in magnitude.
    pub fn is_x_structured(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                if i != j && i + j != n - 1 && self.get(i, j).norm() > tol::X_STRUCTURE_TOL {
                    return false;
                }
            }
        }
        true
    }
}

/// Kronecker product of two single-qubit operators, ordered X (x) Y so that
/// `(a (x) b)[2i+k][2j+l] = a[i][j] * b[k][l]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "tensor product takes two 2x2 factors, got {0}x{0} and {1}x{1}",
            a.dim(),
            b.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Validated two-qubit (or reduced single-qubit) density matrix: Hermitian,
/// unit trace and positive semidefinite within the crate tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps `mat`. Fails with a descriptive error on any
    /// violated invariant.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let report = validate_density(&mat);
        if let Some(reason) = report.failure() {
            return Err(Error::InvalidDensity(reason));
        }
        Ok(Self { mat })
    }

    /// Wraps without validation. Callers must uphold the invariants; used on
    /// hot paths where the matrix is valid by construction.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Ok(Self {
            mat: ComplexMatrix::identity(dim)?.scale(scale),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Diagnostic report produced by [`validate_density`].
#[derive(Debug, Clone, Copy)]
pub struct DensityReport {
    /// Largest |a(i,j) - conj(a(j,i))|.
    pub hermiticity_defect: f64,
    /// |Re(trace) - 1|.
    pub trace_defect: f64,
    /// |Im(trace)|.
    pub trace_imag: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
}

impl DensityReport {
    pub fn passes(&self) -> bool {
        self.failure().is_none()
    }

    /// Human-readable reason for the first violated invariant, if any.
    pub fn failure(&self) -> Option<String> {
        if self.hermiticity_defect > tol::HERMITICITY_TOL {
            return Some(format!(
                "hermiticity defect {:.3e} exceeds {:.1e}",
                self.hermiticity_defect,
                tol::HERMITICITY_TOL
            ));
        }
        if self.trace_defect > tol::TRACE_TOL || self.trace_imag > tol::TRACE_TOL {
            return Some(format!(
                "trace defect {:.3e} (imag {:.3e}) exceeds {:.1e}",
                self.trace_defect,
                self.trace_imag,
                tol::TRACE_TOL
            ));
        }
        // A NaN from a failed eigensolve must also fail.
        if self.min_eigenvalue.is_nan() || self.min_eigenvalue < tol::EIGENVALUE_FLOOR {
            return Some(format!(
                "eigenvalue {:.3e} below floor {:.1e}",
                self.min_eigenvalue,
                tol::EIGENVALUE_FLOOR
            ));
        }
        None
    }
}

/// Measures how far `mat` is from being a density matrix. Diagnostic only:
/// never errors. The eigenvalue check runs on the Hermitian part
/// `(mat + mat^dagger)/2` so it stays meaningful for slightly asymmetric input.
pub fn validate_density(mat: &ComplexMatrix) -> DensityReport {
    let hermiticity_defect = mat.hermiticity_defect();
    let trace = mat.trace();
    let hermitian_part = mat
        .add(&mat.adjoint())
        .expect("same dims")
        .scale(Complex64::new(0.5, 0.0));
    let min_eigenvalue = match hermitian_eigenvalues(&hermitian_part) {
        Ok(evs) => evs.last().copied().unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    };
    DensityReport {
        hermiticity_defect,
        trace_defect: (trace.re - 1.0).abs(),
        trace_imag: trace.im.abs(),
        min_eigenvalue,
    }
}

/// Traces out one subsystem of a two-qubit state, keeping `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "partial trace needs a 4x4 state, got {0}x{0}",
            rho.dim()
        )));
    }
    Ok(DensityMatrix::new_unchecked(partial_trace_raw(
        rho.matrix(),
        keep,
    )))
}

/// Partial trace on a raw matrix; trace is preserved but no density-matrix
/// invariants are assumed or checked.
pub(crate) fn partial_trace_raw(mat: &ComplexMatrix, keep: Subsystem) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2).expect("dim 2 is valid");
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::ZERO;
            for t in 0..2 {
                let (row, col) = match keep {
                    Subsystem::X => (2 * i + t, 2 * j + t),
                    Subsystem::Y => (2 * t + i, 2 * t + j),
                };
                acc += mat.get(row, col);
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Eigenvalues of a Hermitian 2x2 or 4x4 matrix, descending.
///
/// X-structured input takes the analytic block fast path; everything else
/// goes through the cyclic Jacobi sweep. Input must be Hermitian within
/// [`tol::HERMITIAN_INPUT_TOL`].
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    if h.dim() == 2 {
        let (lo, hi) = eig2(h.get(0, 0).re, h.get(1, 1).re, h.get(0, 1));
        return Ok(vec![hi, lo]);
    }
    if h.is_x_structured() {
        return Ok(x_state_eigenvalues(h));
    }
    let (mut values, _) = jacobi_eigen(h, false)?;
    values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    Ok(values)
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let defect = h.hermiticity_defect();
    if defect > tol::HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian {
            defect,
            tol: tol::HERMITIAN_INPUT_TOL,
        });
    }
    Ok(())
}

/// Eigenvalues of the Hermitian 2x2 `[[a, b], [conj(b), d]]`, ascending.
#[inline]
pub(crate) fn eig2(a: f64, d: f64, b: Complex64) -> (f64, f64) {
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mid - rad, mid + rad)
}

/// Analytic eigenvalues of a Hermitian X-structured 4x4 matrix, descending.
/// The X pattern block-diagonalizes into the corner pair (0,3) and the
/// middle pair (1,2).
pub(crate) fn x_state_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let (c_lo, c_hi) = eig2(h.get(0, 0).re, h.get(3, 3).re, h.get(0, 3));
    let (m_lo, m_hi) = eig2(h.get(1, 1).re, h.get(2, 2).re, h.get(1, 2));
    let mut evs = vec![c_hi, c_lo, m_hi, m_lo];
    evs.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    evs
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation phase-aligns the pivot and applies a real Givens rotation,
/// so the working matrix stays Hermitian with a real diagonal. Returns the
/// unsorted diagonal and, when `with_vectors` is set, the accumulated unitary
/// whose columns are eigenvectors (`h = v * diag * v^dagger`).
pub(crate) fn jacobi_eigen(
    h: &ComplexMatrix,
    with_vectors: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = if with_vectors {
        Some(ComplexMatrix::identity(n)?)
    } else {
        None
    };
    let scale = a.frobenius_norm().max(1.0);
    let target = tol::JACOBI_OFF_TOL * scale;

    for _sweep in 0..tol::JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= target {
            let diag = (0..n).map(|i| a.get(i, i).re).collect();
            return Ok((diag, v));
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let abs = apq.norm();
                if abs <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / abs;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // tan of the rotation angle from cot(2*angle), smaller root
                // for stability.
                let tau = (app - aqq) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = s * phase; // s * e^{i phi}
                let spc = s * phase.conj();

                // Column update: A <- A G with G[p][p]=c, G[p][q]=s*e^{i phi},
                // G[q][p]=-s*e^{-i phi}, G[q][q]=c.
                for row in 0..n {
                    let arp = a.get(row, p);
                    let arq = a.get(row, q);
                    a.set(row, p, c * arp - spc * arq);
                    a.set(row, q, sp * arp + c * arq);
                }
                // Row update: A <- G^dagger A.
                for col in 0..n {
                    let apc = a.get(p, col);
                    let aqc = a.get(q, col);
                    a.set(p, col, c * apc - sp * aqc);
                    a.set(q, col, spc * apc + c * aqc);
                }
                // Pin the zeroed pivot and the real diagonal against roundoff.
                a.set(p, q, Complex64::ZERO);
                a.set(q, p, Complex64::ZERO);
                let app_new = a.get(p, p).re;
                let aqq_new = a.get(q, q).re;
                a.set(p, p, Complex64::new(app_new, 0.0));
                a.set(q, q, Complex64::new(aqq_new, 0.0));

                if let Some(vm) = v.as_mut() {
                    for row in 0..n {
                        let vrp = vm.get(row, p);
                        let vrq = vm.get(row, q);
                        vm.set(row, p, c * vrp - spc * vrq);
                        vm.set(row, q, sp * vrp + c * vrq);
                    }
                }
            }
        }
    }

    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += a.get(p, q).norm_sqr();
        }
    }
    Err(Error::NoConvergence {
        sweeps: tol::JACOBI_MAX_SWEEPS,
        off: off.sqrt(),
    })
}

/// Singular values of a square complex matrix, descending, via one-sided
/// Jacobi: the same plane rotations as [`jacobi_eigen`] applied from the
/// right until the columns are orthogonal, whose norms are then the singular
/// values. Unlike taking square roots of `b b^dagger` eigenvalues, small
/// singular values come out with full absolute accuracy instead of the
/// sqrt-of-roundoff floor near 1e-8.
pub(crate) fn one_sided_singular_values(b: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = b.dim();
    // cols[j][row]: work on columns directly.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| b.get(i, j)).collect())
        .collect();
    let scale = b.frobenius_norm().max(1.0);
    let target = tol::JACOBI_OFF_TOL * scale * scale;

    let gram = |cp: &[Complex64], cq: &[Complex64]| -> Complex64 {
        cp.iter().zip(cq).map(|(x, y)| x.conj() * y).sum()
    };

    for _sweep in 0..tol::JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += gram(&cols[p], &cols[q]).norm_sqr();
            }
        }
        if off.sqrt() <= target {
            let mut sigmas: Vec<f64> = cols
                .iter()
                .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                .collect();
            sigmas.sort_by(|a, b| b.partial_cmp(a).expect("norms are finite"));
            return Ok(sigmas);
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = gram(&cols[p], &cols[q]);
                let abs = apq.norm();
                if abs <= f64::MIN_POSITIVE {
                    continue;
                }
                let app: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let phase = apq / abs;
                let tau = (app - aqq) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = s * phase;
                let spc = s * phase.conj();
                let (left, right) = cols.split_at_mut(q);
                for (vp, vq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (old_p, old_q) = (*vp, *vq);
                    *vp = c * old_p - spc * old_q;
                    *vq = sp * old_p + c * old_q;
                }
            }
        }
    }

    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += gram(&cols[p], &cols[q]).norm_sqr();
        }
    }
    Err(Error::NoConvergence {
        sweeps: tol::JACOBI_MAX_SWEEPS,
        off: off.sqrt(),
    })
}

/// Positive-semidefinite square root of a Hermitian matrix via the Jacobi
/// eigendecomposition. Eigenvalues in `[EIGENVALUE_FLOOR, 0)` are clamped to
/// zero; anything more negative is an error.
pub(crate) fn hermitian_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_hermitian(h)?;
    let n = h.dim();
    let (values, vectors) = jacobi_eigen(h, true)?;
    let v = vectors.expect("vectors requested");
    let mut roots = Vec::with_capacity(n);
    for &lambda in &values {
        if lambda < tol::EIGENVALUE_FLOOR {
            return Err(Error::Numerical(format!(
                "cannot take PSD square root: eigenvalue {lambda:.3e} below floor"
            )));
        }
        roots.push(lambda.max(0.0).sqrt());
    }
    // v * diag(roots) * v^dagger
    let mut out = ComplexMatrix::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for (k, &root) in roots.iter().enumerate() {
                acc += v.get(i, k) * root * v.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}
