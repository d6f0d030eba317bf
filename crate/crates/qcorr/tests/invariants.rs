//! Cross-module invariants and property tests: oracle equivalences, spectral
//! identities and the optimizer soundness guarantees.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use qcorr::{
    analyze, concurrence, concurrence_x_state, conditional_entropy_after_measurement, fock_overlap,
    hermitian_eigenvalues, measurement_projectors, minimize_conditional_entropy, partial_trace,
    perfect_werner, psi_plus, quantum_discord, quasi_werner, squeezed_overlap, tensor_product,
    validate_density, werner_mixture, ComplexMatrix, DensityMatrix, MeasurementBasis,
    OptimizerOpts, Subsystem,
};

fn hermitian_from(re: &[f64], im: &[f64]) -> ComplexMatrix {
    let raw: Vec<Complex64> = re
        .iter()
        .zip(im)
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    let m = ComplexMatrix::new(4, raw).unwrap();
    m.add(&m.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0))
}

proptest! {
    // Eigenvalues of a Hermitian matrix sum to its trace.
    #[test]
    fn eigenvalue_sum_equals_trace(
        re in prop::collection::vec(-1.0..1.0f64, 16),
        im in prop::collection::vec(-1.0..1.0f64, 16),
    ) {
        let h = hermitian_from(&re, &im);
        let evs = hermitian_eigenvalues(&h).unwrap();
        let sum: f64 = evs.iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10);
    }

    // Conjugating by a permutation matrix leaves the sorted spectrum alone.
    #[test]
    fn eigenvalues_stable_under_permutation(
        re in prop::collection::vec(-1.0..1.0f64, 16),
        im in prop::collection::vec(-1.0..1.0f64, 16),
        perm_seed in 0..24usize,
    ) {
        let h = hermitian_from(&re, &im);
        let mut order = [0usize, 1, 2, 3];
        // Lehmer-style decode of the permutation index.
        let mut k = perm_seed;
        for i in 0..4 {
            let j = i + k % (4 - i);
            order.swap(i, j);
            k /= 4 - i;
        }
        let mut permuted = ComplexMatrix::zeros(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                permuted.set(order[i], order[j], h.get(i, j));
            }
        }
        let a = hermitian_eigenvalues(&h).unwrap();
        let b = hermitian_eigenvalues(&permuted).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    // Matrix products are associative up to roundoff.
    #[test]
    fn matmul_associative(
        re_a in prop::collection::vec(-1.0..1.0f64, 16),
        re_b in prop::collection::vec(-1.0..1.0f64, 16),
        re_c in prop::collection::vec(-1.0..1.0f64, 16),
        im_a in prop::collection::vec(-1.0..1.0f64, 16),
    ) {
        let a = ComplexMatrix::new(4, re_a.iter().zip(&im_a).map(|(&x, &y)| Complex64::new(x, y)).collect()).unwrap();
        let b = ComplexMatrix::from_real(4, &re_b).unwrap();
        let c = ComplexMatrix::from_real(4, &re_c).unwrap();
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    // Tracing out the second factor of a product state recovers the first.
    #[test]
    fn partial_trace_inverts_tensor_product(pa in 0.0..1.0f64, pb in 0.0..1.0f64, ca in -0.5..0.5f64, cb in -0.5..0.5f64) {
        // One-parameter family of valid 1-qubit states with bounded coherence.
        let qubit = |p: f64, c: f64| {
            let c = c * (p * (1.0 - p)).sqrt() * 2.0 * 0.999;
            ComplexMatrix::new(2, vec![
                Complex64::new(p, 0.0),
                Complex64::new(c / 2.0, c / 4.0),
                Complex64::new(c / 2.0, -c / 4.0),
                Complex64::new(1.0 - p, 0.0),
            ]).unwrap()
        };
        let rho_a = qubit(pa, ca);
        let rho_b = qubit(pb, cb);
        let joint = DensityMatrix::new(tensor_product(&rho_a, &rho_b).unwrap());
        prop_assume!(joint.is_ok());
        let joint = joint.unwrap();
        let kept = partial_trace(&joint, Subsystem::X).unwrap();
        prop_assert!(kept.matrix().max_abs_diff(&rho_a) < 1e-12);
        let kept_b = partial_trace(&joint, Subsystem::Y).unwrap();
        prop_assert!(kept_b.matrix().max_abs_diff(&rho_b) < 1e-12);
    }

    // Projector pairs always resolve the identity.
    #[test]
    fn projectors_complete(theta in 0.0..PI, phi in 0.0..(2.0 * PI - 1e-12)) {
        let basis = MeasurementBasis::new(theta, phi).unwrap();
        let (p1, p2) = measurement_projectors(&basis);
        let sum = p1.add(&p2).unwrap();
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-12);
        let idem1 = p1.matmul(&p1).unwrap();
        let idem2 = p2.matmul(&p2).unwrap();
        prop_assert!(idem1.max_abs_diff(&p1) < 1e-12);
        prop_assert!(idem2.max_abs_diff(&p2) < 1e-12);
    }
}

// Fock-series overlap and the closed form agree to 1e-9 over the documented
// convergence range.
#[test]
fn fock_oracle_equivalence() {
    let mut r = 0.1;
    while r < 2.0 {
        let series = fock_overlap(r, 500).unwrap();
        let closed = squeezed_overlap(r).unwrap();
        assert!(
            (series - closed).abs() <= 1e-9,
            "r = {r}: residual {}",
            (series - closed).abs()
        );
        r += 0.2;
    }
}

// Tracing Y out of the pure psi+ projector leaves diag(alpha^2, beta^2).
#[test]
fn psi_plus_marginal_is_diagonal() {
    for &r in &[0.7, 2.5] {
        let fam = qcorr::SqueezedFamily::new(r).unwrap();
        let rho = quasi_werner(1.0, r).unwrap();
        let reduced = partial_trace(&rho, Subsystem::X).unwrap();
        let expected =
            ComplexMatrix::from_real(2, &[fam.alpha * fam.alpha, 0.0, 0.0, fam.beta * fam.beta])
                .unwrap();
        assert!(reduced.matrix().max_abs_diff(&expected) < 1e-12, "r = {r}");
        // Trace is preserved by the reduction.
        assert!((reduced.matrix().trace().re - 1.0).abs() < 1e-12);
    }
}

// The Werner mixture over psi+ reproduces the closed-form quasi matrix.
#[test]
fn mixture_matches_quasi_closed_form() {
    for ia in 0..=10 {
        let a = ia as f64 / 10.0;
        for &r in &[0.1, 0.5, 0.7, 1.0, 2.0, 3.0, 5.0] {
            let direct = quasi_werner(a, r).unwrap();
            let mixed = werner_mixture(&psi_plus(r).unwrap(), a).unwrap();
            assert!(
                direct.matrix().max_abs_diff(mixed.matrix()) < 1e-12,
                "mismatch at a = {a}, r = {r}"
            );
        }
    }
}

// Both families produce valid density matrices across the parameter grid,
// and keep the X-structure zero pattern.
#[test]
fn werner_grid_is_valid_and_x_structured() {
    for ia in 0..=10 {
        let a = ia as f64 / 10.0;
        let perfect = perfect_werner(a).unwrap();
        assert!(validate_density(perfect.matrix()).passes());
        assert!(perfect.matrix().is_x_structured());
        for &r in &[0.05, 0.5, 0.7, 1.0, 2.5, 5.0] {
            let quasi = quasi_werner(a, r).unwrap();
            assert!(
                validate_density(quasi.matrix()).passes(),
                "a = {a}, r = {r}"
            );
            assert!(quasi.matrix().is_x_structured());
            // Inner anti-diagonal entries stay exactly zero for this family.
            assert_eq!(quasi.matrix().get(1, 2), Complex64::ZERO);
            assert_eq!(quasi.matrix().get(2, 1), Complex64::ZERO);
        }
    }
}

// Entrywise convergence of the quasi matrix to the corner-Bell form, with
// the analytic envelope 2M/(1+M^2).
#[test]
fn quasi_converges_to_perfect_with_analytic_bound() {
    for ia in 0..=10 {
        let a = ia as f64 / 10.0;
        for &r in &[0.5, 1.0, 2.0, 3.0, 5.0] {
            let m = squeezed_overlap(r).unwrap();
            let bound = 2.0 * m / (1.0 + m * m);
            let diff = quasi_werner(a, r)
                .unwrap()
                .matrix()
                .max_abs_diff(perfect_werner(a).unwrap().matrix());
            assert!(
                diff <= bound + 1e-15,
                "a = {a}, r = {r}: diff {diff} exceeds bound {bound}"
            );
        }
    }
}

// p1 + p2 = 1 for measurement outcomes on valid states, over many bases.
#[test]
fn outcome_probabilities_resolve_unity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let states = [
        DensityMatrix::maximally_mixed(4).unwrap(),
        quasi_werner(0.7, 0.7).unwrap(),
        perfect_werner(0.4).unwrap(),
    ];
    for _ in 0..1000 {
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let basis = MeasurementBasis::new(theta, phi).unwrap();
        for state in &states {
            let (_, p) = conditional_entropy_after_measurement(state, &basis).unwrap();
            assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
            assert!(p[0] >= -1e-14 && p[1] >= -1e-14);
        }
    }
}

// The refined minimum never sits above any sampled basis value.
#[test]
fn optimizer_soundness_against_random_bases() {
    let opts = OptimizerOpts::default();
    let states = [
        perfect_werner(0.3).unwrap(),
        perfect_werner(0.8).unwrap(),
        quasi_werner(0.4, 0.7).unwrap(),
        quasi_werner(0.8, 0.7).unwrap(),
        quasi_werner(0.6, 2.5).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for state in &states {
        let min = minimize_conditional_entropy(state, &opts).unwrap();
        for _ in 0..10_000 {
            let theta = rng.gen_range(0.0..PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let basis = MeasurementBasis::new(theta, phi).unwrap();
            let (s, _) = conditional_entropy_after_measurement(state, &basis).unwrap();
            assert!(
                min.s_min <= s + 1e-9,
                "sampled basis beats the optimizer: {s} < {}",
                min.s_min
            );
        }
    }
}

// I = J + D as computed, across both families.
#[test]
fn discord_decomposition_identity() {
    let opts = OptimizerOpts::default();
    for ia in 0..=5 {
        let a = ia as f64 / 5.0;
        for rho in [perfect_werner(a).unwrap(), quasi_werner(a, 1.3).unwrap()] {
            let report = quantum_discord(&rho, &opts).unwrap();
            assert!(
                (report.discord + report.classical_correlation - report.mutual_information).abs()
                    < 1e-9
            );
            assert!(report.discord >= 0.0);
            assert!(report.mutual_information >= -1e-10);
        }
    }
}

// Spectral and closed-form concurrence agree over the whole grid. The pure
// and near-pure cells matter most here: they are where a sloppy spectral
// path loses half its digits to rank deficiency.
#[test]
fn concurrence_dual_path_grid() {
    for ia in 0..=20 {
        let a = ia as f64 / 20.0;
        let perfect = perfect_werner(a).unwrap();
        let diff = (concurrence(&perfect).unwrap() - concurrence_x_state(&perfect).unwrap()).abs();
        assert!(diff < 1e-10, "perfect a = {a}: {diff}");
        for &r in &[0.3, 0.7, 1.5, 2.5, 3.0, 5.0] {
            let quasi = quasi_werner(a, r).unwrap();
            let diff = (concurrence(&quasi).unwrap() - concurrence_x_state(&quasi).unwrap()).abs();
            assert!(diff < 1e-10, "quasi a = {a}, r = {r}: {diff}");
        }
    }
}

// The corner-Bell mixture crosses from separable to entangled at a = 1/3
// with the piecewise-linear closed form (3a-1)/2.
#[test]
fn perfect_concurrence_threshold() {
    for ia in 0..=100 {
        let a = ia as f64 / 100.0;
        let c = concurrence(&perfect_werner(a).unwrap()).unwrap();
        let expected = (0.0f64).max((3.0 * a - 1.0) / 2.0);
        assert!(
            (c - expected).abs() < 1e-12,
            "a = {a}: concurrence {c} vs {expected}"
        );
    }
}

// Discord and concurrence are nondecreasing in the mixing parameter at
// fixed squeeze.
#[test]
fn monotone_in_mixing_at_fixed_r() {
    let opts = OptimizerOpts::default();
    let mut last_d = -1.0;
    let mut last_c = -1.0;
    for ia in 0..=20 {
        let a = ia as f64 / 20.0;
        let report = analyze(&quasi_werner(a, 0.7).unwrap(), &opts).unwrap();
        assert!(report.discord >= last_d - 1e-9, "discord dips at a = {a}");
        assert!(
            report.concurrence >= last_c - 1e-9,
            "concurrence dips at a = {a}"
        );
        last_d = report.discord;
        last_c = report.concurrence;
    }
}

fn random_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let t = rng.gen_range(0.0..PI);
    let p = rng.gen_range(0.0..2.0 * PI);
    let l = rng.gen_range(0.0..2.0 * PI);
    ComplexMatrix::new(
        2,
        vec![
            Complex64::new(t.cos(), 0.0),
            -Complex64::from_polar(t.sin(), l),
            Complex64::from_polar(t.sin(), p),
            Complex64::from_polar(t.cos(), p + l),
        ],
    )
    .unwrap()
}

fn rotate_locally(rho: &DensityMatrix, u: &ComplexMatrix, v: &ComplexMatrix) -> DensityMatrix {
    let uv = tensor_product(u, v).unwrap();
    let rotated = uv
        .matmul(rho.matrix())
        .unwrap()
        .matmul(&uv.adjoint())
        .unwrap();
    DensityMatrix::new(rotated).expect("unitary conjugation preserves validity")
}

// Discord and concurrence are invariant under local unitaries; this also
// absorbs the corner-versus-center placement ambiguity of the pure part.
#[test]
fn local_unitary_invariance() {
    let opts = OptimizerOpts::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let states = [
        perfect_werner(0.6).unwrap(),
        quasi_werner(0.8, 0.7).unwrap(),
        quasi_werner(0.5, 2.5).unwrap(),
    ];
    for state in &states {
        let base = analyze(state, &opts).unwrap();
        for _ in 0..4 {
            let u = random_unitary(&mut rng);
            let v = random_unitary(&mut rng);
            // Unitarity guard on the parameterization itself.
            let uu = u.matmul(&u.adjoint()).unwrap();
            assert!(uu.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-12);

            let rotated = rotate_locally(state, &u, &v);
            let report = analyze(&rotated, &opts).unwrap();
            assert!(
                (report.discord - base.discord).abs() < 1e-6,
                "discord moved by {}",
                (report.discord - base.discord).abs()
            );
            assert!(
                (report.concurrence - base.concurrence).abs() < 1e-6,
                "concurrence moved by {}",
                (report.concurrence - base.concurrence).abs()
            );
        }
    }
}

// These exchange-symmetric states give the same discord whichever side is
// measured.
#[test]
fn measured_side_symmetry() {
    let measure_x = OptimizerOpts {
        measured: Subsystem::X,
        ..OptimizerOpts::default()
    };
    let measure_y = OptimizerOpts::default();
    for (a, r) in [(0.4, 0.7), (0.8, 0.7), (0.6, 2.5)] {
        let rho = quasi_werner(a, r).unwrap();
        let dx = quantum_discord(&rho, &measure_x).unwrap().discord;
        let dy = quantum_discord(&rho, &measure_y).unwrap().discord;
        assert!((dx - dy).abs() < 1e-6, "a = {a}, r = {r}: {dx} vs {dy}");
    }
}
