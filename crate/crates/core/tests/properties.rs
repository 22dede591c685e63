use krawtchouk::as_oscillator::{
    build_as_ladder, build_h_as, krawtchouk_function_matrix, relation_check, AsGrid,
};
use krawtchouk::coherent::{
    aligned_distance, displacement_state, extract_coefficients, phase_basis, phase_coherent_state,
    spin_state, RootSumEvaluator,
};
use krawtchouk::numerics::max_abs_diff;
use krawtchouk::oscillator::{
    build_ladder, build_tilde_operators, commutator_check, spectrum_check,
    symmetrized_ladder_hamiltonian,
};
use krawtchouk::polynomials::{krawtchouk, orthogonality_gram, recurrence_agreement, weight};
use krawtchouk::{Complex64, ComplexMatrix, Params, RealMatrix};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (0.02f64..0.98, 1usize..=24).prop_map(|(p, n)| Params::new(p, n).unwrap())
}

fn label() -> impl Strategy<Value = Complex64> {
    (0.0f64..2.5, -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weights_sum_to_one(pr in params()) {
        let total: f64 = (0..pr.dim()).map(|x| weight(x, &pr).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn self_duality_on_lattice(pr in params(), a in 0usize..25, b in 0usize..25) {
        let (n, x) = (a % pr.dim(), b % pr.dim());
        let k1 = krawtchouk(n, x as f64, &pr).unwrap();
        let k2 = krawtchouk(x, n as f64, &pr).unwrap();
        prop_assert!((k1 - k2).abs() <= 1e-14 * k1.abs().max(1.0));
    }

    #[test]
    fn gram_and_dual_are_identity(pr in params()) {
        let (g, d) = orthogonality_gram(&pr).unwrap();
        let eye = RealMatrix::identity(pr.dim());
        prop_assert!(max_abs_diff(&g, &eye) < 1e-10);
        prop_assert!(max_abs_diff(&d, &eye) < 1e-10);
        prop_assert!(recurrence_agreement(&pr).unwrap() < 1e-9);
    }

    #[test]
    fn oscillator_structure(pr in params()) {
        let t = build_tilde_operators(&pr).unwrap();
        let l = build_ladder(&pr).unwrap();
        prop_assert!(max_abs_diff(t.h.matrix(), &symmetrized_ladder_hamiltonian(&l)) < 1e-10);
        prop_assert!(spectrum_check(&pr).unwrap().max_deviation < 1e-10);
        let c = commutator_check(&pr).unwrap();
        prop_assert!(c.deviation < 1e-12 && c.off_diagonal_max < 1e-12);
        let other = build_ladder(&Params::new(1.0 - pr.p(), pr.n()).unwrap()).unwrap();
        prop_assert_eq!(l.raise.matrix(), other.raise.matrix());
    }

    #[test]
    fn grid_oscillator(pr in params()) {
        let g = AsGrid::new(&pr);
        for (j, &xi) in g.nodes.iter().enumerate() {
            prop_assert!((g.index_of(xi, &pr) - j as f64).abs() < 1e-12);
        }
        let h = build_h_as(&pr).unwrap();
        prop_assert!(h.matrix().hermiticity_defect() < 1e-11);
        let l = build_as_ladder(&pr).unwrap();
        let (r, z) = (l.raise.matrix(), l.zero.matrix());
        prop_assert!(max_abs_diff(&z.commutator(r), r) < 1e-10);
        let shift = ComplexMatrix::identity(pr.dim()).scale(Complex64::new((pr.n() as f64 + 1.0) / 2.0, 0.0));
        prop_assert!(max_abs_diff(h.matrix(), &(z + &shift)) < 1e-10);
        let psi = krawtchouk_function_matrix(&pr).unwrap();
        prop_assert!(max_abs_diff(&(&psi * &psi.adjoint()), &RealMatrix::identity(pr.dim())) < 1e-10);
        let rel = relation_check(&pr).unwrap();
        prop_assert!(rel.unitarity < 1e-10 && rel.matrix < 1e-8);
    }

    #[test]
    fn displacement_norm_and_covariance(pr in params(), z in label(), phi in -3.0f64..3.0) {
        let a = displacement_state(z, &pr).unwrap();
        prop_assert!((a.vector.norm() - 1.0).abs() < 1e-12);
        let b = displacement_state(z * Complex64::from_polar(1.0, phi), &pr).unwrap();
        for (l, (x, y)) in a.amplitudes().iter().zip(b.amplitudes()).enumerate() {
            prop_assert!((x * Complex64::from_polar(1.0, phi * l as f64) - y).norm() < 1e-10);
        }
    }

    #[test]
    fn root_sum_matches_displacement(pr in params(), z in label()) {
        let ev = RootSumEvaluator::new(&pr).unwrap();
        let e = ev.state(z).unwrap();
        let d = displacement_state(z, &pr).unwrap();
        prop_assert!(aligned_distance(e.amplitudes(), d.amplitudes()).unwrap() < 1e-7);
    }

    #[test]
    fn expansion_coefficients_do_not_depend_on_z(pr in params(), z1 in label(), z2 in label()) {
        prop_assume!(z1.norm() > 0.05 && z2.norm() > 0.05);
        let a = extract_coefficients(z1, &pr, 8).unwrap();
        let b = extract_coefficients(z2, &pr, 8).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            for (x, y) in ra.iter().zip(rb) {
                prop_assert!((x - y).norm() < 1e-9 * x.norm().max(1.0));
            }
        }
    }

    #[test]
    fn other_families_normalized(pr in params(), z in label(), theta0 in -3.0f64..3.0) {
        prop_assert!((spin_state(z, &pr).unwrap().vector.norm() - 1.0).abs() < 1e-12);
        prop_assert!((phase_coherent_state(z, theta0, &pr).unwrap().vector.norm() - 1.0).abs() < 1e-12);
        let b = phase_basis(theta0, &pr);
        for (i, s) in b.states.iter().enumerate() {
            for t in &b.states[i + 1..] {
                prop_assert!(s.inner(t).unwrap().norm() < 1e-12);
            }
        }
    }
}
