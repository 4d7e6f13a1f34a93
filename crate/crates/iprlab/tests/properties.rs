//! Randomized invariant checks across the public surface.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use iprlab::graphgen::{generate_regular, GraphSpec};
use iprlab::iprstats::{graph_ipr_summary, ipr, ipr_histogram, participation_ratio};
use iprlab::spectra::{eigendecompose, laplacian, DEFAULT_EIGEN_TOL};
use iprlab::sphere::{
    folland_integral, q_matrix, sample_subsphere, sphere_average, ExponentVector,
};

fn normalized_vector() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, 2..40)
        .prop_filter("needs nonzero norm", |v| {
            v.iter().map(|c| c * c).sum::<f64>() > 1e-6
        })
        .prop_map(|v| {
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.into_iter().map(|c| c / norm).collect()
        })
}

fn small_cell() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![
        Just((8, 3)),
        Just((10, 3)),
        Just((12, 3)),
        Just((9, 4)),
        Just((12, 4)),
        Just((11, 6)),
    ]
}

proptest! {
    #[test]
    fn ipr_is_bounded_and_inverse_of_participation(v in normalized_vector()) {
        let n = v.len() as f64;
        let i = ipr(&v).unwrap();
        let p = participation_ratio(&v).unwrap();
        prop_assert!(i >= 1.0 - 1e-9 && i <= n + 1e-9);
        prop_assert!((p * i - 1.0).abs() < 1e-9);
    }

    #[test]
    fn monomial_averages_follow_parity(exps in proptest::collection::vec(0u64..4, 1..6)) {
        let a = ExponentVector::new(exps.clone());
        let integral = folland_integral(&a);
        if exps.iter().any(|e| e % 2 == 1) {
            prop_assert!(integral.rational.is_zero());
        } else {
            prop_assert!(integral.rational.is_positive());
            let avg = sphere_average(&a);
            prop_assert!(avg.is_positive());
            prop_assert!(avg <= num_rational::BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn laplacian_spectra_are_bounded_with_fixed_trace((n, z) in small_cell(), seed in any::<u64>()) {
        let g = generate_regular(&GraphSpec::new(n, z, seed)).unwrap();
        let d = eigendecompose(&laplacian(&g), DEFAULT_EIGEN_TOL).unwrap();
        let trace: f64 = d.eigenvalues().iter().sum();
        prop_assert!((trace - (n * z) as f64).abs() < 1e-8);
        for &eig in d.eigenvalues() {
            prop_assert!(eig > -1e-10 && eig < 2.0 * z as f64 + 1e-10);
        }
    }

    #[test]
    fn subsphere_samples_are_deterministic_and_constrained(n in 2usize..30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_subsphere(n, &mut rng).unwrap();
        let mut rng2 = ChaCha8Rng::seed_from_u64(seed);
        let q = sample_subsphere(n, &mut rng2).unwrap();
        prop_assert_eq!(p.coords(), q.coords());
        let sum: f64 = p.coords().iter().sum();
        let norm2: f64 = p.coords().iter().map(|c| c * c).sum();
        prop_assert!(sum.abs() < 1e-10);
        prop_assert!((norm2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_matrix_is_orthogonal(n in 2usize..60) {
        let q = q_matrix(n).unwrap();
        for i in 0..n {
            for j in i..n {
                let dot: f64 = (0..n).map(|k| q[i * n + k] * q[j * n + k]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn histogram_mass_never_exceeds_one((n, z) in small_cell(), seed in any::<u64>()) {
        let g = generate_regular(&GraphSpec::new(n, z, seed)).unwrap();
        let d = eigendecompose(&laplacian(&g), DEFAULT_EIGEN_TOL).unwrap();
        let s = graph_ipr_summary(&d).unwrap();
        let h = ipr_histogram(std::slice::from_ref(&s), 24, (1.0, n as f64)).unwrap();
        let total: f64 = h.masses.iter().sum();
        prop_assert!(total <= 1.0 + 1e-9);
        prop_assert!(total > 0.0);
    }
}
