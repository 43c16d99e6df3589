use dmsec::beamformers::{an_beamformer, constraint_matrix, mrt_cm, pa_phase, random_phases, MrtVariant};
use dmsec::channel::{steering_vector, SteeringConfig};
use dmsec::linalg::{null_space_projector, CMatrix};
use dmsec::metrics::{cascaded_power_bob, secrecy_rate, PowerBudget};
use dmsec::oracle::random_channel_set;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize, entries: &[(f64, f64)]) -> CMatrix {
    CMatrix::from_fn(rows, cols, |i, j| {
        let (re, im) = entries[i * cols + j];
        Complex64::new(re, im)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_is_hermitian_idempotent_and_annihilates(
        rows in 1usize..4,
        cols in 1usize..7,
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24),
    ) {
        let p = matrix(rows, cols, &entries);
        let t = null_space_projector(&p).unwrap();
        prop_assert!((&t - t.adjoint()).norm() <= 1e-10);
        prop_assert!((&t * &t - &t).norm() <= 1e-9);
        prop_assert!((&p * &t).norm() <= 1e-9 * p.norm().max(1.0));
    }

    #[test]
    fn secrecy_rate_is_nonnegative_and_monotone(gb in 0.0f64..1e6, ge in 0.0f64..1e6, bump in 0.0f64..10.0) {
        let base = secrecy_rate(gb, ge).unwrap().secrecy_rate;
        prop_assert!(base >= 0.0);
        prop_assert!(secrecy_rate(gb + bump, ge).unwrap().secrecy_rate >= base);
        prop_assert!(secrecy_rate(gb, ge + bump).unwrap().secrecy_rate <= base);
    }

    #[test]
    fn steering_vectors_are_unit_and_conjugate_symmetric(theta in 0.0f64..std::f64::consts::PI, n in 1usize..40) {
        let h = steering_vector(theta, &SteeringConfig::new(n)).unwrap();
        prop_assert!((h.norm() - 1.0).abs() <= 1e-12);
        for k in 0..n {
            prop_assert!((h[k] - h[n - 1 - k].conj()).norm() <= 1e-12);
        }
    }

    #[test]
    fn an_lies_in_null_space_of_random_channels(seed in any::<u64>(), na in 3usize..9, ns in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random_channel_set(&mut rng, na, ns);
        let v = an_beamformer(&ch).unwrap();
        prop_assert!((v.norm() - 1.0).abs() <= 1e-10);
        prop_assert!((constraint_matrix(&ch) * &v).norm() <= 1e-10);
    }

    #[test]
    fn phase_alignment_beats_random_phases(seed in any::<u64>(), ns in 1usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random_channel_set(&mut rng, 4, ns);
        let pw = PowerBudget::reference();
        let v = mrt_cm(&ch, MrtVariant::TowardAi).unwrap();
        let pa = cascaded_power_bob(&ch, &v, &pa_phase(&ch, &v).theta, &pw);
        let rnd = cascaded_power_bob(&ch, &v, &random_phases(ns, seed), &pw);
        prop_assert!(rnd <= pa * (1.0 + 1e-12));
    }
}
