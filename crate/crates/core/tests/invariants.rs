//! Randomized invariants across module boundaries.

use affqis::coherence::{closest_incoherent_state, coherence_affinity};
use affqis::correlations::{discord_lower_bound, measurement_coherence, hellinger_coherence};
use affqis::distances::{affinity, affinity_metric, fidelity, trace_distance};
use affqis::io::{density_to_json, parse_state};
use affqis::measurement::ProjectiveMeasurement;
use affqis::random;
use affqis::state::{partial_trace, tensor};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn affinity_is_a_symmetric_overlap(seed in any::<u64>(), d in 2usize..5, r1 in 1usize..5, r2 in 1usize..5) {
        let rho = random::random_density(d, r1.min(d), seed).unwrap();
        let sigma = random::random_density(d, r2.min(d), seed ^ 0xa5a5).unwrap();
        let a = affinity(&rho, &sigma).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((affinity_metric(&rho, &sigma).unwrap() - affinity_metric(&sigma, &rho).unwrap()).abs() < 1e-12);
        prop_assert!(fidelity(&rho, &sigma).unwrap() >= a - 1e-10);
        let t = trace_distance(&rho, &sigma).unwrap();
        prop_assert!(t >= 1.0 - a - 1e-12);
        prop_assert!(t <= (1.0 - a * a).sqrt() + 1e-12);
    }

    #[test]
    fn closest_incoherent_state_attains_coherence(seed in any::<u64>(), d in 2usize..6) {
        let rho = random::random_density(d, d, seed).unwrap();
        let delta = closest_incoherent_state(&rho).unwrap().to_density(&[d]).unwrap();
        let c = coherence_affinity(&rho);
        prop_assert!((affinity(&rho, &delta).unwrap() - (1.0 - c)).abs() < 1e-10);
    }

    #[test]
    fn measurement_coherence_is_hellinger(seed in any::<u64>()) {
        let mut rng = random::rng(seed, 1);
        let rho = random::density_with(&mut rng, &[2, 3], 3).unwrap();
        let pi = ProjectiveMeasurement::from_unitary(random::haar_unitary(&mut rng, 2)).unwrap();
        let a = measurement_coherence(&rho, &pi).unwrap();
        prop_assert!((a - hellinger_coherence(&rho, &pi).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn products_have_no_lower_bound(seed in any::<u64>()) {
        let a = random::random_density(2, 2, seed).unwrap();
        let b = random::random_density(2, 2, seed.wrapping_add(1)).unwrap();
        prop_assert!(discord_lower_bound(&tensor(&a, &b)).unwrap().abs() < 1e-10);
        let back = partial_trace(&tensor(&a, &b), 0).unwrap();
        prop_assert!(affinity(&back, &a).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact(seed in any::<u64>(), d in 2usize..5) {
        let rho = random::random_density(d, d, seed).unwrap();
        let back = parse_state(&density_to_json(&rho)).unwrap().density();
        prop_assert_eq!(back.matrix(), rho.matrix());
    }
}
