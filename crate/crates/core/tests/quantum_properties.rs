mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdpp::quantum::sample::{random_qubit_state, random_qubit_unitary};
use tdpp::quantum::{
    channel_state_fidelity, ensemble_fidelity_inequality_check, fidelity_product_form,
    fidelity_uhlmann, helstrom_success_probability, min_channel_fidelity, pump_fidelity,
    pump_until_threshold, trace_distance, DensityMatrix, EnsembleItem, QuantumChannel,
    StateEnsemble,
};
use tdpp::{DERIVED_TOL, INVARIANT_TOL};

fn states(seed: u64, n: usize) -> Vec<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_qubit_state(&mut rng)).collect()
}

fn arb_channel() -> impl Strategy<Value = QuantumChannel> {
    let leaf = prop_oneof![
        (0.0..=1.0f64).prop_map(|p| QuantumChannel::depolarizing(p).unwrap()),
        (0.0..=1.0f64).prop_map(|p| QuantumChannel::dephasing(p).unwrap()),
        (0.0..200.0f64, 0.0..0.5f64).prop_map(|(l, a)| QuantumChannel::fiber(l, a).unwrap()),
    ];
    prop::collection::vec(leaf, 1..4).prop_map(QuantumChannel::composed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn trace_distance_is_a_metric(seed in any::<u64>()) {
        let s = states(seed, 3);
        let d01 = trace_distance(&s[0], &s[1]).unwrap();
        prop_assert!((0.0..=1.0).contains(&d01));
        prop_assert!((d01 - trace_distance(&s[1], &s[0]).unwrap()).abs() <= INVARIANT_TOL);
        prop_assert!(trace_distance(&s[0], &s[0]).unwrap() <= INVARIANT_TOL);
        let d12 = trace_distance(&s[1], &s[2]).unwrap();
        let d02 = trace_distance(&s[0], &s[2]).unwrap();
        prop_assert!(d02 <= d01 + d12 + INVARIANT_TOL);
        prop_assert!((d01 - common::trace_distance_bloch(&s[0], &s[1])).abs() <= DERIVED_TOL);
    }

    #[test]
    fn fidelity_axioms_and_bloch_oracle(seed in any::<u64>()) {
        let s = states(seed, 2);
        let f = fidelity_uhlmann(&s[0], &s[1]).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity_uhlmann(&s[1], &s[0]).unwrap()).abs() <= DERIVED_TOL);
        prop_assert!((fidelity_uhlmann(&s[0], &s[0]).unwrap() - 1.0).abs() <= DERIVED_TOL);
        prop_assert!((f - common::fidelity_bloch(&s[0], &s[1])).abs() <= DERIVED_TOL, "{} vs {}", f, common::fidelity_bloch(&s[0], &s[1]));
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_qubit_state(&mut rng), random_qubit_state(&mut rng));
        let u = random_qubit_unitary(&mut rng);
        let (ua, ub) = (u.conjugate(&a).unwrap(), u.conjugate(&b).unwrap());
        prop_assert!((trace_distance(&a, &b).unwrap() - trace_distance(&ua, &ub).unwrap()).abs() <= DERIVED_TOL);
        prop_assert!((fidelity_uhlmann(&a, &b).unwrap() - fidelity_uhlmann(&ua, &ub).unwrap()).abs() <= DERIVED_TOL);
    }

    #[test]
    fn fuchs_van_de_graaf(seed in any::<u64>()) {
        let s = states(seed, 2);
        let d = trace_distance(&s[0], &s[1]).unwrap();
        let f = fidelity_uhlmann(&s[0], &s[1]).unwrap();
        prop_assert!(1.0 - f <= d + DERIVED_TOL);
        prop_assert!(d <= (1.0 - f * f).max(0.0).sqrt() + DERIVED_TOL);
    }

    #[test]
    fn product_form_matches_for_commuting_states(p in 0.0..=1.0f64, q in 0.0..=1.0f64) {
        let a = DensityMatrix::diagonal(&[p, 1.0 - p]).unwrap();
        let b = DensityMatrix::diagonal(&[q, 1.0 - q]).unwrap();
        let oracle = (p * q).sqrt() + ((1.0 - p) * (1.0 - q)).sqrt();
        prop_assert!((fidelity_product_form(&a, &b).unwrap() - oracle).abs() <= DERIVED_TOL);
        prop_assert!((fidelity_uhlmann(&a, &b).unwrap() - oracle).abs() <= DERIVED_TOL);
    }

    #[test]
    fn channels_are_trace_preserving_and_contractive(seed in any::<u64>(), ch in arb_channel()) {
        let s = states(seed, 2);
        let (a, b) = (ch.apply(&s[0]).unwrap(), ch.apply(&s[1]).unwrap());
        prop_assert!((a.matrix().trace().re - 1.0).abs() <= INVARIANT_TOL);
        prop_assert!(a.matrix().hermitian_deviation() <= INVARIANT_TOL);
        prop_assert!(a.eigenvalues().iter().all(|&l| l >= -INVARIANT_TOL));
        prop_assert!(trace_distance(&a, &b).unwrap() <= trace_distance(&s[0], &s[1]).unwrap() + DERIVED_TOL);
        let f = channel_state_fidelity(&s[0], &ch).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn helstrom_is_the_best_projector(seed in any::<u64>()) {
        let s = states(seed, 2);
        let h = helstrom_success_probability(&s[0], &s[1]).unwrap();
        let (best, grid) = common::brute_force_discrimination(&s[0], &s[1], 24);
        prop_assert!((h - best).abs() <= DERIVED_TOL);
        prop_assert!(grid <= h + DERIVED_TOL);
    }

    #[test]
    fn pumping_climbs_toward_the_fixed_point(a in 0.01..=1.0f64, b in 0.01..=1.0f64) {
        let f = pump_fidelity(a, b).unwrap();
        prop_assert!(f >= a.min(b) - 1e-15 && f <= 1.0);
        let lo = a.min(b);
        let hi = a.max(b);
        let y = (1.0 + (1.0 + 8.0 * hi.sqrt()).sqrt()) / 4.0;
        let fixed = y * y;
        let out = pump_until_threshold(lo, hi, 1.0, 50).unwrap();
        for w in out.trajectory.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-15);
        }
        prop_assert!(out.trajectory.iter().all(|&x| x <= fixed + 1e-12));
    }

    #[test]
    fn pump_is_monotone_in_each_argument(a in 0.0..=1.0f64, b in 0.0..=1.0f64, da in 0.0..=1.0f64, db in 0.0..=1.0f64) {
        let (a2, b2) = ((a + da).min(1.0), (b + db).min(1.0));
        let base = pump_fidelity(a, b).unwrap();
        prop_assert!(pump_fidelity(a2, b).unwrap() >= base);
        prop_assert!(pump_fidelity(a, b2).unwrap() >= base);
    }

    #[test]
    fn ensemble_inequality_holds(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = normalised(&mut rng, n);
        let q = normalised(&mut rng, n);
        let items = (0..n)
            .map(|i| EnsembleItem { p: p[i], q: q[i], rho: random_qubit_state(&mut rng), sigma: random_qubit_state(&mut rng) })
            .collect();
        let check = ensemble_fidelity_inequality_check(&StateEnsemble::new(items).unwrap()).unwrap();
        prop_assert!(check.holds && check.lhs >= check.rhs - DERIVED_TOL);
    }
}

fn normalised(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

#[test]
fn min_channel_fidelity_closed_forms() {
    for p in [0.1, 0.25, 0.49, 0.81] {
        let (f, _) = min_channel_fidelity(&QuantumChannel::dephasing(p).unwrap(), 64).unwrap();
        assert!((f - p.sqrt()).abs() <= 1e-3, "dephasing {p}: {f}");
        let (f, _) = min_channel_fidelity(&QuantumChannel::depolarizing(p).unwrap(), 64).unwrap();
        assert!(
            (f - (1.0 - p / 2.0).sqrt()).abs() <= 1e-3,
            "depolarizing {p}: {f}"
        );
    }
}

#[test]
fn min_channel_fidelity_exact_grid_minimum() {
    // θ = πi/63 misses the equator; the closest rows sit sin(π/126) off it.
    let offset = (std::f64::consts::PI / 126.0).sin();
    for p in [0.01, 0.05, 0.5, 0.99] {
        let (f, psi) = min_channel_fidelity(&QuantumChannel::dephasing(p).unwrap(), 64).unwrap();
        let oracle = (p + (1.0 - p) * offset * offset).sqrt();
        assert!((f - oracle).abs() <= DERIVED_TOL, "{p}: {f} vs {oracle}");
        let z = psi.amplitudes()[0].norm_sqr() - psi.amplitudes()[1].norm_sqr();
        assert!((z.abs() - offset).abs() <= DERIVED_TOL);
    }
}
