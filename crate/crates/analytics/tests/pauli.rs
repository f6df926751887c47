use analytics::*;
use proptest::prelude::*;

fn eq7(eta: f64, e: f64) -> f64 {
    let eb = eta.powi(4) + 4.0 * (1.0 - eta) * eta.powi(3) + 2.0 * (1.0 - eta).powi(2) * eta.powi(2);
    4.0 * eta.powi(4) * (e * (1.0 - e).powi(3) + e.powi(3) * (1.0 - e)) / eb
}

fn eq8(eta: f64, e: f64) -> f64 {
    let eb = eta.powi(4) + 4.0 * (1.0 - eta) * eta.powi(3) + 2.0 * (1.0 - eta).powi(2) * eta.powi(2);
    (4.0 * eta.powi(4) * e * e * (1.0 - e).powi(2) + (eb - eta.powi(4)) * 2.0 * e * (1.0 - e)) / eb
}

#[test]
fn reference_values() {
    let s = pauli_meas_stats(1.0, 0.15, 1).unwrap();
    assert!((s.eps_d - 0.2952).abs() < 1e-12);
    assert!((s.eps - 0.0324).abs() < 1e-12);
    assert!((logical_transmission(0.9, 1).unwrap() - 0.9639).abs() < 1e-12);
    let t2 = logical_transmission(0.9, 2).unwrap();
    assert!((t2 - next_transmission(0.9639)).abs() < 1e-12);
    assert!((pauli_meas_stats(0.9, 0.0, 2).unwrap().eta_bar - t2).abs() < 1e-12);
    for d in 0..6 {
        assert_eq!(logical_transmission(1.0, d).unwrap(), 1.0);
    }
}

#[test]
fn noiseless_measurements_are_clean() {
    for d in 0..8 {
        let s = pauli_meas_stats(0.8, 0.0, d).unwrap();
        assert_eq!(s.eps, 0.0);
        assert_eq!(s.eps_d, 0.0);
        assert_eq!(s.zeta, 1.0);
    }
}

#[test]
fn closed_forms_on_grid() {
    for i in 1..=20 {
        for j in 0..=20 {
            let eta = i as f64 / 20.0;
            let lambda = 0.75 * j as f64 / 20.0;
            let s = pauli_meas_stats(eta, lambda, 1).unwrap();
            let e = 2.0 * lambda / 3.0;
            assert!((s.eps_d - eq7(eta, e)).abs() < 1e-12);
            assert!((s.eps - eq8(eta, e)).abs() < 1e-12);
            assert!((single_layer_detection(eta, e) - eq7(eta, e)).abs() < 1e-12);
            assert!((single_layer_error(eta, e) - eq8(eta, e)).abs() < 1e-12);
        }
    }
}

#[test]
fn rejects_invalid_noise() {
    assert!(pauli_meas_stats(0.9, 0.8, 1).is_err());
    assert!(pauli_meas_stats(1.2, 0.1, 1).is_err());
}

proptest! {
    #[test]
    fn outcomes_partition(eta in 0.01f64..=1.0, lambda in 0.0f64..=0.75, depth in 0usize..12) {
        let s = pauli_meas_stats(eta, lambda, depth).unwrap();
        prop_assert!((s.eps + s.eps_d + s.zeta - 1.0).abs() < 1e-12);
        for p in [s.eta_bar, s.eps, s.eps_d, s.zeta] {
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn base_layer_matches_closed_forms(eta in 0.01f64..=1.0, lambda in 0.0f64..=0.75) {
        let s = pauli_meas_stats(eta, lambda, 1).unwrap();
        let e = 2.0 * lambda / 3.0;
        prop_assert!((s.eps_d - eq7(eta, e)).abs() < 1e-12);
        prop_assert!((s.eps - eq8(eta, e)).abs() < 1e-12);
    }

    #[test]
    fn fusion_normalizes(eta in 0.0f64..=1.0, depth in 1usize..15) {
        let d = concat_fusion_distribution(eta, depth).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fusion_success_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0, depth in 0usize..=10) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let pl = concat_fusion_distribution(lo, depth).unwrap().p_s;
        let ph = concat_fusion_distribution(hi, depth).unwrap().p_s;
        prop_assert!(pl <= ph + 1e-15);
    }
}
