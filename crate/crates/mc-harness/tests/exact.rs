use mc_harness::{enumerate_small, HarnessError, Mode, Outcome};
use ring_codes::{Basis, RingCodeSpec};

fn ring(depth: usize) -> RingCodeSpec {
    RingCodeSpec::loss_only(4, depth).unwrap()
}

// Bare-ring fusion success written out term by term.
fn eq5(eta: f64) -> f64 {
    let ps = eta * eta / 2.0;
    let pl = 1.0 - eta * eta;
    let a = eta.powi(3) + 3.0 * (1.0 - eta) * eta.powi(2);
    let b = eta.powi(2) + 2.0 * (1.0 - eta) * eta;
    ps * a * a + ps * ps * b * b + pl * ps * (eta.powi(4) + eta * eta * ps) + ps * ps * ps * (eta * eta + ps)
}

#[test]
fn bare_ring_fusion_matches_closed_form_on_grid() {
    for i in 0..100 {
        let eta = i as f64 / 99.0;
        let d = enumerate_small(&ring(1), eta, 0.0, Mode::Fusion).unwrap();
        assert!((d.transmitted() - eq5(eta)).abs() < 1e-12, "eta {eta}: {} vs {}", d.transmitted(), eq5(eta));
        assert!((d.transmitted() - analytics::bare_ring_fusion_success(eta).unwrap()).abs() < 1e-12);
        assert!((d.total() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn noise_does_not_change_fusion_success() {
    for eta in [1.0, 0.9, 0.75] {
        let clean = enumerate_small(&ring(1), eta, 0.0, Mode::Fusion).unwrap();
        let noisy = enumerate_small(&ring(1), eta, 0.2, Mode::Fusion).unwrap();
        assert!((clean.transmitted() - noisy.transmitted()).abs() < 1e-12);
        assert_eq!(clean.error, 0.0);
        assert!(noisy.error > 0.0);
    }
}

#[test]
fn pauli_measurement_matches_closed_forms() {
    for i in 0..20 {
        let lambda = 0.3 * i as f64 / 19.0;
        let e = 2.0 * lambda / 3.0;
        let detect = 4.0 * (e * (1.0 - e).powi(3) + e.powi(3) * (1.0 - e));
        let error = 4.0 * e * e * (1.0 - e) * (1.0 - e);
        for b in [Basis::X, Basis::Y, Basis::Z] {
            let d = enumerate_small(&ring(1), 1.0, lambda, Mode::Pauli(b)).unwrap();
            assert!((d.detected - detect).abs() < 1e-12, "lambda {lambda} {b:?}");
            assert!((d.error - error).abs() < 1e-12, "lambda {lambda} {b:?}");
            assert!((d.total() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn pauli_reference_values() {
    let d = enumerate_small(&ring(1), 1.0, 0.15, Mode::Pauli(Basis::X)).unwrap();
    assert!((d.detected - 0.2952).abs() < 1e-12);
    assert!((d.error - 0.0324).abs() < 1e-12);
    let t = enumerate_small(&ring(1), 0.9, 0.0, Mode::Pauli(Basis::Z)).unwrap();
    assert!((t.transmitted() - 0.9639).abs() < 1e-12);
}

#[test]
fn two_layer_pauli_matches_recursion() {
    for eta in [1.0, 0.95, 0.9, 0.8, 0.6] {
        for lambda in [0.0, 0.01, 0.05, 0.1] {
            let d = enumerate_small(&ring(2), eta, lambda, Mode::Pauli(Basis::Y)).unwrap();
            let a = analytics::pauli_meas_stats(eta, lambda, 2).unwrap();
            let t = d.transmitted();
            assert!((t - a.eta_bar).abs() < 1e-12, "eta {eta} lambda {lambda}");
            assert!((d.error / t - a.eps).abs() < 1e-12, "eta {eta} lambda {lambda}: {} vs {}", d.error / t, a.eps);
            assert!((d.detected / t - a.eps_d).abs() < 1e-12, "eta {eta} lambda {lambda}");
        }
    }
}

#[test]
fn lossless_failures_of_bare_ring_keep_x() {
    let d = enumerate_small(&ring(1), 1.0, 0.0, Mode::Fusion).unwrap();
    assert!((d.success - 15.0 / 16.0).abs() < 1e-15);
    assert!((d.fail_x - 1.0 / 16.0).abs() < 1e-15);
    let d2 = enumerate_small(&ring(2), 1.0, 0.0, Mode::Fusion).unwrap();
    assert!((d2.success - 4095.0 / 4096.0).abs() < 1e-15);
}

#[test]
fn degenerate_point_has_one_branch() {
    let d = enumerate_small(&ring(1), 1.0, 0.0, Mode::Pauli(Basis::X)).unwrap();
    assert_eq!(d.success, 1.0);
    for o in Outcome::ALL.into_iter().filter(|&o| o != Outcome::Success) {
        assert_eq!(d.get(o), 0.0);
    }
    let f = enumerate_small(&ring(2), 0.0, 0.3, Mode::Fusion).unwrap();
    assert_eq!(f.loss, 1.0);
}

#[test]
fn bases_are_symmetric() {
    let x = enumerate_small(&ring(2), 0.85, 0.04, Mode::Pauli(Basis::X)).unwrap();
    for b in [Basis::Y, Basis::Z] {
        let y = enumerate_small(&ring(2), 0.85, 0.04, Mode::Pauli(b)).unwrap();
        for o in Outcome::ALL {
            assert!((x.get(o) - y.get(o)).abs() < 1e-12);
        }
    }
}

#[test]
fn deep_codes_are_rejected() {
    let err = enumerate_small(&ring(3), 0.9, 0.0, Mode::Fusion).unwrap_err();
    assert!(matches!(err, HarnessError::ResourceBound(_)));
}
