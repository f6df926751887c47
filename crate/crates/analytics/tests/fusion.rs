use analytics::*;

/// Independent expansion of the bare-ring polynomial, collected by powers of eta.
fn bare_ring_oracle(e: f64) -> f64 {
    // Terms written out from the four branches with p_s = p_f = e^2/2, p_l = 1 - e^2.
    let h = e * e / 2.0;
    let branch1 = h * (3.0 * e * e - 2.0 * e.powi(3)).powi(2);
    let branch2 = h * h * (2.0 * e - e * e).powi(2);
    let branch3 = (1.0 - e * e) * h * (e.powi(4) + e * e * h);
    let branch4 = h * h * h * (e * e + h);
    branch1 + branch2 + branch3 + branch4
}

#[test]
fn bare_ring_reference_values() {
    assert!((bare_ring_fusion_success(1.0).unwrap() - 0.9375).abs() < 1e-12);
    assert_eq!(bare_ring_fusion_success(0.0).unwrap(), 0.0);
    let p07 = bare_ring_fusion_success(0.7).unwrap();
    assert!(p07 > 0.245);
    assert!((p07 - 0.256_107_166_875).abs() < 1e-12);
    assert!((bare_ring_fusion_success(0.6).unwrap() - 0.123_988_32).abs() < 1e-12);
    assert!(bare_ring_fusion_success(1.1).is_err());
    assert!(bare_ring_fusion_success(-0.1).is_err());
    for i in 0..=1000 {
        let e = i as f64 / 1000.0;
        assert!((bare_ring_fusion_success(e).unwrap() - bare_ring_oracle(e)).abs() < 1e-12);
    }
}

#[test]
fn first_concatenation_step_is_the_bare_ring() {
    for i in 0..=1000 {
        let e = i as f64 / 1000.0;
        let d = concat_fusion_distribution(e, 1).unwrap();
        assert!((d.p_s - bare_ring_fusion_success(e).unwrap()).abs() < 1e-12, "eta {e}");
    }
}

#[test]
fn physical_layer_convention() {
    let d = concat_fusion_distribution(1.0, 0).unwrap();
    assert_eq!(d.p_s, 0.5);
    assert_eq!(d.p_l, 0.0);
    assert_eq!(d.p_x, 0.5);
}

#[test]
fn distributions_normalize_above_the_photons() {
    for depth in 1..=10 {
        for i in 0..=1000 {
            let e = i as f64 / 1000.0;
            let d = concat_fusion_distribution(e, depth).unwrap();
            assert!((d.total() - 1.0).abs() < 1e-12);
            assert_eq!(d.p_y, 0.0);
            for p in [d.p_s, d.p_x, d.p_z, d.p_l] {
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }
}

#[test]
fn success_grows_with_transmission() {
    for depth in 0..=10 {
        let mut last = -1.0;
        for i in 0..=1000 {
            let p = concat_fusion_distribution(i as f64 / 1000.0, depth).unwrap().p_s;
            assert!(p >= last - 1e-15, "depth {depth} step {i}");
            last = p;
        }
    }
}

#[test]
fn concatenation_at_twenty_percent_loss() {
    let p = concat_fusion_distribution(0.8, 5).unwrap().p_s;
    assert!(p >= 0.95);
    assert!((p - 0.995_803_975_297_71).abs() < 1e-12);
}

#[test]
fn deep_recursion_threshold() {
    let t = loss_threshold(30, 0.99).unwrap();
    assert!((0.34..=0.40).contains(&t), "{t}");
    // Below threshold deep codes approach unit success; above they collapse.
    assert!(concat_fusion_distribution(1.0 - (t - 0.02), 30).unwrap().p_s > 0.999);
    assert!(concat_fusion_distribution(1.0 - (t + 0.02), 30).unwrap().p_s < 0.5);
}
