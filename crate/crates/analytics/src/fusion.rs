use serde::{Deserialize, Serialize};

use crate::pauli::next_transmission;
use crate::{check_range, clamp_prob, AnalyticsError};

/// Outcome probabilities of a (logical) fusion: success, failure with only the
/// XX, YY or ZZ parity, and loss.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionDistribution {
    pub p_s: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub p_l: f64,
}

impl FusionDistribution {
    pub fn total(&self) -> f64 {
        self.p_s + self.p_x + self.p_y + self.p_z + self.p_l
    }

    fn clamped(self) -> Self {
        FusionDistribution {
            p_s: clamp_prob("p_s", self.p_s),
            p_x: clamp_prob("p_x", self.p_x),
            p_y: clamp_prob("p_y", self.p_y),
            p_z: clamp_prob("p_z", self.p_z),
            p_l: clamp_prob("p_l", self.p_l),
        }
    }
}

/// Bare four-photon ring with the adaptive fusion tree.
pub fn bare_ring_fusion_success(eta: f64) -> Result<f64, AnalyticsError> {
    check_range("eta", eta, 0.0, 1.0)?;
    let ps = eta * eta / 2.0;
    let pf = ps;
    let pl = 1.0 - eta * eta;
    let three = eta.powi(3) + 3.0 * (1.0 - eta) * eta * eta;
    let two = eta * eta + 2.0 * (1.0 - eta) * eta;
    Ok(ps * three * three
        + pf * ps * two * two
        + pl * ps * (eta.powi(4) + eta * eta * pf)
        + pf * pf * ps * (eta * eta + pf))
}

/// Physical fusion. The failure entries are the failure probability for
/// whichever basis is configured, so they are not a joint distribution.
pub fn physical_fusion_distribution(eta: f64) -> FusionDistribution {
    let h = eta * eta / 2.0;
    FusionDistribution { p_s: h, p_x: h, p_y: h, p_z: h, p_l: 1.0 - eta * eta }
}

fn step(d: &FusionDistribution, e: f64, logical_children: bool) -> FusionDistribution {
    let (ps, px, py, pz, pl) = (d.p_s, d.p_x, d.p_y, d.p_z, d.p_l);
    let (tx, tz) = if logical_children { (px, pz) } else { (0.0, 0.0) };
    let e2 = e * e;
    let e4 = e2 * e2;
    let three = e.powi(3) + 3.0 * (1.0 - e) * e2;
    let two = e2 + 2.0 * (1.0 - e) * e;
    let q = 1.0 - e;
    let p_s = ps * three * three
        + px * ps * two * two
        + (pl + tz) * ps * (e4 + e2 * py)
        + px * px * ps * (e2 + pz)
        + tx * pl * ps * e2;
    let p_x = pl * ps * (1.0 - e2) * (e2 + py) + px * px * pz * pz;
    let p_z = ps * e2 * (2.0 * e2 * q * q + 4.0 * e * q.powi(3) + q.powi(4))
        + px * ps * (1.0 - two * two)
        + px * pl * e4
        + pl * pl * e4;
    let p_y = 0.0;
    FusionDistribution { p_s, p_x, p_y, p_z, p_l: 1.0 - p_s - p_x - p_y - p_z }
}

/// Distributions for depths `0..=depth` with the adaptive tree on every layer.
pub fn concat_fusion_layers(eta: f64, depth: usize) -> Result<Vec<FusionDistribution>, AnalyticsError> {
    check_range("eta", eta, 0.0, 1.0)?;
    let mut out = vec![physical_fusion_distribution(eta)];
    let mut e = eta;
    for k in 1..=depth {
        let next = step(&out[k - 1], e, k >= 2);
        out.push(next);
        e = next_transmission(e);
    }
    Ok(out.into_iter().map(FusionDistribution::clamped).collect())
}

pub fn concat_fusion_distribution(eta: f64, depth: usize) -> Result<FusionDistribution, AnalyticsError> {
    Ok(*concat_fusion_layers(eta, depth)?.last().expect("depth 0 always present"))
}

/// Largest photon loss `1 - eta` with `p_s(depth) >= target`, by bisection
/// (assumes `p_s` increases with `eta`).
pub fn loss_threshold(depth: usize, target: f64) -> Result<f64, AnalyticsError> {
    check_range("target", target, 0.0, 1.0)?;
    let ps = |eta: f64| concat_fusion_distribution(eta, depth).map(|d| d.p_s);
    if ps(1.0)? < target {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0); // lo fails, hi passes
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ps(mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(1.0 - hi)
}
