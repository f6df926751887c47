use serde::{Deserialize, Serialize};

use crate::fusion::{concat_fusion_layers, FusionDistribution};
use crate::pauli::{conditional, measurement_error_rate, pauli_meas_layers, PauliMeasStats};
use crate::{check_range, clamp_prob, AnalyticsError};

/// Logical fusion with error statistics of its XX and ZZ parities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FtFusionStats {
    pub p_s: f64,
    pub eps: f64,
    pub eps_d: f64,
    pub zeta: f64,
}

impl FtFusionStats {
    /// Parity error given that no detection occurred.
    pub fn conditional_error(&self) -> f64 {
        conditional(self.eps, self.zeta)
    }
}

/// Error and detection of a parity built from independent factors:
/// detected if any factor is, wrong if an odd number of the rest are wrong.
fn chain(parts: &[(f64, f64)]) -> (f64, f64) {
    let (mut plus, mut minus, mut clean) = (1.0, 1.0, 1.0);
    for &(eps, det) in parts {
        let z = 1.0 - eps - det;
        plus *= z + eps;
        minus *= z - eps;
        clean *= 1.0 - det;
    }
    ((plus - minus) / 2.0, 1.0 - clean)
}

/// Parity statistics of fusions up to the switch layer, where nothing is
/// corrected: one parity of the child fusion times two logical single-qubit
/// measurements one layer down.
fn unprotected(pauli: &[PauliMeasStats], lambda: f64, depth: usize) -> (f64, f64) {
    let e = measurement_error_rate(lambda);
    let mut parity = (2.0 * e * (1.0 - e), 0.0);
    for p in &pauli[..depth] {
        let m = (p.eps, p.eps_d);
        parity = chain(&[parity, m, m]);
    }
    parity
}

fn fuse_all_step(d: &FusionDistribution, e: f64) -> FusionDistribution {
    let (ps, px, pz, pl) = (d.p_s, d.p_x, d.p_z, d.p_l);
    let two = e * e + 2.0 * e * (1.0 - e);
    let p_s = ps.powi(4)
        + ps * pz * two * two
        + ps * px * e * e
        + ps * (px + pz + 2.0 * pl) * e.powi(4)
        + ps * ps * ((pl + pz) * e * e + px)
        + ps.powi(3) * (1.0 - ps);
    // Failure classes of this strategy are not resolved; count them as loss.
    FusionDistribution { p_s, p_x: 0.0, p_y: 0.0, p_z: 0.0, p_l: 1.0 - p_s }
}

/// Layers `0..=depth`; layers up to `switch_layer` use the adaptive tree,
/// the ones above fuse every pair.
pub fn ft_fusion_layers(
    eta: f64,
    lambda: f64,
    depth: usize,
    switch_layer: usize,
) -> Result<Vec<FtFusionStats>, AnalyticsError> {
    check_range("eta", eta, 0.0, 1.0)?;
    check_range("lambda", lambda, 0.0, 0.75)?;
    if switch_layer < 1 || switch_layer > depth {
        return Err(AnalyticsError::SwitchLayer { switch: switch_layer, depth });
    }
    let pauli = pauli_meas_layers(eta, lambda, depth)?;
    let adaptive = concat_fusion_layers(eta, switch_layer)?;
    let mut out = Vec::with_capacity(depth + 1);
    for (k, d) in adaptive.iter().enumerate() {
        let (eps, eps_d) = unprotected(&pauli, lambda, k);
        out.push(FtFusionStats { p_s: d.p_s, eps, eps_d, zeta: 1.0 - eps - eps_d });
    }
    let mut dist = adaptive[switch_layer];
    for k in switch_layer + 1..=depth {
        let prev = out[k - 1];
        let next = fuse_all_step(&dist, pauli[k - 1].eta_bar);
        let (eps, ed, z) = (prev.eps, prev.eps_d, prev.zeta);
        let w = dist.p_s.powi(4);
        let (eps_n, ed_n) = if next.p_s > 0.0 {
            let det = w
                * (4.0 * (eps * z.powi(3) + eps.powi(3) * z)
                    + 4.0 * (ed * ed * (1.0 - ed).powi(2) + ed.powi(3) * (1.0 - ed))
                    + ed.powi(4))
                / next.p_s;
            let err = w * (4.0 * eps * eps * z * z + 2.0 * (4.0 * ed * (1.0 - ed) + 2.0 * ed * ed) * eps * z)
                / next.p_s;
            (err, det)
        } else {
            (0.0, 0.0)
        };
        out.push(FtFusionStats { p_s: next.p_s, eps: eps_n, eps_d: ed_n, zeta: 1.0 - eps_n - ed_n });
        dist = next;
    }
    Ok(out
        .into_iter()
        .map(|s| FtFusionStats {
            p_s: clamp_prob("p_s", s.p_s),
            eps: clamp_prob("eps", s.eps),
            eps_d: clamp_prob("eps_d", s.eps_d),
            zeta: clamp_prob("zeta", s.zeta),
        })
        .collect())
}

pub fn ft_fusion_stats(eta: f64, lambda: f64, depth: usize, switch_layer: usize) -> Result<FtFusionStats, AnalyticsError> {
    Ok(*ft_fusion_layers(eta, lambda, depth, switch_layer)?.last().expect("nonempty"))
}
