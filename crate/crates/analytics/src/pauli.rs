use serde::{Deserialize, Serialize};

use crate::{check_range, clamp_prob, AnalyticsError};

/// Logical Pauli measurement: transmission, undetected error, detection and
/// clean probabilities. `eps + eps_d + zeta = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliMeasStats {
    pub eta_bar: f64,
    pub eps: f64,
    pub eps_d: f64,
    pub zeta: f64,
}

impl PauliMeasStats {
    /// Error probability given that no detection occurred.
    pub fn conditional_error(&self) -> f64 {
        conditional(self.eps, self.zeta)
    }
}

pub(crate) fn conditional(eps: f64, zeta: f64) -> f64 {
    if eps + zeta > 0.0 {
        eps / (eps + zeta)
    } else {
        0.0
    }
}

/// Single-qubit measurement error of a depolarizing channel.
pub fn measurement_error_rate(lambda: f64) -> f64 {
    2.0 * lambda / 3.0
}

/// Transmission of a ring-level measurement whose code qubits arrive with `eta`.
pub fn next_transmission(eta: f64) -> f64 {
    let l = 1.0 - eta;
    eta.powi(4) + 4.0 * l * eta.powi(3) + 2.0 * l * l * eta * eta
}

pub fn logical_transmission(eta: f64, depth: usize) -> Result<f64, AnalyticsError> {
    check_range("eta", eta, 0.0, 1.0)?;
    Ok((0..depth).fold(eta, |e, _| next_transmission(e)))
}

/// Detection probability of a bare ring with measurement error `eps`.
pub fn single_layer_detection(eta: f64, eps: f64) -> f64 {
    let eb = next_transmission(eta);
    if eb == 0.0 {
        return 0.0;
    }
    4.0 * eta.powi(4) * (eps * (1.0 - eps).powi(3) + eps.powi(3) * (1.0 - eps)) / eb
}

/// Undetected logical error of a bare ring with measurement error `eps`.
pub fn single_layer_error(eta: f64, eps: f64) -> f64 {
    let eb = next_transmission(eta);
    if eb == 0.0 {
        return 0.0;
    }
    let e4 = eta.powi(4);
    (4.0 * e4 * eps * eps * (1.0 - eps).powi(2) + (eb - e4) * 2.0 * eps * (1.0 - eps)) / eb
}

fn step(prev: &PauliMeasStats) -> PauliMeasStats {
    let e = prev.eta_bar;
    let (eps, ed, z) = (prev.eps, prev.eps_d, prev.zeta);
    let en = next_transmission(e);
    let e4 = e.powi(4);
    if en == 0.0 {
        return PauliMeasStats { eta_bar: 0.0, eps: 0.0, eps_d: 0.0, zeta: 1.0 };
    }
    let eps_n = (e4 * (4.0 * eps * eps * z * z + 2.0 * (4.0 * ed * (1.0 - ed) + 2.0 * ed * ed) * eps * z)
        + (en - e4) * 2.0 * eps * z)
        / en;
    let ed_n = ((en - e4) * (2.0 * ed * (1.0 - ed) + ed * ed)
        + e4 * (4.0 * (eps * z.powi(3) + eps.powi(3) * z)
            + 4.0 * (ed * ed * (1.0 - ed).powi(2) + ed.powi(3) * (1.0 - ed))
            + ed.powi(4)))
        / en;
    PauliMeasStats { eta_bar: en, eps: eps_n, eps_d: ed_n, zeta: 1.0 - eps_n - ed_n }
}

/// Statistics for depths `0..=depth`; depth 0 is a bare photon.
pub fn pauli_meas_layers(eta: f64, lambda: f64, depth: usize) -> Result<Vec<PauliMeasStats>, AnalyticsError> {
    check_range("eta", eta, 0.0, 1.0)?;
    check_range("lambda", lambda, 0.0, 0.75)?;
    let eps = measurement_error_rate(lambda);
    let mut out = vec![PauliMeasStats { eta_bar: eta, eps, eps_d: 0.0, zeta: 1.0 - eps }];
    for k in 1..=depth {
        let next = step(&out[k - 1]);
        out.push(next);
    }
    Ok(out
        .into_iter()
        .map(|s| PauliMeasStats {
            eta_bar: clamp_prob("eta_bar", s.eta_bar),
            eps: clamp_prob("eps", s.eps),
            eps_d: clamp_prob("eps_d", s.eps_d),
            zeta: clamp_prob("zeta", s.zeta),
        })
        .collect())
}

pub fn pauli_meas_stats(eta: f64, lambda: f64, depth: usize) -> Result<PauliMeasStats, AnalyticsError> {
    Ok(*pauli_meas_layers(eta, lambda, depth)?.last().expect("depth 0 always present"))
}
