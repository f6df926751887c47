//! Analytic statistics of concatenated ring codes.
//!
//! Depth follows the code: depth 0 is a bare photon (a physical fusion or a
//! single-photon measurement), depth 1 is the four-photon ring, depth `k`
//! fuses or measures rings whose code qubits are depth `k - 1` blocks.

mod fusion;
mod ft;
mod pauli;

use thiserror::Error;

pub use fusion::{
    bare_ring_fusion_success, concat_fusion_distribution, concat_fusion_layers, loss_threshold,
    physical_fusion_distribution, FusionDistribution,
};
pub use ft::{ft_fusion_layers, ft_fusion_stats, FtFusionStats};
pub use pauli::{
    logical_transmission, measurement_error_rate, next_transmission, pauli_meas_layers, pauli_meas_stats,
    single_layer_detection, single_layer_error, PauliMeasStats,
};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("switch layer {switch} outside 1..={depth}")]
    SwitchLayer { switch: usize, depth: usize },
}

pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), AnalyticsError> {
    if value.is_nan() || value < lo || value > hi {
        Err(AnalyticsError::OutOfRange { name, value, lo, hi })
    } else {
        Ok(())
    }
}

/// Clamp a probability at the output boundary, warning on real excursions.
pub(crate) fn clamp_prob(name: &str, p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        let dist = if p < 0.0 { -p } else { p - 1.0 };
        if dist > 1e-9 {
            log::warn!("{name} = {p} clamped to [0, 1]");
        }
    }
    p.clamp(0.0, 1.0)
}
