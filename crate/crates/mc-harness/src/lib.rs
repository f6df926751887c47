//! Monte Carlo and exhaustive checks of ring-code fusions and logical Pauli
//! measurements.
//!
//! Trials run on explicit stabilizer tableaus: both blocks are prepared as
//! graph states, photons are lost or depolarized right before they are
//! measured, and the fusion and measurement strategies of `ring_codes` decide
//! which records to trust. Decided signs are scored against the noiseless
//! state. [`enumerate_small`] walks the same strategies with exact
//! probabilities instead of samples.

mod exact;
mod sim;
mod stats;

use ring_codes::{Basis, RingCodeSpec};
use serde::{Deserialize, Serialize};

pub use exact::enumerate_small;
pub use sim::{simulate, simulate_logical_fusion, simulate_pauli_measurement};
pub use stats::{ByOutcome, EmpiricalStats, Outcome};

/// Largest tableau a trial may allocate.
pub const MAX_QUBITS: usize = 4096;

/// Largest depth handled by [`enumerate_small`].
pub const MAX_EXACT_DEPTH: usize = 2;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error(transparent)]
    Code(#[from] ring_codes::CodeError),
}

/// What a trial does with the two blocks (fusion) or the single block (Pauli).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Fusion,
    Pauli(Basis),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub spec: RingCodeSpec,
    pub eta: f64,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.spec.validate()?;
        if self.trials == 0 {
            return Err(HarnessError::InvalidConfig("trials must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(HarnessError::InvalidConfig(format!("eta = {} outside [0, 1]", self.eta)));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(HarnessError::InvalidConfig(format!("lambda = {} outside [0, 1]", self.lambda)));
        }
        if self.spec.n > 15 {
            return Err(HarnessError::ResourceBound(format!("ring size {} > 15", self.spec.n)));
        }
        let qubits = 2 * self.spec.photon_count();
        if qubits > MAX_QUBITS {
            return Err(HarnessError::ResourceBound(format!(
                "{qubits} photons in two blocks exceed the {MAX_QUBITS}-qubit bound"
            )));
        }
        Ok(())
    }
}
