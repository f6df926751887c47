use serde::{Deserialize, Serialize};

use crate::CodeError;

/// One concatenated ring code: unit ring size `n`, depth `depth` (1 = bare ring)
/// and the layer `switch_layer` up to which fusions use the loss-protection tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingCodeSpec {
    pub n: usize,
    pub depth: usize,
    pub switch_layer: usize,
}

impl RingCodeSpec {
    pub fn new(n: usize, depth: usize, switch_layer: usize) -> Result<Self, CodeError> {
        let s = RingCodeSpec { n, depth, switch_layer };
        s.validate()?;
        Ok(s)
    }

    /// Loss-protection strategy on every layer.
    pub fn loss_only(n: usize, depth: usize) -> Result<Self, CodeError> {
        Self::new(n, depth, depth)
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        if self.n < 3 {
            return Err(CodeError::InvalidSpec(format!("ring size {} < 3", self.n)));
        }
        if self.depth < 1 {
            return Err(CodeError::InvalidSpec("depth must be at least 1".into()));
        }
        if self.switch_layer < 1 || self.switch_layer > self.depth {
            return Err(CodeError::InvalidSpec(format!(
                "switch layer {} outside 1..={}",
                self.switch_layer, self.depth
            )));
        }
        if (self.n as f64).powi(self.depth as i32) > 1e15 {
            return Err(CodeError::InvalidSpec("photon count overflows".into()));
        }
        Ok(())
    }

    pub fn photon_count(&self) -> usize {
        self.n.pow(self.depth as u32)
    }
}

/// Operation counts of the emitter protocol: spin–spin CZ gates, spin
/// measurements and emitted photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceCounts {
    pub cz: u64,
    pub measurements: u64,
    pub photons: u64,
}

/// Counts from the closed recursions. Depth 1 follows the bare-ring protocol
/// (two CZ, one measurement).
pub fn resource_counts(spec: &RingCodeSpec) -> ResourceCounts {
    let n = spec.n as u64;
    let mut cz = 2u64;
    let mut m = 1u64;
    for level in 2..=spec.depth {
        if level == 2 {
            cz = 3 * n + 1;
            m = n + 1;
        } else {
            cz = n * cz + n + 1;
            m = n * m + 1;
        }
    }
    ResourceCounts { cz, measurements: m, photons: n.pow(spec.depth as u32) }
}
