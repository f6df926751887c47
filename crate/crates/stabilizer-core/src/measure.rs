use rand::Rng;

use crate::frame::PauliFrame;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::StabilizerTableau;
use crate::StabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementOutcome {
    Deterministic(i8),
    Random(i8),
    Erased,
}

impl MeasurementOutcome {
    pub fn value(self) -> Option<i8> {
        match self {
            MeasurementOutcome::Deterministic(v) | MeasurementOutcome::Random(v) => Some(v),
            MeasurementOutcome::Erased => None,
        }
    }
}

/// Single-qubit Pauli measurement with erasure and frame-induced flips.
///
/// A lost qubit is traced out and reported as `Erased`.
pub fn measure_pauli<R: Rng + ?Sized>(
    t: &mut StabilizerTableau,
    qubit: usize,
    basis: Pauli,
    frame: &PauliFrame,
    lost: bool,
    rng: &mut R,
) -> Result<MeasurementOutcome, StabError> {
    t.check_index(qubit)?;
    if lost {
        t.trace_out(qubit, rng);
        return Ok(MeasurementOutcome::Erased);
    }
    let op = PauliString::single(t.num_qubits(), qubit, basis);
    let m = t.measure(&op, rng);
    let v = if frame.flips(qubit, basis) { -m.value } else { m.value };
    Ok(if m.random {
        MeasurementOutcome::Random(v)
    } else {
        MeasurementOutcome::Deterministic(v)
    })
}
