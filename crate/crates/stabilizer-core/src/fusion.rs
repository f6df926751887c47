use rand::Rng;

use crate::frame::PauliFrame;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::StabilizerTableau;
use crate::StabError;

/// The two commuting parities retrieved by a successful fusion, after the
/// local rotations in front of the fusion circuit. Default is `XX`, `ZZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusionBases {
    pub first: (Pauli, Pauli),
    pub second: (Pauli, Pauli),
}

impl Default for FusionBases {
    fn default() -> Self {
        FusionBases { first: (Pauli::X, Pauli::X), second: (Pauli::Z, Pauli::Z) }
    }
}

/// Outcome of a type-II fusion.
///
/// On failure both photons end up measured individually in the failure basis;
/// `parity` is the product of the two `outcomes`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FusionEvent {
    Success { xx: i8, zz: i8 },
    Failure { basis: Pauli, parity: i8, outcomes: [i8; 2] },
    Loss,
}

#[allow(clippy::too_many_arguments)]
pub fn fuse<R: Rng + ?Sized>(
    t: &mut StabilizerTableau,
    qa: usize,
    qb: usize,
    failure_basis: Pauli,
    bases: &FusionBases,
    frame: &PauliFrame,
    lost_a: bool,
    lost_b: bool,
    rng: &mut R,
) -> Result<FusionEvent, StabError> {
    let success = rng.gen_bool(0.5);
    fuse_with_coin(t, qa, qb, failure_basis, bases, frame, lost_a, lost_b, success, rng)
}

/// Like [`fuse`] with the success/failure coin supplied by the caller.
#[allow(clippy::too_many_arguments)]
pub fn fuse_with_coin<R: Rng + ?Sized>(
    t: &mut StabilizerTableau,
    qa: usize,
    qb: usize,
    failure_basis: Pauli,
    bases: &FusionBases,
    frame: &PauliFrame,
    lost_a: bool,
    lost_b: bool,
    success: bool,
    rng: &mut R,
) -> Result<FusionEvent, StabError> {
    t.check_index(qa)?;
    t.check_index(qb)?;
    if qa == qb {
        return Err(StabError::SameQubit(qa));
    }
    let n = t.num_qubits();
    if lost_a || lost_b {
        t.trace_out(qa, rng);
        t.trace_out(qb, rng);
        return Ok(FusionEvent::Loss);
    }
    if success {
        let p1 = PauliString::from_ops(n, &[(qa, bases.first.0), (qb, bases.first.1)]);
        let p2 = PauliString::from_ops(n, &[(qa, bases.second.0), (qb, bases.second.1)]);
        debug_assert!(p1.commutes_with(&p2), "fusion parities must commute");
        let m1 = t.measure(&p1, rng).value;
        let m2 = t.measure(&p2, rng).value;
        let xx = if frame.flips_string(&p1) { -m1 } else { m1 };
        let zz = if frame.flips_string(&p2) { -m2 } else { m2 };
        Ok(FusionEvent::Success { xx, zz })
    } else {
        let mut outcomes = [0i8; 2];
        for (k, q) in [qa, qb].into_iter().enumerate() {
            let m = t.measure(&PauliString::single(n, q, failure_basis), rng).value;
            outcomes[k] = if frame.flips(q, failure_basis) { -m } else { m };
        }
        Ok(FusionEvent::Failure { basis: failure_basis, parity: outcomes[0] * outcomes[1], outcomes })
    }
}
