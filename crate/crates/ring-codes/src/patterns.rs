use serde::{Deserialize, Serialize};

use crate::{Basis, CodeError};

/// Single-qubit measurements on the code qubits of a unit ring whose
/// product, times `sign`, equals a Pauli on the encoding vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPattern {
    pub logical: Basis,
    pub bases: Vec<Option<Basis>>,
    pub sign: i8,
}

impl MeasurementPattern {
    /// Logical value from the outcomes of the measured code qubits, or `None`
    /// if one of them is missing.
    pub fn value(&self, outcomes: &[Option<i8>]) -> Option<i8> {
        let mut v = self.sign;
        for (b, o) in self.bases.iter().zip(outcomes) {
            if b.is_some() {
                v *= (*o)?;
            }
        }
        Some(v)
    }
}

fn pattern(logical: Basis, spec: &str) -> MeasurementPattern {
    let bases = spec
        .chars()
        .map(|c| match c {
            'X' => Some(Basis::X),
            'Y' => Some(Basis::Y),
            'Z' => Some(Basis::Z),
            _ => None,
        })
        .collect();
    MeasurementPattern { logical, bases, sign: 1 }
}

/// The two disjoint patterns for each logical Pauli of the four-qubit ring.
pub fn pauli_patterns(n: usize, logical: Basis) -> Result<[MeasurementPattern; 2], CodeError> {
    if n != 4 {
        return Err(CodeError::Unsupported(format!("measurement patterns need n = 4, got {n}")));
    }
    Ok(match logical {
        Basis::X => [pattern(logical, "Z__Z"), pattern(logical, "_YY_")],
        Basis::Y => [pattern(logical, "Y_X_"), pattern(logical, "_X_Y")],
        Basis::Z => [pattern(logical, "XZ__"), pattern(logical, "__ZX")],
    })
}

/// Basis for every code qubit so that both patterns are measured at once.
pub fn pauli_mode_bases(n: usize, logical: Basis) -> Result<Vec<Basis>, CodeError> {
    let [a, b] = pauli_patterns(n, logical)?;
    Ok(a.bases.iter().zip(&b.bases).map(|(x, y)| x.or(*y).expect("patterns cover every qubit")).collect())
}
