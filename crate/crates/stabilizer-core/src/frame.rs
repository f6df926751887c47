use rand::Rng;

use crate::pauli::{Pauli, PauliString};

/// Per-qubit Pauli error record. Errors never touch the tableau; they only flip
/// reported measurement outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliFrame {
    errors: Vec<Pauli>,
}

impl PauliFrame {
    pub fn new(n: usize) -> Self {
        PauliFrame { errors: vec![Pauli::I; n] }
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.errors[q]
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        self.errors[q] = p;
    }

    /// Multiply an extra error onto qubit `q` (phases dropped).
    pub fn push(&mut self, q: usize, p: Pauli) {
        self.errors[q] = self.errors[q].times(p);
    }

    pub fn compose(&self, other: &PauliFrame) -> PauliFrame {
        PauliFrame {
            errors: self.errors.iter().zip(&other.errors).map(|(a, b)| a.times(*b)).collect(),
        }
    }

    /// Single-qubit depolarizing channel: X, Y or Z each with probability λ/3.
    pub fn depolarize<R: Rng + ?Sized>(&mut self, q: usize, lambda: f64, rng: &mut R) {
        let u: f64 = rng.gen();
        if u < lambda {
            let p = Pauli::NON_TRIVIAL[((u / lambda) * 3.0).min(2.0) as usize];
            self.push(q, p);
        }
    }

    /// Whether measuring `basis` on `q` reports a flipped outcome.
    pub fn flips(&self, q: usize, basis: Pauli) -> bool {
        !self.errors[q].commutes_with(basis)
    }

    pub fn flips_string(&self, p: &PauliString) -> bool {
        p.support()
            .into_iter()
            .fold(false, |acc, q| acc ^ !self.errors[q].commutes_with(p.get(q)))
    }
}
