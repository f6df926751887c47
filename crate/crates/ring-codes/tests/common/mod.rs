//! Dense statevector reference simulator used as an independent oracle.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use stabilizer_core::{Pauli, PauliString};

#[derive(Clone, Debug)]
pub struct StateVector {
    pub n: usize,
    pub amp: Vec<C>,
}

impl StateVector {
    pub fn zeros(n: usize) -> Self {
        let mut amp = vec![C::new(0.0, 0.0); 1 << n];
        amp[0] = C::new(1.0, 0.0);
        StateVector { n, amp }
    }

    fn one_qubit(&mut self, q: usize, m: [[C; 2]; 2]) {
        let bit = 1usize << q;
        for i in 0..self.amp.len() {
            if i & bit == 0 {
                let a0 = self.amp[i];
                let a1 = self.amp[i | bit];
                self.amp[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amp[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn h(&mut self, q: usize) {
        let s = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.one_qubit(q, [[s, s], [s, -s]]);
    }

    pub fn s(&mut self, q: usize) {
        let (o, z) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
        self.one_qubit(q, [[o, z], [z, C::new(0.0, 1.0)]]);
    }

    pub fn s_dag(&mut self, q: usize) {
        let (o, z) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
        self.one_qubit(q, [[o, z], [z, C::new(0.0, -1.0)]]);
    }

    pub fn pauli(&mut self, q: usize, p: Pauli) {
        let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
        let m = match p {
            Pauli::I => return,
            Pauli::X => [[z, o], [o, z]],
            Pauli::Y => [[z, -i], [i, z]],
            Pauli::Z => [[o, z], [z, -o]],
        };
        self.one_qubit(q, m);
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let m = (1 << a) | (1 << b);
        for i in 0..self.amp.len() {
            if i & m == m {
                self.amp[i] = -self.amp[i];
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        let (cb, tb) = (1 << c, 1 << t);
        for i in 0..self.amp.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amp.swap(i, i | tb);
            }
        }
    }

    /// |ψ'> = P|ψ> including the phase of the string.
    pub fn apply_string(&self, p: &PauliString) -> StateVector {
        let mut out = self.clone();
        for q in 0..self.n {
            out.pauli(q, p.get(q));
        }
        let ph = [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)]
            [p.phase() as usize];
        for a in &mut out.amp {
            *a *= ph;
        }
        out
    }

    pub fn expectation(&self, p: &PauliString) -> f64 {
        let pv = self.apply_string(p);
        self.amp.iter().zip(&pv.amp).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Project onto the `value` eigenspace of `p`; returns the outcome probability.
    pub fn project(&mut self, p: &PauliString, value: i8) -> f64 {
        let pv = self.apply_string(p);
        let v = value as f64;
        for (a, b) in self.amp.iter_mut().zip(&pv.amp) {
            *a = (*a + *b * v) * 0.5;
        }
        let norm: f64 = self.amp.iter().map(|a| a.norm_sqr()).sum();
        if norm > 1e-14 {
            let s = norm.sqrt();
            for a in &mut self.amp {
                *a /= s;
            }
        }
        norm
    }
}
