//! Binary symplectic algebra on the abstract qubits of two ring blocks.
//!
//! Qubit 0 is the encoding vertex `E_A`, qubits `1..=n` the code qubits of
//! block A, `n + 1` is `E_B` and `n + 2..=2n + 1` the code qubits of block B.
//! Signs are not tracked here; they live in the payloads of [`crate::decode`].

use stabilizer_core::Pauli;

use crate::Basis;

/// Pauli letters packed as x bits (low half) and z bits (high half).
pub type Sym = u64;

const Z_SHIFT: u32 = 32;
const LOW: u64 = 0xffff_ffff;

pub fn sym(q: usize, p: Pauli) -> Sym {
    let (x, z) = p.bits();
    ((x as u64) << q) | ((z as u64) << (q as u32 + Z_SHIFT))
}

pub fn sym_basis(q: usize, b: Basis) -> Sym {
    sym(q, b.pauli())
}

pub fn letter(s: Sym, q: usize) -> Pauli {
    Pauli::from_bits((s >> q) & 1 == 1, (s >> (q as u32 + Z_SHIFT)) & 1 == 1)
}

pub fn commute(a: Sym, b: Sym) -> bool {
    (((a & LOW) & (b >> Z_SHIFT)) ^ ((a >> Z_SHIFT) & (b & LOW))).count_ones() % 2 == 0
}

/// Fully reduced row echelon basis of a subspace of `Sym` vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Echelon {
    rows: Vec<Sym>,
}

fn lead(v: Sym) -> Sym {
    1 << (63 - v.leading_zeros())
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Sym] {
        &self.rows
    }

    pub fn reduce(&self, mut v: Sym) -> Sym {
        for &r in &self.rows {
            if v & lead(r) != 0 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: Sym) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: Sym) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let l = lead(v);
        for r in &mut self.rows {
            if *r & l != 0 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

/// Item combinations that reproduce a target modulo the ring stabilizers:
/// `particular` xor any combination of `kernel`. Masks index the items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: u64,
    pub kernel: Vec<u64>,
}

impl Solution {
    pub fn rep(&self, coords: u64) -> u64 {
        let mut m = self.particular;
        for (i, k) in self.kernel.iter().enumerate() {
            if coords >> i & 1 == 1 {
                m ^= k;
            }
        }
        m
    }

    pub fn num_reps(&self) -> u64 {
        1 << self.kernel.len()
    }
}

/// Two unit rings side by side with their graph-state stabilizers.
#[derive(Clone, Debug)]
pub struct PairSpace {
    n: usize,
    s0: Echelon,
}

impl PairSpace {
    pub fn new(n: usize) -> Self {
        assert!((3..=15).contains(&n), "ring size {n} not supported by the packed algebra");
        let mut s0 = Echelon::new();
        for block in 0..2 {
            let e = block * (n + 1);
            let c = |k: usize| e + 1 + k;
            s0.insert(sym(e, Pauli::X) | sym(c(0), Pauli::Z) | sym(c(n - 1), Pauli::Z));
            for k in 0..n {
                let mut g = sym(c(k), Pauli::X);
                g |= if k == 0 { sym(e, Pauli::Z) } else { sym(c(k - 1), Pauli::Z) };
                g |= if k == n - 1 { sym(e, Pauli::Z) } else { sym(c(k + 1), Pauli::Z) };
                s0.insert(g);
            }
        }
        PairSpace { n, s0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e_a(&self) -> usize {
        0
    }

    pub fn e_b(&self) -> usize {
        self.n + 1
    }

    pub fn code_a(&self, k: usize) -> usize {
        1 + k
    }

    pub fn code_b(&self, k: usize) -> usize {
        self.n + 2 + k
    }

    pub fn stabilizers(&self) -> &Echelon {
        &self.s0
    }

    pub fn residue(&self, v: Sym) -> Sym {
        self.s0.reduce(v)
    }

    /// Span of the item residues; equal keys mean equal knowledge.
    pub fn knowledge(&self, items: &[Sym]) -> Echelon {
        let mut e = Echelon::new();
        for &v in items {
            e.insert(self.residue(v));
        }
        e
    }

    pub fn is_known(&self, knowledge: &Echelon, target: Sym) -> bool {
        knowledge.contains(self.residue(target))
    }

    /// All item subsets whose product equals `target` times a ring stabilizer.
    pub fn solve(&self, items: &[Sym], target: Sym) -> Option<Solution> {
        assert!(items.len() <= 64);
        let mut pivots: Vec<(Sym, u64)> = Vec::new();
        let mut kernel = Vec::new();
        let reduce = |pivots: &[(Sym, u64)], mut v: Sym, mut m: u64| {
            for &(r, rm) in pivots {
                if v & lead(r) != 0 {
                    v ^= r;
                    m ^= rm;
                }
            }
            (v, m)
        };
        for (i, &it) in items.iter().enumerate() {
            let (v, m) = reduce(&pivots, self.residue(it), 1 << i);
            if v == 0 {
                kernel.push(m);
            } else {
                pivots.push((v, m));
                pivots.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            }
        }
        let (v, m) = reduce(&pivots, self.residue(target), 0);
        (v == 0).then_some(Solution { particular: m, kernel })
    }

    pub fn xx(&self) -> Sym {
        sym(self.e_a(), Pauli::X) | sym(self.e_b(), Pauli::X)
    }

    pub fn zz(&self) -> Sym {
        sym(self.e_a(), Pauli::Z) | sym(self.e_b(), Pauli::Z)
    }

    pub fn yy(&self) -> Sym {
        sym(self.e_a(), Pauli::Y) | sym(self.e_b(), Pauli::Y)
    }

    /// Independent known operators on `(E_A, E_B)` that span everything
    /// known there, picked greedily from a fixed order (XX, ZZ, YY first).
    pub fn root_basis(&self, knowledge: &Echelon) -> Vec<(Pauli, Pauli)> {
        use Pauli::{I, X, Y, Z};
        const ORDER: [(Pauli, Pauli); 15] = [
            (X, X), (Z, Z), (Y, Y), (X, I), (I, X), (Z, I), (I, Z), (Y, I),
            (I, Y), (X, Y), (Y, X), (X, Z), (Z, X), (Y, Z), (Z, Y),
        ];
        let mut span = Echelon::new();
        let mut out = Vec::new();
        for (a, b) in ORDER {
            let t = sym(self.e_a(), a) | sym(self.e_b(), b);
            if self.is_known(knowledge, t) && span.insert(t) {
                out.push((a, b));
            }
        }
        out
    }

    /// Known operators on `(E_A, E_B)` among the 15 non-identity two-qubit Paulis.
    pub fn known_on_roots(&self, knowledge: &Echelon) -> Vec<(Pauli, Pauli)> {
        let mut out = Vec::new();
        for a in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            for b in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
                if a == Pauli::I && b == Pauli::I {
                    continue;
                }
                let t = sym(self.e_a(), a) | sym(self.e_b(), b);
                if self.is_known(knowledge, t) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
