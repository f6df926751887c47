use std::collections::HashMap;

use crate::symplectic::{sym_basis, Echelon, PairSpace, Sym};
use crate::Basis;

const BASES: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];

/// Picks single-side measurement bases for the remaining pairs by
/// expectimax over arrival patterns at a reference transmission.
/// A success is worth 1 and a bare XX or ZZ parity `partial_value`.
#[derive(Clone, Debug)]
pub struct SinglesPlanner {
    space: PairSpace,
    eta: f64,
    partial_value: f64,
    memo: HashMap<(Vec<Sym>, usize), (f64, (Basis, Basis))>,
}

impl SinglesPlanner {
    pub const DEFAULT_ETA: f64 = 0.9;
    pub const DEFAULT_PARTIAL: f64 = 1e-3;

    pub fn new(n: usize) -> Self {
        Self::with_parameters(n, Self::DEFAULT_ETA, Self::DEFAULT_PARTIAL)
    }

    pub fn with_parameters(n: usize, eta: f64, partial_value: f64) -> Self {
        SinglesPlanner { space: PairSpace::new(n), eta, partial_value, memo: HashMap::new() }
    }

    pub fn space(&self) -> &PairSpace {
        &self.space
    }

    /// Bases for pair `pair` given the operators known so far.
    pub fn choose(&mut self, known: &[Sym], pair: usize) -> (Basis, Basis) {
        let k = self.space.knowledge(known);
        self.best(&k, pair).1
    }

    /// Expected value of the remaining singles from `pair` on.
    pub fn value(&mut self, known: &[Sym], pair: usize) -> f64 {
        let k = self.space.knowledge(known);
        self.best(&k, pair).0
    }

    fn terminal(&self, k: &Echelon) -> f64 {
        let xx = self.space.is_known(k, self.space.xx());
        let zz = self.space.is_known(k, self.space.zz());
        match (xx, zz) {
            (true, true) => 1.0,
            (false, false) => 0.0,
            _ => self.partial_value,
        }
    }

    fn best(&mut self, k: &Echelon, pair: usize) -> (f64, (Basis, Basis)) {
        if pair >= self.space.n() {
            return (self.terminal(k), (Basis::X, Basis::X));
        }
        let key = (k.rows().to_vec(), pair);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (a, b) = (self.space.code_a(pair), self.space.code_b(pair));
        let eta = self.eta;
        let mut best = (f64::NEG_INFINITY, (Basis::X, Basis::X));
        for ba in BASES {
            for bb in BASES {
                let mut v = 0.0;
                for (arr_a, arr_b) in [(true, true), (true, false), (false, true), (false, false)] {
                    let p = (if arr_a { eta } else { 1.0 - eta }) * (if arr_b { eta } else { 1.0 - eta });
                    let mut next = k.clone();
                    if arr_a {
                        next.insert(self.space.residue(sym_basis(a, ba)));
                    }
                    if arr_b {
                        next.insert(self.space.residue(sym_basis(b, bb)));
                    }
                    v += p * self.best(&next, pair + 1).0;
                }
                if v > best.0 + 1e-12 {
                    best = (v, (ba, bb));
                }
            }
        }
        self.memo.insert(key, best);
        best
    }
}
