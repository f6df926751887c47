use rand::Rng;

use crate::error::StabError;
use crate::pauli::{phase_exponent, words_for, Pauli, PauliString};

/// Clifford gates understood by [`StabilizerTableau::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    SDag(usize),
    X(usize),
    Y(usize),
    Z(usize),
    CZ(usize, usize),
    CNOT(usize, usize),
}

/// Result of measuring a Hermitian Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub value: i8,
    pub random: bool,
}

/// Aaronson–Gottesman tableau with destabilizers and exact signs.
///
/// Rows `0..n` are destabilizers, rows `n..2n` stabilizer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    w: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<bool>,
}

impl StabilizerTableau {
    /// The all-zero computational basis state.
    pub fn new(n: usize) -> Self {
        let w = words_for(n);
        let mut t = StabilizerTableau {
            n,
            w,
            x: vec![0; 2 * n * w],
            z: vec![0; 2 * n * w],
            r: vec![false; 2 * n],
        };
        for q in 0..n {
            t.set_bit_x(q, q, true);
            t.set_bit_z(n + q, q, true);
        }
        t
    }

    pub fn plus_state(n: usize) -> Self {
        let mut t = Self::new(n);
        for q in 0..n {
            t.h(q);
        }
        t
    }

    /// Graph state from a symmetric adjacency matrix with empty diagonal.
    pub fn graph_state(adjacency: &[Vec<bool>]) -> Result<Self, StabError> {
        let n = adjacency.len();
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(StabError::InvalidGraph(format!("row {i} has length {}", row.len())));
            }
            if row[i] {
                return Err(StabError::InvalidGraph(format!("self loop on vertex {i}")));
            }
            for j in 0..n {
                if row[j] != adjacency[j][i] {
                    return Err(StabError::InvalidGraph(format!("edge ({i},{j}) not symmetric")));
                }
            }
        }
        let w = words_for(n);
        let mut t = StabilizerTableau {
            n,
            w,
            x: vec![0; 2 * n * w],
            z: vec![0; 2 * n * w],
            r: vec![false; 2 * n],
        };
        for i in 0..n {
            t.set_bit_z(i, i, true);
            t.set_bit_x(n + i, i, true);
            for j in 0..n {
                if adjacency[i][j] {
                    t.set_bit_z(n + i, j, true);
                }
            }
        }
        Ok(t)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, StabError> {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(StabError::IndexOutOfRange { index: a.max(b), num_qubits: n });
            }
            if a == b {
                return Err(StabError::InvalidGraph(format!("self loop on vertex {a}")));
            }
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Self::graph_state(&adj)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn check_index(&self, q: usize) -> Result<(), StabError> {
        if q < self.n {
            Ok(())
        } else {
            Err(StabError::IndexOutOfRange { index: q, num_qubits: self.n })
        }
    }

    #[inline]
    fn bit_x(&self, row: usize, q: usize) -> bool {
        (self.x[row * self.w + q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    fn bit_z(&self, row: usize, q: usize) -> bool {
        (self.z[row * self.w + q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    fn set_bit_x(&mut self, row: usize, q: usize, v: bool) {
        let i = row * self.w + q / 64;
        let m = 1u64 << (q % 64);
        if v {
            self.x[i] |= m
        } else {
            self.x[i] &= !m
        }
    }

    #[inline]
    fn set_bit_z(&mut self, row: usize, q: usize, v: bool) {
        let i = row * self.w + q / 64;
        let m = 1u64 << (q % 64);
        if v {
            self.z[i] |= m
        } else {
            self.z[i] &= !m
        }
    }

    pub fn apply(&mut self, gate: Gate) -> Result<(), StabError> {
        match gate {
            Gate::H(q) | Gate::S(q) | Gate::SDag(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                self.check_index(q)?
            }
            Gate::CZ(a, b) | Gate::CNOT(a, b) => {
                self.check_index(a)?;
                self.check_index(b)?;
                if a == b {
                    return Err(StabError::SameQubit(a));
                }
            }
        }
        match gate {
            Gate::H(q) => self.h(q),
            Gate::S(q) => self.s(q),
            Gate::SDag(q) => self.s_dag(q),
            Gate::X(q) => self.pauli(q, Pauli::X),
            Gate::Y(q) => self.pauli(q, Pauli::Y),
            Gate::Z(q) => self.pauli(q, Pauli::Z),
            Gate::CZ(a, b) => self.cz(a, b),
            Gate::CNOT(c, t) => self.cnot(c, t),
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) {
        let (wi, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.w + wi;
            let xb = self.x[i] & m;
            let zb = self.z[i] & m;
            if xb != 0 && zb != 0 {
                self.r[row] ^= true;
            }
            self.x[i] = (self.x[i] & !m) | zb;
            self.z[i] = (self.z[i] & !m) | xb;
        }
    }

    pub fn s(&mut self, q: usize) {
        let (wi, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.w + wi;
            let xb = self.x[i] & m;
            if xb != 0 && self.z[i] & m != 0 {
                self.r[row] ^= true;
            }
            self.z[i] ^= xb;
        }
    }

    pub fn s_dag(&mut self, q: usize) {
        let (wi, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.w + wi;
            let xb = self.x[i] & m;
            if xb != 0 && self.z[i] & m == 0 {
                self.r[row] ^= true;
            }
            self.z[i] ^= xb;
        }
    }

    /// Conjugate by a single-qubit Pauli: flips the sign of every row that anticommutes.
    pub fn pauli(&mut self, q: usize, p: Pauli) {
        let (px, pz) = p.bits();
        for row in 0..2 * self.n {
            let anti = (self.bit_x(row, q) & pz) ^ (self.bit_z(row, q) & px);
            if anti {
                self.r[row] ^= true;
            }
        }
    }

    /// Conjugate by a multi-qubit Pauli string (phase irrelevant).
    pub fn apply_pauli_string(&mut self, p: &PauliString) {
        for row in 0..2 * self.n {
            if self.row_anticommutes(row, p) {
                self.r[row] ^= true;
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        for row in 0..2 * self.n {
            let xc = self.bit_x(row, c);
            let zc = self.bit_z(row, c);
            let xt = self.bit_x(row, t);
            let zt = self.bit_z(row, t);
            if xc && zt && (xt == zc) {
                self.r[row] ^= true;
            }
            self.set_bit_x(row, t, xt ^ xc);
            self.set_bit_z(row, c, zc ^ zt);
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        for row in 0..2 * self.n {
            let xa = self.bit_x(row, a);
            let xb = self.bit_x(row, b);
            if !(xa || xb) {
                continue;
            }
            let za = self.bit_z(row, a);
            let zb = self.bit_z(row, b);
            if xa && xb && (za ^ zb) {
                self.r[row] ^= true;
            }
            self.set_bit_z(row, a, za ^ xb);
            self.set_bit_z(row, b, zb ^ xa);
        }
    }

    #[inline]
    fn row_anticommutes(&self, row: usize, p: &PauliString) -> bool {
        let b = row * self.w;
        let (xs, zs) = (&self.x[b..b + self.w], &self.z[b..b + self.w]);
        let acc = xs
            .iter()
            .zip(zs)
            .zip(p.xs().iter().zip(p.zs()))
            .fold(0u32, |a, ((&x, &z), (&px, &pz))| a ^ ((x & pz) ^ (z & px)).count_ones());
        acc & 1 == 1
    }

    /// Row `h` <- row `i` * row `h`.
    fn rowsum(&mut self, h: usize, i: usize) {
        let (bh, bi) = (h * self.w, i * self.w);
        let mut e = 2 * (self.r[h] as i32) + 2 * (self.r[i] as i32);
        for k in 0..self.w {
            e += phase_exponent(self.x[bi + k], self.z[bi + k], self.x[bh + k], self.z[bh + k]);
            self.x[bh + k] ^= self.x[bi + k];
            self.z[bh + k] ^= self.z[bi + k];
        }
        self.r[h] = e.rem_euclid(4) == 2;
    }

    fn row_string(&self, row: usize) -> PauliString {
        let b = row * self.w;
        PauliString::from_raw(
            self.n,
            self.x[b..b + self.w].to_vec(),
            self.z[b..b + self.w].to_vec(),
            if self.r[row] { 2 } else { 0 },
        )
    }

    fn set_row(&mut self, row: usize, p: &PauliString, negative: bool) {
        let b = row * self.w;
        self.x[b..b + self.w].copy_from_slice(p.xs());
        self.z[b..b + self.w].copy_from_slice(p.zs());
        self.r[row] = negative;
    }

    fn check_hermitian(p: &PauliString) -> Result<i8, StabError> {
        p.sign().ok_or_else(|| StabError::NotHermitian(p.to_string()))
    }

    /// Deterministic expectation of `p`, or `None` if its outcome would be random.
    pub fn peek(&self, p: &PauliString) -> Option<i8> {
        let sp = Self::check_hermitian(p).expect("peek needs a Hermitian operator");
        if (self.n..2 * self.n).any(|row| self.row_anticommutes(row, p)) {
            return None;
        }
        Some(sp * self.deterministic_sign(p))
    }

    /// Sign of the group element carrying the letters of `p` (p must be in ±S).
    fn deterministic_sign(&self, p: &PauliString) -> i8 {
        let mut sx = vec![0u64; self.w];
        let mut sz = vec![0u64; self.w];
        let mut e = 0i32;
        for i in 0..self.n {
            if self.row_anticommutes(i, p) {
                let row = self.n + i;
                let b = row * self.w;
                e += 2 * self.r[row] as i32;
                for k in 0..self.w {
                    e += phase_exponent(self.x[b + k], self.z[b + k], sx[k], sz[k]);
                    sx[k] ^= self.x[b + k];
                    sz[k] ^= self.z[b + k];
                }
            }
        }
        debug_assert!(sx == p.xs() && sz == p.zs(), "operator not in the stabilizer group");
        if e.rem_euclid(4) == 2 {
            -1
        } else {
            1
        }
    }

    /// Measure a Hermitian Pauli operator with outcome drawn from `rng` when random.
    pub fn measure<R: Rng + ?Sized>(&mut self, p: &PauliString, rng: &mut R) -> Measurement {
        self.measure_with(p, |_| rng.gen_bool(0.5))
    }

    /// Measure with a fixed outcome if random (`value_if_random` = ±1).
    pub fn measure_forced(&mut self, p: &PauliString, value_if_random: i8) -> Measurement {
        self.measure_with(p, |_| value_if_random < 0)
    }

    /// `coin` returns `true` for outcome −1; it is only consulted when the outcome is random.
    pub fn measure_with<F: FnOnce(&PauliString) -> bool>(&mut self, p: &PauliString, coin: F) -> Measurement {
        let sp = Self::check_hermitian(p).expect("measurement needs a Hermitian operator");
        let n = self.n;
        let pivot = (n..2 * n).find(|&row| self.row_anticommutes(row, p));
        match pivot {
            Some(piv) => {
                for row in 0..2 * n {
                    if row != piv && self.row_anticommutes(row, p) {
                        self.rowsum(row, piv);
                    }
                }
                let b = piv * self.w;
                let db = (piv - n) * self.w;
                let (xs, zs) = (self.x[b..b + self.w].to_vec(), self.z[b..b + self.w].to_vec());
                self.x[db..db + self.w].copy_from_slice(&xs);
                self.z[db..db + self.w].copy_from_slice(&zs);
                self.r[piv - n] = self.r[piv];
                let minus = coin(p);
                let value: i8 = if minus { -1 } else { 1 };
                // Row holds the letters of p; the state is stabilized by value * p.
                self.set_row(piv, p, (value * sp) < 0);
                Measurement { value, random: true }
            }
            None => Measurement { value: sp * self.deterministic_sign(p), random: false },
        }
    }

    pub fn measure_qubit<R: Rng + ?Sized>(&mut self, q: usize, basis: Pauli, rng: &mut R) -> Measurement {
        let p = PauliString::single(self.n, q, basis);
        self.measure(&p, rng)
    }

    /// Remove qubit `q` from the state by measuring it in a random basis.
    pub fn trace_out<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) {
        let basis = Pauli::NON_TRIVIAL[rng.gen_range(0..3)];
        self.measure_qubit(q, basis, rng);
    }

    /// Reinitialise `q` to |0⟩.
    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) {
        if self.measure_qubit(q, Pauli::Z, rng).value < 0 {
            self.pauli(q, Pauli::X);
        }
    }

    /// Reinitialise `q` to |+⟩.
    pub fn reset_plus<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) {
        if self.measure_qubit(q, Pauli::X, rng).value < 0 {
            self.pauli(q, Pauli::Z);
        }
    }

    pub fn stabilizers(&self) -> Vec<PauliString> {
        (self.n..2 * self.n).map(|row| self.row_string(row)).collect()
    }

    pub fn destabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|row| self.row_string(row)).collect()
    }

    /// Generators commute pairwise, are independent, and pair with the destabilizers.
    pub fn is_valid(&self) -> bool {
        let stabs = self.stabilizers();
        let destabs = self.destabilizers();
        for i in 0..self.n {
            for j in 0..self.n {
                if !stabs[i].commutes_with(&stabs[j]) {
                    return false;
                }
                if !destabs[i].commutes_with(&destabs[j]) {
                    return false;
                }
                if destabs[i].commutes_with(&stabs[j]) == (i == j) {
                    return false;
                }
            }
        }
        stabs.iter().all(|s| s.sign().is_some())
    }

    /// Generators of the stabilizer subgroup supported inside `qubits`.
    pub fn subgroup_on(&self, qubits: &[usize]) -> Vec<PauliString> {
        let inside: Vec<bool> = (0..self.n).map(|q| qubits.contains(&q)).collect();
        let mut rows = self.stabilizers();
        let mut used = vec![false; rows.len()];
        // Eliminate every x and z column of the outside qubits.
        for q in (0..self.n).filter(|&q| !inside[q]) {
            for col in [Pauli::X, Pauli::Z] {
                let has = |s: &PauliString| {
                    let (x, z) = s.get(q).bits();
                    if col == Pauli::X {
                        x
                    } else {
                        z
                    }
                };
                if let Some(pr) = (0..rows.len()).find(|&i| !used[i] && has(&rows[i])) {
                    used[pr] = true;
                    let pivot = rows[pr].clone();
                    for (i, row) in rows.iter_mut().enumerate() {
                        if i != pr && has(row) {
                            row.mul_assign_right(&pivot);
                        }
                    }
                }
            }
        }
        rows.into_iter().zip(used).filter(|(_, u)| !u).map(|(r, _)| r).collect()
    }

    /// True when both tableaus describe the same pure state.
    pub fn same_state(&self, other: &StabilizerTableau) -> bool {
        self.n == other.n
            && self.stabilizers().iter().all(|g| other.peek(g) == g.sign())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(7)
    }

    #[test]
    fn plus_state_measures_plus() {
        let t = StabilizerTableau::plus_state(1);
        assert_eq!(t.peek(&"X".parse().unwrap()), Some(1));
        assert_eq!(t.peek(&"Z".parse().unwrap()), None);
    }

    #[test]
    fn bell_pair_parities() {
        let mut t = StabilizerTableau::new(2);
        t.h(0);
        t.cnot(0, 1);
        assert_eq!(t.peek(&"XX".parse().unwrap()), Some(1));
        assert_eq!(t.peek(&"ZZ".parse().unwrap()), Some(1));
        assert_eq!(t.peek(&"YY".parse().unwrap()), Some(-1));
    }

    #[test]
    fn random_then_repeatable() {
        let mut t = StabilizerTableau::plus_state(2);
        t.cz(0, 1);
        let z0: PauliString = "ZI".parse().unwrap();
        let m = t.measure(&z0, &mut rng());
        assert!(m.random);
        let again = t.measure(&z0, &mut rng());
        assert!(!again.random);
        assert_eq!(again.value, m.value);
        assert!(t.is_valid());
    }

    #[test]
    fn sdag_inverts_s() {
        let mut t = StabilizerTableau::plus_state(1);
        t.s(0);
        assert_eq!(t.peek(&"Y".parse().unwrap()), Some(1));
        t.s_dag(0);
        assert_eq!(t.peek(&"X".parse().unwrap()), Some(1));
        t.s_dag(0);
        assert_eq!(t.peek(&"Y".parse().unwrap()), Some(-1));
    }
}
