use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ring_codes::decode::{decide, Item, Payload};
use ring_codes::symplectic::{sym, sym_basis, PairSpace, Sym};
use ring_codes::{
    build_concatenated_ring, layer_strategies, pauli_mode_bases, Basis, FuseClass, LayerStrategy, PairAction,
    PairRecord, SinglesPlanner,
};
use stabilizer_core::{fuse, FusionBases, FusionEvent, Pauli, PauliFrame, PauliString, StabilizerTableau};

use crate::stats::{ByOutcome, EmpiricalStats, Outcome};
use crate::{HarnessError, Mode, TrialConfig};

/// Trials per random stream. Streams are fixed by the seed and the chunk
/// index, so results do not depend on how chunks are spread over threads.
const CHUNK: u64 = 1024;

/// Set of record indices; the payload of a decoded operator is the product
/// of these records.
#[derive(Clone, Debug, Default, PartialEq)]
struct Records(Vec<u64>);

impl Records {
    fn single(j: usize) -> Self {
        let mut w = vec![0; j / 64 + 1];
        w[j / 64] = 1 << (j % 64);
        Records(w)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * i + b))
    }
}

impl Payload for Records {
    fn combine_with(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

struct Record {
    op: PauliString,
    value: i8,
}

/// Everything shared by the trials of one configuration.
struct Setup {
    mode: Mode,
    n: usize,
    depth: usize,
    /// Vertices per block; block `s` occupies qubits `s * block_len ..`.
    block_len: usize,
    num_qubits: usize,
    t0: StabilizerTableau,
    space: PairSpace,
    strategies: Vec<Box<dyn LayerStrategy>>,
    /// Pauli-mode bases for X, Y, Z (empty when the ring size has no patterns).
    mode_bases: Vec<Vec<Basis>>,
}

impl Setup {
    fn new(cfg: &TrialConfig, mode: Mode) -> Result<Self, HarnessError> {
        let spec = cfg.spec;
        let needs_patterns = matches!(mode, Mode::Pauli(_)) || spec.depth >= 2;
        let mode_bases: Vec<Vec<Basis>> = [Basis::X, Basis::Y, Basis::Z]
            .into_iter()
            .map(|b| pauli_mode_bases(spec.n, b))
            .collect::<Result<_, _>>()
            .or_else(|e| if needs_patterns { Err(e) } else { Ok(Vec::new()) })?;
        let gs = build_concatenated_ring(&spec)?;
        let block_len = gs.num_vertices();
        let blocks = if mode == Mode::Fusion { 2 } else { 1 };
        let num_qubits = blocks * block_len;
        let mut edges = Vec::new();
        for s in 0..blocks {
            edges.extend(gs.edges.iter().map(|e| (e[0] + s * block_len, e[1] + s * block_len)));
        }
        let mut t0 = StabilizerTableau::from_edges(num_qubits, &edges).expect("valid graph");
        for s in 0..blocks {
            for v in gs.virtual_vertices() {
                t0.measure_forced(&PauliString::single(num_qubits, v + s * block_len, Pauli::X), 1);
            }
        }
        Ok(Setup {
            mode,
            n: spec.n,
            depth: spec.depth,
            block_len,
            num_qubits,
            t0,
            space: PairSpace::new(spec.n),
            strategies: layer_strategies(&spec),
            mode_bases,
        })
    }

    fn encoding(&self, side: usize) -> usize {
        side * self.block_len
    }

    /// Qubit of photon `emission` in block `side`.
    fn photon(&self, side: usize, emission: usize) -> usize {
        side * self.block_len + 1 + emission
    }

    fn bases(&self, b: Basis) -> &[Basis] {
        &self.mode_bases[b as usize]
    }
}

/// Outcome of fusing two sub-blocks: the class and decoded operators on
/// their encoding vertices, each with its flag and records.
struct Fused {
    class: FuseClass,
    items: Vec<((Pauli, Pauli), bool, Records)>,
}

struct Trial<'a> {
    s: &'a Setup,
    eta: f64,
    lambda: f64,
    t: StabilizerTableau,
    frame: PauliFrame,
    records: Vec<Record>,
    rng: &'a mut ChaCha8Rng,
    planner: &'a mut SinglesPlanner,
}

impl Trial<'_> {
    fn lost(&mut self) -> bool {
        self.rng.gen::<f64>() >= self.eta
    }

    fn push(&mut self, op: PauliString, value: i8) -> Records {
        self.records.push(Record { op, value });
        Records::single(self.records.len() - 1)
    }

    /// Sign inferred for `target` (identity if `None`) from the reported
    /// values of `p`, using the noiseless pre-measurement state.
    fn estimate(&self, target: Option<&PauliString>, p: &Records) -> i8 {
        let mut w = target.cloned().unwrap_or_else(|| PauliString::identity(self.s.num_qubits));
        let mut v = 1;
        for j in p.iter() {
            w.mul_assign_right(&self.records[j].op);
            v *= self.records[j].value;
        }
        self.s.t0.peek(&w).expect("decoded records do not match the code") * v
    }

    fn consistent(&self, p: &Records) -> bool {
        self.estimate(None, p) == 1
    }

    fn measure_photon(&mut self, q: usize, b: Basis) -> Option<Records> {
        if self.lost() {
            self.t.trace_out(q, self.rng);
            return None;
        }
        self.frame.depolarize(q, self.lambda, self.rng);
        let p = PauliString::single(self.s.num_qubits, q, b.pauli());
        let m = self.t.measure(&p, self.rng).value;
        let v = if self.frame.flips(q, b.pauli()) { -m } else { m };
        Some(self.push(p, v))
    }

    /// Logical measurement of a depth-`d` block in basis `b`: returns whether
    /// the decoded value is unreliable, and its records.
    fn measure_block(&mut self, side: usize, d: usize, off: usize, b: Basis) -> Option<(bool, Records)> {
        if d == 0 {
            return self.measure_photon(self.s.photon(side, off), b).map(|r| (false, r));
        }
        let s = self.s;
        let sz = s.n.pow(d as u32 - 1);
        let mut items = Vec::with_capacity(s.n);
        for (k, &bk) in s.bases(b).iter().enumerate() {
            if let Some((flagged, payload)) = self.measure_block(side, d - 1, off + k * sz, bk) {
                items.push(Item { op: sym_basis(s.space.code_a(k), bk), flagged, payload });
            }
        }
        let dec = decide(&s.space, &items, sym_basis(s.space.e_a(), b), |p| self.consistent(p))?;
        Some((dec.unreliable(), dec.payload))
    }

    fn fuse_photons(&mut self, off: usize, fb: Basis, ca: usize, cb: usize, items: &mut Vec<Item<Records>>) -> FuseClass {
        let (qa, qb) = (self.s.photon(0, off), self.s.photon(1, off));
        let (lost_a, lost_b) = (self.lost(), self.lost());
        self.frame.depolarize(qa, self.lambda, self.rng);
        self.frame.depolarize(qb, self.lambda, self.rng);
        let bases = FusionBases::default();
        let ev = fuse(&mut self.t, qa, qb, fb.pauli(), &bases, &self.frame, lost_a, lost_b, self.rng)
            .expect("photon qubits are in range");
        let nq = self.s.num_qubits;
        match ev {
            FusionEvent::Success { xx, zz } => {
                for ((pa, pb), v) in [(bases.first, xx), (bases.second, zz)] {
                    let payload = self.push(PauliString::from_ops(nq, &[(qa, pa), (qb, pb)]), v);
                    items.push(Item { op: sym(ca, pa) | sym(cb, pb), flagged: false, payload });
                }
                FuseClass::Success
            }
            FusionEvent::Failure { basis, outcomes, .. } => {
                for ((q, c), v) in [(qa, ca), (qb, cb)].into_iter().zip(outcomes) {
                    let payload = self.push(PauliString::single(nq, q, basis), v);
                    items.push(Item { op: sym(c, basis), flagged: false, payload });
                }
                FuseClass::from_failure(fb)
            }
            FusionEvent::Loss => FuseClass::Loss,
        }
    }

    /// Fuses sub-block pairs of depth `d` whose photons start at emission `off`.
    fn fuse_blocks(&mut self, d: usize, off: usize) -> Fused {
        let s = self.s;
        let space = &s.space;
        let sz = s.n.pow(d as u32 - 1);
        let mut history = Vec::with_capacity(s.n);
        let mut items: Vec<Item<Records>> = Vec::new();
        for k in 0..s.n {
            let (ca, cb) = (space.code_a(k), space.code_b(k));
            let o = off + k * sz;
            match s.strategies[d - 1].action(k, &history) {
                PairAction::Fuse { failure_basis } => {
                    let class = if d == 1 {
                        self.fuse_photons(o, failure_basis, ca, cb, &mut items)
                    } else {
                        let child = self.fuse_blocks(d - 1, o);
                        for ((pa, pb), flagged, payload) in child.items {
                            items.push(Item { op: sym(ca, pa) | sym(cb, pb), flagged, payload });
                        }
                        child.class
                    };
                    history.push(PairRecord::Fused(class));
                }
                PairAction::Singles => {
                    let ops: Vec<Sym> = items.iter().map(|i| i.op).collect();
                    let (ba, bb) = self.planner.choose(&ops, k);
                    for (side, b, c) in [(0, ba, ca), (1, bb, cb)] {
                        if let Some((flagged, payload)) = self.measure_block(side, d - 1, o, b) {
                            items.push(Item { op: sym_basis(c, b), flagged, payload });
                        }
                    }
                    history.push(PairRecord::Singles);
                }
            }
        }
        let ops: Vec<Sym> = items.iter().map(|i| i.op).collect();
        let knowledge = space.knowledge(&ops);
        let class = FuseClass::classify(space, &knowledge);
        let decoded = space
            .root_basis(&knowledge)
            .into_iter()
            .map(|(pa, pb)| {
                let target = sym(space.e_a(), pa) | sym(space.e_b(), pb);
                let dec = decide(space, &items, target, |p| self.consistent(p)).expect("operator is known");
                ((pa, pb), dec.unreliable(), dec.payload)
            })
            .collect();
        Fused { class, items: decoded }
    }

    /// Scores decoded operators against the final state.
    fn score(&self, decoded: &[(PauliString, bool, Records)]) -> Outcome {
        if decoded.iter().any(|(_, unreliable, _)| *unreliable) {
            return Outcome::Detected;
        }
        for (target, _, payload) in decoded {
            let truth = self.t.peek(target).expect("decoded operator is determined by the records");
            if self.estimate(Some(target), payload) != truth {
                return Outcome::Error;
            }
        }
        Outcome::Success
    }

    fn run(mut self) -> Outcome {
        let s = self.s;
        let nq = s.num_qubits;
        match s.mode {
            Mode::Fusion => {
                let fused = self.fuse_blocks(s.depth, 0);
                match fused.class {
                    FuseClass::Success => {
                        let (ea, eb) = (s.encoding(0), s.encoding(1));
                        let decoded: Vec<_> = fused
                            .items
                            .into_iter()
                            .take(2)
                            .map(|((pa, pb), f, p)| (PauliString::from_ops(nq, &[(ea, pa), (eb, pb)]), f, p))
                            .collect();
                        self.score(&decoded)
                    }
                    FuseClass::X => Outcome::FailX,
                    FuseClass::Y => Outcome::FailY,
                    FuseClass::Z => Outcome::FailZ,
                    FuseClass::Loss => Outcome::Loss,
                }
            }
            Mode::Pauli(b) => match self.measure_block(0, s.depth, 0, b) {
                Some((unreliable, payload)) => {
                    let target = PauliString::single(nq, s.encoding(0), b.pauli());
                    self.score(&[(target, unreliable, payload)])
                }
                None => Outcome::Loss,
            },
        }
    }
}

fn run_chunk(setup: &Setup, cfg: &TrialConfig, chunk: u64) -> ByOutcome<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chunk);
    let mut planner = SinglesPlanner::new(setup.n);
    let len = CHUNK.min(cfg.trials - chunk * CHUNK);
    let mut counts = ByOutcome::default();
    for _ in 0..len {
        let trial = Trial {
            s: setup,
            eta: cfg.eta,
            lambda: cfg.lambda,
            t: setup.t0.clone(),
            frame: PauliFrame::new(setup.num_qubits),
            records: Vec::new(),
            rng: &mut rng,
            planner: &mut planner,
        };
        *counts.get_mut(trial.run()) += 1;
    }
    counts
}

/// Runs `cfg.trials` trials in `mode` on the global rayon pool.
pub fn simulate(cfg: &TrialConfig, mode: Mode) -> Result<EmpiricalStats, HarnessError> {
    cfg.validate()?;
    let setup = Setup::new(cfg, mode)?;
    let chunks = cfg.trials.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| run_chunk(&setup, cfg, c))
        .reduce(ByOutcome::default, |mut a, b| {
            a.add(&b);
            a
        });
    Ok(EmpiricalStats::from_counts(cfg, counts))
}

/// Fusion of two depth-`N` blocks.
pub fn simulate_logical_fusion(cfg: &TrialConfig) -> Result<EmpiricalStats, HarnessError> {
    simulate(cfg, Mode::Fusion)
}

/// Logical measurement of `logical` on the encoding vertex of one block.
pub fn simulate_pauli_measurement(cfg: &TrialConfig, logical: Basis) -> Result<EmpiricalStats, HarnessError> {
    simulate(cfg, Mode::Pauli(logical))
}
