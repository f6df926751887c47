use rand::Rng;
use serde::{Deserialize, Serialize};
use stabilizer_core::{Pauli, PauliString, StabilizerTableau};

use crate::graph_spec::{same_reduced_state, GraphSpec};
use crate::{Basis, CodeError, RingCodeSpec};

/// Pauli on an emitted photon, indexed by emission order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhotonPauli {
    pub photon: usize,
    pub pauli: Basis,
}

/// One step of the emitter protocol. Spins are numbered `0..num_spins`;
/// spin 0 holds the encoding vertex and the last spin is the emitter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum GenOp {
    /// Prepare the spin in |+⟩.
    InitSpin { spin: usize },
    /// CNOT from the spin onto a fresh photon in |0⟩, then H on the spin.
    EmitPhoton { spin: usize, photon: usize },
    #[serde(rename = "CZ")]
    Cz { a: usize, b: usize },
    Hadamard { spin: usize },
    /// S (or S† when `dagger`) on a spin.
    Phase { spin: usize, dagger: bool },
    MeasureSpin { spin: usize, basis: Basis, record: usize },
    /// S† on the spin if the record is +1, S if it is -1.
    SpinCorrection { spin: usize, record: usize },
    /// Pauli frame update on photons, applied when the record is -1.
    FrameUpdate { record: usize, paulis: Vec<PhotonPauli> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub cz: u64,
    pub measurements: u64,
    pub photons: u64,
    /// Explicit spin Hadamards (those inside photon emissions are not counted).
    pub hadamards: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationSequence {
    pub n: usize,
    pub depth: usize,
    pub line: bool,
    pub num_spins: usize,
    pub num_photons: usize,
    pub num_records: usize,
    pub ops: Vec<GenOp>,
}

/// Encoded Pauli operators of a block, as photon Paulis.
#[derive(Clone, Debug, Default)]
struct Logical {
    x: Vec<PhotonPauli>,
    z: Vec<PhotonPauli>,
}

struct Emitter {
    n: usize,
    depth: usize,
    ops: Vec<GenOp>,
    photons: usize,
    records: usize,
}

impl Emitter {
    fn active(&self) -> usize {
        self.depth
    }

    /// Head spin used for a layer-`layer` ring (`layer >= 2`).
    fn head(&self, layer: usize) -> usize {
        self.depth + 1 - layer
    }

    fn measure_y(&mut self, spin: usize, root: usize, frame: Vec<PhotonPauli>) {
        let record = self.records;
        self.records += 1;
        self.ops.push(GenOp::MeasureSpin { spin, basis: Basis::Y, record });
        self.ops.push(GenOp::SpinCorrection { spin: root, record });
        self.ops.push(GenOp::FrameUpdate { record, paulis: frame });
    }

    /// Attach a layer-`layer` ring to spin `root` and return its encoded operators.
    fn attach(&mut self, root: usize, layer: usize) -> Logical {
        let mut code = Vec::with_capacity(self.n);
        let h = if layer == 1 { self.active() } else { self.head(layer) };
        self.ops.push(GenOp::InitSpin { spin: h });
        self.ops.push(GenOp::Cz { a: root, b: h });
        for k in 0..self.n {
            let last = k + 1 == self.n;
            if layer == 1 {
                // Pre-compensate the expected S† byproduct on the last photon.
                if last {
                    self.ops.push(GenOp::Phase { spin: h, dagger: true });
                }
                let photon = self.photons;
                self.photons += 1;
                self.ops.push(GenOp::EmitPhoton { spin: h, photon });
                code.push(Logical {
                    x: vec![PhotonPauli { photon, pauli: Basis::X }],
                    z: vec![PhotonPauli { photon, pauli: Basis::Z }],
                });
            } else {
                code.push(self.attach(h, layer - 1));
                if last {
                    self.ops.push(GenOp::Phase { spin: h, dagger: true });
                }
                self.ops.push(GenOp::Hadamard { spin: h });
            }
        }
        self.ops.push(GenOp::Cz { a: root, b: h });
        let frame = code[self.n - 1].z.clone();
        self.measure_y(h, root, frame);
        // Z on the root equals X(c1) Z(c2); X on the root equals Z(c1) Z(cn).
        let z = [code[0].x.clone(), code[1].z.clone()].concat();
        let x = [code[0].z.clone(), code[self.n - 1].z.clone()].concat();
        Logical { x, z }
    }

    fn finish(self, line: bool) -> GenerationSequence {
        GenerationSequence {
            n: self.n,
            depth: self.depth,
            line,
            num_spins: self.depth + 1,
            num_photons: self.photons,
            num_records: self.records,
            ops: self.ops,
        }
    }
}

/// Emitter protocol for one concatenated ring on spin 0.
pub fn generation_sequence(spec: &RingCodeSpec) -> Result<GenerationSequence, CodeError> {
    spec.validate()?;
    let mut e = Emitter { n: spec.n, depth: spec.depth, ops: Vec::new(), photons: 0, records: 0 };
    e.ops.push(GenOp::InitSpin { spin: 0 });
    e.attach(0, spec.depth);
    Ok(e.finish(false))
}

/// Emitter protocol for two blocks joined into a line, ending with spin 0
/// measured in X.
pub fn line_generation_sequence(spec: &RingCodeSpec) -> Result<GenerationSequence, CodeError> {
    spec.validate()?;
    let mut e = Emitter { n: spec.n, depth: spec.depth, ops: Vec::new(), photons: 0, records: 0 };
    e.ops.push(GenOp::InitSpin { spin: 0 });
    e.attach(0, spec.depth);
    e.ops.push(GenOp::Hadamard { spin: 0 });
    let second = e.attach(0, spec.depth);
    let record = e.records;
    e.records += 1;
    e.ops.push(GenOp::MeasureSpin { spin: 0, basis: Basis::X, record });
    e.ops.push(GenOp::FrameUpdate { record, paulis: second.z });
    Ok(e.finish(true))
}

/// Result of running a sequence on a tableau: spins occupy qubits
/// `0..num_spins`, photon `i` is qubit `num_spins + i`.
pub struct Execution {
    pub state: StabilizerTableau,
    pub records: Vec<i8>,
}

impl GenerationSequence {
    pub fn counts(&self) -> OpCounts {
        let mut c = OpCounts::default();
        for op in &self.ops {
            match op {
                GenOp::Cz { .. } => c.cz += 1,
                GenOp::MeasureSpin { .. } => c.measurements += 1,
                GenOp::EmitPhoton { .. } => c.photons += 1,
                GenOp::Hadamard { .. } => c.hadamards += 1,
                _ => {}
            }
        }
        c
    }

    pub fn photon_qubit(&self, photon: usize) -> usize {
        self.num_spins + photon
    }

    pub fn execute<R: Rng + ?Sized>(&self, rng: &mut R) -> Execution {
        let nq = self.num_spins + self.num_photons;
        let mut t = StabilizerTableau::new(nq);
        let mut records = vec![0i8; self.num_records];
        for op in &self.ops {
            match *op {
                GenOp::InitSpin { spin } => t.reset_plus(spin, rng),
                GenOp::EmitPhoton { spin, photon } => {
                    t.cnot(spin, self.photon_qubit(photon));
                    t.h(spin);
                }
                GenOp::Cz { a, b } => t.cz(a, b),
                GenOp::Hadamard { spin } => t.h(spin),
                GenOp::Phase { spin, dagger } => {
                    if dagger {
                        t.s_dag(spin)
                    } else {
                        t.s(spin)
                    }
                }
                GenOp::MeasureSpin { spin, basis, record } => {
                    records[record] = t.measure(&PauliString::single(nq, spin, basis.pauli()), rng).value;
                }
                GenOp::SpinCorrection { spin, record } => {
                    if records[record] > 0 {
                        t.s_dag(spin)
                    } else {
                        t.s(spin)
                    }
                }
                GenOp::FrameUpdate { record, ref paulis } => {
                    if records[record] < 0 {
                        for p in paulis {
                            t.pauli(self.photon_qubit(p.photon), p.pauli.pauli());
                        }
                    }
                }
            }
        }
        Execution { state: t, records }
    }

    /// Runs the sequence and checks that the kept qubits carry exactly the
    /// target state of `graph` (encoding vertex on spin 0, photons in order).
    pub fn reproduces<R: Rng + ?Sized>(&self, graph: &GraphSpec, rng: &mut R) -> bool {
        let exec = self.execute(rng);
        let target = graph.target_state();
        let photons = graph.photons();
        if photons.len() != self.num_photons {
            return false;
        }
        let mut tq = Vec::new();
        let mut eq = Vec::new();
        if !self.line {
            tq.push(0);
            eq.push(0);
        }
        tq.extend(&photons);
        eq.extend((0..self.num_photons).map(|i| self.photon_qubit(i)));
        same_reduced_state(&target, &tq, &exec.state, &eq)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequence serializes")
    }
}

impl Basis {
    pub fn pauli(self) -> Pauli {
        match self {
            Basis::X => Pauli::X,
            Basis::Y => Pauli::Y,
            Basis::Z => Pauli::Z,
        }
    }
}
