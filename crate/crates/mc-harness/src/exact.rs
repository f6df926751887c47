use std::collections::HashMap;
use std::hash::Hash;

use ring_codes::decode::{decide, Item};
use ring_codes::symplectic::{sym, sym_basis, PairSpace, Sym};
use ring_codes::{
    layer_strategies, pauli_mode_bases, Basis, FuseClass, LayerStrategy, PairAction, PairRecord, RingCodeSpec,
    SinglesPlanner,
};
use stabilizer_core::Pauli;

use crate::stats::{ByOutcome, Outcome};
use crate::{HarnessError, Mode, MAX_EXACT_DEPTH};

/// Logical measurement result: `None` if lost, else (unreliable, wrong sign).
type Measured = Option<(bool, bool)>;

/// Decoded operators of a sub-block fusion with their flags and error bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Summary {
    class: FuseClass,
    items: Vec<((Pauli, Pauli), bool, bool)>,
}

/// Items of a fusion layer in progress.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Partial {
    history: Vec<PairRecord>,
    items: Vec<(Sym, bool, bool)>,
}

fn add<K: Hash + Eq>(map: &mut HashMap<K, f64>, k: K, p: f64) {
    if p > 0.0 {
        *map.entry(k).or_insert(0.0) += p;
    }
}

/// Sorted for reproducible summation order.
fn sorted<K: Hash + Eq + std::fmt::Debug>(map: HashMap<K, f64>) -> Vec<(K, f64)> {
    let mut v: Vec<_> = map.into_iter().collect();
    v.sort_by_cached_key(|(k, _)| format!("{k:?}"));
    v
}

struct Enumerator {
    n: usize,
    eta: f64,
    lambda: f64,
    space: PairSpace,
    strategies: Vec<Box<dyn LayerStrategy>>,
    mode_bases: Vec<Vec<Basis>>,
    planner: SinglesPlanner,
    singles: HashMap<(usize, Basis), Vec<(Measured, f64)>>,
    fusions: HashMap<usize, Vec<(Summary, f64)>>,
}

fn to_items(items: &[(Sym, bool, bool)]) -> Vec<Item<bool>> {
    items.iter().map(|&(op, flagged, payload)| Item { op, flagged, payload }).collect()
}

impl Enumerator {
    fn eps(&self) -> f64 {
        2.0 * self.lambda / 3.0
    }

    fn measured(&mut self, d: usize, b: Basis) -> Vec<(Measured, f64)> {
        if let Some(v) = self.singles.get(&(d, b)) {
            return v.clone();
        }
        let mut out = HashMap::new();
        if d == 0 {
            let e = self.eps();
            add(&mut out, None, 1.0 - self.eta);
            add(&mut out, Some((false, false)), self.eta * (1.0 - e));
            add(&mut out, Some((false, true)), self.eta * e);
        } else {
            let mut states: Vec<(Vec<(Sym, bool, bool)>, f64)> = vec![(Vec::new(), 1.0)];
            for (k, bk) in self.mode_bases[b as usize].clone().into_iter().enumerate() {
                let child = self.measured(d - 1, bk);
                let op = sym_basis(self.space.code_a(k), bk);
                let mut next = Vec::with_capacity(states.len() * child.len());
                for (items, p) in &states {
                    for &(m, q) in &child {
                        let mut it = items.clone();
                        if let Some((flagged, err)) = m {
                            it.push((op, flagged, err));
                        }
                        next.push((it, p * q));
                    }
                }
                states = next;
            }
            let target = sym_basis(self.space.e_a(), b);
            for (items, p) in states {
                let m = decide(&self.space, &to_items(&items), target, |e| !*e).map(|d| (d.unreliable(), d.payload));
                add(&mut out, m, p);
            }
        }
        let v = sorted(out);
        self.singles.insert((d, b), v.clone());
        v
    }

    /// Outcomes of one physical fusion: class and (op, error) items.
    fn physical(&self, fb: Basis, ca: usize, cb: usize) -> Vec<((FuseClass, Vec<(Sym, bool, bool)>), f64)> {
        let (eta, l, e) = (self.eta, self.lambda, self.eps());
        let mut out = HashMap::new();
        add(&mut out, (FuseClass::Loss, Vec::new()), 1.0 - eta * eta);
        let frame = [(Pauli::I, 1.0 - l), (Pauli::X, l / 3.0), (Pauli::Y, l / 3.0), (Pauli::Z, l / 3.0)];
        let flips = |f: Pauli, b: Pauli| !f.commutes_with(b);
        for (fa, pa) in frame {
            for (fbr, pb) in frame {
                let xx = flips(fa, Pauli::X) ^ flips(fbr, Pauli::X);
                let zz = flips(fa, Pauli::Z) ^ flips(fbr, Pauli::Z);
                let items = vec![
                    (sym(ca, Pauli::X) | sym(cb, Pauli::X), false, xx),
                    (sym(ca, Pauli::Z) | sym(cb, Pauli::Z), false, zz),
                ];
                add(&mut out, (FuseClass::Success, items), eta * eta * 0.5 * pa * pb);
            }
        }
        for (ea, pa) in [(false, 1.0 - e), (true, e)] {
            for (eb, pb) in [(false, 1.0 - e), (true, e)] {
                let items = vec![(sym_basis(ca, fb), false, ea), (sym_basis(cb, fb), false, eb)];
                add(&mut out, (FuseClass::from_failure(fb), items), eta * eta * 0.5 * pa * pb);
            }
        }
        sorted(out)
    }

    fn fused(&mut self, d: usize) -> Vec<(Summary, f64)> {
        if let Some(v) = self.fusions.get(&d) {
            return v.clone();
        }
        let mut states: HashMap<Partial, f64> = HashMap::new();
        states.insert(Partial { history: Vec::new(), items: Vec::new() }, 1.0);
        for k in 0..self.n {
            let (ca, cb) = (self.space.code_a(k), self.space.code_b(k));
            let mut next = HashMap::new();
            for (st, p) in sorted(states) {
                match self.strategies[d - 1].action(k, &st.history) {
                    PairAction::Fuse { failure_basis } => {
                        let branches: Vec<((FuseClass, Vec<(Sym, bool, bool)>), f64)> = if d == 1 {
                            self.physical(failure_basis, ca, cb)
                        } else {
                            self.fused(d - 1)
                                .into_iter()
                                .map(|(s, q)| {
                                    let items = s
                                        .items
                                        .iter()
                                        .map(|&((pa, pb), f, e)| (sym(ca, pa) | sym(cb, pb), f, e))
                                        .collect();
                                    ((s.class, items), q)
                                })
                                .collect()
                        };
                        for ((class, items), q) in branches {
                            let mut s2 = st.clone();
                            s2.history.push(PairRecord::Fused(class));
                            s2.items.extend(items);
                            add(&mut next, s2, p * q);
                        }
                    }
                    PairAction::Singles => {
                        let ops: Vec<Sym> = st.items.iter().map(|i| i.0).collect();
                        let (ba, bb) = self.planner.choose(&ops, k);
                        let (ma, mb) = (self.measured(d - 1, ba), self.measured(d - 1, bb));
                        for &(oa, qa) in &ma {
                            for &(ob, qb) in &mb {
                                let mut s2 = st.clone();
                                s2.history.push(PairRecord::Singles);
                                for (o, op) in [(oa, sym_basis(ca, ba)), (ob, sym_basis(cb, bb))] {
                                    if let Some((f, e)) = o {
                                        s2.items.push((op, f, e));
                                    }
                                }
                                add(&mut next, s2, p * qa * qb);
                            }
                        }
                    }
                }
            }
            states = next;
        }
        let mut out = HashMap::new();
        for (st, p) in states {
            add(&mut out, self.summarize(&st.items), p);
        }
        let v = sorted(out);
        self.fusions.insert(d, v.clone());
        v
    }

    fn summarize(&self, raw: &[(Sym, bool, bool)]) -> Summary {
        let space = &self.space;
        let ops: Vec<Sym> = raw.iter().map(|i| i.0).collect();
        let knowledge = space.knowledge(&ops);
        let items = to_items(raw);
        let decoded = space
            .root_basis(&knowledge)
            .into_iter()
            .map(|(pa, pb)| {
                let target = sym(space.e_a(), pa) | sym(space.e_b(), pb);
                let d = decide(space, &items, target, |e| !*e).expect("operator is known");
                ((pa, pb), d.unreliable(), d.payload)
            })
            .collect();
        Summary { class: FuseClass::classify(space, &knowledge), items: decoded }
    }
}

fn score(decoded: &[(bool, bool)]) -> Outcome {
    if decoded.iter().any(|d| d.0) {
        Outcome::Detected
    } else if decoded.iter().any(|d| d.1) {
        Outcome::Error
    } else {
        Outcome::Success
    }
}

/// Exact outcome distribution of a fusion or logical Pauli measurement,
/// summed over every loss pattern, single-photon Pauli error and fusion
/// coin. Uses the same strategies and decoder as the sampler.
pub fn enumerate_small(spec: &RingCodeSpec, eta: f64, lambda: f64, mode: Mode) -> Result<ByOutcome<f64>, HarnessError> {
    spec.validate()?;
    if spec.depth > MAX_EXACT_DEPTH {
        return Err(HarnessError::ResourceBound(format!(
            "exact enumeration supports depth <= {MAX_EXACT_DEPTH}, got {}",
            spec.depth
        )));
    }
    if spec.n > 15 {
        return Err(HarnessError::ResourceBound(format!("ring size {} > 15", spec.n)));
    }
    if !(0.0..=1.0).contains(&eta) || !(0.0..=1.0).contains(&lambda) {
        return Err(HarnessError::InvalidConfig(format!("eta = {eta}, lambda = {lambda} out of range")));
    }
    let needs_patterns = matches!(mode, Mode::Pauli(_)) || spec.depth >= 2;
    let mode_bases = if needs_patterns {
        [Basis::X, Basis::Y, Basis::Z].into_iter().map(|b| pauli_mode_bases(spec.n, b)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let mut en = Enumerator {
        n: spec.n,
        eta,
        lambda,
        space: PairSpace::new(spec.n),
        strategies: layer_strategies(spec),
        mode_bases,
        planner: SinglesPlanner::new(spec.n),
        singles: HashMap::new(),
        fusions: HashMap::new(),
    };
    let mut dist = ByOutcome::default();
    match mode {
        Mode::Fusion => {
            for (s, p) in en.fused(spec.depth) {
                let o = match s.class {
                    FuseClass::Success => {
                        let d: Vec<(bool, bool)> = s.items.iter().take(2).map(|&(_, f, e)| (f, e)).collect();
                        score(&d)
                    }
                    FuseClass::X => Outcome::FailX,
                    FuseClass::Y => Outcome::FailY,
                    FuseClass::Z => Outcome::FailZ,
                    FuseClass::Loss => Outcome::Loss,
                };
                *dist.get_mut(o) += p;
            }
        }
        Mode::Pauli(b) => {
            for (m, p) in en.measured(spec.depth, b) {
                let o = match m {
                    Some(d) => score(&[d]),
                    None => Outcome::Loss,
                };
                *dist.get_mut(o) += p;
            }
        }
    }
    Ok(dist)
}
