//! Tableau vs dense statevector on random Clifford circuits.

mod common;

use common::StateVector;
use proptest::prelude::*;
use stabilizer_core::*;

#[derive(Clone, Debug)]
enum Op {
    Gate(Gate),
    Measure(Vec<Pauli>),
}

fn op_strategy(n: usize) -> impl Strategy<Value = Op> {
    let q = 0..n;
    let pair = (0..n, 1..n).prop_map(move |(a, d)| (a, (a + d) % n));
    prop_oneof![
        q.clone().prop_map(|q| Op::Gate(Gate::H(q))),
        q.clone().prop_map(|q| Op::Gate(Gate::S(q))),
        q.clone().prop_map(|q| Op::Gate(Gate::SDag(q))),
        q.clone().prop_map(|q| Op::Gate(Gate::X(q))),
        q.clone().prop_map(|q| Op::Gate(Gate::Y(q))),
        pair.clone().prop_map(|(a, b)| Op::Gate(Gate::CZ(a, b))),
        pair.prop_map(|(a, b)| Op::Gate(Gate::CNOT(a, b))),
        proptest::collection::vec(
            prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)],
            n
        )
        .prop_map(Op::Measure),
    ]
}

fn circuit() -> impl Strategy<Value = (usize, Vec<Op>, Vec<bool>)> {
    (2usize..=6).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(op_strategy(n), 1..40),
            proptest::collection::vec(any::<bool>(), 40),
        )
    })
}

fn apply_sv(sv: &mut StateVector, g: Gate) {
    match g {
        Gate::H(q) => sv.h(q),
        Gate::S(q) => sv.s(q),
        Gate::SDag(q) => sv.s_dag(q),
        Gate::X(q) => sv.pauli(q, Pauli::X),
        Gate::Y(q) => sv.pauli(q, Pauli::Y),
        Gate::Z(q) => sv.pauli(q, Pauli::Z),
        Gate::CZ(a, b) => sv.cz(a, b),
        Gate::CNOT(c, t) => sv.cnot(c, t),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Every measurement probability predicted by the tableau (1 or 1/2) matches
    /// the statevector exactly, and both stay in lockstep after projection.
    #[test]
    fn gottesman_knill_equivalence((n, ops, coins) in circuit()) {
        let mut t = StabilizerTableau::new(n);
        let mut sv = StateVector::zeros(n);
        for (k, op) in ops.into_iter().enumerate() {
            match op {
                Op::Gate(g) => {
                    t.apply(g).unwrap();
                    apply_sv(&mut sv, g);
                }
                Op::Measure(letters) => {
                    let ops: Vec<(usize, Pauli)> = letters.iter().cloned().enumerate().collect();
                    let p = PauliString::from_ops(n, &ops);
                    if p.is_identity_letters() { continue; }
                    let expect = sv.expectation(&p);
                    match t.peek(&p) {
                        Some(v) => prop_assert!((expect - v as f64).abs() < 1e-9),
                        None => prop_assert!(expect.abs() < 1e-9),
                    }
                    let m = t.measure_forced(&p, if coins[k % coins.len()] { -1 } else { 1 });
                    let prob = sv.project(&p, m.value);
                    let want = if m.random { 0.5 } else { 1.0 };
                    prop_assert!((prob - want).abs() < 1e-9);
                    prop_assert!(t.is_valid());
                }
            }
        }
        // Final states agree on every stabilizer generator.
        for g in t.stabilizers() {
            prop_assert!((sv.expectation(&g) - 1.0).abs() < 1e-9);
        }
    }

    /// A known error before a commuting measurement never flips it; before an
    /// anticommuting one it always does.
    #[test]
    fn frame_flips_exactly_on_anticommutation(err in 0usize..4, basis in 1usize..4) {
        let ps = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let (e, b) = (ps[err], ps[basis]);
        let mut t = StabilizerTableau::new(1);
        match b { Pauli::X => t.h(0), Pauli::Y => { t.h(0); t.s(0) }, _ => {} }
        let mut frame = PauliFrame::new(1);
        frame.set(0, e);
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let out = measure_pauli(&mut t, 0, b, &frame, false, &mut rng).unwrap();
        let expected = if e.commutes_with(b) { 1 } else { -1 };
        prop_assert_eq!(out, MeasurementOutcome::Deterministic(expected));
    }

    #[test]
    fn frame_composition_is_involutive(a in proptest::collection::vec(0usize..4, 5)) {
        let ps = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let mut f = PauliFrame::new(5);
        for (q, &k) in a.iter().enumerate() { f.set(q, ps[k]); }
        prop_assert_eq!(f.compose(&f), PauliFrame::new(5));
        let g = f.compose(&PauliFrame::new(5));
        prop_assert_eq!(g.compose(&f).compose(&f), g);
    }
}
