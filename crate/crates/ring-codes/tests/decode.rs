use proptest::prelude::*;
use ring_codes::decode::{decide, Item};
use ring_codes::symplectic::{commute, sym, sym_basis, PairSpace, Sym};
use ring_codes::Basis;
use stabilizer_core::Pauli;

fn single_block_items(space: &PairSpace, bases: &[Basis], errors: &[bool], flags: &[bool]) -> Vec<Item<bool>> {
    bases
        .iter()
        .enumerate()
        .map(|(k, &b)| Item { op: sym_basis(space.code_a(k), b), flagged: flags[k], payload: errors[k] })
        .collect()
}

#[test]
fn stabilizers_commute() {
    let space = PairSpace::new(4);
    let rows = space.stabilizers().rows();
    assert_eq!(rows.len(), 10);
    for &a in rows {
        for &b in rows {
            assert!(commute(a, b));
        }
    }
}

#[test]
fn pauli_mode_decoding_rules() {
    let space = PairSpace::new(4);
    let target = sym(space.e_a(), Pauli::X);
    let bases = [Basis::Z, Basis::Y, Basis::Y, Basis::Z];
    let ok = |e: &bool| !*e;

    // No errors: decided, nothing raised.
    let items = single_block_items(&space, &bases, &[false; 4], &[false; 4]);
    let d = decide(&space, &items, target, ok).unwrap();
    assert!(!d.payload && !d.flagged && !d.detected);

    // One wrong outcome: the two patterns disagree.
    let items = single_block_items(&space, &bases, &[false, true, false, false], &[false; 4]);
    let d = decide(&space, &items, target, ok).unwrap();
    assert!(d.detected);

    // The wrong outcome is flagged: the other pattern is used silently.
    let items = single_block_items(&space, &bases, &[false, true, false, false], &[false, true, false, false]);
    let d = decide(&space, &items, target, ok).unwrap();
    assert!(!d.payload && !d.flagged && !d.detected);

    // Both patterns touch a flagged qubit.
    let items = single_block_items(&space, &bases, &[false; 4], &[true, true, false, false]);
    let d = decide(&space, &items, target, ok).unwrap();
    assert!(d.flagged);

    // Losing one qubit from each pattern leaves the target unknown.
    let partial: Vec<Item<bool>> = [items[0].clone(), items[2].clone()].to_vec();
    assert!(decide(&space, &partial, target, ok).is_none());
}

fn arb_item(n: usize) -> impl Strategy<Value = Sym> {
    let q = 2 * n + 2;
    (0..q, 0..q, 1u8..4, 0u8..4).prop_map(|(a, b, pa, pb)| {
        let p = |v| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][v as usize];
        sym(a, p(pa)) ^ sym(b, p(pb))
    })
}

proptest! {
    #[test]
    fn every_representative_reproduces_the_target(
        items in prop::collection::vec(arb_item(4), 0..10),
        target in arb_item(4),
    ) {
        let space = PairSpace::new(4);
        let k = space.knowledge(&items);
        match space.solve(&items, target) {
            None => prop_assert!(!space.is_known(&k, target)),
            Some(sol) => {
                prop_assert!(space.is_known(&k, target));
                for c in 0..sol.num_reps() {
                    let m = sol.rep(c);
                    let prod = items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |a, (_, &v)| a ^ v);
                    prop_assert_eq!(space.residue(prod ^ target), 0);
                }
                for &m in &sol.kernel {
                    let prod = items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |a, (_, &v)| a ^ v);
                    prop_assert_eq!(space.residue(prod), 0);
                }
            }
        }
    }

    #[test]
    fn knowledge_key_is_order_independent(mut items in prop::collection::vec(arb_item(4), 0..8)) {
        let space = PairSpace::new(4);
        let a = space.knowledge(&items);
        items.reverse();
        prop_assert_eq!(a, space.knowledge(&items));
    }
}
