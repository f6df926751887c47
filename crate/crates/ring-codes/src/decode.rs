//! Choosing which measured operators to trust.
//!
//! Every known operator is reproduced by an affine family of item subsets.
//! The decoder takes the first subset free of flagged items and raises a
//! detection when two such subsets disagree; if every subset touches a flagged
//! item the result is itself flagged.

use crate::symplectic::{PairSpace, Sym};

/// Sign information attached to a measured operator. Combining two payloads
/// describes the product of their operators.
pub trait Payload: Clone + Default {
    fn combine_with(&mut self, other: &Self);
}

impl Payload for () {
    fn combine_with(&mut self, _: &Self) {}
}

/// Error bit: true when the inferred sign is wrong.
impl Payload for bool {
    fn combine_with(&mut self, other: &Self) {
        *self ^= *other;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Item<P> {
    pub op: Sym,
    pub flagged: bool,
    pub payload: P,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decided<P> {
    pub payload: P,
    /// Every candidate used a flagged item.
    pub flagged: bool,
    /// Two unflagged candidates disagreed.
    pub detected: bool,
}

impl<P> Decided<P> {
    pub fn unreliable(&self) -> bool {
        self.flagged || self.detected
    }
}

pub fn combine<P: Payload>(items: &[Item<P>], mask: u64) -> P {
    let mut p = P::default();
    for (i, it) in items.iter().enumerate() {
        if mask >> i & 1 == 1 {
            p.combine_with(&it.payload);
        }
    }
    p
}

/// Decodes `target`. `consistent` reports whether a payload built from a
/// product equal to a ring stabilizer carries the noiseless sign.
pub fn decide<P, F>(space: &PairSpace, items: &[Item<P>], target: Sym, mut consistent: F) -> Option<Decided<P>>
where
    P: Payload,
    F: FnMut(&P) -> bool,
{
    let ops: Vec<Sym> = items.iter().map(|i| i.op).collect();
    let sol = space.solve(&ops, target)?;
    assert!(sol.kernel.len() <= 24, "too many redundant items");
    let flagged_mask = items.iter().enumerate().filter(|(_, i)| i.flagged).fold(0u64, |m, (i, _)| m | 1 << i);
    // A check fails when its kernel product has the wrong sign.
    let failing: u64 = sol
        .kernel
        .iter()
        .enumerate()
        .filter(|(_, &k)| !consistent(&combine(items, k)))
        .fold(0, |m, (i, _)| m | 1 << i);
    let mut first: Option<(u64, u64)> = None;
    let mut detected = false;
    for coords in 0..sol.num_reps() {
        let mask = sol.rep(coords);
        if mask & flagged_mask != 0 {
            continue;
        }
        match first {
            None => first = Some((coords, mask)),
            Some((c0, _)) => {
                if ((coords ^ c0) & failing).count_ones() % 2 == 1 {
                    detected = true;
                    break;
                }
            }
        }
    }
    Some(match first {
        Some((_, mask)) => Decided { payload: combine(items, mask), flagged: false, detected },
        None => Decided { payload: combine(items, sol.particular), flagged: true, detected: false },
    })
}
