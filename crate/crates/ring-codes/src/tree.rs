use serde::{Deserialize, Serialize};
use stabilizer_core::Pauli;

use crate::planner::SinglesPlanner;
use crate::strategy::{layer_strategy_name, FuseClass, LayerStrategy, PairAction, PairRecord, StrategyRegistry};
use crate::symplectic::{sym, sym_basis, PairSpace, Sym};
use crate::{Basis, CodeError, RingCodeSpec};

/// Decision tree for fusing two unit rings photon pair by photon pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Fuse {
        pair: usize,
        failure_basis: Basis,
        success: Box<TreeNode>,
        failure: Box<TreeNode>,
        loss: Box<TreeNode>,
    },
    Singles {
        pair: usize,
        bases: [Basis; 2],
        both: Box<TreeNode>,
        first_only: Box<TreeNode>,
        second_only: Box<TreeNode>,
        neither: Box<TreeNode>,
    },
    Done {
        outcome: FuseClass,
    },
}

/// Strategy names per layer (bottom first) and the photon-level tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionStrategy {
    pub n: usize,
    pub layers: Vec<String>,
    pub photon_tree: TreeNode,
}

struct Explorer<'a> {
    space: PairSpace,
    strategy: &'a dyn LayerStrategy,
    planner: SinglesPlanner,
}

impl Explorer<'_> {
    fn node(&mut self, pair: usize, history: &mut Vec<PairRecord>, known: &mut Vec<Sym>) -> TreeNode {
        let n = self.space.n();
        if pair == n {
            let k = self.space.knowledge(known);
            return TreeNode::Done { outcome: FuseClass::classify(&self.space, &k) };
        }
        let (a, b) = (self.space.code_a(pair), self.space.code_b(pair));
        let mark = known.len();
        match self.strategy.action(pair, history) {
            PairAction::Fuse { failure_basis } => {
                let mut branch = |this: &mut Self, class: FuseClass, items: Vec<Sym>| {
                    known.truncate(mark);
                    known.extend(items);
                    history.push(PairRecord::Fused(class));
                    let t = this.node(pair + 1, history, known);
                    history.pop();
                    Box::new(t)
                };
                let success = branch(
                    self,
                    FuseClass::Success,
                    vec![sym(a, Pauli::X) | sym(b, Pauli::X), sym(a, Pauli::Z) | sym(b, Pauli::Z)],
                );
                let failure = branch(
                    self,
                    FuseClass::from_failure(failure_basis),
                    vec![sym_basis(a, failure_basis), sym_basis(b, failure_basis)],
                );
                let loss = branch(self, FuseClass::Loss, vec![]);
                known.truncate(mark);
                TreeNode::Fuse { pair, failure_basis, success, failure, loss }
            }
            PairAction::Singles => {
                let (ba, bb) = self.planner.choose(known, pair);
                let mut out = Vec::new();
                for (arr_a, arr_b) in [(true, true), (true, false), (false, true), (false, false)] {
                    known.truncate(mark);
                    if arr_a {
                        known.push(sym_basis(a, ba));
                    }
                    if arr_b {
                        known.push(sym_basis(b, bb));
                    }
                    history.push(PairRecord::Singles);
                    out.push(Box::new(self.node(pair + 1, history, known)));
                    history.pop();
                }
                known.truncate(mark);
                let mut it = out.into_iter();
                TreeNode::Singles {
                    pair,
                    bases: [ba, bb],
                    both: it.next().unwrap(),
                    first_only: it.next().unwrap(),
                    second_only: it.next().unwrap(),
                    neither: it.next().unwrap(),
                }
            }
        }
    }
}

/// Full photon-level decision tree of `strategy` for rings of size `n`.
pub fn photon_tree(n: usize, strategy: &dyn LayerStrategy) -> TreeNode {
    let mut ex = Explorer { space: PairSpace::new(n), strategy, planner: SinglesPlanner::new(n) };
    ex.node(0, &mut Vec::new(), &mut Vec::new())
}

pub fn fusion_strategy(spec: &RingCodeSpec) -> Result<FusionStrategy, CodeError> {
    spec.validate()?;
    let reg = StrategyRegistry::default();
    let layers: Vec<String> = (1..=spec.depth).map(|l| layer_strategy_name(spec, l).to_string()).collect();
    let bottom = reg.get(&layers[0])?;
    Ok(FusionStrategy { n: spec.n, photon_tree: photon_tree(spec.n, bottom.as_ref()), layers })
}

impl TreeNode {
    /// Calls `f` with the sequence of pair indices along every root-to-leaf path.
    pub fn for_each_path(&self, f: &mut impl FnMut(&[usize], FuseClass)) {
        fn walk(node: &TreeNode, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], FuseClass)) {
            match node {
                TreeNode::Done { outcome } => f(path, *outcome),
                TreeNode::Fuse { pair, success, failure, loss, .. } => {
                    path.push(*pair);
                    for c in [success, failure, loss] {
                        walk(c, path, f);
                    }
                    path.pop();
                }
                TreeNode::Singles { pair, both, first_only, second_only, neither, .. } => {
                    path.push(*pair);
                    for c in [both, first_only, second_only, neither] {
                        walk(c, path, f);
                    }
                    path.pop();
                }
            }
        }
        walk(self, &mut Vec::new(), f)
    }
}
