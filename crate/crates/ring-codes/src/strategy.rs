use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::symplectic::{Echelon, PairSpace};
use crate::{Basis, CodeError, RingCodeSpec};

/// What a fusion of two sub-blocks revealed about their encoding vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FuseClass {
    /// Both XX and ZZ are known.
    Success,
    /// Only XX is known.
    X,
    Y,
    Z,
    /// Nothing is known.
    Loss,
}

impl FuseClass {
    pub fn from_failure(basis: Basis) -> Self {
        match basis {
            Basis::X => FuseClass::X,
            Basis::Y => FuseClass::Y,
            Basis::Z => FuseClass::Z,
        }
    }

    pub fn classify(space: &PairSpace, knowledge: &Echelon) -> Self {
        let xx = space.is_known(knowledge, space.xx());
        let zz = space.is_known(knowledge, space.zz());
        if xx && zz {
            FuseClass::Success
        } else if xx {
            FuseClass::X
        } else if space.is_known(knowledge, space.yy()) {
            FuseClass::Y
        } else if zz {
            FuseClass::Z
        } else {
            FuseClass::Loss
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRecord {
    Fused(FuseClass),
    Singles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairAction {
    /// Fuse the pair. `failure_basis` only matters for photons.
    Fuse { failure_basis: Basis },
    /// Measure both sides separately in bases picked by the planner.
    Singles,
}

/// Per-layer rule deciding, pair by pair in emission order, whether to fuse.
pub trait LayerStrategy: Debug + Send + Sync {
    fn name(&self) -> &'static str;
    fn action(&self, pair: usize, history: &[PairRecord]) -> PairAction;
}

/// Loss-protection tree: keeps fusing after failures whose outcome still
/// leaves a route to success.
#[derive(Clone, Copy, Debug, Default)]
pub struct AdaptiveFusion;

/// Fuses while fusions succeed and measures the rest separately.
#[derive(Clone, Copy, Debug, Default)]
pub struct FuseAll;

fn only_fusions(history: &[PairRecord]) -> Option<Vec<FuseClass>> {
    history
        .iter()
        .map(|r| match r {
            PairRecord::Fused(c) if *c != FuseClass::Success => Some(*c),
            _ => None,
        })
        .collect()
}

impl LayerStrategy for AdaptiveFusion {
    fn name(&self) -> &'static str {
        "adaptive"
    }

    fn action(&self, _pair: usize, history: &[PairRecord]) -> PairAction {
        use FuseClass::*;
        let Some(classes) = only_fusions(history) else {
            return PairAction::Singles;
        };
        let fuse = |b| PairAction::Fuse { failure_basis: b };
        match classes.as_slice() {
            [] | [X] | [X, Loss] | [Loss | Y | Z, Y] => fuse(Basis::X),
            [Loss | Y | Z] => fuse(Basis::Y),
            [X, X] | [X, X, Z] => fuse(Basis::Z),
            _ => PairAction::Singles,
        }
    }
}

impl LayerStrategy for FuseAll {
    fn name(&self) -> &'static str {
        "fuse-all"
    }

    fn action(&self, _pair: usize, history: &[PairRecord]) -> PairAction {
        if history.iter().all(|r| *r == PairRecord::Fused(FuseClass::Success)) {
            PairAction::Fuse { failure_basis: Basis::X }
        } else {
            PairAction::Singles
        }
    }
}

type Factory = fn() -> Box<dyn LayerStrategy>;

/// Named layer strategies.
pub struct StrategyRegistry {
    entries: Vec<(&'static str, Factory)>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = StrategyRegistry { entries: Vec::new() };
        r.register("adaptive", || Box::new(AdaptiveFusion));
        r.register("fuse-all", || Box::new(FuseAll));
        r
    }
}

impl StrategyRegistry {
    pub fn register(&mut self, name: &'static str, factory: Factory) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, factory));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str) -> Result<Box<dyn LayerStrategy>, CodeError> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f())
            .ok_or_else(|| CodeError::Unsupported(format!("unknown layer strategy '{name}'")))
    }
}

/// Strategy name for `layer` (1 = photons): loss protection up to the
/// switch layer, fuse-all above it.
pub fn layer_strategy_name(spec: &RingCodeSpec, layer: usize) -> &'static str {
    if layer <= spec.switch_layer {
        "adaptive"
    } else {
        "fuse-all"
    }
}

/// Strategies for layers `1..=depth`, bottom first.
pub fn layer_strategies(spec: &RingCodeSpec) -> Vec<Box<dyn LayerStrategy>> {
    let reg = StrategyRegistry::default();
    (1..=spec.depth).map(|l| reg.get(layer_strategy_name(spec, l)).expect("built-in strategy")).collect()
}
