//! Concatenated ring graph codes.
//!
//! A depth-`N` code hangs a ring of `n` vertices off an encoding vertex and
//! replaces each ring vertex by another ring, `N` times; only the innermost
//! vertices are photons. This crate builds those graphs, the emitter
//! protocol that produces them, the single-qubit measurement patterns of the
//! unit ring and the decision trees used to fuse two blocks.

pub mod decode;
mod error;
pub mod generation;
pub mod graph_spec;
pub mod patterns;
pub mod planner;
pub mod spec;
pub mod strategy;
pub mod symplectic;
pub mod tree;

use serde::{Deserialize, Serialize};

pub use error::CodeError;
pub use generation::{
    generation_sequence, line_generation_sequence, GenOp, GenerationSequence, OpCounts, PhotonPauli,
};
pub use graph_spec::{build_concatenated_ring, build_ring_line, same_reduced_state, GraphSpec, Vertex, VertexKind};
pub use patterns::{pauli_mode_bases, pauli_patterns, MeasurementPattern};
pub use planner::SinglesPlanner;
pub use spec::{resource_counts, ResourceCounts, RingCodeSpec};
pub use strategy::{
    layer_strategies, layer_strategy_name, AdaptiveFusion, FuseAll, FuseClass, LayerStrategy, PairAction, PairRecord,
    StrategyRegistry,
};
pub use tree::{fusion_strategy, photon_tree, FusionStrategy, TreeNode};

/// Single-qubit measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}
