//! Stabilizer-formalism simulation of photonic graph states.
//!
//! The tableau tracks exact signs so that parity information survives
//! fusions and measurement patterns. Loss is an erasure flag on a photon,
//! and depolarizing noise lives in a [`PauliFrame`] that only flips reported
//! outcomes.

mod error;
pub mod frame;
pub mod fusion;
pub mod graph;
pub mod measure;
pub mod pauli;
pub mod tableau;

pub use error::StabError;
pub use frame::PauliFrame;
pub use fusion::{fuse, fuse_with_coin, FusionBases, FusionEvent};
pub use graph::Graph;
pub use measure::{measure_pauli, MeasurementOutcome};
pub use pauli::{Pauli, PauliString};
pub use tableau::{Gate, Measurement, StabilizerTableau};
