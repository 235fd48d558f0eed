//! Graph robustness toolkit: exact r-robustness and ρ-degree cut search,
//! random-graph families with robustness guarantees, W-MSR consensus and
//! threshold contagion simulators, NAE3SAT reduction gadgets, and a
//! Monte-Carlo sweep harness.
//!
//! Combinatorial routines work on [`Graph`] and [`NodeSet`]. Real-valued
//! pieces (geometric placements, consensus values, threshold arithmetic) are
//! generic over [`Scalar`], implemented for `f32` and `f64`; the aliases
//! below fix the common choices.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod nodeset;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{Graph, TriPartition};
pub use nodeset::NodeSet;
pub use scalar::Scalar;

pub type Placement = generators::GeometricPlacement<f64>;
pub type Placement32 = generators::GeometricPlacement<f32>;
pub type ConsensusConfig64 = dynamics::ConsensusConfig<f64>;
pub type ConsensusConfig32 = dynamics::ConsensusConfig<f32>;
pub type ConsensusTrace64 = dynamics::ConsensusTrace<f64>;
pub type ConsensusTrace32 = dynamics::ConsensusTrace<f32>;
pub type AdversaryStrategy64 = dynamics::AdversaryStrategy<f64>;
