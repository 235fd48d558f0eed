//! Synchronous simulators: W-MSR resilient consensus and threshold contagion.

mod cascade;
mod consensus;

pub use cascade::{
    cascade_step, contagion_from_any_m, run_cascade, CascadeOutcome, CascadeState,
    ContagionMethod, SIMULATE_LIMIT,
};
pub use consensus::{
    run_consensus, validate_f_local, wmsr_filter, wmsr_round, Adversary, AdversaryStrategy,
    ConsensusConfig, ConsensusTrace, FilterMode,
};
