//! NAE3SAT instances and the reduction graphs showing that deciding relaxed
//! and plain ρ-degree cuts is hard.

mod cuts;
mod formula;
mod gadget;

pub use cuts::{assignment_from_cut, cut_from_assignment, verify_cut, verify_degree_cut};
pub use formula::{
    enumerate_formulas, nae3sat_satisfiable, nae_check, Assignment, CnfFormula, Literal,
    BRUTE_FORCE_LIMIT,
};
pub use gadget::{
    build_g_phi, build_g_rho_phi, build_h_phi, build_h_rho_phi, GadgetGraph, GadgetKind, Role,
    Side, CLAUSE_EDGES,
};
