//! Seeded random-graph families: G(n, p), random geometric graphs and
//! preferential attachment.

mod erdos_renyi;
mod geometric;
mod preferential;
mod rng;

pub use erdos_renyi::{er_from_uniforms, er_uniforms, gen_erdos_renyi, pair_count};
pub use geometric::{gen_geometric, geometric_node_count, graph_from_placement, GeometricPlacement};
pub use preferential::{attachment_set, gen_preferential, gen_preferential_with, PreferentialOptions};
pub use rng::{RngSeed, RNG_ALGORITHM};
