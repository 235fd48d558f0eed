//! Monte-Carlo sweeps over the random-graph families and their result files.

mod analysis;
mod records;
mod sweep;
mod threshold;

pub use analysis::{gnuplot_script, half_crossing, Crossing};
pub use records::{format_float, read_records, write_records, RecordFormat, SweepRecord, CSV_HEADER};
pub use sweep::{
    run_ba_trials, run_er_sweep, run_geometric_sweep, run_sweep, GeometricPoint, Property,
    SweepSpec, DEFAULT_EXACT_LIMIT, DEFAULT_OFFSETS, DEFAULT_TRIALS,
};
pub use threshold::threshold_p;
