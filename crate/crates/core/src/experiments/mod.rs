//! Seeded parameter sweeps, presets and their CSV / SVG outputs.
//!
//! Replicate `r` of every grid point draws from stream `r` of the master
//! seed, so series and grid points share random numbers and a sweep gives
//! the same result whether it runs on one thread or many.

mod output;
mod plot;
mod presets;
mod runner;
mod spec;

pub use output::{csv_columns, emit_csv, header_comments, to_csv};
pub use plot::{degree_ccdf_plot, emit_plot, sweep_plot, Plot, PlotKind, PlotSeries};
pub use presets::{
    canonical_name, catalog, file_stem, preset, preset_full_scale, DEFAULT_MASTER_SEED, ER_CM_REPLICATES, ER_CM_SIZE,
    PA_CASES, PA_DESK_T, PA_FULL_T, PRESET_ALIASES, PRESET_NAMES,
};
pub use runner::{columns, run_sweep, run_sweep_with, Parallelism, Summary, SweepResult, SweepRow, INFEASIBLE_FLAG};
pub use spec::{
    DistSpec, ErRates, GridPoint, ModelSpec, ResolvedModel, Series, SweepAxis, SweepSpec, Xi2Derivation, Xi2Rule,
};
