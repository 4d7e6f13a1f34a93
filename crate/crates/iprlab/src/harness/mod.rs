//! Reproducible experiment harness.
//!
//! Ties the generators, solvers, and analytic checks into configured runs:
//! parse a plain-text config, fan graphs out over a worker pool with
//! per-graph derived seeds, aggregate per-cell statistics, and write every
//! table, histogram, and checksum the run produces. Output depends only on
//! the configuration, never on worker count.

pub mod config;
pub mod figures;
pub mod run;
pub mod verify;

pub use config::{parse_config, RunConfig};
pub use figures::{emit_figure_data, SUPPORTED_FIGURES};
pub use run::{
    graph_seed, mix_seed, run_ensemble, write_manifest, CellData, CellFailure, OutputRecord,
};
pub use verify::{verify_analytics, VerifyCheck, VerifyReport};
