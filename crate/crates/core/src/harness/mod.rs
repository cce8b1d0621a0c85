//! Run configuration, seeded fixtures and the verify, sweep and oracle runs
//! behind the `wicklab` binary.

pub mod config;
pub mod fixtures;
pub mod run;

pub use config::{ExponentGrid, Format, Mode, Output, RunConfig, Tolerances};
pub use fixtures::{conv_wick_fixtures, fixture_seed, random_chaos, FixturePair};
pub use run::{run_oracle, run_sweep, run_verify, wick_oracle, RunMetadata, SweepResult, ORACLE_CASES};
