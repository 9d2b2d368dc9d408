//! The experiment pipeline behind the command-line tool: orbit export,
//! chaos-degree comparison across qubit counts, the verification suite and
//! operator dumps.

mod config;
mod dump;
mod runs;
mod verify;

pub use config::{
    ClassicalModeKind, ConfigOverrides, ExperimentConfig, OutputFormat, CONTINUATION_STREAM,
};
pub use dump::{oracle_dump, OperatorKind};
pub use runs::{
    compare_chaos, run_chaos, run_orbits, write_table, ChaosComparison, ChaosSummary,
    DifferenceRow, OrbitSummary, RunReport, Summary,
};
pub use verify::{run_verify, CheckOutcome, MeanPositionFn, VerifyOptions, VerifyReport};
