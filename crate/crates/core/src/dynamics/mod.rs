//! Synchronous majority dynamics on odd-degree graphs with the decreasing
//! quadratic energy certificate, plus information-retention experiments.

mod graph;
mod run;

pub use graph::OpinionGraph;
pub use run::{
    retention_experiment, retention_sweep, run_to_period, step, DynamicsTrace, RetentionReport,
};
