//! Jury-theorem computations, KKL diagnostics, and the effects machinery for
//! non-product measures, including the broadcast-tree example.

mod effects;
mod jury;
mod tree_ising;

pub use effects::{
    effects, pivot_influence, weighted_majority_bound_check, EffectsReport, FiniteDistribution,
    WeightedMajorityReport,
};
pub use jury::{
    jury_curve, jury_strictly_increasing, kkl_diagnostic, majority_win_probability, KklDiagnostic,
};
pub use tree_ising::{tree_ising_exact_r1, tree_ising_experiment, TreeIsingReport, TreeIsingSpec};
