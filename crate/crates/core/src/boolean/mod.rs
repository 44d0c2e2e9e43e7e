//! Dense Boolean functions on the hypercube and their Fourier-side analysis.
//!
//! Bit convention, fixed forever: bit `i` of a table index is coordinate
//! `i + 1`, and a set bit means `x_{i+1} = +1`. The Walsh–Hadamard transform,
//! all enumerations and the serialization formats share this order bit for
//! bit.

mod biased;
mod coalition;
mod fkn;
mod fourier;
mod function;
mod generators;
mod hyper;
mod influence;
mod martingale;
mod noise;
mod resilience;
mod serial;
mod tree;

pub use biased::{
    biased_expectation, biased_influence, biased_variance, russo_derivative_check, BiasedMeasure,
    RussoReport,
};
pub use coalition::{greedy_coalition, CoalitionTrace};
pub use fkn::{corrupt, fkn_analysis, FknReport, FKN_CONSTANT};
pub use fourier::FourierExpansion;
pub use function::{BooleanFunction, Codomain, MAX_DENSE_ARITY};
pub use generators::{build_named, parse_generator, tribes_influence_exact, Generator};
pub use hyper::{
    degree2_fourth_moment_check, hypercontractivity_check, reverse_hypercontractivity_check,
    FourthMomentReport, HyperReport,
};
pub use influence::{influence, influences, noisy_influence_sum_bound, total_influence};
pub use martingale::{martingale_delta, MartingaleDeltaReport};
pub use noise::{
    noise_operator, noisy_inner_product, sample_noisy_inner_product, stability_curve,
    StabilityCurve,
};
pub use resilience::{is_resilient, resilience_from_fourier, ResilienceReport, ResilienceWitness};
pub use serial::{from_json, read_bfn, to_json, write_bfn};
pub use tree::{decision_tree_regularize, DecisionTree, TreeStats};
