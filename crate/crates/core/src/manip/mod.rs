//! Ranking profiles over `S_k^n`, social choice functions, and the
//! manipulation/isoperimetry machinery: censuses of manipulation points,
//! boundaries and fibers, canonical paths, local dictators and distances to
//! the nonmanipulable family.
//!
//! Profile indexing is voter-major: a profile's index is the base-`k!`
//! number whose digit `i` (voter `i`, least significant first) is the Lehmer
//! code of that voter's ranking.

mod audit;
mod boundary;
mod census;
mod distance;
mod influence;
mod iso;
mod local_dictator;
mod paths;
mod ranking;
mod scf;

pub use audit::{audit_anonymity, audit_neutrality, NeutralityReport};
pub use boundary::{boundary_census, default_gamma, BoundaryCensus, FiberClass, PairBoundary};
pub use census::{
    census, census_mc, gs_witness, is_manipulable_at, is_r_manipulable_at,
    non_manip_boundary_audit, pair_manipulation_probability, ManipulationCensus,
    ManipulationRecord,
};
pub use distance::{dist_to_nonmanip, quantitative_gs_gate, DistanceReport, GsGateReport};
pub use influence::{const_distance_bound, outcome_variances};
pub use influence::{ranking_influences, RankingInfluences};
pub use iso::product_complete_graph_isoperimetry;
pub use local_dictator::{local_dictator_census, LocalDictatorCensus};
pub use paths::{canonical_path, canonical_path_above, congestion_census, CongestionReport};
pub use ranking::{factorial, profile_from_index, profile_index, AdjacentTransposition, Ranking};
pub use scf::{Rule, SocialChoiceFunction};
