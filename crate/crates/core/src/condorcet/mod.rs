//! Paradox probabilities for three alternatives, Arrow classification, and
//! IIA constitutions on `k` alternatives.
//!
//! Rankings of `{a, b, c}` are encoded as sign triples `(x, y, z)`:
//! `x = +1` iff `a` is ranked above `b`, `y = +1` iff `b` above `c`,
//! `z = +1` iff `c` above `a`. The six transitive rankings are exactly the
//! triples other than `±(1,1,1)`, and a pairwise aggregation
//! `(f(x), g(y), h(z))` is paradoxical exactly when all three agree.

mod arrow;
mod constitution;
mod gauss_arrow;
mod paradox;
mod revhyp;
mod source;

pub use arrow::{
    arrow_exhaustive_n3, classify_arrow, kalai_balanced_check, two_influential_paradox_bound,
    ArrowClassification, ArrowVerdict, KalaiReport,
};
pub use constitution::{
    constitution_check, Constitution, ConstitutionMode, ConstitutionReport, PartitionBlock,
};
pub use gauss_arrow::{gaussian_arrow_bound_check, GaussianArrowReport};
pub use paradox::{paradox_probability, ParadoxMode};
pub use revhyp::{boolean_reverse_hyp_check, random_monotone_set, BooleanRevHypReport};
pub use source::{CondorcetSource, ATOMS, ATOM_RANKINGS};
