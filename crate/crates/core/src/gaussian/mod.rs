//! Scalar normal special functions, bivariate quadrant probabilities with a
//! verified calculus, and Monte-Carlo checks of Gaussian noise-stability
//! statements.

mod borell;
mod formulas;
mod normal;
mod quadrant;
mod sampler;
mod tournament;

pub use borell::{
    borell_mc_check, gaussian_reverse_hyp_check, BorellReport, GaussianSet, GaussianTestFn,
    ReverseHypReport,
};
pub use formulas::{
    guilbaud_constant, majority_predictability, predictability_crossover, sheppard,
};
pub use normal::{erf, erfc, std_normal_cdf, std_normal_pdf, std_normal_quantile};
pub use quadrant::{
    j_rho, j_rho_closed, j_rho_derivative_checks, j_rho_gradient, j_rho_hessian_closed,
    j_rho_hessian_fd, j_rho_rho_derivative_closed, j_rho_rho_derivative_fd, DerivativeChecks,
    QuadrantParams,
};
pub use sampler::GaussSampler;
pub use tournament::{tournament_mc, TournamentReport};
