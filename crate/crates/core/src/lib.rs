//! Quantitative social choice toolkit.
//!
//! The crate is organized around five computational domains:
//!
//! * [`boolean`] — dense Boolean functions on the hypercube, Walsh–Hadamard
//!   transforms, influences, noise operators, resilience, hypercontractive
//!   diagnostics and the named generator zoo,
//! * [`gaussian`] — scalar normal special functions, the correlated quadrant
//!   probability `J_rho` with its verified calculus, and Monte-Carlo checks of
//!   Gaussian noise-stability statements,
//! * [`condorcet`] — exact, transform-based and Monte-Carlo Condorcet paradox
//!   probabilities for three alternatives, Arrow classification, and
//!   `k`-alternative constitutions,
//! * [`manip`] — ranking-profile machinery over `S_k^n`: manipulation-point
//!   censuses, boundaries, fibers, canonical paths, isoperimetry and local
//!   dictators,
//! * [`dynamics`] / [`aggregate`] — synchronous majority dynamics with the
//!   quadratic energy certificate, jury curves, KKL diagnostics and
//!   effects under non-product measures.
//!
//! Everything dense is capped at arity 24; every stochastic routine takes an
//! explicit seed and draws from counter-based streams so results reproduce at
//! any thread count.

pub mod aggregate;
pub mod boolean;
pub mod condorcet;
pub mod dynamics;
pub mod error;
pub mod gaussian;
pub mod manip;
pub mod quadrature;
pub mod rng;

pub use boolean::{BooleanFunction, Codomain, FourierExpansion};
pub use error::{Error, Result};
