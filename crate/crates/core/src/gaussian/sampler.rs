use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Seed-deterministic sampler of correlated Gaussian pairs `(N, M)` with
/// covariance `(I_d, ρI_d; ρI_d, I_d)`.
#[derive(Debug, Clone)]
pub struct GaussSampler {
    pub seed: u64,
    pub dimension: usize,
    pub rho: f64,
}

impl GaussSampler {
    pub fn new(seed: u64, dimension: usize, rho: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&rho) {
            return Err(Error::ParameterDomain(format!("rho {rho} outside [-1,1]")));
        }
        if dimension == 0 {
            return Err(Error::ParameterDomain("dimension must be positive".into()));
        }
        Ok(Self {
            seed,
            dimension,
            rho,
        })
    }

    /// Draws one `(N, M)` pair using the supplied stream.
    pub fn draw(&self, rng: &mut impl Rng, n: &mut [f64], m: &mut [f64]) {
        let lift = (1.0 - self.rho * self.rho).sqrt();
        for i in 0..self.dimension {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            n[i] = a;
            m[i] = self.rho * a + lift * b;
        }
    }
}
