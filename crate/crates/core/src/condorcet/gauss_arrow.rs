use crate::error::{Error, Result};
use crate::gaussian::std_normal_cdf;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct GaussianArrowReport {
    pub p_agree: f64,
    pub std_error: f64,
    /// `(ε/2)^18`, the guaranteed floor when the non-degeneracy gate holds.
    pub delta_bound: f64,
    /// Whether the non-degeneracy condition held at level ε.
    pub gate_applicable: bool,
    pub ok: bool,
}

/// Cholesky factor of the exchangeable covariance with off-diagonal -1/3.
const CHOL: [[f64; 3]; 3] = [
    [1.0, 0.0, 0.0],
    [-1.0 / 3.0, 0.942_809_041_582_063_4, 0.0], // √(8/9)
    [-1.0 / 3.0, -0.471_404_520_791_031_7, 0.816_496_580_927_726], // -√2/3, √6/3
];

/// Monte-Carlo check of the Gaussian pairwise-aggregation floor: with
/// threshold functions `φ_i = sign(· - t_i)` applied to a `(-1/3)`-correlated
/// Gaussian triple, either one alternative is ranked top/bottom with
/// probability ≥ 1 - 2ε (the non-degeneracy gate fails), or
/// `P[φ₁ = φ₂ = φ₃] ≥ (ε/2)^18`.
pub fn gaussian_arrow_bound_check(
    thresholds: [f64; 3],
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<GaussianArrowReport> {
    if !(0.0 < eps && eps <= 0.5) {
        return Err(Error::ParameterDomain(format!(
            "ε must be in (0, 1/2], got {eps}"
        )));
    }
    // Non-degeneracy: for all i ≠ j and u ∈ {±1}:
    // P[φ_i = u] + P[φ_j = -u] ≥ 2ε. For thresholds,
    // P[φ_i = +1] = 1 - Φ(t_i).
    let p_plus: Vec<f64> = thresholds
        .iter()
        .map(|&t| 1.0 - std_normal_cdf(t))
        .collect();
    let mut gate_applicable = true;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // u = +1 and u = -1
            if p_plus[i] + (1.0 - p_plus[j]) < 2.0 * eps
                || (1.0 - p_plus[i]) + p_plus[j] < 2.0 * eps
            {
                gate_applicable = false;
            }
        }
    }

    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut agree = 0u64;
        for _ in 0..len {
            let g: [f64; 3] = [
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            ];
            let mut s = [false; 3];
            for (i, row) in CHOL.iter().enumerate() {
                let v = row[0] * g[0] + row[1] * g[1] + row[2] * g[2];
                s[i] = v > thresholds[i];
            }
            if s[0] == s[1] && s[1] == s[2] {
                agree += 1;
            }
        }
        agree
    });
    let agree: u64 = parts.into_iter().sum();
    let (p_agree, std_error) = crate::rng::freq_with_se(agree, samples);
    let delta_bound = (eps / 2.0).powi(18);
    let ok = !gate_applicable || p_agree >= delta_bound - 3.0 * std_error.max(1e-9);
    Ok(GaussianArrowReport {
        p_agree,
        std_error,
        delta_bound,
        gate_applicable,
        ok,
    })
}
