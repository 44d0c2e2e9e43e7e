use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct TournamentReport {
    pub k: usize,
    pub samples: u64,
    pub p_unique_max: f64,
    pub se_unique_max: f64,
    pub p_acyclic: f64,
    pub se_acyclic: f64,
    /// Empirical covariance of two edge variables sharing a candidate
    /// (population value 1/3).
    pub shared_edge_cov: f64,
}

/// Samples the limiting Gaussian majority tournament on `k` candidates:
/// `N_{a>b} = (X_a - X_b + Z_{a>b})/√3` with i.i.d. standard normal `X`, `Z`,
/// orientation `a → b` when `N_{a>b} > 0`. Reports unique-max and acyclicity
/// frequencies with standard errors.
pub fn tournament_mc(k: usize, samples: u64, seed: u64) -> Result<TournamentReport> {
    if !(2..=64).contains(&k) {
        return Err(Error::ParameterDomain(format!("k = {k} outside 2..=64")));
    }
    let sqrt3 = 3.0f64.sqrt();
    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut unique = 0u64;
        let mut acyclic = 0u64;
        let mut cov_sum = 0.0f64;
        let mut x = vec![0.0f64; k];
        let mut wins = vec![0u32; k];
        for _ in 0..len {
            for xi in x.iter_mut() {
                *xi = rng.sample(StandardNormal);
            }
            wins.iter_mut().for_each(|w| *w = 0);
            let mut n01 = 0.0;
            let mut n02 = 0.0;
            for a in 0..k {
                for b in (a + 1)..k {
                    let z: f64 = rng.sample(StandardNormal);
                    let n_ab = (x[a] - x[b] + z) / sqrt3;
                    if a == 0 && b == 1 {
                        n01 = n_ab;
                    }
                    if a == 0 && b == 2 {
                        n02 = n_ab;
                    }
                    if n_ab > 0.0 {
                        wins[a] += 1;
                    } else {
                        wins[b] += 1;
                    }
                }
            }
            if k >= 3 {
                cov_sum += n01 * n02;
            }
            if wins.iter().any(|&w| w == (k - 1) as u32) {
                unique += 1;
            }
            // a tournament is transitive iff its score sequence is 0..k-1
            let mut sorted = wins.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().all(|(i, &w)| w == i as u32) {
                acyclic += 1;
            }
        }
        (unique, acyclic, cov_sum)
    });
    let (unique, acyclic, cov_sum) = parts.into_iter().fold((0, 0, 0.0), |acc, p| {
        (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2)
    });
    let (p_unique_max, se_unique_max) = crate::rng::freq_with_se(unique, samples);
    let (p_acyclic, se_acyclic) = crate::rng::freq_with_se(acyclic, samples);
    Ok(TournamentReport {
        k,
        samples,
        p_unique_max,
        se_unique_max,
        p_acyclic,
        se_acyclic,
        shared_edge_cov: cov_sum / samples as f64,
    })
}
