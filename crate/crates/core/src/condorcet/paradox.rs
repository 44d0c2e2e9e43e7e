use super::source::CondorcetSource;
use crate::boolean::{noisy_inner_product, BooleanFunction, Codomain};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Evaluation strategy for the paradox probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParadoxMode {
    /// Spectral identity through the -1/3-noisy inner products.
    Fourier,
    /// Full 6^n enumeration (n ≤ 12).
    Exhaustive,
    /// Seeded sampling of profiles.
    MonteCarlo { samples: u64, seed: u64 },
}

const MAX_EXHAUSTIVE_N: u32 = 12;

fn require_pm(f: &BooleanFunction) -> Result<()> {
    if f.codomain() != Codomain::PlusMinusOne {
        return Err(Error::CodomainViolation(
            "paradox probability needs ±1-valued aggregation functions".into(),
        ));
    }
    Ok(())
}

/// `P[f(x) = g(y) = h(z)]` where the three pairwise contests are aggregated
/// over a uniform profile of transitive rankings. Under the sign encoding
/// this agreement event is exactly a cyclic (paradoxical) outcome.
pub fn paradox_probability(
    f: &BooleanFunction,
    g: &BooleanFunction,
    h: &BooleanFunction,
    mode: ParadoxMode,
) -> Result<f64> {
    if f.n() != g.n() || g.n() != h.n() {
        return Err(Error::ArityMismatch(f.n(), g.n().max(h.n())));
    }
    require_pm(f)?;
    require_pm(g)?;
    require_pm(h)?;
    match mode {
        ParadoxMode::Fourier => {
            // 1(a=b=c) = (1 + ab + ac + bc)/4 on signs, and the pair laws are
            // -1/3-correlated coordinatewise.
            let rho = -1.0 / 3.0;
            let fg = noisy_inner_product(f, g, rho)?;
            let gh = noisy_inner_product(g, h, rho)?;
            let hf = noisy_inner_product(h, f, rho)?;
            Ok(0.25 * (1.0 + fg + gh + hf))
        }
        ParadoxMode::Exhaustive => {
            let n = f.n();
            if n > MAX_EXHAUSTIVE_N {
                return Err(Error::BudgetExceeded(format!(
                    "6^{n} profiles exceed the exhaustive cap (n ≤ {MAX_EXHAUSTIVE_N})"
                )));
            }
            let src = CondorcetSource::new(n);
            let total = src.profile_count();
            // Fixed-size ranges keep the reduction independent of threading;
            // within a range the profile advances by an incremental odometer.
            let chunk = 1u64 << 20;
            let n_chunks = total.div_ceil(chunk);
            let agreeing: u64 = (0..n_chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * chunk;
                    let hi = (lo + chunk).min(total);
                    let mut digits = vec![0u8; n as usize];
                    let (mut x, mut y, mut z) = src.profile(lo);
                    let mut rest = lo;
                    for d in digits.iter_mut() {
                        *d = (rest % 6) as u8;
                        rest /= 6;
                    }
                    let mut count = 0u64;
                    for idx in lo..hi {
                        let fy = g.at(y);
                        if f.at(x) == fy && fy == h.at(z) {
                            count += 1;
                        }
                        if idx + 1 == hi {
                            break;
                        }
                        // advance the base-6 odometer, updating the changed
                        // voters' preference bits in place
                        for (voter, d) in digits.iter_mut().enumerate() {
                            *d += 1;
                            if *d == 6 {
                                *d = 0;
                            }
                            let atom = super::source::ATOMS[*d as usize] as u32;
                            let bit = 1u32 << voter;
                            x = (x & !bit) | ((atom & 1) << voter);
                            y = (y & !bit) | (((atom >> 1) & 1) << voter);
                            z = (z & !bit) | (((atom >> 2) & 1) << voter);
                            if *d != 0 {
                                break;
                            }
                        }
                    }
                    count
                })
                .sum();
            Ok(agreeing as f64 / total as f64)
        }
        ParadoxMode::MonteCarlo { samples, seed } => {
            let src = CondorcetSource::new(f.n());
            let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
                let mut count = 0u64;
                for _ in 0..len {
                    let (x, y, z) = src.sample(&mut rng);
                    if f.at(x) == g.at(y) && g.at(y) == h.at(z) {
                        count += 1;
                    }
                }
                count
            });
            let hits: u64 = parts.into_iter().sum();
            Ok(hits as f64 / samples as f64)
        }
    }
}
