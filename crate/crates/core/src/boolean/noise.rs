use super::generators::Generator;
use super::{BooleanFunction, Codomain};
use crate::error::{Error, Result};
use crate::gaussian;
use rand::Rng;

/// The smoothing operator `T_ρ`: conditional expectation over ρ-correlated
/// re-randomization. Output coefficients are exactly `ρ^{|S|}·f̂(S)`.
pub fn noise_operator(f: &BooleanFunction, rho: f64) -> Result<BooleanFunction> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::ParameterDomain(format!("rho {rho} outside [-1,1]")));
    }
    let fe = f.wht();
    let mut coeffs = fe.coeffs().to_vec();
    for (s, c) in coeffs.iter_mut().enumerate() {
        *c *= rho.powi((s as u32).count_ones() as i32);
    }
    let table = super::FourierExpansion::from_coeffs(f.n(), coeffs)?.synthesize();
    BooleanFunction::new(f.n(), Codomain::Real, table.values().to_vec())
}

/// `⟨f,g⟩_ρ = E[f(x) g(y)] = Σ_S ρ^{|S|} f̂(S) ĝ(S)` over the ρ-correlated
/// pair law (the S = ∅ term included).
pub fn noisy_inner_product(f: &BooleanFunction, g: &BooleanFunction, rho: f64) -> Result<f64> {
    if f.n() != g.n() {
        return Err(Error::ArityMismatch(f.n(), g.n()));
    }
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::ParameterDomain(format!("rho {rho} outside [-1,1]")));
    }
    let fe = f.wht();
    let ge = g.wht();
    let mut acc = 0.0;
    for (s, (a, b)) in fe.coeffs().iter().zip(ge.coeffs()).enumerate() {
        acc += rho.powi((s as u32).count_ones() as i32) * a * b;
    }
    Ok(acc)
}

/// Monte-Carlo estimate of `E[f(x) g(y)]` under the ρ-correlated pair law;
/// the sampling oracle for [`noisy_inner_product`]. Returns (mean, std_error).
pub fn sample_noisy_inner_product(
    f: &BooleanFunction,
    g: &BooleanFunction,
    rho: f64,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if f.n() != g.n() {
        return Err(Error::ArityMismatch(f.n(), g.n()));
    }
    let n = f.n();
    let flip_prob = (1.0 - rho) / 2.0;
    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..len {
            let x: u32 = rng.gen::<u32>() & ((1u32 << n) - 1);
            let mut y = x;
            for i in 0..n {
                if rng.gen::<f64>() < flip_prob {
                    y ^= 1 << i;
                }
            }
            let v = f.at(x) * g.at(y);
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = parts
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    Ok(crate::rng::mean_with_se(sum, sum_sq, samples))
}

/// Per-size noise stability of a generator family together with its
/// large-`n` target, for trend reporting.
#[derive(Debug, Clone)]
pub struct StabilityCurve {
    pub family: String,
    pub rho: f64,
    pub sizes: Vec<u32>,
    pub stability: Vec<f64>,
    /// The limiting value the family approaches, when the family has one.
    pub limit: Option<f64>,
    /// True when |stability - limit| is nonincreasing along `sizes`.
    pub monotone_toward_limit: bool,
}

/// Exact (Fourier-side) stability `⟨f,f⟩_ρ` of a generator family at each
/// admissible size, plus the named limit.
pub fn stability_curve(gen: Generator, rho: f64, sizes: &[u32]) -> Result<StabilityCurve> {
    for &n in sizes {
        if !gen.admits(n) {
            return Err(Error::ParameterDomain(format!(
                "size {n} not admissible for {}",
                gen.family()
            )));
        }
    }
    let mut stability = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let f = gen.build(n)?;
        stability.push(noisy_inner_product(&f, &f, rho)?);
    }
    let limit = match gen {
        Generator::Majority => Some(gaussian::sheppard(rho)),
        Generator::ElectoralCollege => Some(gaussian::sheppard(gaussian::sheppard(rho))),
        Generator::Dictator(_) => Some(rho),
        Generator::Parity if rho.abs() < 1.0 => Some(0.0),
        Generator::Parity => (rho == 1.0).then_some(1.0),
        // recursive majority and tribes decay toward 0 for |rho| < 1
        Generator::RecursiveMajority { .. } | Generator::Tribes { .. } => None,
    };
    let monotone_toward_limit = match limit {
        Some(l) => stability
            .windows(2)
            .all(|w| (w[1] - l).abs() <= (w[0] - l).abs() + 1e-12),
        None => true,
    };
    Ok(StabilityCurve {
        family: gen.family().to_string(),
        rho,
        sizes: sizes.to_vec(),
        stability,
        limit,
        monotone_toward_limit,
    })
}
