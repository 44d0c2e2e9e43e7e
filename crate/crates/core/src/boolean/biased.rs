use super::{influences, BooleanFunction, Codomain};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Per-coordinate probability of `+1` under a biased product measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiasedMeasure {
    probs: Vec<f64>,
}

impl BiasedMeasure {
    /// Uniform bias `p` on `n` coordinates.
    pub fn constant(n: u32, p: f64) -> Result<Self> {
        Self::per_coordinate(vec![p; n as usize])
    }

    pub fn per_coordinate(probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|&p| !(0.0 < p && p < 1.0)) {
            return Err(Error::ParameterDomain(
                "every bias must lie in the open interval (0,1)".into(),
            ));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the point `idx` (set bit = +1).
    pub fn weight(&self, idx: u32) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &p)| if idx >> i & 1 == 1 { p } else { 1.0 - p })
            .product()
    }
}

/// `E_μ[f]` for a product measure `μ`.
pub fn biased_expectation(f: &BooleanFunction, mu: &BiasedMeasure) -> Result<f64> {
    if mu.probs.len() != f.n() as usize {
        return Err(Error::ArityMismatch(f.n(), mu.probs.len() as u32));
    }
    Ok((0..f.len() as u32)
        .map(|idx| mu.weight(idx) * f.at(idx))
        .sum())
}

/// `I_{p,i}(f) = E_μ[Var_μ[f | x_{-i}]]` under a biased product measure:
/// each pair contributes `p_i(1-p_i)·(f⁺ - f⁻)²` at the weight of its
/// conditioning class.
pub fn biased_influence(f: &BooleanFunction, mu: &BiasedMeasure, coord: usize) -> Result<f64> {
    if mu.probs.len() != f.n() as usize {
        return Err(Error::ArityMismatch(f.n(), mu.probs.len() as u32));
    }
    let i = f.check_coord(coord)?;
    let bit = 1u32 << i;
    let p = mu.probs[i];
    let mut acc = 0.0;
    for idx in 0..f.len() as u32 {
        if idx & bit == 0 {
            // weight of the rest of the coordinates
            let w = mu.weight(idx) / (1.0 - p);
            let d = f.at(idx | bit) - f.at(idx);
            acc += w * p * (1.0 - p) * d * d;
        }
    }
    Ok(acc)
}

/// `Var_μ[f]` under a biased product measure.
pub fn biased_variance(f: &BooleanFunction, mu: &BiasedMeasure) -> Result<f64> {
    let mean = biased_expectation(f, mu)?;
    let second: f64 = (0..f.len() as u32)
        .map(|idx| mu.weight(idx) * f.at(idx) * f.at(idx))
        .sum();
    Ok(second - mean * mean)
}

#[derive(Debug, Clone, Copy)]
pub struct RussoReport {
    pub derivative: f64,
    pub influence_sum: f64,
    pub ok: bool,
}

/// Margulis–Russo at the symmetric point: for monotone Boolean `f`,
/// `d/dp P_p[f = 1]` at `p = 1/2` equals `Σ_i I_i(f)`. The derivative is a
/// central finite difference with step `1e-5` (the probability is a
/// polynomial in `p`, so truncation is O(h²)); agreement tolerance `1e-6`.
pub fn russo_derivative_check(f: &BooleanFunction) -> Result<RussoReport> {
    if f.codomain() == Codomain::Real {
        return Err(Error::CodomainViolation(
            "Russo check needs a two-valued function".into(),
        ));
    }
    if !f.is_monotone() {
        return Err(Error::NotMonotone(
            "Russo's formula needs monotone f".into(),
        ));
    }
    let indicator = f.to_zero_one()?;
    let h = 1e-5;
    let prob_at = |p: f64| -> f64 {
        let mu = BiasedMeasure::constant(indicator.n(), p).expect("valid bias");
        biased_expectation(&indicator, &mu).expect("matched arity")
    };
    let derivative = (prob_at(0.5 + h) - prob_at(0.5 - h)) / (2.0 * h);
    // Influences of the ±1 re-encoding (the formula's normalization).
    let influence_sum: f64 = influences(&f.to_pm_one()?).iter().sum();
    Ok(RussoReport {
        derivative,
        influence_sum,
        ok: (derivative - influence_sum).abs() <= 1e-6,
    })
}
