use crate::boolean::BooleanFunction;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finitely supported distribution on `{0,1}^n`, stored as bitmask atoms
/// with normalized weights.
///
/// The JSON form writes each atom as a bit string whose character `j` is
/// coordinate `j+1` (`"support": ["0110", ...]`).
#[derive(Debug, Clone)]
pub struct FiniteDistribution {
    pub n: u32,
    pub support: Vec<u32>,
    pub weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct JsonDistribution {
    support: Vec<String>,
    weights: Vec<f64>,
}

impl Serialize for FiniteDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let support = self
            .support
            .iter()
            .map(|&x| {
                (0..self.n)
                    .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        JsonDistribution {
            support,
            weights: self.weights.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonDistribution::deserialize(d)?;
        let n = raw
            .support
            .first()
            .map(|s| s.len() as u32)
            .ok_or_else(|| D::Error::custom("empty support"))?;
        let mut support = Vec::with_capacity(raw.support.len());
        for s in &raw.support {
            if s.len() as u32 != n {
                return Err(D::Error::custom("ragged bitstrings"));
            }
            let mut x = 0u32;
            for (i, ch) in s.chars().enumerate() {
                match ch {
                    '1' => x |= 1 << i,
                    '0' => {}
                    other => return Err(D::Error::custom(format!("bad bit `{other}`"))),
                }
            }
            support.push(x);
        }
        FiniteDistribution::new(n, support, raw.weights).map_err(D::Error::custom)
    }
}

impl FiniteDistribution {
    pub fn new(n: u32, support: Vec<u32>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() || support.is_empty() {
            return Err(Error::Malformed("support/weight length mismatch".into()));
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::ParameterDomain("weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterDomain(format!(
                "weights sum to {total}, not 1"
            )));
        }
        if support.iter().any(|&x| n < 32 && x >= 1 << n) {
            return Err(Error::Malformed("support atom out of range".into()));
        }
        Ok(Self {
            n,
            support,
            weights,
        })
    }

    /// The uniform product measure restricted to a list of atoms is not
    /// generally product; this helper builds the i.i.d. `p`-biased measure.
    pub fn product(n: u32, p: f64) -> Result<Self> {
        if !(0.0 < p && p < 1.0) {
            return Err(Error::ParameterDomain("p must be in (0,1)".into()));
        }
        let support: Vec<u32> = (0..1u32 << n).collect();
        let weights = support
            .iter()
            .map(|&x| {
                (0..n)
                    .map(|i| if x >> i & 1 == 1 { p } else { 1.0 - p })
                    .product()
            })
            .collect();
        Self::new(n, support, weights)
    }

    /// All voters identical: mass `p` on the all-ones atom, `1-p` on zeros.
    pub fn perfectly_correlated(n: u32, p: f64) -> Result<Self> {
        Self::new(n, vec![(1 << n) - 1, 0], vec![p, 1.0 - p])
    }

    pub fn mean(&self, f: impl Fn(u32) -> f64) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Marginal `μ[X_k = 1]`.
    pub fn marginal(&self, k: usize) -> f64 {
        self.mean(|x| (x >> k & 1) as f64)
    }
}

#[derive(Debug, Clone)]
pub struct EffectsReport {
    /// `e_k = μ[f | X_k = 1] - μ[f | X_k = 0]`, `None` when a conditional
    /// has no mass.
    pub effects: Vec<Option<f64>>,
    /// Exact verification of `Cov_μ[f, X_k] = p_k(1-p_k)·e_k` per coordinate.
    pub covariance_identity_ok: bool,
}

/// Conditional-mean effects of each coordinate under `μ` for a {0,1}-valued
/// `f` given as a table over bitmasks.
pub fn effects(f: &BooleanFunction, mu: &FiniteDistribution) -> Result<EffectsReport> {
    if f.n() != mu.n {
        return Err(Error::ArityMismatch(f.n(), mu.n));
    }
    let f01 = f.to_zero_one()?;
    let n = mu.n as usize;
    let mut effects = Vec::with_capacity(n);
    let mut identity_ok = true;
    let ef = mu.mean(|x| f01.at(x));
    for k in 0..n {
        let p = mu.marginal(k);
        if p <= 0.0 || p >= 1.0 {
            effects.push(None);
            continue;
        }
        let mean_if_one = mu.mean(|x| if x >> k & 1 == 1 { f01.at(x) } else { 0.0 }) / p;
        let mean_if_zero = mu.mean(|x| if x >> k & 1 == 0 { f01.at(x) } else { 0.0 }) / (1.0 - p);
        let e = mean_if_one - mean_if_zero;
        effects.push(Some(e));
        let cov = mu.mean(|x| f01.at(x) * (x >> k & 1) as f64) - ef * p;
        if (cov - p * (1.0 - p) * e).abs() > 1e-12 {
            identity_ok = false;
        }
    }
    Ok(EffectsReport {
        effects,
        covariance_identity_ok: identity_ok,
    })
}

/// Pivotality under `μ`: `P_μ[f(X) ≠ f(X ⊕ e_k)]`.
pub fn pivot_influence(f: &BooleanFunction, mu: &FiniteDistribution, k: usize) -> Result<f64> {
    if f.n() != mu.n {
        return Err(Error::ArityMismatch(f.n(), mu.n));
    }
    f.check_coord(k)?;
    Ok(mu.mean(|x| (f.at(x) != f.at(x ^ (1 << k))) as u8 as f64))
}

#[derive(Debug, Clone)]
pub struct WeightedMajorityReport {
    pub mu_f: f64,
    pub delta: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Checks the aggregation bound for a weighted majority at threshold `q`:
/// with `Σ w_i p_i = p·W` and `Σ w_i p_i (1-p_i) e_i ≤ p(1-p)·δ·W`,
/// `μ[f] ≥ 1 - δ·p(1-p)/(p-q)`.
///
/// `delta` is the caller's claim; the second hypothesis is verified from the
/// actual effects before the conclusion is asserted.
pub fn weighted_majority_bound_check(
    weights: &[f64],
    f: &BooleanFunction,
    mu: &FiniteDistribution,
    p: f64,
    q: f64,
    delta: f64,
) -> Result<WeightedMajorityReport> {
    if weights.len() != f.n() as usize {
        return Err(Error::ArityMismatch(f.n(), weights.len() as u32));
    }
    if weights.iter().any(|&w| w < 0.0) || weights.iter().all(|&w| w == 0.0) {
        return Err(Error::ParameterDomain(
            "weights must be nonnegative, not all zero".into(),
        ));
    }
    if !(q < p && p < 1.0 && 0.0 < q) {
        return Err(Error::ParameterDomain(format!(
            "need 0 < q < p < 1, got q = {q}, p = {p}"
        )));
    }
    let f01 = f.to_zero_one()?;
    let w_total: f64 = weights.iter().sum();
    // structural check: f is the weighted majority at threshold q
    for x in 0..(1u32 << f.n()) {
        let margin: f64 = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (2.0 * ((x >> i & 1) as f64) - 2.0 * q) * w)
            .sum();
        let v = f01.at(x);
        if margin > 1e-12 && v != 1.0 {
            return Err(Error::Precondition(format!(
                "f is not the weighted majority at threshold {q}: fails at {x:b}"
            )));
        }
        if margin < -1e-12 && v != 0.0 {
            return Err(Error::Precondition(format!(
                "f is not the weighted majority at threshold {q}: fails at {x:b}"
            )));
        }
    }
    // first hypothesis: Σ w_i p_i = p W
    let weighted_mean: f64 = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| w * mu.marginal(i))
        .sum();
    if (weighted_mean - p * w_total).abs() > 1e-9 {
        return Err(Error::Precondition(format!(
            "Σ w_i p_i = {weighted_mean} ≠ p·W = {}",
            p * w_total
        )));
    }
    // second hypothesis: Σ w_i p_i (1-p_i) e_i ≤ p(1-p) δ W
    let rep = effects(&f01, mu)?;
    let effect_sum: f64 = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let pi = mu.marginal(i);
            let e = rep.effects[i].unwrap_or(0.0);
            w * pi * (1.0 - pi) * e
        })
        .sum();
    if effect_sum > p * (1.0 - p) * delta * w_total + 1e-12 {
        return Err(Error::Precondition(format!(
            "effect hypothesis fails: {effect_sum} > p(1-p)δW"
        )));
    }
    let mu_f = mu.mean(|x| f01.at(x));
    let bound = 1.0 - delta * p * (1.0 - p) / (p - q);
    Ok(WeightedMajorityReport {
        mu_f,
        delta,
        bound,
        ok: mu_f >= bound - 1e-12,
    })
}
