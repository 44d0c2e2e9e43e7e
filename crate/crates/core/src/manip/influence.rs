use super::ranking::{factorial, AdjacentTransposition, Ranking};
use super::scf::SocialChoiceFunction;
use crate::error::Result;
use std::collections::BTreeMap;

/// Exact influence tables on the rankings graph.
#[derive(Debug, Clone)]
pub struct RankingInfluences {
    pub k: u8,
    pub n: u32,
    /// `Inf_i = P[f(σ) ≠ f(σ^{(i)})]` under full re-randomization of σ_i.
    pub inf: Vec<f64>,
    /// `Inf_i^a = P[f(σ) = a, f(σ^{(i)}) ≠ a]`.
    pub inf_a: Vec<Vec<f64>>,
    /// `Inf_i^{a,b} = P[f(σ) = a, f(σ^{(i)}) = b]`, keyed `[i][a][b]`.
    pub inf_ab: Vec<Vec<Vec<f64>>>,
    /// Refined `Inf_i^{a,b;z} = ½·P[f(σ) = a, f(z_i σ) = b]` keyed by
    /// `(i, a, b, z)`.
    pub inf_abz: BTreeMap<(usize, u8, u8, (u8, u8)), f64>,
}

impl RankingInfluences {
    /// `Σ_{z∈T} Inf_i^{a;z}` for the canonical-path corollary checks.
    pub fn refined_sum_for_alt(&self, i: usize, a: u8) -> f64 {
        self.inf_abz
            .iter()
            .filter(|((vi, va, vb, _), _)| *vi == i && *va == a && *vb != a)
            .map(|(_, v)| v)
            .sum()
    }
}

/// Computes all influence tables by exhaustive enumeration, sweeping each
/// voter's coordinate with the others held fixed.
pub fn ranking_influences(f: &SocialChoiceFunction) -> Result<RankingInfluences> {
    let k = f.k() as usize;
    let n = f.n() as usize;
    let kf = factorial(k) as u64;
    let table = f.table()?;
    let total = table.len() as u64;
    let contexts = total / kf;
    let perms = Ranking::all(f.k());
    let transpositions = AdjacentTransposition::all(f.k());
    // z images of each ranking code
    let z_image: Vec<Vec<usize>> = transpositions
        .iter()
        .map(|z| perms.iter().map(|p| z.apply(p).lehmer_index()).collect())
        .collect();

    let mut inf = vec![0.0; n];
    let mut inf_a = vec![vec![0.0; k]; n];
    let mut inf_ab = vec![vec![vec![0.0; k]; k]; n];
    let mut inf_abz: BTreeMap<(usize, u8, u8, (u8, u8)), f64> = BTreeMap::new();

    for i in 0..n {
        let stride = kf.pow(i as u32);
        let mut pair_counts = vec![vec![0u64; k]; k]; // (a,b) over σ_i, σ'_i iid
        let mut z_counts: BTreeMap<(u8, u8, usize), u64> = BTreeMap::new();
        for ctx in 0..contexts {
            // base index with digit i set to zero
            let low = ctx % stride;
            let high = ctx / stride;
            let base = high * (stride * kf) + low;
            let mut outcome_count = [0u64; 8];
            let mut outcomes = vec![0u8; kf as usize];
            for code in 0..kf {
                let v = table[(base + code * stride) as usize];
                outcomes[code as usize] = v;
                outcome_count[v as usize] += 1;
            }
            for a in 0..k {
                for b in 0..k {
                    pair_counts[a][b] += outcome_count[a] * outcome_count[b];
                }
            }
            for (zi, images) in z_image.iter().enumerate() {
                for code in 0..kf as usize {
                    let a = outcomes[code];
                    let b = outcomes[images[code]];
                    if a != b {
                        *z_counts.entry((a, b, zi)).or_default() += 1;
                    }
                }
            }
        }
        let denom = (contexts * kf * kf) as f64;
        let mut disagree = 0u64;
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    disagree += pair_counts[a][b];
                    inf_ab[i][a][b] = pair_counts[a][b] as f64 / denom;
                    inf_a[i][a] += pair_counts[a][b] as f64 / denom;
                }
            }
        }
        inf[i] = disagree as f64 / denom;
        for ((a, b, zi), count) in z_counts {
            let z = &transpositions[zi];
            // ½ P[f(σ)=a, f(z_iσ)=b] over uniform σ
            inf_abz.insert((i, a, b, (z.a, z.b)), 0.5 * count as f64 / total as f64);
        }
    }
    Ok(RankingInfluences {
        k: f.k(),
        n: f.n(),
        inf,
        inf_a,
        inf_ab,
        inf_abz,
    })
}

/// `Var[1_{f = a}]` for each alternative, from the outcome distribution.
pub fn outcome_variances(f: &SocialChoiceFunction) -> Result<Vec<f64>> {
    let table = f.table()?;
    let total = table.len() as f64;
    let mut mass = vec![0u64; f.k() as usize];
    for &v in &table {
        mass[v as usize] += 1;
    }
    Ok(mass
        .into_iter()
        .map(|m| {
            let p = m as f64 / total;
            p * (1.0 - p)
        })
        .collect())
}

/// Distance to the nearest constant rule, `1 - max_a μ_a`, together with
/// the variance bound `(k/2)·Σ_a Var[1_{f=a}]` that dominates it.
pub fn const_distance_bound(f: &SocialChoiceFunction) -> Result<(f64, f64, bool)> {
    let table = f.table()?;
    let total = table.len() as f64;
    let mut mass = vec![0u64; f.k() as usize];
    for &v in &table {
        mass[v as usize] += 1;
    }
    let dist = 1.0 - mass.iter().copied().max().unwrap_or(0) as f64 / total;
    let var_sum: f64 = outcome_variances(f)?.iter().sum();
    let bound = f.k() as f64 / 2.0 * var_sum;
    Ok((dist, bound, dist <= bound + 1e-12))
}
