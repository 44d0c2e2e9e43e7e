use super::BooleanFunction;
use crate::error::Result;

/// `I_i(f) = E[Var[f | x_{-i}]] = E[|∂_i f|²]`, computed from the table.
///
/// For ±1-valued `f` this equals the pivot probability
/// `P[f(x) ≠ f(x ⊕ e_i)]`.
pub fn influence(f: &BooleanFunction, coord: usize) -> Result<f64> {
    let i = f.check_coord(coord)?;
    let bit = 1u32 << i;
    let mut acc = 0.0;
    for idx in 0..f.len() as u32 {
        if idx & bit == 0 {
            let d = 0.5 * (f.at(idx | bit) - f.at(idx));
            acc += d * d;
        }
    }
    // E over the full cube counts each pair twice with weight 2^-n.
    Ok(acc * 2.0 / f.len() as f64)
}

/// All coordinate influences in one pass each.
pub fn influences(f: &BooleanFunction) -> Vec<f64> {
    (0..f.n() as usize)
        .map(|i| influence(f, i).expect("coordinate in range"))
        .collect()
}

/// `I(f) = Σ_i I_i(f)`.
pub fn total_influence(f: &BooleanFunction) -> f64 {
    influences(f).iter().sum()
}

/// Both sides of the noisy total-influence bound
/// `Σ_i I_i(T_ρ f) ≤ 1/(1-|ρ|)` for `f` bounded in [-1,1] and |ρ| < 1.
///
/// The left side is evaluated spectrally as `Σ_S |S| ρ^{2|S|} f̂(S)²`.
pub fn noisy_influence_sum_bound(f: &BooleanFunction, rho: f64) -> Result<(f64, f64, bool)> {
    if rho.abs() >= 1.0 {
        return Err(crate::error::Error::ParameterDomain(format!(
            "noisy influence bound needs |rho| < 1, got {rho}"
        )));
    }
    let fe = f.wht();
    let mut lhs = 0.0;
    for (s, c) in fe.coeffs().iter().enumerate() {
        let k = (s as u32).count_ones();
        lhs += k as f64 * rho.powi(2 * k as i32) * c * c;
    }
    let bound = 1.0 / (1.0 - rho.abs());
    Ok((lhs, bound, lhs <= bound + 1e-12))
}
