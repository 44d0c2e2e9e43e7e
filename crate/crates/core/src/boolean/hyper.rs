use super::{noise_operator, BooleanFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct HyperReport {
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub ok: bool,
}

/// Forward hypercontractivity `‖T_ρ f‖_p ≤ ‖f‖_q` for `1 ≤ q ≤ p` and
/// `ρ² ≤ (q-1)/(p-1)`. Norms are exact enumeration sums.
pub fn hypercontractivity_check(
    f: &BooleanFunction,
    rho: f64,
    p: f64,
    q: f64,
) -> Result<HyperReport> {
    if !(1.0 <= q && q <= p) {
        return Err(Error::ParameterDomain(format!(
            "forward hypercontractivity needs 1 ≤ q ≤ p, got q={q}, p={p}"
        )));
    }
    let budget = if p == q {
        1.0
    } else {
        ((q - 1.0) / (p - 1.0)).sqrt()
    };
    if rho.abs() > budget + 1e-12 {
        return Err(Error::ParameterDomain(format!(
            "rho² must satisfy ρ² ≤ (q-1)/(p-1); |rho| = {} > {budget}",
            rho.abs()
        )));
    }
    let lhs = noise_operator(f, rho)?.norm(p);
    let rhs = f.norm(q);
    Ok(HyperReport {
        lhs_norm: lhs,
        rhs_norm: rhs,
        ok: lhs <= rhs + 1e-12,
    })
}

/// Reverse hypercontractivity `‖T_ρ f‖_q ≥ ‖f‖_p` for strictly positive `f`,
/// `0 < q < p < 1` and `ρ² ≤ (1-p)/(1-q)`.
pub fn reverse_hypercontractivity_check(
    f: &BooleanFunction,
    rho: f64,
    p: f64,
    q: f64,
) -> Result<HyperReport> {
    if !(0.0 < q && q < p && p < 1.0) {
        return Err(Error::ParameterDomain(format!(
            "reverse hypercontractivity restricted to 0 < q < p < 1, got q={q}, p={p}"
        )));
    }
    if f.values().iter().any(|&v| v <= 0.0) {
        return Err(Error::ParameterDomain(
            "reverse hypercontractivity requires strictly positive f".into(),
        ));
    }
    let budget = ((1.0 - p) / (1.0 - q)).sqrt();
    if rho.abs() > budget + 1e-12 {
        return Err(Error::ParameterDomain(format!(
            "rho² must satisfy ρ² ≤ (1-p)/(1-q); |rho| = {} > {budget}",
            rho.abs()
        )));
    }
    let lhs = noise_operator(f, rho)?.norm(q);
    let rhs = f.norm(p);
    Ok(HyperReport {
        lhs_norm: lhs,
        rhs_norm: rhs,
        ok: lhs >= rhs - 1e-12,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct FourthMomentReport {
    pub fourth_moment: f64,
    pub bound: f64,
    pub ok: bool,
}

/// For `q(x) = Σ_{i<j} q_{ij} x_i x_j`, checks the degree-2 moment bound
/// `E[q⁴] ≤ 81·E[q²]²` by exact enumeration (n ≤ 20).
///
/// `coeffs[i][j]` for `i < j` carries `q_{ij}` (a ragged upper triangle).
pub fn degree2_fourth_moment_check(
    n: u32,
    coeffs: &[(usize, usize, f64)],
) -> Result<FourthMomentReport> {
    if n > 20 {
        return Err(Error::BudgetExceeded(format!(
            "degree-2 moment enumeration capped at n = 20, got {n}"
        )));
    }
    for &(i, j, _) in coeffs {
        if i >= j || j >= n as usize {
            return Err(Error::ParameterDomain(format!(
                "coefficient index ({i},{j}) must satisfy i < j < n"
            )));
        }
    }
    let len = 1usize << n;
    let mut e2 = 0.0;
    let mut e4 = 0.0;
    for idx in 0..len as u32 {
        let mut q = 0.0;
        for &(i, j, c) in coeffs {
            let xi = if idx >> i & 1 == 1 { 1.0 } else { -1.0 };
            let xj = if idx >> j & 1 == 1 { 1.0 } else { -1.0 };
            q += c * xi * xj;
        }
        let q2 = q * q;
        e2 += q2;
        e4 += q2 * q2;
    }
    e2 /= len as f64;
    e4 /= len as f64;
    let bound = 81.0 * e2 * e2;
    Ok(FourthMomentReport {
        fourth_moment: e4,
        bound,
        ok: e4 <= bound + 1e-12,
    })
}
