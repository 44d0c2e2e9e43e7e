use super::BooleanFunction;
use crate::error::{Error, Result};

/// The conditioning that moves `E[f]` the most among all `|S| ≤ r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResilienceWitness {
    /// Conditioned coordinate set as a bitmask.
    pub subset: u32,
    /// Assignment to the set, bit-aligned with `subset` (set bit = +1).
    pub assignment: u32,
    /// `E[f | X_S = z] - E[f]` at the witness.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResilienceReport {
    pub resilient: bool,
    pub alpha: f64,
    pub r: usize,
    pub worst: ResilienceWitness,
}

const DEFAULT_MAX_R: usize = 6;

/// Exhaustive `(r, α)`-resilience check: every conditioning of at most `r`
/// coordinates must move the mean by at most `α`. Returns the maximizing
/// witness. Guarded at `r ≤ 6` unless `override_guard` lifts it.
///
/// Conditional means come from the subset-restricted expansion
/// `E[f | X_S = z] = Σ_{T ⊆ S} f̂(T)·z_T`, which agrees with direct
/// averaging (the unit tests cross-check that).
pub fn is_resilient(
    f: &BooleanFunction,
    r: usize,
    alpha: f64,
    override_guard: bool,
) -> Result<ResilienceReport> {
    let n = f.n() as usize;
    if r > n {
        return Err(Error::ParameterDomain(format!("r = {r} exceeds arity {n}")));
    }
    if r > DEFAULT_MAX_R && !override_guard {
        return Err(Error::BudgetExceeded(format!(
            "resilience enumeration guarded at r ≤ {DEFAULT_MAX_R} (asked r = {r})"
        )));
    }
    let fe = f.wht();
    let mean = fe.coeff(0);
    let mut worst = ResilienceWitness {
        subset: 0,
        assignment: 0,
        deviation: 0.0,
    };

    // Enumerate subsets by size via combinations of bit positions.
    let mut positions: Vec<usize> = Vec::with_capacity(r);
    enumerate_subsets(n, r, 0, 0, &mut positions, &mut |subset, bits: &[usize]| {
        let s = bits.len();
        // Gather f̂(T) for T ⊆ subset into a dense 2^s table, then evaluate
        // all assignments at once with the synthesis butterfly.
        let mut local = vec![0.0f64; 1 << s];
        for (t_local, slot) in local.iter_mut().enumerate() {
            let mut t_global = 0u32;
            for (j, &pos) in bits.iter().enumerate() {
                if t_local >> j & 1 == 1 {
                    t_global |= 1 << pos;
                }
            }
            *slot = fe.coeff(t_global);
        }
        // synthesis: value at assignment z equals Σ_T coeff(T)·z_T
        let mut h = 1;
        while h < local.len() {
            let mut base = 0;
            while base < local.len() {
                for i in base..base + h {
                    let a = local[i];
                    let b = local[i + h];
                    local[i] = a - b;
                    local[i + h] = a + b;
                }
                base += 2 * h;
            }
            h *= 2;
        }
        for (z_local, &val) in local.iter().enumerate() {
            let dev = val - mean;
            if dev.abs() > worst.deviation.abs() {
                let mut assignment = 0u32;
                for (j, &pos) in bits.iter().enumerate() {
                    if z_local >> j & 1 == 1 {
                        assignment |= 1 << pos;
                    }
                }
                worst = ResilienceWitness {
                    subset,
                    assignment,
                    deviation: dev,
                };
            }
        }
    });

    Ok(ResilienceReport {
        resilient: worst.deviation.abs() <= alpha + 1e-12,
        alpha,
        r,
        worst,
    })
}

fn enumerate_subsets(
    n: usize,
    max_size: usize,
    start: usize,
    subset: u32,
    positions: &mut Vec<usize>,
    visit: &mut impl FnMut(u32, &[usize]),
) {
    if !positions.is_empty() {
        visit(subset, positions);
    }
    if positions.len() == max_size {
        return;
    }
    for pos in start..n {
        positions.push(pos);
        enumerate_subsets(n, max_size, pos + 1, subset | (1 << pos), positions, visit);
        positions.pop();
    }
}

/// The spectral sufficient condition: `max(|f̂(S)| : 0 < |S| ≤ r) ≤ 2^-r·α`
/// implies `(r, α)`-resilience. Returns whether the condition holds.
pub fn resilience_from_fourier(f: &BooleanFunction, r: usize, alpha: f64) -> Result<bool> {
    let n = f.n() as usize;
    if r > n {
        return Err(Error::ParameterDomain(format!("r = {r} exceeds arity {n}")));
    }
    let fe = f.wht();
    let threshold = 2f64.powi(-(r as i32)) * alpha;
    let max_low = fe
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(s, _)| {
            let k = (*s as u32).count_ones() as usize;
            k >= 1 && k <= r
        })
        .map(|(_, c)| c.abs())
        .fold(0.0f64, f64::max);
    Ok(max_low <= threshold + 1e-15)
}
