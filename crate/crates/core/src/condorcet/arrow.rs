use super::paradox::{paradox_probability, ParadoxMode};
use crate::boolean::{fkn_analysis, influence, BooleanFunction, Codomain, FKN_CONSTANT};
use crate::error::{Error, Result};

/// Taxonomy of zero-paradox triples.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrowVerdict {
    /// All three functions are the same signed dictator.
    DictatorTriple {
        coord: usize,
        sign: f64,
    },
    /// Two of the functions are constants of opposite sign (indices into
    /// the (f, g, h) triple and their constant values).
    OppositeConstantsPair {
        pair: (usize, usize),
        values: (f64, f64),
    },
    Paradoxical,
}

#[derive(Debug, Clone)]
pub struct ArrowClassification {
    pub verdict: ArrowVerdict,
    pub paradox_probability: f64,
    /// Distance of each of (f, g, h) to its part of the nearest certificate
    /// (the verdict's certificate when zero-paradox, otherwise the best over
    /// all 2n signed dictator triples and 6 opposite-constant pairs).
    pub distances: [f64; 3],
}

fn constant_value(f: &BooleanFunction) -> Option<f64> {
    let head = f.at(0);
    f.values().iter().all(|&v| v == head).then_some(head)
}

fn distance_to_constant(f: &BooleanFunction, c: f64) -> f64 {
    f.values().iter().filter(|&&v| v != c).count() as f64 / f.len() as f64
}

fn signed_dictator(n: u32, coord: usize, sign: f64) -> BooleanFunction {
    BooleanFunction::from_pm_predicate(n, |idx| (idx >> coord & 1 == 1) == (sign > 0.0))
        .expect("valid dictator")
}

/// Classifies an IIA triple per the zero-paradox taxonomy, constructively
/// verifying the certificate; paradoxical triples get exact distances to the
/// nearest certificate family member.
pub fn classify_arrow(
    f: &BooleanFunction,
    g: &BooleanFunction,
    h: &BooleanFunction,
) -> Result<ArrowClassification> {
    let p = paradox_probability(f, g, h, ParadoxMode::Fourier)?;
    let n = f.n();
    let zero = p.abs() < 1e-12;

    // Opposite-constant pairs: (index, index) out of the triple.
    let fns = [f, g, h];
    if zero {
        for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
            if let (Some(a), Some(b)) = (constant_value(fns[i]), constant_value(fns[j])) {
                if a == -b {
                    return Ok(ArrowClassification {
                        verdict: ArrowVerdict::OppositeConstantsPair {
                            pair: (i, j),
                            values: (a, b),
                        },
                        paradox_probability: p,
                        distances: [0.0; 3],
                    });
                }
            }
        }
        for coord in 0..n as usize {
            for sign in [1.0, -1.0] {
                let d = signed_dictator(n, coord, sign);
                if fns.iter().all(|x| x.values() == d.values()) {
                    return Ok(ArrowClassification {
                        verdict: ArrowVerdict::DictatorTriple { coord, sign },
                        paradox_probability: p,
                        distances: [0.0; 3],
                    });
                }
            }
        }
        // Zero paradox probability with no certificate would falsify the
        // classification theorem; dump the offending triple.
        return Err(Error::GateViolated(format!(
            "zero-paradox triple without certificate: f={:?} g={:?} h={:?}",
            f.values(),
            g.values(),
            h.values()
        )));
    }

    // Paradoxical: exact distance scan over the certificate family.
    let mut best = [f64::INFINITY; 3];
    let mut best_total = f64::INFINITY;
    for coord in 0..n as usize {
        for sign in [1.0, -1.0] {
            let d = signed_dictator(n, coord, sign);
            let dist = [
                f.fraction_disagree(&d)?,
                g.fraction_disagree(&d)?,
                h.fraction_disagree(&d)?,
            ];
            let total: f64 = dist.iter().sum();
            if total < best_total {
                best_total = total;
                best = dist;
            }
        }
    }
    for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
        for sign in [1.0, -1.0] {
            let mut dist = [0.0; 3];
            dist[i] = distance_to_constant(fns[i], sign);
            dist[j] = distance_to_constant(fns[j], -sign);
            let total: f64 = dist.iter().sum();
            if total < best_total {
                best_total = total;
                best = dist;
            }
        }
    }
    Ok(ArrowClassification {
        verdict: ArrowVerdict::Paradoxical,
        paradox_probability: p,
        distances: best,
    })
}

#[derive(Debug, Clone)]
pub struct KalaiReport {
    pub epsilon: f64,
    /// Nearest signed dictator of each function: (coordinate, sign, distance).
    pub dictators: [(usize, f64, f64); 3],
    /// The small-paradox regime where the recovery assertions fire.
    pub gate_applicable: bool,
    pub common_dictator_ok: bool,
    pub distance_bound_ok: bool,
}

/// Balanced-case recovery: when all three functions are balanced and the
/// paradox probability ε is below 1/36, the three level-1 analyses must
/// point at one common dictator with distances ≤ C·ε.
pub fn kalai_balanced_check(
    f: &BooleanFunction,
    g: &BooleanFunction,
    h: &BooleanFunction,
) -> Result<KalaiReport> {
    for x in [f, g, h] {
        if x.mean().abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "balanced functions required (|mean| = {})",
                x.mean().abs()
            )));
        }
    }
    let epsilon = paradox_probability(f, g, h, ParadoxMode::Fourier)?;
    let reports = [fkn_analysis(f)?, fkn_analysis(g)?, fkn_analysis(h)?];
    let dictators = [
        (reports[0].coord, reports[0].sign, reports[0].distance),
        (reports[1].coord, reports[1].sign, reports[1].distance),
        (reports[2].coord, reports[2].sign, reports[2].distance),
    ];
    let gate_applicable = epsilon < 1.0 / 36.0;
    let common_dictator_ok = !gate_applicable
        || (dictators[0].0 == dictators[1].0
            && dictators[1].0 == dictators[2].0
            && dictators[0].1 == dictators[1].1
            && dictators[1].1 == dictators[2].1);
    let distance_bound_ok = !gate_applicable
        || dictators
            .iter()
            .all(|&(_, _, d)| d <= FKN_CONSTANT * epsilon + 1e-12);
    Ok(KalaiReport {
        epsilon,
        dictators,
        gate_applicable,
        common_dictator_ok,
        distance_bound_ok,
    })
}

/// Exact check of the two-influential-voter lower bound: with
/// `I_i(f) > ε` and `I_j(g) > ε` for `i ≠ j`, the paradox probability is at
/// least `ε³/36`.
pub fn two_influential_paradox_bound(
    f: &BooleanFunction,
    g: &BooleanFunction,
    h: &BooleanFunction,
    i: usize,
    j: usize,
    eps: f64,
) -> Result<(f64, f64, bool)> {
    if i == j {
        return Err(Error::Precondition("need two distinct voters".into()));
    }
    if f.n() > 8 {
        return Err(Error::BudgetExceeded(
            "two-influential exact check capped at n ≤ 8".into(),
        ));
    }
    let inf_f = influence(f, i)?;
    let inf_g = influence(g, j)?;
    if inf_f <= eps || inf_g <= eps {
        return Err(Error::Precondition(format!(
            "influence hypothesis fails: I_{i}(f) = {inf_f}, I_{j}(g) = {inf_g}, ε = {eps}"
        )));
    }
    let p = paradox_probability(f, g, h, ParadoxMode::Exhaustive)?;
    let bound = eps * eps * eps / 36.0;
    Ok((p, bound, p >= bound - 1e-12))
}

/// All 256 aggregators on three voters applied as `f = g = h`: the paradox
/// probability vanishes exactly for the six signed dictators. Used by the
/// exhaustive Arrow tests and the acceptance suite.
pub fn arrow_exhaustive_n3() -> Result<Vec<(u32, f64)>> {
    let mut out = Vec::with_capacity(256);
    for bits in 0u32..256 {
        let f = BooleanFunction::new(
            3,
            Codomain::PlusMinusOne,
            (0..8)
                .map(|i| if bits >> i & 1 == 1 { 1.0 } else { -1.0 })
                .collect(),
        )?;
        let p = paradox_probability(&f, &f, &f, ParadoxMode::Exhaustive)?;
        out.push((bits, p));
    }
    Ok(out)
}
