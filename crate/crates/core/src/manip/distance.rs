use super::census::census;
use super::ranking::{factorial, Ranking};
use super::scf::{Rule, SocialChoiceFunction};
use crate::error::Result;

/// Distance report to the nonmanipulable family: top-subset dictators plus
/// monotone two-valued rules.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    /// Exact minimum over all `n·(2^k - 1)` top-subset dictators.
    pub dist_top_h: f64,
    /// Bracketing of the distance to monotone two-valued rules.
    pub two_valued_lower: f64,
    pub two_valued_upper: f64,
    /// The alternative pair realizing the two-valued upper bound.
    pub best_pair: [u8; 2],
    /// Bracketing of the distance to the whole family.
    pub combined_lower: f64,
    pub combined_upper: f64,
}

/// Exact distance to the nearest top-subset dictator, plus two-sided bounds
/// on the distance to monotone two-valued rules.
///
/// For each alternative pair `{a, b}` the rule is projected onto the pair's
/// preference fibers by fiber majority (ties to `a`); the projection's
/// monotonicity-violating pair fraction `p(h)` yields the lower bound
/// `max(0, p(h)/2 - D(f, h))`, and coordinate-swap monotonization of the
/// projection yields a concrete in-family witness for the upper bound.
pub fn dist_to_nonmanip(f: &SocialChoiceFunction) -> Result<DistanceReport> {
    let k = f.k();
    let n = f.n();
    let table = f.table()?;
    let total = table.len() as f64;

    // exact top-H part
    let mut dist_top_h = f64::INFINITY;
    for voter in 0..n as usize {
        for set_bits in 1u32..(1 << k) {
            let set: Vec<u8> = (0..k).filter(|&a| set_bits >> a & 1 == 1).collect();
            let g = SocialChoiceFunction::new(k, n, Rule::TopH { voter, set }, "top_h")?;
            let gt = g.table()?;
            let d = table.iter().zip(&gt).filter(|(x, y)| x != y).count() as f64 / total;
            dist_top_h = dist_top_h.min(d);
        }
    }

    // two-valued part per pair
    let mut two_valued_lower = f64::INFINITY;
    let mut two_valued_upper = f64::INFINITY;
    let mut best_pair = [0u8, 1];
    for a in 0..k {
        for b in (a + 1)..k {
            let (h, d0) = fiber_majority_projection(f, &table, a, b)?;
            let p_viol = monotonicity_violation_fraction(&h, n);
            let lower = (0.5 * p_viol - d0).max(0.0);
            let mono = monotonize(&h, n);
            let upper = distance_to_boolean_rule(f, &table, a, b, &mono)?;
            two_valued_lower = two_valued_lower.min(lower);
            if upper < two_valued_upper {
                two_valued_upper = upper;
                best_pair = [a, b];
            }
        }
    }

    Ok(DistanceReport {
        dist_top_h,
        two_valued_lower,
        two_valued_upper,
        best_pair,
        combined_lower: dist_top_h.min(two_valued_lower),
        combined_upper: dist_top_h.min(two_valued_upper),
    })
}

/// Boolean fiber-majority projection of `f` onto the `{a,b}` fibers:
/// `h(z) = a` when at least as many profiles of the fiber elect `a` as `b`.
/// Returns the projection (bit set = elect `a`) and `D(f, h)`.
fn fiber_majority_projection(
    f: &SocialChoiceFunction,
    table: &[u8],
    a: u8,
    b: u8,
) -> Result<(Vec<bool>, f64)> {
    let n = f.n();
    let len = 1usize << n;
    let mut count_a = vec![0u64; len];
    let mut count_b = vec![0u64; len];
    // fiber bits of every profile
    let perms = Ranking::all(f.k());
    let prefers: Vec<bool> = perms.iter().map(|p| p.prefers(a, b)).collect();
    let kf = factorial(f.k() as usize) as u64;
    for (idx, &v) in table.iter().enumerate() {
        let mut rest = idx as u64;
        let mut fiber = 0usize;
        for voter in 0..n {
            if prefers[(rest % kf) as usize] {
                fiber |= 1 << voter;
            }
            rest /= kf;
        }
        if v == a {
            count_a[fiber] += 1;
        } else if v == b {
            count_b[fiber] += 1;
        }
    }
    let h: Vec<bool> = count_a
        .iter()
        .zip(&count_b)
        .map(|(&ca, &cb)| ca >= cb)
        .collect();
    let d0 = distance_to_boolean_rule(f, table, a, b, &h)?;
    Ok((h, d0))
}

/// `D(f, h∘x^{a,b})` where `h` elects `a` on set bits.
fn distance_to_boolean_rule(
    f: &SocialChoiceFunction,
    table: &[u8],
    a: u8,
    b: u8,
    h: &[bool],
) -> Result<f64> {
    let n = f.n();
    let perms = Ranking::all(f.k());
    let prefers: Vec<bool> = perms.iter().map(|p| p.prefers(a, b)).collect();
    let kf = factorial(f.k() as usize) as u64;
    let mut disagree = 0u64;
    for (idx, &v) in table.iter().enumerate() {
        let mut rest = idx as u64;
        let mut fiber = 0usize;
        for voter in 0..n {
            if prefers[(rest % kf) as usize] {
                fiber |= 1 << voter;
            }
            rest /= kf;
        }
        let hv = if h[fiber] { a } else { b };
        if v != hv {
            disagree += 1;
        }
    }
    Ok(disagree as f64 / table.len() as f64)
}

/// Fraction of coordinate pairs violating monotonicity (out of `n·2^{n-1}`).
fn monotonicity_violation_fraction(h: &[bool], n: u32) -> f64 {
    let mut violations = 0u64;
    for i in 0..n {
        let bit = 1usize << i;
        for idx in 0..h.len() {
            if idx & bit == 0 && h[idx] && !h[idx | bit] {
                violations += 1;
            }
        }
    }
    violations as f64 / (n as u64 * (h.len() as u64 / 2)) as f64
}

/// Coordinatewise swap monotonization iterated to a fixpoint.
fn monotonize(h: &[bool], n: u32) -> Vec<bool> {
    let mut out = h.to_vec();
    loop {
        let mut changed = false;
        for i in 0..n {
            let bit = 1usize << i;
            for idx in 0..out.len() {
                if idx & bit == 0 && out[idx] && !out[idx | bit] {
                    out[idx] = false;
                    out[idx | bit] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

#[derive(Debug, Clone)]
pub struct GsGateReport {
    pub epsilon: f64,
    pub m4_fraction: f64,
    /// `ε⁵ / (10⁹ n⁷ k⁴⁶)` — astronomically loose at desk scale; the gate is
    /// a correctness check, not a sharp prediction.
    pub bound: f64,
    pub vacuous: bool,
    pub ok: bool,
}

/// One-sided quantitative manipulation gate: the 4-adjacent manipulation
/// mass must dominate the polynomial floor determined by the distance lower
/// bound to the nonmanipulable family.
pub fn quantitative_gs_gate(f: &SocialChoiceFunction) -> Result<GsGateReport> {
    let dist = dist_to_nonmanip(f)?;
    let epsilon = dist.combined_lower;
    let c = census(f, 4)?;
    let m4 = c.r_manipulable_fraction[&4.min(f.k() as usize).max(2)];
    let bound = epsilon.powi(5) / (1e9 * (f.n() as f64).powi(7) * (f.k() as f64).powi(46));
    Ok(GsGateReport {
        epsilon,
        m4_fraction: m4,
        bound,
        vacuous: epsilon == 0.0,
        ok: m4 >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_pair_dictator_is_in_family() {
        let f = SocialChoiceFunction::new(
            3,
            2,
            Rule::TopH {
                voter: 0,
                set: vec![0, 2],
            },
            "top",
        )
        .unwrap();
        let rep = dist_to_nonmanip(&f).unwrap();
        assert_eq!(rep.dist_top_h, 0.0);
        assert_eq!(rep.combined_lower, 0.0);
        assert_eq!(rep.combined_upper, 0.0);
    }

    #[test]
    fn pairwise_majority_rule_is_in_the_two_valued_family() {
        let maj = crate::boolean::Generator::Majority.build(3).unwrap();
        let f = SocialChoiceFunction::new(
            3,
            3,
            Rule::PairwiseBoolean { a: 0, b: 1, f: maj },
            "pair_maj",
        )
        .unwrap();
        let rep = dist_to_nonmanip(&f).unwrap();
        assert_eq!(rep.two_valued_upper, 0.0, "{rep:?}");
        assert_eq!(rep.best_pair, [0, 1]);
        assert_eq!(rep.combined_upper, 0.0);
    }

    #[test]
    fn borda_is_positively_far_from_dictators() {
        let f = SocialChoiceFunction::named("borda", 3, 2).unwrap();
        let rep = dist_to_nonmanip(&f).unwrap();
        assert!(rep.dist_top_h > 0.0);
        assert!(rep.combined_upper >= rep.combined_lower);
        assert!(rep.two_valued_upper > 0.0);
    }

    #[test]
    fn monotonize_produces_monotone_tables() {
        let h = vec![true, false, false, true, true, false, false, false];
        let m = monotonize(&h, 3);
        assert_eq!(monotonicity_violation_fraction(&m, 3), 0.0);
        // mass is preserved by swap monotonization
        assert_eq!(
            h.iter().filter(|&&x| x).count(),
            m.iter().filter(|&&x| x).count()
        );
    }

    #[test]
    fn gs_gate_on_the_zoo() {
        for rule in ["plurality", "borda"] {
            let f = SocialChoiceFunction::named(rule, 3, 3).unwrap();
            let rep = quantitative_gs_gate(&f).unwrap();
            assert!(rep.ok, "{rule}: {rep:?}");
            assert!(rep.m4_fraction > 0.0);
        }
        let d = SocialChoiceFunction::new(3, 3, Rule::Dictator { voter: 0 }, "d").unwrap();
        let rep = quantitative_gs_gate(&d).unwrap();
        assert!(rep.vacuous);
        assert!(rep.ok);
        assert_eq!(rep.m4_fraction, 0.0);
    }
}
