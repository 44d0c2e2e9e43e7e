use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BooleanRevHypReport {
    pub p1: f64,
    pub p2: f64,
    pub p_joint: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Exact reverse-hypercontractive set bound on the cube: for subsets
/// `B₁, B₂ ⊆ {±1}^n` and coordinatewise correlations of magnitude ≤ |ρ|,
/// with `P[B₁] = e^{-α²}` and `P[B₂] = e^{-β²}`,
/// `P[x ∈ B₁, y ∈ B₂] ≥ exp(-(α² + β² + 2|ρ|αβ)/(1-ρ²))`.
///
/// The joint probability is computed exactly by pushing the indicator of
/// `B₂` through the per-coordinate transition kernel (an O(n·2^n) pass).
pub fn boolean_reverse_hyp_check(
    b1: &[bool],
    b2: &[bool],
    n: u32,
    rho: f64,
) -> Result<BooleanRevHypReport> {
    if n > 14 {
        return Err(Error::BudgetExceeded(
            "exact joint evaluation capped at n ≤ 14".into(),
        ));
    }
    let len = 1usize << n;
    if b1.len() != len || b2.len() != len {
        return Err(Error::Malformed(format!(
            "indicator tables must have length 2^{n}"
        )));
    }
    if rho.abs() >= 1.0 {
        return Err(Error::ParameterDomain(format!(
            "|rho| must be < 1, got {rho}"
        )));
    }
    let count1 = b1.iter().filter(|&&b| b).count();
    let count2 = b2.iter().filter(|&&b| b).count();
    if count1 == 0 || count2 == 0 {
        return Err(Error::ParameterDomain("sets must be nonempty".into()));
    }
    let p1 = count1 as f64 / len as f64;
    let p2 = count2 as f64 / len as f64;

    // u(x) = P[y ∈ B₂ | x]: apply the single-site kernel per coordinate.
    let same = (1.0 + rho) / 2.0; // P[y_i = x_i]
    let diff = (1.0 - rho) / 2.0;
    let mut u: Vec<f64> = b2.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    for i in 0..n {
        let bit = 1usize << i;
        for idx in 0..len {
            if idx & bit == 0 {
                let lo = u[idx];
                let hi = u[idx | bit];
                u[idx] = same * lo + diff * hi;
                u[idx | bit] = diff * lo + same * hi;
            }
        }
    }
    let p_joint = b1
        .iter()
        .zip(&u)
        .filter(|(b, _)| **b)
        .map(|(_, v)| v)
        .sum::<f64>()
        / len as f64;

    let (alpha2, beta2) = (-p1.ln(), -p2.ln());
    let r = rho.abs();
    let bound = (-(alpha2 + beta2 + 2.0 * r * (alpha2 * beta2).sqrt()) / (1.0 - r * r)).exp();
    Ok(BooleanRevHypReport {
        p1,
        p2,
        p_joint,
        bound,
        ok: p_joint >= bound - 1e-12,
    })
}

/// A random monotone subset of the n-cube of mass at least `min_mass`: the
/// up-closure of random seed points, grown until the target mass is reached.
pub fn random_monotone_set(n: u32, min_mass: f64, seed: u64) -> Vec<bool> {
    use rand::Rng;
    let len = 1usize << n;
    let mut rng = crate::rng::stream(seed, 0);
    let mut set = vec![false; len];
    let mut mass = 0usize;
    while (mass as f64) < min_mass * len as f64 {
        let point = rng.gen_range(0..len);
        // up-closure: all supersets of `point`
        let mut stack = vec![point];
        while let Some(p) = stack.pop() {
            if set[p] {
                continue;
            }
            set[p] = true;
            mass += 1;
            for i in 0..n {
                let q = p | (1 << i);
                if q != p && !set[q] {
                    stack.push(q);
                }
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_cube_is_saturated() {
        let all = vec![true; 16];
        let rep = boolean_reverse_hyp_check(&all, &all, 4, -1.0 / 3.0).unwrap();
        assert_eq!(rep.p_joint, 1.0);
        assert!((rep.bound - 1.0).abs() < 1e-12);
        assert!(rep.ok);
    }

    #[test]
    fn single_coordinate_worked_example() {
        // B₁ = B₂ = {x₁ = +1} at ρ = -1/3, n = 1:
        // joint = (1 + ρ)/4 = 1/6, bound = 2^{-3} = 1/8.
        let b = vec![false, true];
        let rep = boolean_reverse_hyp_check(&b, &b, 1, -1.0 / 3.0).unwrap();
        assert!((rep.p_joint - 1.0 / 6.0).abs() < 1e-15);
        assert!((rep.bound - 0.125).abs() < 1e-12);
        assert!(rep.ok);
    }

    #[test]
    fn joint_kernel_matches_direct_sum() {
        // n = 3 direct double sum over pairs with the product transition law
        let b1: Vec<bool> = (0..8).map(|i| i % 3 == 0).collect();
        let b2: Vec<bool> = (0..8).map(|i| i % 2 == 1).collect();
        let rho = -1.0 / 3.0;
        let rep = boolean_reverse_hyp_check(&b1, &b2, 3, rho).unwrap();
        let mut direct = 0.0;
        for x in 0..8u32 {
            if !b1[x as usize] {
                continue;
            }
            for y in 0..8u32 {
                if !b2[y as usize] {
                    continue;
                }
                let mut w = 1.0 / 8.0;
                for i in 0..3 {
                    let equal = (x >> i & 1) == (y >> i & 1);
                    w *= if equal {
                        (1.0 + rho) / 2.0
                    } else {
                        (1.0 - rho) / 2.0
                    };
                }
                direct += w;
            }
        }
        assert!((rep.p_joint - direct).abs() < 1e-14);
    }

    #[test]
    fn random_monotone_sets_pass_at_negative_third() {
        for seed in 0..100 {
            let b1 = random_monotone_set(10, 0.25, 1000 + seed);
            let b2 = random_monotone_set(10, 0.25, 2000 + seed);
            let rep = boolean_reverse_hyp_check(&b1, &b2, 10, -1.0 / 3.0).unwrap();
            assert!(rep.ok, "seed {seed}: {rep:?}");
        }
    }

    #[test]
    fn monotone_set_generator_is_monotone() {
        let set = random_monotone_set(8, 0.25, 7);
        for idx in 0..256usize {
            if set[idx] {
                for i in 0..8 {
                    assert!(set[idx | (1 << i)], "up-closure violated");
                }
            }
        }
        let mass = set.iter().filter(|&&b| b).count();
        assert!(mass >= 64);
    }
}
