use crate::error::{Error, Result};
use rand::Rng;

/// Broadcast-with-re-randomization measure on the leaves of the rooted
/// 3-ary tree of height `r`: the root is a fair bit, each child disagrees
/// with its parent with probability `eps`, and each leaf is finally pushed
/// to 1 with probability `delta`.
#[derive(Debug, Clone, Copy)]
pub struct TreeIsingSpec {
    pub r: u32,
    pub eps: f64,
    pub delta: f64,
}

impl TreeIsingSpec {
    pub fn new(r: u32, eps: f64, delta: f64) -> Result<Self> {
        if r == 0 || r > 10 {
            return Err(Error::ParameterDomain(format!("height {r} outside 1..=10")));
        }
        if !(0.0..0.5).contains(&eps) || !(0.0..0.5).contains(&delta) {
            return Err(Error::ParameterDomain(
                "eps and delta must lie in [0, 1/2)".into(),
            ));
        }
        Ok(Self { r, eps, delta })
    }

    pub fn leaves(&self) -> usize {
        3usize.pow(self.r)
    }
}

#[derive(Debug, Clone)]
pub struct TreeIsingReport {
    /// Estimate of `μ[RM_{3,r}]` with standard error.
    pub mean: f64,
    pub mean_se: f64,
    /// The claim ceiling `1/2 + δ/2`.
    pub mean_bound: f64,
    pub mean_ok: bool,
    /// Leaf-effect estimate (conditional coupling on one leaf's pre-push
    /// value) with standard error.
    pub effect: f64,
    pub effect_se: f64,
    /// The claim ceiling `(1 - ε/2)^{(r-1)/2} + 2^{-(r-1)/2}`.
    pub effect_bound: f64,
    pub effect_ok: bool,
}

/// Recursive majority of threes over the leaf values.
fn recursive_majority(leaves: &[u8]) -> u8 {
    let mut level: Vec<u8> = leaves.to_vec();
    while level.len() > 1 {
        level = level
            .chunks(3)
            .map(|c| ((c[0] + c[1] + c[2]) >= 2) as u8)
            .collect();
    }
    level[0]
}

/// Broadcasts from `start_value` at vertex `start` (any vertex, by the
/// reversibility of the edge process), filling all tree vertices. Vertices
/// are indexed heap-style: root 0, children of `v` are `3v+1+{0,1,2}`.
fn broadcast_from_root(r: u32, root_value: u8, eps: f64, rng: &mut impl Rng, values: &mut [u8]) {
    values[0] = root_value;
    let internal = (3usize.pow(r) - 1) / 2;
    for v in 0..internal {
        for c in 0..3 {
            let child = 3 * v + 1 + c;
            let flip = rng.gen::<f64>() < eps;
            values[child] = values[v] ^ (flip as u8);
        }
    }
}

/// Total number of vertices of the height-`r` tree.
fn vertex_count(r: u32) -> usize {
    (3usize.pow(r + 1) - 1) / 2
}

/// Monte-Carlo estimate of `μ[m]` for `m = RM_{3,r}` and of the effect of a
/// single leaf, via the conditional coupling with common random numbers:
/// the leaf's pre-push value is forced to 1 and to 0, the rest of the tree
/// is re-broadcast from that leaf with shared edge coins, and the two
/// outputs are compared.
pub fn tree_ising_experiment(
    spec: TreeIsingSpec,
    samples: u64,
    seed: u64,
) -> Result<TreeIsingReport> {
    let n_vertices = vertex_count(spec.r);
    let n_leaves = spec.leaves();
    let first_leaf = n_vertices - n_leaves;

    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut values = vec![0u8; n_vertices];
        let mut leaves = vec![0u8; n_leaves];
        let mut sum_m = 0u64;
        let mut diff_sum = 0i64;
        for _ in 0..len {
            // plain sample for μ[m]
            let root = rng.gen::<bool>() as u8;
            broadcast_from_root(spec.r, root, spec.eps, &mut rng, &mut values);
            for (i, leaf) in leaves.iter_mut().enumerate() {
                let pushed = rng.gen::<f64>() < spec.delta;
                *leaf = values[first_leaf + i] | (pushed as u8);
            }
            sum_m += recursive_majority(&leaves) as u64;

            // coupled pair for the effect of leaf 0: conditioning on the
            // leaf's pre-push value equals re-rooting the broadcast there
            let push: Vec<bool> = (0..n_leaves)
                .map(|_| rng.gen::<f64>() < spec.delta)
                .collect();
            let mut outputs = [0u8; 2];
            // shared coins for the upward path and downward re-broadcasts
            let coins: Vec<f64> = (0..2 * n_vertices).map(|_| rng.gen()).collect();
            for (slot, forced) in [0u8, 1].into_iter().enumerate() {
                let mut vals = vec![0u8; n_vertices];
                // walk up from leaf 0 to the root with shared edge coins
                let mut path = Vec::new();
                let mut v = first_leaf;
                while v != 0 {
                    path.push(v);
                    v = (v - 1) / 3;
                }
                path.push(0);
                vals[path[0]] = forced;
                for (step, w) in path.windows(2).enumerate() {
                    let flip = coins[step] < spec.eps;
                    vals[w[1]] = vals[w[0]] ^ (flip as u8);
                }
                // broadcast down, reusing one coin per directed edge, but
                // never overwriting the fixed upward path
                let internal = (n_vertices - n_leaves).max(1);
                for v in 0..internal {
                    for c in 0..3 {
                        let child = 3 * v + 1 + c;
                        if child >= n_vertices || path.contains(&child) {
                            continue;
                        }
                        let flip = coins[n_vertices + child] < spec.eps;
                        vals[child] = vals[v] ^ (flip as u8);
                    }
                }
                let coupled: Vec<u8> = (0..n_leaves)
                    .map(|i| {
                        if i == 0 {
                            // the forced leaf still receives its own push
                            vals[first_leaf] | (push[0] as u8)
                        } else {
                            vals[first_leaf + i] | (push[i] as u8)
                        }
                    })
                    .collect();
                outputs[slot] = recursive_majority(&coupled);
            }
            diff_sum += outputs[1] as i64 - outputs[0] as i64;
        }
        (sum_m, diff_sum, len)
    });
    let (sum_m, diff_sum, total) = parts
        .into_iter()
        .fold((0u64, 0i64, 0u64), |a, p| (a.0 + p.0, a.1 + p.1, a.2 + p.2));
    let (mean, mean_se) = crate::rng::freq_with_se(sum_m, total);
    let effect = diff_sum as f64 / total as f64;
    // Bernoulli-difference variance bound for the SE
    let effect_se = (1.0 / total as f64).sqrt();
    let mean_bound = 0.5 + spec.delta / 2.0;
    let effect_bound = (1.0 - spec.eps / 2.0).powf((spec.r as f64 - 1.0) / 2.0)
        + 2f64.powf(-(spec.r as f64 - 1.0) / 2.0);
    Ok(TreeIsingReport {
        mean,
        mean_se,
        mean_bound,
        mean_ok: mean <= mean_bound + 3.0 * mean_se,
        effect,
        effect_se,
        effect_bound,
        effect_ok: effect <= effect_bound + 3.0 * effect_se,
    })
}

/// Exact `μ[m]` and leaf effect for height 1 by enumeration of the 2⁴ tree
/// states and the 2³ push patterns — the oracle for the sampler.
pub fn tree_ising_exact_r1(eps: f64, delta: f64) -> (f64, f64) {
    let mut mean = 0.0;
    let mut cond = [[0.0f64; 2]; 2]; // [leaf0 pre-push value] -> (mass, mean)
    let mut mass = [0.0f64; 2];
    for root in 0..2u8 {
        let p_root = 0.5;
        for flips in 0..8u32 {
            let mut p = p_root;
            let mut leaves = [0u8; 3];
            for (i, leaf) in leaves.iter_mut().enumerate() {
                let flip = flips >> i & 1 == 1;
                p *= if flip { eps } else { 1.0 - eps };
                *leaf = root ^ (flip as u8);
            }
            for push in 0..8u32 {
                let mut pp = p;
                let mut pushed = leaves;
                for (i, v) in pushed.iter_mut().enumerate() {
                    let did = push >> i & 1 == 1;
                    pp *= if did { delta } else { 1.0 - delta };
                    *v |= did as u8;
                }
                let m = recursive_majority(&pushed) as f64;
                mean += pp * m;
                mass[leaves[0] as usize] += pp;
                cond[leaves[0] as usize][0] += pp;
                cond[leaves[0] as usize][1] += pp * m;
            }
        }
    }
    let effect = cond[1][1] / cond[1][0] - cond[0][1] / cond[0][0];
    debug_assert!((mass[0] + mass[1] - 1.0).abs() < 1e-12);
    (mean, effect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_case_sits_at_half() {
        let (mean, _) = tree_ising_exact_r1(0.3, 0.0);
        assert!((mean - 0.5).abs() < 1e-12);
        let spec = TreeIsingSpec::new(3, 0.0, 0.0).unwrap();
        let rep = tree_ising_experiment(spec, 40_000, 5).unwrap();
        assert!((rep.mean - 0.5).abs() <= 4.0 * rep.mean_se, "{rep:?}");
    }

    #[test]
    fn sampler_matches_the_exact_r1_oracle() {
        let (mean, effect) = tree_ising_exact_r1(0.01, 0.01);
        let spec = TreeIsingSpec::new(1, 0.01, 0.01).unwrap();
        let rep = tree_ising_experiment(spec, 400_000, 6).unwrap();
        assert!(
            (rep.mean - mean).abs() <= 4.0 * rep.mean_se,
            "mean {} vs oracle {mean}",
            rep.mean
        );
        assert!(
            (rep.effect - effect).abs() <= 4.0 * rep.effect_se,
            "effect {} vs oracle {effect}",
            rep.effect
        );
    }

    #[test]
    fn claims_hold_at_depth_five() {
        let spec = TreeIsingSpec::new(5, 0.01, 0.01).unwrap();
        let rep = tree_ising_experiment(spec, 60_000, 7).unwrap();
        assert!(rep.mean_ok, "{rep:?}");
        assert!(rep.effect_ok, "{rep:?}");
    }

    #[test]
    fn fkg_positive_association_on_monotone_events() {
        // P[AB] ≥ P[A]P[B] - 3·SE for monotone leaf events under μ
        let spec = TreeIsingSpec::new(3, 0.15, 0.05).unwrap();
        let n_vertices = vertex_count(3);
        let n_leaves = spec.leaves();
        let first = n_vertices - n_leaves;
        let mut rng = crate::rng::stream(8, 0);
        let samples = 200_000u64;
        let mut values = vec![0u8; n_vertices];
        let (mut ca, mut cb, mut cab) = (0u64, 0u64, 0u64);
        for _ in 0..samples {
            let root = rng.gen::<bool>() as u8;
            broadcast_from_root(3, root, spec.eps, &mut rng, &mut values);
            let leaves: Vec<u8> = (0..n_leaves)
                .map(|i| values[first + i] | ((rng.gen::<f64>() < spec.delta) as u8))
                .collect();
            // A: leaf 0 is one; B: majority of the first 9 leaves is one
            let a = leaves[0] == 1;
            let b = leaves[..9].iter().map(|&v| v as u32).sum::<u32>() >= 5;
            ca += a as u64;
            cb += b as u64;
            cab += (a && b) as u64;
        }
        let (pa, _) = crate::rng::freq_with_se(ca, samples);
        let (pb, _) = crate::rng::freq_with_se(cb, samples);
        let (pab, se) = crate::rng::freq_with_se(cab, samples);
        assert!(
            pab >= pa * pb - 3.0 * se,
            "P[AB]={pab} P[A]P[B]={}",
            pa * pb
        );
        // strict positive association should be visible here
        assert!(pab > pa * pb, "tree correlations should be positive");
    }
}
