use super::ranking::{factorial, AdjacentTransposition, Ranking};
use super::scf::SocialChoiceFunction;
use crate::error::Result;
use std::collections::BTreeMap;

/// Classification of one preference fiber for a boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberClass {
    /// Preference bit vector `z^{a,b}` (set bit = that voter ranks a over b).
    pub fiber: u32,
    /// Number of profiles in the fiber lying on the boundary.
    pub on_boundary: u64,
    /// Fiber size `(k!/2)^n`.
    pub size: u64,
    pub large: bool,
}

/// Boundary census for one ordered pair of alternatives in one coordinate.
#[derive(Debug, Clone)]
pub struct PairBoundary {
    pub voter: usize,
    pub a: u8,
    pub b: u8,
    /// `|B_i^{a,b}|`: ordered edges (σ, σ') differing in coordinate `voter`
    /// with outcomes (a, b).
    pub edges: u64,
    /// Refined edge counts per adjacent transposition `z`.
    pub refined: BTreeMap<(u8, u8), u64>,
    /// Fibers of the boundary, classified large/small at the census γ.
    pub fibers: Vec<FiberClass>,
}

#[derive(Debug, Clone)]
pub struct BoundaryCensus {
    pub gamma: f64,
    pub pairs: Vec<PairBoundary>,
    /// Total profile count `(k!)^n`.
    pub profiles: u64,
}

impl BoundaryCensus {
    pub fn pair(&self, voter: usize, a: u8, b: u8) -> Option<&PairBoundary> {
        self.pairs
            .iter()
            .find(|p| p.voter == voter && p.a == a && p.b == b)
    }
}

/// Default large-fiber threshold `ε³/(4n³k⁹)` at `ε = 1`.
pub fn default_gamma(n: u32, k: u8) -> f64 {
    1.0 / (4.0 * (n as f64).powi(3) * (k as f64).powi(9))
}

/// Exact boundary and fiber census. `gamma` is the large-fiber threshold:
/// a fiber is *large* when at least a `1 - γ` fraction of it lies on the
/// boundary.
pub fn boundary_census(f: &SocialChoiceFunction, gamma: f64) -> Result<BoundaryCensus> {
    let k = f.k() as usize;
    let n = f.n() as usize;
    let kf = factorial(k) as u64;
    let table = f.table()?;
    let total = table.len() as u64;
    let contexts = total / kf;
    let perms = Ranking::all(f.k());
    let transpositions = AdjacentTransposition::all(f.k());
    let z_image: Vec<Vec<usize>> = transpositions
        .iter()
        .map(|z| perms.iter().map(|p| z.apply(p).lehmer_index()).collect())
        .collect();
    // preference bit of each ranking code for each ordered pair (a, b), a<b
    let prefers: Vec<Vec<bool>> = perms
        .iter()
        .map(|p| {
            let mut row = Vec::new();
            for a in 0..f.k() {
                for b in (a + 1)..f.k() {
                    row.push(p.prefers(a, b));
                }
            }
            row
        })
        .collect();
    let pair_slot = |a: u8, b: u8| -> usize {
        // index into the packed a<b enumeration
        let mut s = 0;
        for x in 0..f.k() {
            for y in (x + 1)..f.k() {
                if (x, y) == (a, b) {
                    return s;
                }
                s += 1;
            }
        }
        unreachable!()
    };

    let mut pairs = Vec::new();
    for voter in 0..n {
        let stride = kf.pow(voter as u32);
        for a in 0..f.k() {
            for b in 0..f.k() {
                if a == b {
                    continue;
                }
                let slot = pair_slot(a.min(b), a.max(b));
                let mut edges = 0u64;
                let mut refined: BTreeMap<(u8, u8), u64> = BTreeMap::new();
                // per-fiber tallies of boundary membership
                let mut fiber_on: BTreeMap<u32, u64> = BTreeMap::new();
                for ctx in 0..contexts {
                    let low = ctx % stride;
                    let high = ctx / stride;
                    let base = high * (stride * kf) + low;
                    let mut outcomes = vec![0u8; kf as usize];
                    let mut count_a = 0u64;
                    let mut count_b = 0u64;
                    for code in 0..kf {
                        let v = table[(base + code * stride) as usize];
                        outcomes[code as usize] = v;
                        count_a += (v == a) as u64;
                        count_b += (v == b) as u64;
                    }
                    edges += count_a * count_b;
                    for (zi, images) in z_image.iter().enumerate() {
                        let mut c = 0u64;
                        #[allow(clippy::needless_range_loop)]
                        for code in 0..kf as usize {
                            if outcomes[code] == a && outcomes[images[code]] == b {
                                c += 1;
                            }
                        }
                        if c > 0 {
                            let z = &transpositions[zi];
                            *refined.entry((z.a, z.b)).or_default() += c;
                        }
                    }
                    if count_b > 0 {
                        // fibers: bit vector of a-over-b preferences of the
                        // context voters plus each σ_voter value
                        #[allow(clippy::needless_range_loop)]
                        for code in 0..kf as usize {
                            if outcomes[code] != a {
                                continue;
                            }
                            let fiber = fiber_bits(ctx, code, voter, n, kf, &prefers, slot, a < b);
                            *fiber_on.entry(fiber).or_default() += 1;
                        }
                    }
                }
                let fiber_size = (kf / 2).pow(n as u32);
                let fibers = fiber_on
                    .into_iter()
                    .map(|(fiber, on_boundary)| FiberClass {
                        fiber,
                        on_boundary,
                        size: fiber_size,
                        large: on_boundary as f64 / fiber_size as f64 >= 1.0 - gamma,
                    })
                    .collect();
                pairs.push(PairBoundary {
                    voter,
                    a,
                    b,
                    edges,
                    refined,
                    fibers,
                });
            }
        }
    }
    Ok(BoundaryCensus {
        gamma,
        pairs,
        profiles: total,
    })
}

#[allow(clippy::too_many_arguments)]
fn fiber_bits(
    ctx: u64,
    code: usize,
    voter: usize,
    n: usize,
    kf: u64,
    prefers: &[Vec<bool>],
    slot: usize,
    a_less_b: bool,
) -> u32 {
    // reconstruct each voter's ranking code from (ctx, code at `voter`)
    let mut bits = 0u32;
    let mut rest = ctx;
    for v in 0..n {
        let c = if v == voter {
            code
        } else {
            let d = (rest % kf) as usize;
            rest /= kf;
            d
        };
        let pref_a_over_b = if a_less_b {
            prefers[c][slot]
        } else {
            !prefers[c][slot]
        };
        if pref_a_over_b {
            bits |= 1 << v;
        }
    }
    bits
}
