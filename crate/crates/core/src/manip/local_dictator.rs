use super::ranking::{profile_from_index, Ranking};
use super::scf::SocialChoiceFunction;
use crate::error::Result;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct LocalDictatorCensus {
    pub voter: usize,
    /// Number of profiles in `LD_i^H` per 3-element subset `H` (sorted keys).
    pub by_subset: BTreeMap<[u8; 3], u64>,
    /// `|LD_i(a,b)| = |∪_{c∉{a,b}} LD_i^{a,b,c}|` per unordered pair.
    pub by_pair: BTreeMap<[u8; 2], u64>,
    pub profiles: u64,
}

/// A profile is a local dictator on `H` in coordinate `i` when the members
/// of `H` occupy adjacent positions of `σ_i` and every permutation of that
/// block elects the block's top element. Exact census over all profiles and
/// all `|H| = 3` subsets.
pub fn local_dictator_census(
    f: &SocialChoiceFunction,
    voter: usize,
) -> Result<LocalDictatorCensus> {
    let k = f.k();
    let total = f.profile_count();
    let mut by_subset: BTreeMap<[u8; 3], u64> = BTreeMap::new();
    let mut by_pair: BTreeMap<[u8; 2], u64> = BTreeMap::new();
    let mut subsets = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                subsets.push([a, b, c]);
                by_subset.insert([a, b, c], 0);
            }
        }
    }
    for a in 0..k {
        for b in (a + 1)..k {
            by_pair.insert([a, b], 0);
        }
    }

    for idx in 0..total {
        let profile = profile_from_index(k, f.n(), idx)?;
        let mut witnessed_pairs: Vec<[u8; 2]> = Vec::new();
        for h in &subsets {
            if let Some(start) = adjacent_block_start(&profile[voter], h) {
                if is_local_dictator(f, &profile, voter, start) {
                    *by_subset.get_mut(h).unwrap() += 1;
                    for (x, y) in [(h[0], h[1]), (h[0], h[2]), (h[1], h[2])] {
                        if !witnessed_pairs.contains(&[x, y]) {
                            witnessed_pairs.push([x, y]);
                        }
                    }
                }
            }
        }
        for pair in witnessed_pairs {
            *by_pair.get_mut(&pair).unwrap() += 1;
        }
    }
    Ok(LocalDictatorCensus {
        voter,
        by_subset,
        by_pair,
        profiles: total,
    })
}

/// Start position when the members of `h` occupy three adjacent positions.
fn adjacent_block_start(r: &Ranking, h: &[u8; 3]) -> Option<usize> {
    let positions: Vec<usize> = h.iter().map(|&a| r.rank_of(a)).collect();
    let lo = *positions.iter().min().unwrap();
    let hi = *positions.iter().max().unwrap();
    (hi - lo == 2).then_some(lo)
}

fn is_local_dictator(
    f: &SocialChoiceFunction,
    profile: &[Ranking],
    voter: usize,
    start: usize,
) -> bool {
    let block: Vec<u8> = profile[voter].order()[start..start + 3].to_vec();
    let arrangements = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut altered = profile.to_vec();
    for arr in arrangements {
        let mut order = profile[voter].order().to_vec();
        for (offset, &src) in arr.iter().enumerate() {
            order[start + offset] = block[src];
        }
        let top = order[start];
        altered[voter] = Ranking::new(order).expect("permutation");
        if f.evaluate(&altered) != top {
            return false;
        }
    }
    true
}
