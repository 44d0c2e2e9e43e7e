use super::ranking::{factorial, Ranking};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Bubble path between two rankings: place the target's top element first by
/// adjacent swaps, then the second, and so on. Length ≤ k(k-1)/2. The path
/// includes both endpoints.
pub fn canonical_path(from: &Ranking, to: &Ranking) -> Vec<Ranking> {
    let k = from.k() as usize;
    let mut path = vec![from.clone()];
    let mut current = from.clone();
    for target_pos in 0..k {
        let elem = to.order()[target_pos];
        let mut pos = current.rank_of(elem);
        while pos > target_pos {
            current = current.swap_positions(pos - 1);
            path.push(current.clone());
            pos -= 1;
        }
    }
    debug_assert_eq!(&current, to);
    path
}

/// The a-above-b-preserving variant: both endpoints must rank `a` above `b`,
/// and so does every intermediate ranking. All other elements are placed
/// first (pushing `a` and `b` to the bottom), then `a`, then `b`.
/// Length < k².
pub fn canonical_path_above(from: &Ranking, to: &Ranking, a: u8, b: u8) -> Result<Vec<Ranking>> {
    if !from.prefers(a, b) || !to.prefers(a, b) {
        return Err(Error::Precondition(format!(
            "both endpoints must rank {a} above {b}"
        )));
    }
    let _k = from.k() as usize;
    let mut path = vec![from.clone()];
    let mut current = from.clone();
    // phase 1: all elements other than a, b into target order at the top
    let others: Vec<u8> = to
        .order()
        .iter()
        .copied()
        .filter(|&x| x != a && x != b)
        .collect();
    for (target_pos, &elem) in others.iter().enumerate() {
        let mut pos = current.rank_of(elem);
        while pos > target_pos {
            current = current.swap_positions(pos - 1);
            path.push(current.clone());
            pos -= 1;
        }
    }
    // now the suffix is [a, b]; phase 2: bubble a up to its target position
    for elem in [a, b] {
        let target_pos = to.rank_of(elem);
        let mut pos = current.rank_of(elem);
        while pos > target_pos {
            current = current.swap_positions(pos - 1);
            path.push(current.clone());
            pos -= 1;
        }
    }
    debug_assert_eq!(&current, to);
    Ok(path)
}

#[derive(Debug, Clone)]
pub struct CongestionReport {
    pub k: u8,
    pub variant: u8,
    /// Max over vertices of the number of (source, target) pairs whose path
    /// visits the vertex.
    pub max_congestion: u64,
    /// The stated bound: `k²k!/2` for variant 1, `k⁴k!` for variant 2.
    pub bound: u64,
    pub max_path_length: usize,
    pub length_bound: usize,
    pub ok: bool,
    /// Variant 2 only: every intermediate kept `a` above `b`.
    pub order_preserved: bool,
}

/// Measures worst-case vertex congestion of the canonical path maps by full
/// enumeration of ordered pairs. Variant 1 runs over all of `S_k²`; variant
/// 2 runs over pairs ranking `a = 0` above `b = 1`.
pub fn congestion_census(k: u8, variant: u8) -> Result<CongestionReport> {
    if !(2..=6).contains(&k) {
        return Err(Error::BudgetExceeded(format!(
            "congestion census supported for k in 2..=6, got {k}"
        )));
    }
    let all = Ranking::all(k);
    let kf = factorial(k as usize) as u64;
    let mut visits: HashMap<Ranking, u64> = HashMap::new();
    let mut max_len = 0usize;
    let mut order_preserved = true;
    let (pairs, bound, length_bound): (Vec<(usize, usize)>, u64, usize) = match variant {
        1 => (
            (0..all.len())
                .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
                .collect(),
            k as u64 * k as u64 * kf / 2,
            k as usize * (k as usize - 1) / 2,
        ),
        2 => {
            let above: Vec<usize> = (0..all.len()).filter(|&i| all[i].prefers(0, 1)).collect();
            (
                above
                    .iter()
                    .flat_map(|&i| above.iter().map(move |&j| (i, j)))
                    .collect(),
                (k as u64).pow(4) * kf,
                (k as usize) * (k as usize),
            )
        }
        v => {
            return Err(Error::ParameterDomain(format!(
                "variant must be 1 or 2, got {v}"
            )))
        }
    };
    for (i, j) in pairs {
        let path = match variant {
            1 => canonical_path(&all[i], &all[j]),
            _ => canonical_path_above(&all[i], &all[j], 0, 1)?,
        };
        max_len = max_len.max(path.len() - 1);
        if variant == 2 {
            order_preserved &= path.iter().all(|r| r.prefers(0, 1));
        }
        let mut seen: Vec<&Ranking> = Vec::with_capacity(path.len());
        for vertex in &path {
            if !seen.contains(&vertex) {
                seen.push(vertex);
                *visits.entry(vertex.clone()).or_default() += 1;
            }
        }
    }
    let max_congestion = visits.values().copied().max().unwrap_or(0);
    let ok =
        max_congestion <= bound && max_len <= length_bound && (variant == 1 || order_preserved);
    Ok(CongestionReport {
        k,
        variant,
        max_congestion,
        bound,
        max_path_length: max_len,
        length_bound,
        ok,
        order_preserved,
    })
}
