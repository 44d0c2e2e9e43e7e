use super::ranking::{factorial, profile_from_index, Ranking};
use super::scf::SocialChoiceFunction;
use crate::error::{Error, Result};
use rand::Rng;
use std::collections::BTreeMap;

/// Work guard for exhaustive censuses: profiles × misreports.
const MAX_CENSUS_WORK: u64 = 300_000_000;

/// A witnessed profitable misreport.
#[derive(Debug, Clone)]
pub struct ManipulationRecord {
    pub profile: Vec<Ranking>,
    pub voter: usize,
    pub misreport: Ranking,
    /// Smallest adjacent block whose permutation realizes the misreport.
    pub r: usize,
    pub outcome: u8,
    pub outcome_after: u8,
}

impl ManipulationRecord {
    fn new(
        f: &SocialChoiceFunction,
        profile: &[Ranking],
        voter: usize,
        misreport: Ranking,
    ) -> Self {
        let outcome = f.evaluate(profile);
        let mut altered = profile.to_vec();
        altered[voter] = misreport.clone();
        let outcome_after = f.evaluate(&altered);
        debug_assert!(
            profile[voter].prefers(outcome_after, outcome),
            "record must encode a profitable misreport"
        );
        let r = block_size(&profile[voter], &misreport);
        Self {
            profile: profile.to_vec(),
            voter,
            misreport,
            r,
            outcome,
            outcome_after,
        }
    }
}

/// Width of the smallest contiguous position window outside which the two
/// rankings agree (0 for equal rankings).
fn block_size(honest: &Ranking, misreport: &Ranking) -> usize {
    let diffs: Vec<usize> = honest
        .order()
        .iter()
        .zip(misreport.order())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect();
    match (diffs.first(), diffs.last()) {
        (Some(&first), Some(&last)) => last - first + 1,
        _ => 0,
    }
}

/// First profitable misreport at `profile`, if any.
pub fn is_manipulable_at(
    f: &SocialChoiceFunction,
    profile: &[Ranking],
) -> Option<ManipulationRecord> {
    let outcome = f.evaluate(profile);
    let perms = Ranking::all(f.k());
    let mut altered = profile.to_vec();
    for voter in 0..f.n() as usize {
        for candidate in &perms {
            if candidate == &profile[voter] {
                continue;
            }
            altered[voter] = candidate.clone();
            let new_outcome = f.evaluate(&altered);
            if profile[voter].prefers(new_outcome, outcome) {
                return Some(ManipulationRecord::new(
                    f,
                    profile,
                    voter,
                    candidate.clone(),
                ));
            }
        }
        altered[voter] = profile[voter].clone();
    }
    None
}

#[derive(Debug, Clone)]
pub struct ManipulationCensus {
    pub profiles: u64,
    /// `P(σ ∈ M)`.
    pub manipulable_fraction: f64,
    /// `P(σ ∈ M_r)` for each `r = 2 ..= r_max`.
    pub r_manipulable_fraction: BTreeMap<usize, f64>,
}

/// Exhaustive manipulation census: the fraction of profiles admitting any
/// profitable misreport, and per `r` the fraction admitting one that only
/// permutes `r` adjacent alternatives. Nesting `M_r ⊆ M_{r+1} ⊆ M` holds by
/// construction of the misreport sets.
pub fn census(f: &SocialChoiceFunction, r_max: usize) -> Result<ManipulationCensus> {
    let total = f.profile_count();
    let kf = factorial(f.k() as usize) as u64;
    let work = total * f.n() as u64 * kf;
    if work > MAX_CENSUS_WORK {
        return Err(Error::BudgetExceeded(format!(
            "census work {work} exceeds cap {MAX_CENSUS_WORK}"
        )));
    }
    let r_max = r_max.min(f.k() as usize).max(2);
    let perms = Ranking::all(f.k());
    let table = f.table()?;
    let mut manipulable = 0u64;
    let mut r_counts = vec![0u64; r_max + 1];
    let mut profile: Vec<Ranking> = vec![perms[0].clone(); f.n() as usize];
    let mut digits = vec![0usize; f.n() as usize];
    for idx in 0..total {
        let outcome = table[idx as usize];
        let mut any = false;
        let mut best_r = usize::MAX;
        for voter in 0..f.n() as usize {
            let stride = kf.pow(voter as u32);
            let digit = digits[voter];
            let base_idx = idx - digit as u64 * stride;
            let honest = &profile[voter];
            for (code, candidate) in perms.iter().enumerate() {
                if code == digit {
                    continue;
                }
                let new_outcome = table[(base_idx + code as u64 * stride) as usize];
                if honest.prefers(new_outcome, outcome) {
                    any = true;
                    let width = block_size(honest, candidate);
                    if width < best_r {
                        best_r = width;
                    }
                }
            }
        }
        if any {
            manipulable += 1;
            #[allow(clippy::needless_range_loop)]
            for r in best_r.max(2)..=r_max {
                r_counts[r] += 1;
            }
        }
        // mixed-radix increment
        for (d, slot) in digits.iter_mut().zip(profile.iter_mut()) {
            *d += 1;
            if *d < perms.len() {
                *slot = perms[*d].clone();
                break;
            }
            *d = 0;
            *slot = perms[0].clone();
        }
    }
    let mut r_manipulable_fraction = BTreeMap::new();
    #[allow(clippy::needless_range_loop)]
    for r in 2..=r_max {
        r_manipulable_fraction.insert(r, r_counts[r] as f64 / total as f64);
    }
    Ok(ManipulationCensus {
        profiles: total,
        manipulable_fraction: manipulable as f64 / total as f64,
        r_manipulable_fraction,
    })
}

/// Sampled manipulation census for instances beyond the exhaustive budget:
/// draws profiles uniformly and tests `M` / `M_r` membership per draw.
pub fn census_mc(
    f: &SocialChoiceFunction,
    r_max: usize,
    samples: u64,
    seed: u64,
) -> Result<ManipulationCensus> {
    let r_max = r_max.min(f.k() as usize).max(2);
    let perms = Ranking::all(f.k());
    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut m_count = 0u64;
        let mut r_counts = vec![0u64; r_max + 1];
        for _ in 0..len {
            let profile: Vec<Ranking> = (0..f.n())
                .map(|_| perms[rng.gen_range(0..perms.len())].clone())
                .collect();
            if let Some(record) = is_manipulable_at(f, &profile) {
                m_count += 1;
                // the record's window is a witness, not necessarily minimal
                // over all misreports; probe the ladder directly
                for r in 2..=r_max {
                    if r >= record.r || is_r_manipulable_at(f, &profile, r) {
                        for slot in r..=r_max {
                            r_counts[slot] += 1;
                        }
                        break;
                    }
                }
            }
        }
        (m_count, r_counts)
    });
    let mut manipulable = 0u64;
    let mut r_counts = vec![0u64; r_max + 1];
    for (m, rc) in parts {
        manipulable += m;
        for (acc, v) in r_counts.iter_mut().zip(rc) {
            *acc += v;
        }
    }
    let mut r_manipulable_fraction = BTreeMap::new();
    for (r, &count) in r_counts.iter().enumerate().take(r_max + 1).skip(2) {
        r_manipulable_fraction.insert(r, count as f64 / samples as f64);
    }
    Ok(ManipulationCensus {
        profiles: samples,
        manipulable_fraction: manipulable as f64 / samples as f64,
        r_manipulable_fraction,
    })
}

/// All rankings reachable by permuting one contiguous block of at most `r`
/// positions.
fn block_permutations(p: &Ranking, r: usize) -> Vec<Ranking> {
    let k = p.k() as usize;
    let r = r.min(k);
    let mut out = vec![p.clone()];
    for width in 2..=r {
        for start in 0..=(k - width) {
            let block: Vec<u8> = p.order()[start..start + width].to_vec();
            permute_into(&block, &mut |perm| {
                let mut order = p.order().to_vec();
                order[start..start + width].copy_from_slice(perm);
                out.push(Ranking::new(order).expect("permutation"));
            });
        }
    }
    out
}

fn permute_into(items: &[u8], visit: &mut impl FnMut(&[u8])) {
    fn rec(pool: &mut Vec<u8>, prefix: &mut Vec<u8>, visit: &mut impl FnMut(&[u8])) {
        if pool.is_empty() {
            visit(prefix);
            return;
        }
        for i in 0..pool.len() {
            let item = pool.remove(i);
            prefix.push(item);
            rec(pool, prefix, visit);
            prefix.pop();
            pool.insert(i, item);
        }
    }
    rec(
        &mut items.to_vec(),
        &mut Vec::with_capacity(items.len()),
        visit,
    );
}

/// Does `profile` admit a profitable misreport permuting at most `r`
/// adjacent alternatives in one coordinate?
pub fn is_r_manipulable_at(f: &SocialChoiceFunction, profile: &[Ranking], r: usize) -> bool {
    let outcome = f.evaluate(profile);
    let mut altered = profile.to_vec();
    for voter in 0..f.n() as usize {
        for candidate in block_permutations(&profile[voter], r) {
            if candidate == profile[voter] {
                continue;
            }
            altered[voter] = candidate;
            if profile[voter].prefers(f.evaluate(&altered), outcome) {
                return true;
            }
        }
        altered[voter] = profile[voter].clone();
    }
    false
}

/// Executable form of the refined-boundary lemma: for every boundary pair
/// `(σ, z_i σ)` with outcomes `(a, b)`, either `z = [a:b]` (so the two
/// rankings differ by swapping `a` and `b` themselves) or one of the two
/// profiles is a 2-manipulation point. Exhaustive audit; `true` when no
/// counterexample exists.
pub fn non_manip_boundary_audit(f: &SocialChoiceFunction) -> Result<bool> {
    use super::ranking::AdjacentTransposition;
    let transpositions = AdjacentTransposition::all(f.k());
    for idx in 0..f.profile_count() {
        let profile = profile_from_index(f.k(), f.n(), idx)?;
        let a = f.evaluate(&profile);
        for voter in 0..f.n() as usize {
            for z in &transpositions {
                let swapped = z.apply(&profile[voter]);
                if swapped == profile[voter] {
                    continue;
                }
                let mut other = profile.clone();
                other[voter] = swapped;
                let b = f.evaluate(&other);
                if a == b {
                    continue;
                }
                // σ_i = [a:b] π_i exactly when z is the {a,b} transposition
                if (z.a, z.b) == (a.min(b), a.max(b)) {
                    continue;
                }
                if !is_r_manipulable_at(f, &profile, 2) && !is_r_manipulable_at(f, &other, 2) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Finds a concrete manipulation point for any rule that elects at least
/// three alternatives and is not a dictatorship. Failure to find one would
/// falsify the impossibility theorem, so it aborts loudly.
pub fn gs_witness(f: &SocialChoiceFunction) -> Result<ManipulationRecord> {
    if f.range()?.len() < 3 {
        return Err(Error::Precondition(
            "the rule must elect at least three alternatives".into(),
        ));
    }
    if f.is_dictatorship()? {
        return Err(Error::Precondition("the rule is a dictatorship".into()));
    }
    for idx in 0..f.profile_count() {
        let profile = profile_from_index(f.k(), f.n(), idx)?;
        if let Some(record) = is_manipulable_at(f, &profile) {
            return Ok(record);
        }
    }
    Err(Error::GateViolated(format!(
        "non-dictatorial rule `{}` on k={} n={} has no manipulation point",
        f.name(),
        f.k(),
        f.n()
    )))
}

/// Probability that `(σ, σ')` is a manipulation pair when `σ'` misreports by
/// uniformly permuting four adjacent alternatives at a uniform position of a
/// uniform voter. Exhaustive when the budget allows, otherwise seeded MC.
pub fn pair_manipulation_probability(
    f: &SocialChoiceFunction,
    samples: Option<(u64, u64)>,
) -> Result<f64> {
    if f.k() < 4 {
        return Err(Error::ParameterDomain(
            "the 4-block scheme needs k ≥ 4".into(),
        ));
    }
    let window_starts = (f.k() - 3) as u64;
    match samples {
        None => {
            let total = f.profile_count() * f.n() as u64 * window_starts * 24;
            if total > MAX_CENSUS_WORK {
                return Err(Error::BudgetExceeded(format!(
                    "pair enumeration {total} exceeds cap"
                )));
            }
            let mut hits = 0u64;
            for idx in 0..f.profile_count() {
                let profile = profile_from_index(f.k(), f.n(), idx)?;
                let outcome = f.evaluate(&profile);
                let mut altered = profile.clone();
                for voter in 0..f.n() as usize {
                    for start in 0..window_starts as usize {
                        let block: Vec<u8> = profile[voter].order()[start..start + 4].to_vec();
                        permute_into(&block, &mut |perm| {
                            let mut order = profile[voter].order().to_vec();
                            order[start..start + 4].copy_from_slice(perm);
                            altered[voter] = Ranking::new(order).expect("permutation");
                            let new_outcome = f.evaluate(&altered);
                            if profile[voter].prefers(new_outcome, outcome) {
                                hits += 1;
                            }
                        });
                        altered[voter] = profile[voter].clone();
                    }
                }
            }
            Ok(hits as f64 / (f.profile_count() * f.n() as u64 * window_starts * 24) as f64)
        }
        Some((samples, seed)) => {
            let perms = Ranking::all(f.k());
            let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
                let mut hits = 0u64;
                for _ in 0..len {
                    let profile: Vec<Ranking> = (0..f.n())
                        .map(|_| perms[rng.gen_range(0..perms.len())].clone())
                        .collect();
                    let outcome = f.evaluate(&profile);
                    let voter = rng.gen_range(0..f.n() as usize);
                    let start = rng.gen_range(0..window_starts as usize);
                    let mut order = profile[voter].order().to_vec();
                    // uniform random permutation of the window
                    for i in (1..4usize).rev() {
                        let j = rng.gen_range(0..=i);
                        order.swap(start + i, start + j);
                    }
                    let mut altered = profile.clone();
                    altered[voter] = Ranking::new(order).expect("permutation");
                    let new_outcome = f.evaluate(&altered);
                    if profile[voter].prefers(new_outcome, outcome) {
                        hits += 1;
                    }
                }
                hits
            });
            let hits: u64 = parts.into_iter().sum();
            Ok(hits as f64 / samples as f64)
        }
    }
}
