use super::ranking::{profile_from_index, Ranking};
use super::scf::{Rule, SocialChoiceFunction};
use crate::error::Result;

/// Exhaustive anonymity audit: the outcome must be invariant under every
/// permutation of the voters.
pub fn audit_anonymity(f: &SocialChoiceFunction) -> Result<bool> {
    let n = f.n() as usize;
    let voter_perms = Ranking::all(n as u8);
    for idx in 0..f.profile_count() {
        let profile = profile_from_index(f.k(), f.n(), idx)?;
        let outcome = f.evaluate(&profile);
        for vp in &voter_perms {
            let permuted: Vec<Ranking> = vp
                .order()
                .iter()
                .map(|&v| profile[v as usize].clone())
                .collect();
            if f.evaluate(&permuted) != outcome {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct NeutralityReport {
    /// Fraction of (profile, relabeling) pairs violating
    /// `π(f(σ)) = f(π∘σ)`.
    pub violation_fraction: f64,
    /// Same, restricted to profiles with an untied winning score (for the
    /// score rules); other rules are audited on every profile.
    pub tie_free_violation_fraction: f64,
    /// Mass of tie-free profiles.
    pub tie_free_fraction: f64,
}

/// A profile is score-tied when the winning plurality count or Borda score
/// is shared by two alternatives, in which case the lexicographic tie-break
/// decides and neutrality cannot hold there.
fn is_score_tied(f: &SocialChoiceFunction, profile: &[Ranking]) -> bool {
    let k = f.k() as usize;
    match f_rule(f) {
        Some(Rule::Plurality) => {
            let mut votes = vec![0u32; k];
            for r in profile {
                votes[r.top() as usize] += 1;
            }
            let best = *votes.iter().max().unwrap();
            votes.iter().filter(|&&v| v == best).count() > 1
        }
        Some(Rule::Borda) => {
            let mut score = vec![0u32; k];
            for r in profile {
                for (pos, &a) in r.order().iter().enumerate() {
                    score[a as usize] += pos as u32 + 1;
                }
            }
            let best = *score.iter().min().unwrap();
            score.iter().filter(|&&v| v == best).count() > 1
        }
        _ => false,
    }
}

fn f_rule(f: &SocialChoiceFunction) -> Option<Rule> {
    match f.name() {
        "plurality" => Some(Rule::Plurality),
        "borda" => Some(Rule::Borda),
        _ => None,
    }
}

/// Neutrality audit. Deterministic tie-breaking cannot be neutral on tied
/// score profiles, so the report separates those out for the score rules.
pub fn audit_neutrality(f: &SocialChoiceFunction) -> Result<NeutralityReport> {
    let k = f.k();
    let relabelings = Ranking::all(k);
    let mut checks = 0u64;
    let mut violations = 0u64;
    let mut tie_free_profiles = 0u64;
    let mut tie_free_violations = 0u64;
    for idx in 0..f.profile_count() {
        let profile = profile_from_index(k, f.n(), idx)?;
        let outcome = f.evaluate(&profile);
        let tie_free = !is_score_tied(f, &profile);
        tie_free_profiles += tie_free as u64;
        for relabel in &relabelings {
            // alternative a ↦ relabel.order()[a]
            let map = relabel.order();
            let permuted: Vec<Ranking> = profile
                .iter()
                .map(|r| {
                    Ranking::new(r.order().iter().map(|&a| map[a as usize]).collect())
                        .expect("relabeled permutation")
                })
                .collect();
            checks += 1;
            let violated = f.evaluate(&permuted) != map[outcome as usize];
            violations += violated as u64;
            // relabeling a tie-free profile keeps the scores untied
            if tie_free {
                tie_free_violations += violated as u64;
            }
        }
    }
    Ok(NeutralityReport {
        violation_fraction: violations as f64 / checks as f64,
        tie_free_violation_fraction: tie_free_violations as f64
            / (tie_free_profiles.max(1) * relabelings.len() as u64) as f64,
        tie_free_fraction: tie_free_profiles as f64 / f.profile_count() as f64,
    })
}
