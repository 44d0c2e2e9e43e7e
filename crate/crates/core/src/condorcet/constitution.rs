use crate::boolean::{BooleanFunction, Codomain};
use crate::error::{Error, Result};
use crate::manip::{factorial, Ranking};
use rand::Rng;
use std::collections::BTreeMap;

/// An IIA constitution on `k` alternatives: one ±1-valued pairwise function
/// per unordered pair, applied to the voters' pairwise preference vector.
/// The reverse orientation is the negation (antisymmetry is structural).
#[derive(Debug, Clone)]
pub struct Constitution {
    k: u8,
    n: u32,
    /// Keyed by (a, b) with a < b; value decides "a above b".
    pairwise: BTreeMap<(u8, u8), BooleanFunction>,
}

/// One block of a certified partition structure.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionBlock {
    /// Block of ≥ 3 alternatives ranked internally by one voter.
    Dictator {
        alts: Vec<u8>,
        voter: usize,
        reversed: bool,
    },
    /// Two alternatives ordered by an arbitrary non-constant function.
    Pair {
        alts: [u8; 2],
    },
    Singleton {
        alt: u8,
    },
}

#[derive(Debug, Clone)]
pub struct ConstitutionReport {
    pub p_nontransitive: f64,
    pub std_error: Option<f64>,
    /// The certified structure when the constitution is exactly transitive.
    pub partition: Option<Vec<PartitionBlock>>,
}

#[derive(Debug, Clone, Copy)]
pub enum ConstitutionMode {
    Exhaustive,
    MonteCarlo { samples: u64, seed: u64 },
}

impl Constitution {
    pub fn new(k: u8, n: u32, pairwise: BTreeMap<(u8, u8), BooleanFunction>) -> Result<Self> {
        if !(3..=8).contains(&k) {
            return Err(Error::ParameterDomain(format!("k = {k} outside 3..=8")));
        }
        for a in 0..k {
            for b in (a + 1)..k {
                let f = pairwise
                    .get(&(a, b))
                    .ok_or_else(|| Error::Malformed(format!("missing pair ({a},{b})")))?;
                if f.n() != n {
                    return Err(Error::ArityMismatch(f.n(), n));
                }
                if f.codomain() != Codomain::PlusMinusOne {
                    return Err(Error::CodomainViolation(
                        "pairwise functions must be ±1-valued".into(),
                    ));
                }
            }
        }
        Ok(Self { k, n, pairwise })
    }

    /// Same aggregator for every pair.
    pub fn uniform(k: u8, f: &BooleanFunction) -> Result<Self> {
        let mut m = BTreeMap::new();
        for a in 0..k {
            for b in (a + 1)..k {
                m.insert((a, b), f.clone());
            }
        }
        Self::new(k, f.n(), m)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The function deciding "a above b" for a < b.
    pub fn pair_fn(&self, a: u8, b: u8) -> &BooleanFunction {
        &self.pairwise[&(a.min(b), a.max(b))]
    }

    /// Builds a member of the transitive-IIA family from partition blocks
    /// listed top to bottom; cross-block pairs get constant preferences.
    pub fn from_partition(
        k: u8,
        n: u32,
        blocks: &[PartitionBlock],
        pair_fns: &BTreeMap<[u8; 2], BooleanFunction>,
    ) -> Result<Self> {
        let mut rank_of_block = vec![usize::MAX; k as usize];
        for (pos, block) in blocks.iter().enumerate() {
            let alts: Vec<u8> = match block {
                PartitionBlock::Dictator { alts, .. } => alts.clone(),
                PartitionBlock::Pair { alts } => alts.to_vec(),
                PartitionBlock::Singleton { alt } => vec![*alt],
            };
            for a in alts {
                rank_of_block[a as usize] = pos;
            }
        }
        if rank_of_block.contains(&usize::MAX) {
            return Err(Error::Malformed(
                "partition must cover all alternatives".into(),
            ));
        }
        let mut m = BTreeMap::new();
        for a in 0..k {
            for b in (a + 1)..k {
                let (ra, rb) = (rank_of_block[a as usize], rank_of_block[b as usize]);
                let f = if ra < rb {
                    BooleanFunction::from_pm_predicate(n, |_| true)?
                } else if ra > rb {
                    BooleanFunction::from_pm_predicate(n, |_| false)?
                } else {
                    match &blocks[ra] {
                        PartitionBlock::Dictator {
                            voter, reversed, ..
                        } => {
                            let (bit, rev) = (1u32 << *voter, *reversed);
                            BooleanFunction::from_pm_predicate(n, |idx| (idx & bit != 0) != rev)?
                        }
                        PartitionBlock::Pair { alts } => pair_fns
                            .get(&[alts[0].min(alts[1]), alts[0].max(alts[1])])
                            .ok_or_else(|| {
                                Error::Malformed(format!("missing pair function for {alts:?}"))
                            })?
                            .clone(),
                        PartitionBlock::Singleton { .. } => unreachable!("a < b in one singleton"),
                    }
                };
                m.insert((a, b), f);
            }
        }
        Self::new(k, n, m)
    }

    /// Win counts of the output tournament on a profile given as one
    /// preference bit vector per unordered pair (keyed (a,b), a < b; set bit
    /// = the voter ranks a above b).
    fn scores(&self, prefs: &BTreeMap<(u8, u8), u32>) -> Vec<u32> {
        let mut wins = vec![0u32; self.k as usize];
        for (&(a, b), &x) in prefs {
            if self.pairwise[&(a, b)].at(x) == 1.0 {
                wins[a as usize] += 1;
            } else {
                wins[b as usize] += 1;
            }
        }
        wins
    }

    fn transitive(&self, prefs: &BTreeMap<(u8, u8), u32>) -> bool {
        let mut wins = self.scores(prefs);
        wins.sort_unstable();
        wins.iter().enumerate().all(|(i, &w)| w == i as u32)
    }

    /// The cyclically oriented triple `(f^{a>b}, f^{b>c}, f^{c>a})` for a
    /// 3-subset `a < b < c`, each as a function of its own preference
    /// vector. Reversing an orientation negates the table *and* flips the
    /// argument bits, since `x^{c,a} = -x^{a,c}` coordinatewise.
    pub fn cyclic_triple(
        &self,
        a: u8,
        b: u8,
        c: u8,
    ) -> Result<(BooleanFunction, BooleanFunction, BooleanFunction)> {
        if !(a < b && b < c && c < self.k) {
            return Err(Error::ParameterDomain("need a < b < c < k".into()));
        }
        let reverse = |f: &BooleanFunction| -> BooleanFunction {
            let mask = (1u32 << self.n) - 1;
            let values = (0..=mask).map(|idx| -f.at(!idx & mask)).collect();
            BooleanFunction::new(self.n, Codomain::PlusMinusOne, values)
                .expect("reversal preserves the codomain")
        };
        Ok((
            self.pair_fn(a, b).clone(),
            self.pair_fn(b, c).clone(),
            reverse(self.pair_fn(a, c)),
        ))
    }

    /// Preference bit vectors of a profile of rankings.
    pub fn profile_prefs(&self, profile: &[Ranking]) -> BTreeMap<(u8, u8), u32> {
        let mut prefs = BTreeMap::new();
        for a in 0..self.k {
            for b in (a + 1)..self.k {
                let mut bits = 0u32;
                for (i, r) in profile.iter().enumerate() {
                    if r.prefers(a, b) {
                        bits |= 1 << i;
                    }
                }
                prefs.insert((a, b), bits);
            }
        }
        prefs
    }
}

/// Probability that the output tournament is cyclic under uniform profiles,
/// with the certified partition structure when that probability is zero.
pub fn constitution_check(c: &Constitution, mode: ConstitutionMode) -> Result<ConstitutionReport> {
    let (p_nontransitive, std_error) = match mode {
        ConstitutionMode::Exhaustive => {
            let total = factorial(c.k as usize).pow(c.n) as u64;
            if total > 10_000_000 {
                return Err(Error::BudgetExceeded(format!(
                    "(k!)^n = {total} exceeds the exhaustive cap"
                )));
            }
            let perms = Ranking::all(c.k);
            let mut digits = vec![0usize; c.n as usize];
            let mut bad = 0u64;
            for _ in 0..total {
                let profile: Vec<Ranking> = digits.iter().map(|&d| perms[d].clone()).collect();
                if !c.transitive(&c.profile_prefs(&profile)) {
                    bad += 1;
                }
                // mixed-radix increment
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < perms.len() {
                        break;
                    }
                    *d = 0;
                }
            }
            (bad as f64 / total as f64, None)
        }
        ConstitutionMode::MonteCarlo { samples, seed } => {
            let perms = Ranking::all(c.k);
            let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
                let mut bad = 0u64;
                for _ in 0..len {
                    let profile: Vec<Ranking> = (0..c.n)
                        .map(|_| perms[rng.gen_range(0..perms.len())].clone())
                        .collect();
                    if !c.transitive(&c.profile_prefs(&profile)) {
                        bad += 1;
                    }
                }
                bad
            });
            let bad: u64 = parts.into_iter().sum();
            let (p, se) = crate::rng::freq_with_se(bad, samples);
            (p, Some(se))
        }
    };

    let partition = if p_nontransitive == 0.0 && std_error.is_none() {
        Some(certify_partition(c)?)
    } else {
        None
    };
    Ok(ConstitutionReport {
        p_nontransitive,
        std_error,
        partition,
    })
}

/// Reconstructs the partition structure of an exactly transitive
/// constitution: blocks are the components of the "non-constant pair"
/// graph, cross-block preferences must be uniformly constant, and every
/// block of size ≥ 3 must be internally dictated by one voter.
fn certify_partition(c: &Constitution) -> Result<Vec<PartitionBlock>> {
    let k = c.k as usize;
    let constant_of = |f: &BooleanFunction| -> Option<f64> {
        let head = f.at(0);
        f.values().iter().all(|&v| v == head).then_some(head)
    };

    // union-find over the non-constant-pair graph
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for a in 0..c.k {
        for b in (a + 1)..c.k {
            if constant_of(c.pair_fn(a, b)).is_none() {
                let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    for a in 0..k {
        blocks
            .entry(find(&mut parent, a))
            .or_default()
            .push(a as u8);
    }
    let mut blocks: Vec<Vec<u8>> = blocks.into_values().collect();

    // order blocks by the constant cross preferences, verifying uniformity
    blocks.sort_by(|x, y| {
        let f = c.pair_fn(x[0].min(y[0]), x[0].max(y[0]));
        let v = constant_of(f).unwrap_or(0.0);
        let x_above = if x[0] < y[0] { v > 0.0 } else { v < 0.0 };
        if x_above {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    for (i, x) in blocks.iter().enumerate() {
        for y in blocks.iter().skip(i + 1) {
            for &a in x {
                for &b in y {
                    let v = constant_of(c.pair_fn(a.min(b), a.max(b))).ok_or_else(|| {
                        Error::GateViolated("cross-block pair not constant".into())
                    })?;
                    let a_above = if a < b { v > 0.0 } else { v < 0.0 };
                    if !a_above {
                        return Err(Error::GateViolated(
                            "inconsistent cross-block preferences".into(),
                        ));
                    }
                }
            }
        }
    }

    // classify each block
    let mut out = Vec::new();
    for alts in blocks {
        match alts.len() {
            1 => out.push(PartitionBlock::Singleton { alt: alts[0] }),
            2 => out.push(PartitionBlock::Pair {
                alts: [alts[0], alts[1]],
            }),
            _ => {
                let mut found = None;
                'search: for voter in 0..c.n as usize {
                    for reversed in [false, true] {
                        let d = BooleanFunction::from_pm_predicate(c.n, |idx| {
                            (idx >> voter & 1 == 1) != reversed
                        })?;
                        let all_match = alts.iter().enumerate().all(|(i, &a)| {
                            alts.iter()
                                .skip(i + 1)
                                .all(|&b| c.pair_fn(a, b).values() == d.values())
                        });
                        if all_match {
                            found = Some((voter, reversed));
                            break 'search;
                        }
                    }
                }
                let (voter, reversed) = found.ok_or_else(|| {
                    Error::GateViolated(format!(
                        "block {alts:?} of a transitive constitution has no dictator"
                    ))
                })?;
                out.push(PartitionBlock::Dictator {
                    alts,
                    voter,
                    reversed,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::Generator;
    use crate::condorcet::{classify_arrow, ArrowVerdict};

    #[test]
    fn same_dictator_everywhere_is_transitive() {
        let d = Generator::Dictator(0).build(3).unwrap();
        let c = Constitution::uniform(3, &d).unwrap();
        let rep = constitution_check(&c, ConstitutionMode::Exhaustive).unwrap();
        assert_eq!(rep.p_nontransitive, 0.0);
        let partition = rep.partition.unwrap();
        assert_eq!(partition.len(), 1);
        match &partition[0] {
            PartitionBlock::Dictator {
                voter,
                reversed,
                alts,
            } => {
                assert_eq!(*voter, 0);
                assert!(!reversed);
                assert_eq!(alts.len(), 3);
            }
            other => panic!("wrong block {other:?}"),
        }
    }

    #[test]
    fn top_alternative_with_majority_pair() {
        // a always first; b vs c by majority: transitive with partition
        // {a} > {b,c}.
        let m = Generator::Majority.build(3).unwrap();
        let ones = BooleanFunction::from_pm_predicate(3, |_| true).unwrap();
        let mut pairs = BTreeMap::new();
        pairs.insert((0u8, 1u8), ones.clone());
        pairs.insert((0u8, 2u8), ones);
        pairs.insert((1u8, 2u8), m);
        let c = Constitution::new(3, 3, pairs).unwrap();
        let rep = constitution_check(&c, ConstitutionMode::Exhaustive).unwrap();
        assert_eq!(rep.p_nontransitive, 0.0);
        let partition = rep.partition.unwrap();
        assert_eq!(partition[0], PartitionBlock::Singleton { alt: 0 });
        assert_eq!(partition[1], PartitionBlock::Pair { alts: [1, 2] });
    }

    #[test]
    fn majority_constitution_paradoxes_at_one_eighteenth() {
        let m = Generator::Majority.build(3).unwrap();
        let c = Constitution::uniform(3, &m).unwrap();
        let rep = constitution_check(&c, ConstitutionMode::Exhaustive).unwrap();
        assert!((rep.p_nontransitive - 1.0 / 18.0).abs() < 1e-12);
        assert!(rep.partition.is_none());
    }

    #[test]
    fn generated_members_restrict_to_zero_paradox_triples() {
        // build {a} > {b,c,d dictator by voter 1 reversed} on k=4
        let m = Generator::Majority.build(3).unwrap();
        let mut pair_fns = BTreeMap::new();
        pair_fns.insert([1u8, 2u8], m);
        let blocks = vec![
            PartitionBlock::Singleton { alt: 0 },
            PartitionBlock::Dictator {
                alts: vec![1, 2, 3],
                voter: 1,
                reversed: true,
            },
        ];
        // the dictator block overrides the pair functions map
        let c = Constitution::from_partition(4, 3, &blocks, &pair_fns).unwrap();
        let rep = constitution_check(&c, ConstitutionMode::Exhaustive).unwrap();
        assert_eq!(rep.p_nontransitive, 0.0);

        // every 3-subset restriction passes the Arrow classifier with zero
        // paradox probability
        for (a, b, cc) in [(0u8, 1u8, 2u8), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            let (f, g, h) = c.cyclic_triple(a, b, cc).unwrap();
            let cls = classify_arrow(&f, &g, &h).unwrap();
            assert_ne!(cls.verdict, ArrowVerdict::Paradoxical, "{a}{b}{cc}");
        }
    }

    #[test]
    fn monte_carlo_matches_exhaustive() {
        let m = Generator::Majority.build(3).unwrap();
        let c = Constitution::uniform(3, &m).unwrap();
        let rep = constitution_check(
            &c,
            ConstitutionMode::MonteCarlo {
                samples: 300_000,
                seed: 6,
            },
        )
        .unwrap();
        let se = rep.std_error.unwrap();
        assert!((rep.p_nontransitive - 1.0 / 18.0).abs() <= 4.0 * se);
    }
}
