use super::ranking::{factorial, Ranking};
use crate::boolean::{BooleanFunction, Codomain};
use crate::error::{Error, Result};
use std::io::{Read, Write};

/// Table materialization cap: `(k!)^n` entries.
const MAX_TABLE: u64 = 100_000_000;

/// The rule behind a social choice function.
#[derive(Debug, Clone)]
pub enum Rule {
    /// Most top votes wins; ties break to the smallest alternative index.
    Plurality,
    /// Lowest rank sum wins; ties break to the smallest alternative index.
    Borda,
    /// Top choice of one voter.
    Dictator { voter: usize },
    /// Top choice of one voter among a fixed subset.
    TopH { voter: usize, set: Vec<u8> },
    /// Two-valued rule decided by a ±1-valued function of the voters'
    /// pairwise preferences between `a` and `b` (+1 elects `a`).
    PairwiseBoolean { a: u8, b: u8, f: BooleanFunction },
    /// Dense table indexed by profile index.
    Table(Vec<u8>),
}

/// A total map from ranking profiles to a winning alternative.
#[derive(Debug, Clone)]
pub struct SocialChoiceFunction {
    k: u8,
    n: u32,
    rule: Rule,
    name: String,
}

impl SocialChoiceFunction {
    pub fn new(k: u8, n: u32, rule: Rule, name: impl Into<String>) -> Result<Self> {
        if !(2..=8).contains(&k) {
            return Err(Error::ParameterDomain(format!("k = {k} outside 2..=8")));
        }
        if n == 0 || n > 16 {
            return Err(Error::ParameterDomain(format!("n = {n} outside 1..=16")));
        }
        match &rule {
            Rule::Dictator { voter } | Rule::TopH { voter, .. } if *voter >= n as usize => {
                return Err(Error::CoordinateOutOfRange(
                    match &rule {
                        Rule::Dictator { voter } | Rule::TopH { voter, .. } => *voter,
                        _ => unreachable!(),
                    },
                    n,
                ));
            }
            Rule::TopH { set, .. } => {
                if set.is_empty() || set.iter().any(|&a| a >= k) {
                    return Err(Error::ParameterDomain("bad top-H subset".into()));
                }
            }
            Rule::PairwiseBoolean { a, b, f } => {
                if a == b || *a >= k || *b >= k {
                    return Err(Error::ParameterDomain("bad alternative pair".into()));
                }
                if f.n() != n {
                    return Err(Error::ArityMismatch(f.n(), n));
                }
                if f.codomain() != Codomain::PlusMinusOne {
                    return Err(Error::CodomainViolation(
                        "pairwise rule needs ±1 values".into(),
                    ));
                }
            }
            Rule::Table(t) => {
                let expect = (factorial(k as usize) as u64).pow(n);
                if expect > MAX_TABLE {
                    return Err(Error::BudgetExceeded(format!(
                        "table of (k!)^n = {expect} entries exceeds the cap"
                    )));
                }
                if t.len() as u64 != expect {
                    return Err(Error::Malformed(format!(
                        "table length {} but (k!)^n = {expect}",
                        t.len()
                    )));
                }
                if t.iter().any(|&a| a >= k) {
                    return Err(Error::CodomainViolation("table entry outside [k]".into()));
                }
            }
            _ => {}
        }
        Ok(Self {
            k,
            n,
            rule,
            name: name.into(),
        })
    }

    /// Named rule constructors matching the CLI `--rule` strings.
    pub fn named(rule: &str, k: u8, n: u32) -> Result<Self> {
        match rule {
            "plurality" => Self::new(k, n, Rule::Plurality, "plurality"),
            "borda" => Self::new(k, n, Rule::Borda, "borda"),
            "dictator" => Self::new(k, n, Rule::Dictator { voter: 0 }, "dictator"),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn profile_count(&self) -> u64 {
        (factorial(self.k as usize) as u64).pow(self.n)
    }

    pub fn evaluate(&self, profile: &[Ranking]) -> u8 {
        debug_assert_eq!(profile.len(), self.n as usize);
        match &self.rule {
            Rule::Plurality => {
                let mut votes = [0u32; 8];
                for r in profile {
                    votes[r.top() as usize] += 1;
                }
                best_index(&votes[..self.k as usize], |x, y| x > y)
            }
            Rule::Borda => {
                let mut score = [0u32; 8];
                for r in profile {
                    for (pos, &a) in r.order().iter().enumerate() {
                        score[a as usize] += pos as u32 + 1;
                    }
                }
                best_index(&score[..self.k as usize], |x, y| x < y)
            }
            Rule::Dictator { voter } => profile[*voter].top(),
            Rule::TopH { voter, set } => profile[*voter].top_among(set),
            Rule::PairwiseBoolean { a, b, f } => {
                let mut bits = 0u32;
                for (i, r) in profile.iter().enumerate() {
                    if r.prefers(*a, *b) {
                        bits |= 1 << i;
                    }
                }
                if f.at(bits) == 1.0 {
                    *a
                } else {
                    *b
                }
            }
            Rule::Table(t) => t[super::ranking::profile_index(profile) as usize],
        }
    }

    /// Dense table over all profiles (materialized once for census work).
    pub fn table(&self) -> Result<Vec<u8>> {
        if let Rule::Table(t) = &self.rule {
            return Ok(t.clone());
        }
        let total = self.profile_count();
        if total > MAX_TABLE {
            return Err(Error::BudgetExceeded(format!(
                "(k!)^n = {total} exceeds the table cap"
            )));
        }
        let mut out = Vec::with_capacity(total as usize);
        let perms = Ranking::all(self.k);
        let mut digits = vec![0usize; self.n as usize];
        let mut profile: Vec<Ranking> = vec![perms[0].clone(); self.n as usize];
        for _ in 0..total {
            out.push(self.evaluate(&profile));
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
        Ok(out)
    }

    /// Image of the function (sorted, deduplicated).
    pub fn range(&self) -> Result<Vec<u8>> {
        let mut vals: Vec<u8> = self.table()?;
        vals.sort_unstable();
        vals.dedup();
        Ok(vals)
    }

    /// Does the outcome depend on at most one voter?
    pub fn is_dictatorship(&self) -> Result<bool> {
        let table = self.table()?;
        let base = factorial(self.k as usize) as u64;
        'voters: for i in 0..self.n {
            // the outcome must agree across all profiles sharing σ_i
            let stride = base.pow(i);
            let mut class_value = vec![u8::MAX; base as usize];
            for (idx, &v) in table.iter().enumerate() {
                let digit = ((idx as u64 / stride) % base) as usize;
                if class_value[digit] == u8::MAX {
                    class_value[digit] = v;
                } else if class_value[digit] != v {
                    continue 'voters;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }

    /// Serializes as magic `SCF1`, little-endian u32 `k` and `n`, then the
    /// dense table of (k!)^n one-byte outcomes.
    pub fn write_scf(&self, mut w: impl Write) -> Result<()> {
        w.write_all(b"SCF1")?;
        w.write_all(&(self.k as u32).to_le_bytes())?;
        w.write_all(&self.n.to_le_bytes())?;
        w.write_all(&self.table()?)?;
        Ok(())
    }

    pub fn read_scf(mut r: impl Read) -> Result<Self> {
        let mut header = [0u8; 12];
        r.read_exact(&mut header)?;
        if &header[0..4] != b"SCF1" {
            return Err(Error::Malformed("bad magic, expected SCF1".into()));
        }
        let k = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes")) as u8;
        let n = u32::from_le_bytes(header[8..12].try_into().expect("4 bytes"));
        if !(2..=8).contains(&k) || n == 0 || n > 16 {
            return Err(Error::Malformed("header out of range".into()));
        }
        let expect = (factorial(k as usize) as u64).pow(n);
        if expect > MAX_TABLE {
            return Err(Error::BudgetExceeded("table too large".into()));
        }
        let mut table = vec![0u8; expect as usize];
        r.read_exact(&mut table)?;
        Self::new(k, n, Rule::Table(table), "table")
    }
}

fn best_index(scores: &[u32], better: impl Fn(u32, u32) -> bool) -> u8 {
    let mut best = 0usize;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if better(s, scores[best]) {
            best = i;
        }
    }
    best as u8
}
