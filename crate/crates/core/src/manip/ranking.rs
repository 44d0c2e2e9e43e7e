use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A strict ranking of `k ≤ 8` alternatives, stored top first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ranking {
    order: Vec<u8>,
}

impl Ranking {
    pub fn new(order: Vec<u8>) -> Result<Self> {
        let k = order.len();
        if k == 0 || k > 8 {
            return Err(Error::ParameterDomain(format!("k = {k} outside 1..=8")));
        }
        let mut seen = [false; 8];
        for &a in &order {
            if a as usize >= k || std::mem::replace(&mut seen[a as usize], true) {
                return Err(Error::Malformed(format!("not a permutation: {order:?}")));
            }
        }
        Ok(Self { order })
    }

    pub fn k(&self) -> u8 {
        self.order.len() as u8
    }

    /// Alternatives top first.
    pub fn order(&self) -> &[u8] {
        &self.order
    }

    pub fn top(&self) -> u8 {
        self.order[0]
    }

    /// 0-based position of `alt` (0 = top).
    pub fn rank_of(&self, alt: u8) -> usize {
        self.order
            .iter()
            .position(|&x| x == alt)
            .expect("alt in range")
    }

    pub fn prefers(&self, a: u8, b: u8) -> bool {
        self.rank_of(a) < self.rank_of(b)
    }

    /// Top-ranked alternative among `set`.
    pub fn top_among(&self, set: &[u8]) -> u8 {
        *self
            .order
            .iter()
            .find(|a| set.contains(a))
            .expect("nonempty set")
    }

    /// Lexicographic rank of the top-first word via the Lehmer code.
    pub fn lehmer_index(&self) -> usize {
        let k = self.order.len();
        let mut index = 0;
        for (i, &a) in self.order.iter().enumerate() {
            let smaller_later = self.order[i + 1..].iter().filter(|&&b| b < a).count();
            index += smaller_later * factorial(k - 1 - i);
        }
        index
    }

    /// Inverse of [`Self::lehmer_index`].
    pub fn from_lehmer(k: u8, mut index: usize) -> Result<Self> {
        if index >= factorial(k as usize) {
            return Err(Error::Malformed(format!(
                "index {index} out of range for k = {k}"
            )));
        }
        let mut pool: Vec<u8> = (0..k).collect();
        let mut order = Vec::with_capacity(k as usize);
        for i in (0..k as usize).rev() {
            let f = factorial(i);
            let digit = index / f;
            index %= f;
            order.push(pool.remove(digit));
        }
        Self::new(order)
    }

    /// All `k!` rankings in Lehmer order.
    pub fn all(k: u8) -> Vec<Ranking> {
        (0..factorial(k as usize))
            .map(|i| Self::from_lehmer(k, i).expect("index in range"))
            .collect()
    }

    /// Swaps alternatives `a` and `b` when adjacent, otherwise a no-op.
    pub fn adjacent_transpose(&self, a: u8, b: u8) -> Ranking {
        let (pa, pb) = (self.rank_of(a), self.rank_of(b));
        let mut order = self.order.clone();
        if pa.abs_diff(pb) == 1 {
            order.swap(pa, pb);
        }
        Ranking { order }
    }

    /// Swaps the entries at `pos` and `pos + 1`.
    pub fn swap_positions(&self, pos: usize) -> Ranking {
        let mut order = self.order.clone();
        order.swap(pos, pos + 1);
        Ranking { order }
    }

    /// Full reversal (bottom first).
    pub fn reversed(&self) -> Ranking {
        Ranking {
            order: self.order.iter().rev().copied().collect(),
        }
    }
}

/// The adjacent transposition `[a:b]` acting on rankings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdjacentTransposition {
    pub a: u8,
    pub b: u8,
}

impl AdjacentTransposition {
    /// The `k(k-1)/2` unordered transpositions.
    pub fn all(k: u8) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                out.push(Self { a, b });
            }
        }
        out
    }

    pub fn apply(&self, r: &Ranking) -> Ranking {
        r.adjacent_transpose(self.a, self.b)
    }
}

/// Profile index with voter 0 as the least significant base-`k!` digit.
pub fn profile_index(profile: &[Ranking]) -> u64 {
    let base = factorial(profile[0].k() as usize) as u64;
    profile
        .iter()
        .rev()
        .fold(0u64, |acc, r| acc * base + r.lehmer_index() as u64)
}

pub fn profile_from_index(k: u8, n: u32, mut index: u64) -> Result<Vec<Ranking>> {
    let base = factorial(k as usize) as u64;
    let mut profile = Vec::with_capacity(n as usize);
    for _ in 0..n {
        profile.push(Ranking::from_lehmer(k, (index % base) as usize)?);
        index /= base;
    }
    if index != 0 {
        return Err(Error::Malformed("profile index out of range".into()));
    }
    Ok(profile)
}
