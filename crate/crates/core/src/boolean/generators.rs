use super::BooleanFunction;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

/// The named function zoo. Every member builds a ±1-valued dense table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Simple majority; requires odd arity.
    Majority,
    /// Majority of `r` blockwise majorities; requires `n = r²` with `r` odd.
    ElectoralCollege,
    /// `h`-fold recursive majority of `base`; requires `n = base^h`, `base` odd.
    RecursiveMajority { base: u32 },
    /// OR of `m = n / width` disjoint ANDs of `width` literals.
    Tribes { width: u32 },
    /// Product of all coordinates.
    Parity,
    /// `x_{coord+1}` (zero-based field).
    Dictator(usize),
}

impl Generator {
    /// Canonical name of the family (without parameters).
    pub fn family(&self) -> &'static str {
        match self {
            Generator::Majority => "majority",
            Generator::ElectoralCollege => "electoral_college",
            Generator::RecursiveMajority { .. } => "recursive_majority",
            Generator::Tribes { .. } => "tribes",
            Generator::Parity => "parity",
            Generator::Dictator(_) => "dictator",
        }
    }

    /// Whether arity `n` is admissible for this family.
    pub fn admits(&self, n: u32) -> bool {
        match self {
            Generator::Majority => n % 2 == 1,
            Generator::ElectoralCollege => {
                let r = (n as f64).sqrt().round() as u32;
                r * r == n && r % 2 == 1 && r > 1
            }
            Generator::RecursiveMajority { base } => {
                if *base < 3 || base % 2 == 0 {
                    return false;
                }
                let mut m = n;
                while m > 1 {
                    if !m.is_multiple_of(*base) {
                        return false;
                    }
                    m /= base;
                }
                m == 1 && n > 1
            }
            Generator::Tribes { width } => {
                *width >= 1 && n.is_multiple_of(*width) && n / width >= 1
            }
            Generator::Parity => true,
            Generator::Dictator(coord) => (*coord as u32) < n,
        }
    }

    /// Dense table at arity `n`.
    pub fn build(&self, n: u32) -> Result<BooleanFunction> {
        if !self.admits(n) {
            return Err(Error::ParameterDomain(format!(
                "arity {n} not admissible for {}",
                self.family()
            )));
        }
        match self {
            Generator::Majority => {
                BooleanFunction::from_pm_predicate(n, move |idx| 2 * idx.count_ones() > n)
            }
            Generator::ElectoralCollege => {
                let r = (n as f64).sqrt().round() as u32;
                BooleanFunction::from_pm_predicate(n, move |idx| {
                    let mut winning = 0;
                    for block in 0..r {
                        let bits = (idx >> (block * r)) & ((1 << r) - 1);
                        if 2 * bits.count_ones() > r {
                            winning += 1;
                        }
                    }
                    2 * winning > r
                })
            }
            Generator::RecursiveMajority { base } => {
                let r = *base;
                BooleanFunction::from_pm_predicate(n, move |idx| {
                    let mut level: Vec<bool> = (0..n).map(|i| idx >> i & 1 == 1).collect();
                    while level.len() > 1 {
                        level = level
                            .chunks(r as usize)
                            .map(|c| 2 * c.iter().filter(|&&b| b).count() > r as usize)
                            .collect();
                    }
                    level[0]
                })
            }
            Generator::Tribes { width } => {
                let r = *width;
                let m = n / r;
                BooleanFunction::from_pm_predicate(n, move |idx| {
                    (0..m).any(|t| {
                        let mask = ((1u32 << r) - 1) << (t * r);
                        idx & mask == mask
                    })
                })
            }
            Generator::Parity => BooleanFunction::from_pm_predicate(n, move |idx| {
                (n - idx.count_ones()).is_multiple_of(2)
            }),
            Generator::Dictator(coord) => {
                let bit = 1u32 << *coord;
                BooleanFunction::from_pm_predicate(n, move |idx| idx & bit != 0)
            }
        }
    }
}

/// Exact per-coordinate influence of tribes with `m` tribes of width `r`,
/// derived from the block structure: the coordinate is pivotal exactly when
/// the rest of its own tribe is all-true and every other tribe is false.
/// Per-block probabilities come from counting block states, so this route is
/// independent of the algebraic form `2^{1-r}·(1-1/m)^{m-1}`.
pub fn tribes_influence_exact(width: u32, tribes: u32) -> BigRational {
    let block_states = BigUint::one() << width;
    // Count the states of one tribe that are all-true: exactly one.
    let p_tribe_true = BigRational::new(BigUint::one().into(), block_states.clone().into());
    let p_tribe_false = BigRational::one() - p_tribe_true;
    // Rest of own tribe all-true: one state of 2^(width-1).
    let p_rest_true = BigRational::new(
        BigUint::one().into(),
        (BigUint::one() << (width - 1)).into(),
    );
    let mut others_false = BigRational::one();
    for _ in 1..tribes {
        others_false *= p_tribe_false.clone();
    }
    p_rest_true * others_false
}

/// Parses a generator spec string like `tribes:r=2,m=4`, `majority:n=9`,
/// `dictator:i=1,n=5` or a bare family name. Returns the generator and the
/// arity when the parameters pin it down.
pub fn parse_generator(spec: &str) -> Result<(Generator, Option<u32>)> {
    let (family, params) = match spec.split_once(':') {
        Some((f, p)) => (f, p),
        None => (spec, ""),
    };
    let mut kv = std::collections::BTreeMap::new();
    for part in params.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| {
            Error::UnknownFamily(format!("malformed parameter `{part}` in `{spec}`"))
        })?;
        let value: u32 = v
            .parse()
            .map_err(|_| Error::UnknownFamily(format!("non-numeric parameter `{part}`")))?;
        kv.insert(k.trim().to_string(), value);
    }
    let n = kv.get("n").copied();
    match family.trim() {
        "majority" | "maj" => Ok((Generator::Majority, n)),
        "parity" => Ok((Generator::Parity, n)),
        "dictator" | "dict" => {
            let i = kv.get("i").copied().unwrap_or(1);
            if i == 0 {
                return Err(Error::UnknownFamily(
                    "dictator coordinate is 1-based".into(),
                ));
            }
            Ok((Generator::Dictator(i as usize - 1), n))
        }
        "tribes" => {
            let r = *kv
                .get("r")
                .ok_or_else(|| Error::UnknownFamily("tribes needs r=<width>".into()))?;
            if r == 0 || r > 24 {
                return Err(Error::UnknownFamily("tribes width out of range".into()));
            }
            let m = kv.get("m").copied().unwrap_or(1 << r);
            Ok((Generator::Tribes { width: r }, Some(r * m)))
        }
        "electoral_college" | "ec" => {
            let n = match (kv.get("r"), n) {
                (Some(&r), _) => Some(r * r),
                (None, n) => n,
            };
            Ok((Generator::ElectoralCollege, n))
        }
        "recursive_majority" | "rm" => {
            let base = kv.get("r").copied().unwrap_or(3);
            let n = match (kv.get("h"), n) {
                (Some(&h), _) => Some(base.pow(h)),
                (None, n) => n,
            };
            Ok((Generator::RecursiveMajority { base }, n))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// Builds a function directly from a spec string with an optional fallback
/// arity for families whose spec does not pin the size.
pub fn build_named(spec: &str, fallback_n: Option<u32>) -> Result<BooleanFunction> {
    let (gen, n) = parse_generator(spec)?;
    let n = n
        .or(fallback_n)
        .ok_or_else(|| Error::UnknownFamily(format!("`{spec}` needs an arity (add n=...)")))?;
    gen.build(n)
}
