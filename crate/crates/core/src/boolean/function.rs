use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense tables are capped at this arity (a table of 2^24 doubles is 128 MiB).
pub const MAX_DENSE_ARITY: u32 = 24;

/// Which value set a table is promised to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Codomain {
    /// Every entry is exactly -1.0 or +1.0.
    PlusMinusOne,
    /// Every entry is exactly 0.0 or 1.0.
    ZeroOne,
    /// Arbitrary real values.
    Real,
}

/// A function on `{-1,+1}^n` stored as a dense table of `2^n` reals.
///
/// Entry `idx` is the value at the point whose coordinate `i+1` equals `+1`
/// exactly when bit `i` of `idx` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleanFunction {
    n: u32,
    codomain: Codomain,
    values: Vec<f64>,
}

impl BooleanFunction {
    /// Builds a function from its table, validating length and codomain.
    pub fn new(n: u32, codomain: Codomain, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_ARITY {
            return Err(Error::ArityOverflow(n, MAX_DENSE_ARITY));
        }
        if values.len() != 1 << n {
            return Err(Error::Malformed(format!(
                "table length {} but arity {} needs {}",
                values.len(),
                n,
                1u64 << n
            )));
        }
        let f = Self {
            n,
            codomain,
            values,
        };
        f.check_codomain()?;
        Ok(f)
    }

    /// Builds a `PlusMinusOne` function from a predicate on the point index.
    pub fn from_pm_predicate(n: u32, mut pred: impl FnMut(u32) -> bool) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_ARITY {
            return Err(Error::ArityOverflow(n, MAX_DENSE_ARITY));
        }
        let values = (0..1u32 << n)
            .map(|idx| if pred(idx) { 1.0 } else { -1.0 })
            .collect();
        Ok(Self {
            n,
            codomain: Codomain::PlusMinusOne,
            values,
        })
    }

    fn check_codomain(&self) -> Result<()> {
        let ok = match self.codomain {
            Codomain::PlusMinusOne => self.values.iter().all(|&v| v == 1.0 || v == -1.0),
            Codomain::ZeroOne => self.values.iter().all(|&v| v == 0.0 || v == 1.0),
            Codomain::Real => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CodomainViolation(format!(
                "table entry outside {:?}",
                self.codomain
            )))
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value at the point encoded by `idx`.
    #[inline]
    pub fn at(&self, idx: u32) -> f64 {
        self.values[idx as usize]
    }

    /// Mean over the uniform measure.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Variance over the uniform measure.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|&v| (v - m) * (v - m)).sum::<f64>() / self.len() as f64
    }

    /// `E[|f|^p]^(1/p)`; for `p < 1` this is the usual fractional quasi-norm.
    pub fn norm(&self, p: f64) -> f64 {
        let mean_pow =
            self.values.iter().map(|&v| v.abs().powf(p)).sum::<f64>() / self.len() as f64;
        mean_pow.powf(1.0 / p)
    }

    /// The lossless `(1 - f) / 2` style re-encoding into `{0,1}`.
    pub fn to_zero_one(&self) -> Result<Self> {
        match self.codomain {
            Codomain::ZeroOne => Ok(self.clone()),
            Codomain::PlusMinusOne => {
                log::debug!("converting ±1 table (n={}) to {{0,1}}", self.n);
                let values = self.values.iter().map(|&v| (1.0 + v) / 2.0).collect();
                Self::new(self.n, Codomain::ZeroOne, values)
            }
            Codomain::Real => Err(Error::CodomainViolation(
                "cannot re-encode a Real table into {0,1}".into(),
            )),
        }
    }

    /// The lossless `2f - 1` re-encoding into `{-1,+1}`.
    pub fn to_pm_one(&self) -> Result<Self> {
        match self.codomain {
            Codomain::PlusMinusOne => Ok(self.clone()),
            Codomain::ZeroOne => {
                log::debug!("converting {{0,1}} table (n={}) to ±1", self.n);
                let values = self.values.iter().map(|&v| 2.0 * v - 1.0).collect();
                Self::new(self.n, Codomain::PlusMinusOne, values)
            }
            Codomain::Real => Err(Error::CodomainViolation(
                "cannot re-encode a Real table into ±1".into(),
            )),
        }
    }

    /// Checks `coord < n`, returning it as a bit position.
    pub fn check_coord(&self, coord: usize) -> Result<usize> {
        if coord < self.n as usize {
            Ok(coord)
        } else {
            Err(Error::CoordinateOutOfRange(coord, self.n))
        }
    }

    /// Monotone in every coordinate (flipping any bit up never decreases f).
    pub fn is_monotone(&self) -> bool {
        let n = self.n as usize;
        for i in 0..n {
            let bit = 1u32 << i;
            for idx in 0..self.len() as u32 {
                if idx & bit == 0 && self.at(idx) > self.at(idx | bit) {
                    return false;
                }
            }
        }
        true
    }

    /// Hamming distance as a fraction of inputs (both tables ±1 or {0,1}).
    pub fn fraction_disagree(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        let count = self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count();
        Ok(count as f64 / self.len() as f64)
    }

    /// Restriction of coordinate `coord` to `value` (+1 or -1), an (n-1)-ary function.
    pub fn restrict(&self, coord: usize, value: bool) -> Result<Self> {
        let i = self.check_coord(coord)?;
        if self.n == 1 {
            return Err(Error::ArityOverflow(0, MAX_DENSE_ARITY));
        }
        let bit = 1u32 << i;
        let low_mask = bit - 1;
        let mut values = Vec::with_capacity(self.len() / 2);
        for j in 0..(self.len() / 2) as u32 {
            let idx = (j & low_mask) | ((j & !low_mask) << 1) | if value { bit } else { 0 };
            values.push(self.at(idx));
        }
        Self::new(self.n - 1, self.codomain, values)
    }
}
