use super::{BooleanFunction, Codomain};
use crate::error::{Error, Result};

/// Fourier coefficients of an n-ary function, indexed by subset bitmask:
/// entry `S` is `f̂(S) = 2^-n · Σ_x f(x)·x_S` with `x_S = Π_{i∈S} x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion {
    n: u32,
    coeffs: Vec<f64>,
}

impl FourierExpansion {
    pub fn from_coeffs(n: u32, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != 1 << n {
            return Err(Error::Malformed(format!(
                "coefficient table length {} but arity {} needs {}",
                coeffs.len(),
                n,
                1u64 << n
            )));
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f̂(S)` for the subset bitmask `S`.
    #[inline]
    pub fn coeff(&self, subset: u32) -> f64 {
        self.coeffs[subset as usize]
    }

    /// Sum of squared coefficients (equals `E[f²]` by Parseval).
    pub fn parseval_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Spectral weight at exact level `k`: `Σ_{|S|=k} f̂(S)²`.
    pub fn level_weight(&self, k: u32) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(s, _)| (*s as u32).count_ones() == k)
            .map(|(_, c)| c * c)
            .sum()
    }

    /// Evaluates the expansion back into a dense table (the inverse transform).
    pub fn synthesize(&self) -> BooleanFunction {
        let mut values = self.coeffs.clone();
        inverse_butterfly(&mut values);
        BooleanFunction::new(self.n, Codomain::Real, values).expect("valid by construction")
    }
}

/// In-place analysis butterfly: afterwards `v[S] = Σ_x f(x)·x_S(x)`.
fn forward_butterfly(v: &mut [f64]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        let mut base = 0;
        while base < len {
            for i in base..base + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = a + b;
                v[i + h] = b - a;
            }
            base += 2 * h;
        }
        h *= 2;
    }
}

/// In-place synthesis butterfly, the exact inverse of `forward_butterfly`
/// after the 2^-n normalization.
fn inverse_butterfly(v: &mut [f64]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        let mut base = 0;
        while base < len {
            for i in base..base + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = a - b;
                v[i + h] = a + b;
            }
            base += 2 * h;
        }
        h *= 2;
    }
}

impl BooleanFunction {
    /// Walsh–Hadamard transform: the full coefficient table in O(n·2^n).
    ///
    /// Round trip through [`FourierExpansion::synthesize`] is exact for
    /// integer-valued tables.
    pub fn wht(&self) -> FourierExpansion {
        let mut coeffs = self.values().to_vec();
        forward_butterfly(&mut coeffs);
        let scale = 1.0 / self.len() as f64;
        for c in &mut coeffs {
            *c *= scale;
        }
        FourierExpansion {
            n: self.n(),
            coeffs,
        }
    }
}
