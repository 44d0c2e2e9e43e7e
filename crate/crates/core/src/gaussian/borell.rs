use super::normal::{std_normal_pdf, std_normal_quantile};
use super::quadrant::j_rho_closed;
use super::sampler::GaussSampler;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Named [0,1]-valued test functions on Gaussian space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianTestFn {
    /// Indicator of `{z₁ ≤ Φ⁻¹(mass)}`.
    HalfSpace { mass: f64 },
    /// Indicator of `{|z₁| ≤ w}` with `w` chosen so the slab has `mass`.
    Slab { mass: f64 },
    /// Indicator of `{‖z‖ ≤ radius}`.
    Ball { radius: f64 },
    /// `1/(1 + exp(-(z₁ - center)/scale))`.
    Sigmoid { center: f64, scale: f64 },
    /// Constant one (the whole space).
    One,
}

impl GaussianTestFn {
    /// Parses e.g. `half_space:mass=0.5`, `slab:mass=0.3`, `ball:radius=1.2`,
    /// `sigmoid:center=0,scale=1`, `one`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = std::collections::BTreeMap::new();
        for part in params.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::UnknownFamily(format!("bad parameter `{part}`")))?;
            let value: f64 = v
                .parse()
                .map_err(|_| Error::UnknownFamily(format!("non-numeric `{part}`")))?;
            kv.insert(k.trim().to_string(), value);
        }
        let take = |k: &str| -> Result<f64> {
            kv.get(k)
                .copied()
                .ok_or_else(|| Error::UnknownFamily(format!("`{spec}` needs {k}=...")))
        };
        match family.trim() {
            "half_space" => Ok(Self::HalfSpace {
                mass: take("mass")?,
            }),
            "slab" => Ok(Self::Slab {
                mass: take("mass")?,
            }),
            "ball" => Ok(Self::Ball {
                radius: take("radius")?,
            }),
            "sigmoid" => Ok(Self::Sigmoid {
                center: take("center")?,
                scale: take("scale")?,
            }),
            "one" => Ok(Self::One),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        match *self {
            Self::HalfSpace { mass } => {
                if z[0] <= std_normal_quantile(mass) {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Slab { mass } => {
                let w = std_normal_quantile(0.5 * (1.0 + mass));
                if z[0].abs() <= w {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Ball { radius } => {
                let r2: f64 = z.iter().map(|v| v * v).sum();
                if r2 <= radius * radius {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Sigmoid { center, scale } => 1.0 / (1.0 + (-(z[0] - center) / scale).exp()),
            Self::One => 1.0,
        }
    }

    /// Analytic Gaussian mean where available (`None` for balls, whose mass
    /// is estimated by the caller's samples).
    pub fn mean(&self) -> Option<f64> {
        match *self {
            Self::HalfSpace { mass } | Self::Slab { mass } => Some(mass),
            Self::One => Some(1.0),
            Self::Sigmoid { center, scale } => {
                let f = |z: f64| std_normal_pdf(z) / (1.0 + (-(z - center) / scale).exp());
                Some(integrate(&f, -8.5, 8.5, 1e-12))
            }
            Self::Ball { .. } => None,
        }
    }

    pub fn is_indicator(&self) -> bool {
        !matches!(self, Self::Sigmoid { .. })
    }
}

/// Indicator sets used by the reverse-hypercontractive check.
pub type GaussianSet = GaussianTestFn;

#[derive(Debug, Clone)]
pub struct BorellReport {
    /// MC estimate of `E J_ρ(φ(N), ψ(M))` and its standard error.
    pub lhs: f64,
    pub lhs_se: f64,
    /// MC estimate of the noisy inner product `E[φ(N) ψ(M)]`.
    pub inner: f64,
    pub inner_se: f64,
    /// `J_ρ(Eφ, Eψ)`.
    pub rhs: f64,
    pub margin: f64,
    pub ok: bool,
    /// For two matched half-spaces the inner product must equal `rhs`.
    pub equality_case_ok: Option<bool>,
}

/// Monte-Carlo check of the functional noise-stability inequality
/// `E J_ρ(φ(N), ψ(M)) ≤ J_ρ(Eφ, Eψ)` (3·SE slack), plus the half-space
/// equality case of `⟨φ,ψ⟩_ρ ≤ ⟨χ_{Eφ}, χ_{Eψ}⟩_ρ`.
pub fn borell_mc_check(
    f_spec: GaussianTestFn,
    g_spec: GaussianTestFn,
    rho: f64,
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<BorellReport> {
    let sampler = GaussSampler::new(seed, dim, rho)?;
    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut n = vec![0.0; dim];
        let mut m = vec![0.0; dim];
        let mut sums = [0.0f64; 6]; // j, j², fg, (fg)², f, g
        for _ in 0..len {
            sampler.draw(&mut rng, &mut n, &mut m);
            let fv = f_spec.eval(&n);
            let gv = g_spec.eval(&m);
            let j = j_rho_closed(fv, gv, rho);
            sums[0] += j;
            sums[1] += j * j;
            sums[2] += fv * gv;
            sums[3] += fv * gv * fv * gv;
            sums[4] += fv;
            sums[5] += gv;
        }
        sums
    });
    let total = parts.into_iter().fold([0.0f64; 6], |mut acc, p| {
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b;
        }
        acc
    });
    let (lhs, lhs_se) = crate::rng::mean_with_se(total[0], total[1], samples);
    let (inner, inner_se) = crate::rng::mean_with_se(total[2], total[3], samples);
    let ef = f_spec.mean().unwrap_or(total[4] / samples as f64);
    let eg = g_spec.mean().unwrap_or(total[5] / samples as f64);
    let rhs = j_rho_closed(ef, eg, rho);
    let margin = rhs - lhs;
    let equality_case_ok = match (f_spec, g_spec) {
        (GaussianTestFn::HalfSpace { mass: a }, GaussianTestFn::HalfSpace { mass: b })
            if a == b =>
        {
            Some((inner - rhs).abs() <= 3.0 * inner_se.max(1e-9))
        }
        _ => None,
    };
    Ok(BorellReport {
        lhs,
        lhs_se,
        inner,
        inner_se,
        rhs,
        margin,
        ok: lhs <= rhs + 3.0 * lhs_se.max(1e-9),
        equality_case_ok,
    })
}

#[derive(Debug, Clone)]
pub struct ReverseHypReport {
    pub p_joint: f64,
    pub se: f64,
    pub p1: f64,
    pub p2: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Monte-Carlo check of the Gaussian reverse-hypercontractive set bound:
/// with `P[B₁] = e^{-α²}`, `P[B₂] = e^{-β²}` and coordinate correlations of
/// magnitude ≤ |ρ|,
/// `P[N ∈ B₁, M ∈ B₂] ≥ exp(-(α² + β² + 2|ρ|αβ)/(1-ρ²))`.
pub fn gaussian_reverse_hyp_check(
    b1: GaussianSet,
    b2: GaussianSet,
    rho: f64,
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<ReverseHypReport> {
    if !b1.is_indicator() || !b2.is_indicator() {
        return Err(Error::ParameterDomain(
            "reverse-hypercontractive check needs indicator sets".into(),
        ));
    }
    let sampler = GaussSampler::new(seed, dim, rho)?;
    let parts = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut n = vec![0.0; dim];
        let mut m = vec![0.0; dim];
        let mut counts = [0u64; 3]; // joint, b1, b2
        for _ in 0..len {
            sampler.draw(&mut rng, &mut n, &mut m);
            let in1 = b1.eval(&n) == 1.0;
            let in2 = b2.eval(&m) == 1.0;
            counts[0] += (in1 && in2) as u64;
            counts[1] += in1 as u64;
            counts[2] += in2 as u64;
        }
        counts
    });
    let totals = parts.into_iter().fold([0u64; 3], |mut acc, p| {
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b;
        }
        acc
    });
    let (p_joint, se) = crate::rng::freq_with_se(totals[0], samples);
    let p1 = b1.mean().unwrap_or(totals[1] as f64 / samples as f64);
    let p2 = b2.mean().unwrap_or(totals[2] as f64 / samples as f64);
    let (alpha2, beta2) = (-p1.ln(), -p2.ln());
    let r = rho.abs();
    let bound = (-(alpha2 + beta2 + 2.0 * r * (alpha2 * beta2).sqrt()) / (1.0 - r * r)).exp();
    Ok(ReverseHypReport {
        p_joint,
        se,
        p1,
        p2,
        bound,
        ok: p_joint >= bound - 3.0 * se.max(1e-9),
    })
}
