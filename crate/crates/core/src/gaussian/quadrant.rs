use super::normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile};
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Masses and correlation for a correlated-quadrant probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrantParams {
    pub x: f64,
    pub y: f64,
    pub rho: f64,
}

impl QuadrantParams {
    pub fn new(x: f64, y: f64, rho: f64) -> Result<Self> {
        if !(0.0 < x && x < 1.0 && 0.0 < y && y < 1.0) {
            return Err(Error::ParameterDomain(format!(
                "masses must lie in (0,1); got x={x}, y={y}"
            )));
        }
        if !(-1.0 < rho && rho < 1.0) {
            return Err(Error::ParameterDomain(format!(
                "correlation must lie in (-1,1); got {rho}"
            )));
        }
        Ok(Self { x, y, rho })
    }
}

/// Integration window; the normal tail mass beyond 8.5 is below 1e-17.
const TAIL: f64 = 8.5;

/// `J_ρ(x, y) = P[X ≤ Φ⁻¹(x), Y ≤ Φ⁻¹(y)]` for a ρ-correlated standard
/// Gaussian pair, by adaptive quadrature of
/// `∫ φ(s')·Φ((t - ρ s')/√(1-ρ²)) ds'` up to `s = Φ⁻¹(x)`.
pub fn j_rho(params: QuadrantParams) -> f64 {
    let QuadrantParams { x, y, rho } = params;
    let s = std_normal_quantile(x);
    let t = std_normal_quantile(y);
    if s < -TAIL {
        return 0.0;
    }
    let denom = (1.0 - rho * rho).sqrt();
    let f = |sp: f64| std_normal_pdf(sp) * std_normal_cdf((t - rho * sp) / denom);
    integrate(&f, -TAIL, s.min(TAIL), 1e-12).clamp(0.0, 1.0)
}

/// `J_ρ` extended continuously to the closed square, for compositions whose
/// arguments may touch {0, 1}: `J(0,·) = J(·,0) = 0`, `J(1,y) = y`,
/// `J(x,1) = x`.
pub fn j_rho_closed(x: f64, y: f64, rho: f64) -> f64 {
    const EPS: f64 = 1e-14;
    if x <= EPS || y <= EPS {
        return 0.0;
    }
    if x >= 1.0 - EPS {
        return y;
    }
    if y >= 1.0 - EPS {
        return x;
    }
    j_rho(QuadrantParams { x, y, rho })
}

/// Closed-form gradient `(∂J/∂x, ∂J/∂y)`.
pub fn j_rho_gradient(params: QuadrantParams) -> (f64, f64) {
    let QuadrantParams { x, y, rho } = params;
    let s = std_normal_quantile(x);
    let t = std_normal_quantile(y);
    let denom = (1.0 - rho * rho).sqrt();
    (
        std_normal_cdf((t - rho * s) / denom),
        std_normal_cdf((s - rho * t) / denom),
    )
}

/// Second partials `(Jxx, Jxy, Jyy)` by central differences of the
/// closed-form gradient, step `1e-5` on the mass scale.
pub fn j_rho_hessian_fd(params: QuadrantParams) -> (f64, f64, f64) {
    let QuadrantParams { x, y, rho } = params;
    let h = 1e-5;
    let gx = |x: f64, y: f64| j_rho_gradient(QuadrantParams { x, y, rho }).0;
    let gy = |x: f64, y: f64| j_rho_gradient(QuadrantParams { x, y, rho }).1;
    let jxx = (gx(x + h, y) - gx(x - h, y)) / (2.0 * h);
    let jxy = (gx(x, y + h) - gx(x, y - h)) / (2.0 * h);
    let jyy = (gy(x, y + h) - gy(x, y - h)) / (2.0 * h);
    (jxx, jxy, jyy)
}

/// Closed-form second partials, the oracle for [`j_rho_hessian_fd`].
pub fn j_rho_hessian_closed(params: QuadrantParams) -> (f64, f64, f64) {
    let QuadrantParams { x, y, rho } = params;
    let s = std_normal_quantile(x);
    let t = std_normal_quantile(y);
    let denom = (1.0 - rho * rho).sqrt();
    let w = (t - rho * s) / denom;
    let wp = (s - rho * t) / denom;
    let jxx = -rho / denom * std_normal_pdf(w) / std_normal_pdf(s);
    let jyy = -rho / denom * std_normal_pdf(wp) / std_normal_pdf(t);
    let jxy = std_normal_pdf(w) / (denom * std_normal_pdf(t));
    (jxx, jxy, jyy)
}

/// `∂J/∂ρ` by a central difference in ρ with step `1e-4`.
pub fn j_rho_rho_derivative_fd(params: QuadrantParams) -> f64 {
    let QuadrantParams { x, y, rho } = params;
    let h = 1e-4;
    let a = j_rho(QuadrantParams { x, y, rho: rho + h });
    let b = j_rho(QuadrantParams { x, y, rho: rho - h });
    (a - b) / (2.0 * h)
}

/// Closed form `∂J/∂ρ` = bivariate normal density at the quantile pair.
pub fn j_rho_rho_derivative_closed(params: QuadrantParams) -> f64 {
    let QuadrantParams { x, y, rho } = params;
    let s = std_normal_quantile(x);
    let t = std_normal_quantile(y);
    let d2 = 1.0 - rho * rho;
    (-(s * s - 2.0 * rho * s * t + t * t) / (2.0 * d2)).exp()
        / (2.0 * std::f64::consts::PI * d2.sqrt())
}

#[derive(Debug, Clone)]
pub struct DerivativeChecks {
    pub rho: f64,
    /// Largest eigenvalue of the σ-mixed Hessian over the grid and σ list.
    pub max_eigenvalue: f64,
    /// Largest |∂J/∂ρ| − (1-ρ²)^{-3/2} over the grid (≤ slack when ok).
    pub max_rho_derivative_excess: f64,
    pub semidefinite_ok: bool,
    pub rho_derivative_ok: bool,
}

/// On `grid × grid` interior points and each `σ` with `0 ≤ σ ≤ ρ`, checks
/// that the mixed matrix `[[Jxx, σJxy], [σJxy, Jyy]]` is negative
/// semidefinite up to 1e-6 noise and that `|∂J/∂ρ| ≤ (1-ρ²)^{-3/2} + 1e-6`.
pub fn j_rho_derivative_checks(grid: &[f64], rho: f64, sigmas: &[f64]) -> Result<DerivativeChecks> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::ParameterDomain(format!(
            "the semidefiniteness check needs ρ in [0,1), got {rho}"
        )));
    }
    for &s in sigmas {
        if !(0.0 <= s && s <= rho) {
            return Err(Error::ParameterDomain(format!("σ = {s} outside [0, ρ]")));
        }
    }
    let mut max_eig = f64::NEG_INFINITY;
    let mut max_excess = f64::NEG_INFINITY;
    let d_bound = (1.0 - rho * rho).powf(-1.5);
    for &x in grid {
        for &y in grid {
            let params = QuadrantParams::new(x, y, rho)?;
            let (jxx, jxy, jyy) = j_rho_hessian_fd(params);
            for &sigma in sigmas {
                let half_tr = 0.5 * (jxx + jyy);
                let disc = (0.25 * (jxx - jyy) * (jxx - jyy) + sigma * sigma * jxy * jxy).sqrt();
                max_eig = max_eig.max(half_tr + disc);
            }
            let d = j_rho_rho_derivative_fd(params).abs();
            max_excess = max_excess.max(d - d_bound);
        }
    }
    Ok(DerivativeChecks {
        rho,
        max_eigenvalue: max_eig,
        max_rho_derivative_excess: max_excess,
        semidefinite_ok: max_eig <= 1e-6,
        rho_derivative_ok: max_excess <= 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn independence_factorizes() {
        for (x, y) in [(0.3, 0.7), (0.5, 0.5), (0.11, 0.93)] {
            let j = j_rho(QuadrantParams::new(x, y, 0.0).unwrap());
            assert!((j - x * y).abs() < 1e-11, "J_0({x},{y}) = {j}");
        }
    }

    #[test]
    fn symmetric_quadrant_closed_form() {
        // J_ρ(1/2,1/2) = 1/4 + arcsin(ρ)/(2π); at ρ = 1/2 this is exactly 1/3.
        let tau = 2.0 * std::f64::consts::PI;
        for rho in [-0.9, -1.0 / 3.0, 0.2, 0.5, 0.8, 0.99] {
            let j = j_rho(QuadrantParams::new(0.5, 0.5, rho).unwrap());
            let expect = 0.25 + rho.asin() / tau;
            assert!((j - expect).abs() < 1e-10, "rho = {rho}: {j} vs {expect}");
        }
        let third = j_rho(QuadrantParams::new(0.5, 0.5, 0.5).unwrap());
        assert!((third - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn monte_carlo_orthant_oracle() {
        // 2-D sampling oracle at ρ = 0.5, 10^7 draws, 3σ agreement.
        let rho: f64 = 0.5;
        let lift = (1.0 - rho * rho).sqrt();
        let mut rng = crate::rng::stream(12345, 0);
        let samples = 10_000_000u64;
        let mut hits = 0u64;
        for _ in 0..samples {
            let a: f64 = StandardNormal.sample(&mut rng);
            let b: f64 = StandardNormal.sample(&mut rng);
            let m = rho * a + lift * b;
            if a <= 0.0 && m <= 0.0 {
                hits += 1;
            }
        }
        let (p, se) = crate::rng::freq_with_se(hits, samples);
        let j = j_rho(QuadrantParams::new(0.5, 0.5, rho).unwrap());
        assert!(
            (p - j).abs() <= 3.0 * se,
            "MC {p} vs quadrature {j} (se {se})"
        );
    }

    #[test]
    fn comonotone_limit() {
        let j = j_rho(QuadrantParams::new(0.3, 0.6, 0.99999).unwrap());
        assert!((j - 0.3).abs() < 1e-4);
    }

    #[test]
    fn symmetry_in_arguments() {
        for rho in [-0.5, 0.3, 0.8] {
            let a = j_rho(QuadrantParams::new(0.2, 0.7, rho).unwrap());
            let b = j_rho(QuadrantParams::new(0.7, 0.2, rho).unwrap());
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn hessian_fd_matches_closed_form() {
        for (x, y, rho) in [(0.5, 0.5, 0.5), (0.2, 0.7, 0.3), (0.35, 0.9, 0.8)] {
            let p = QuadrantParams::new(x, y, rho).unwrap();
            let (axx, axy, ayy) = j_rho_hessian_fd(p);
            let (bxx, bxy, byy) = j_rho_hessian_closed(p);
            assert!((axx - bxx).abs() < 1e-6, "Jxx at {x},{y},{rho}");
            assert!((axy - bxy).abs() < 1e-6, "Jxy at {x},{y},{rho}");
            assert!((ayy - byy).abs() < 1e-6, "Jyy at {x},{y},{rho}");
        }
    }

    #[test]
    fn rho_derivative_matches_bivariate_density() {
        // at ρ=0, x=y=1/2 the closed form is 1/(2π) ≤ 1
        let p = QuadrantParams::new(0.5, 0.5, 0.0).unwrap();
        let fd = j_rho_rho_derivative_fd(p);
        let closed = j_rho_rho_derivative_closed(p);
        assert!((closed - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-14);
        assert!((fd - closed).abs() < 1e-7);
        assert!(fd.abs() <= 1.0);
        for (x, y, rho) in [(0.3, 0.8, 0.5), (0.6, 0.6, -0.4)] {
            let p = QuadrantParams::new(x, y, rho).unwrap();
            assert!((j_rho_rho_derivative_fd(p) - j_rho_rho_derivative_closed(p)).abs() < 1e-6);
        }
    }

    #[test]
    fn bilinear_at_rho_zero() {
        // J = xy: second partials in each variable vanish identically.
        let p = QuadrantParams::new(0.4, 0.6, 0.0).unwrap();
        let (jxx, jxy, jyy) = j_rho_hessian_fd(p);
        assert_eq!(jxx, 0.0);
        assert_eq!(jyy, 0.0);
        assert!((jxy - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_matrix_at_half() {
        // ρ = σ = 0.5, x = y = 0.5: determinant ≥ -1e-8, trace ≤ 1e-8 short of 0
        let p = QuadrantParams::new(0.5, 0.5, 0.5).unwrap();
        let (jxx, jxy, jyy) = j_rho_hessian_fd(p);
        let sigma = 0.5;
        let det = jxx * jyy - sigma * sigma * jxy * jxy;
        assert!(det >= -1e-8, "det = {det}");
        assert!(jxx + jyy <= 1e-8);
    }

    #[test]
    fn derivative_checks_run_clean() {
        let grid: Vec<f64> = (1..10).map(|i| 0.05 + 0.1 * i as f64).collect();
        let rep = j_rho_derivative_checks(&grid, 0.5, &[0.0, 0.25, 0.5]).unwrap();
        assert!(rep.semidefinite_ok, "max eig {}", rep.max_eigenvalue);
        assert!(rep.rho_derivative_ok);
    }

    #[test]
    fn boundary_and_domain_errors() {
        assert!(QuadrantParams::new(0.0, 0.5, 0.5).is_err());
        assert!(QuadrantParams::new(0.5, 1.0, 0.5).is_err());
        assert!(QuadrantParams::new(0.5, 0.5, 1.0).is_err());
        assert_eq!(j_rho_closed(0.0, 0.7, 0.5), 0.0);
        assert_eq!(j_rho_closed(1.0, 0.7, 0.5), 0.7);
    }

    #[test]
    fn lipschitz_and_monotone_on_a_grid() {
        let grid: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
        let h = 0.05;
        for &rho in &[-0.5, 0.2, 0.8] {
            for &x in &grid {
                for &y in &grid {
                    let j0 = j_rho(QuadrantParams::new(x, y, rho).unwrap());
                    let jx = j_rho(QuadrantParams::new(x + h, y, rho).unwrap());
                    let jy = j_rho(QuadrantParams::new(x, y + h, rho).unwrap());
                    assert!(jx + 1e-10 >= j0, "monotone in x");
                    assert!(jy + 1e-10 >= j0, "monotone in y");
                    assert!(jx - j0 <= h + 1e-10, "1-Lipschitz in x");
                    assert!(jy - j0 <= h + 1e-10, "1-Lipschitz in y");
                    if rho >= 0.0 {
                        assert!(j0 + 1e-10 >= x * y, "J ≥ xy for ρ ≥ 0");
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_consistency() {
        // 4·J_ρ(1/2,1/2) - 1 = 1 - 2·arccos(ρ)/π
        for rho in [-0.7, -1.0 / 3.0, 0.1, 0.5, 0.9] {
            let j = j_rho(QuadrantParams::new(0.5, 0.5, rho).unwrap());
            let kappa = super::super::sheppard(rho);
            assert!((4.0 * j - 1.0 - kappa).abs() < 1e-9);
        }
    }
}
