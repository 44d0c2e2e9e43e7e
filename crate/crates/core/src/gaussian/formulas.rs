use std::f64::consts::PI;

/// Limiting noise stability of majority: `κ(ρ) = 1 - 2·arccos(ρ)/π`.
pub fn sheppard(rho: f64) -> f64 {
    1.0 - 2.0 * rho.acos() / PI
}

/// Limiting probability that pairwise majority over uniform rankings of
/// three alternatives is cyclic: `1 - 3·arccos(-1/3)/(2π) ≈ 0.08774`.
pub fn guilbaud_constant() -> f64 {
    1.0 - 3.0 * (-1.0f64 / 3.0).acos() / (2.0 * PI)
}

/// Limiting predictability of majority from a ρ-sample of the votes:
/// `(2/π)·arcsin(√ρ)`.
pub fn majority_predictability(rho: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&rho),
        "predictability needs ρ in [0,1]"
    );
    2.0 / PI * rho.sqrt().asin()
}

/// The interior crossing of majority predictability with the dictator's
/// predictability `ρ`, located by bisection to 1e-9. (Analytically the
/// crossing sits at exactly ρ = 1/2; the numeric search is kept as a check
/// of the curve shapes: majority wins below, dictator above.)
pub fn predictability_crossover() -> f64 {
    let g = |rho: f64| majority_predictability(rho) - rho;
    let (mut lo, mut hi) = (0.1, 0.9);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
