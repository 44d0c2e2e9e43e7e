use super::BooleanFunction;
use crate::error::{Error, Result};

/// Proof-side constant for the level-1 recovery bound
/// `P[f ≠ d] ≤ C·(1 - W₁)`; recorded here rather than buried in a test.
pub const FKN_CONSTANT: f64 = 1e4;

#[derive(Debug, Clone, Copy)]
pub struct FknReport {
    /// Level-1 spectral weight `Σ_{|S|=1} f̂(S)²`.
    pub level1_weight: f64,
    /// Coordinate of the closest signed dictator.
    pub coord: usize,
    /// Its sign (+1 or -1).
    pub sign: f64,
    /// `P[f ≠ sign·x_coord]`.
    pub distance: f64,
    /// Whether `distance ≤ FKN_CONSTANT · (1 - W₁)` (only asserted when the
    /// function is balanced to 1e-9; `None` otherwise).
    pub bound_ok: Option<bool>,
}

/// Level-1 concentration analysis: how much of the spectrum sits on the
/// singletons, which signed dictator is nearest, and how far it is.
pub fn fkn_analysis(f: &BooleanFunction) -> Result<FknReport> {
    let f = f.to_pm_one()?;
    let fe = f.wht();
    let n = f.n() as usize;
    let mut level1_weight = 0.0;
    let mut coord = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let c = fe.coeff(1 << i);
        level1_weight += c * c;
        if c.abs() > best {
            best = c.abs();
            coord = i;
        }
    }
    let sign = if fe.coeff(1 << coord) >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let mut disagreements = 0usize;
    for idx in 0..f.len() as u32 {
        let d = if idx >> coord & 1 == 1 { sign } else { -sign };
        if f.at(idx) != d {
            disagreements += 1;
        }
    }
    let distance = disagreements as f64 / f.len() as f64;
    let bound_ok = (f.mean().abs() <= 1e-9)
        .then_some(distance <= FKN_CONSTANT * (1.0 - level1_weight) + 1e-12);
    Ok(FknReport {
        level1_weight,
        coord,
        sign,
        distance,
        bound_ok,
    })
}

/// Flips `count` distinct table entries of `f`, chosen by the seeded stream.
/// Used by the recovery experiments.
pub fn corrupt(f: &BooleanFunction, count: usize, seed: u64) -> Result<BooleanFunction> {
    use rand::seq::SliceRandom;
    if count > f.len() {
        return Err(Error::ParameterDomain(format!(
            "cannot flip {count} of {} entries",
            f.len()
        )));
    }
    let f = f.to_pm_one()?;
    let mut rng = crate::rng::stream(seed, 0);
    let mut indices: Vec<usize> = (0..f.len()).collect();
    indices.shuffle(&mut rng);
    let mut values = f.values().to_vec();
    for &i in indices.iter().take(count) {
        values[i] = -values[i];
    }
    BooleanFunction::new(f.n(), super::Codomain::PlusMinusOne, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::generators::Generator;

    #[test]
    fn clean_dictator() {
        let f = Generator::Dictator(3).build(6).unwrap();
        let rep = fkn_analysis(&f).unwrap();
        assert_eq!(rep.level1_weight, 1.0);
        assert_eq!(rep.coord, 3);
        assert_eq!(rep.sign, 1.0);
        assert_eq!(rep.distance, 0.0);
        assert_eq!(rep.bound_ok, Some(true));
    }

    #[test]
    fn single_flip_on_n8() {
        let f = Generator::Dictator(0).build(8).unwrap();
        let corrupted = corrupt(&f, 1, 99).unwrap();
        let rep = fkn_analysis(&corrupted).unwrap();
        assert_eq!(rep.coord, 0);
        assert_eq!(rep.distance, 1.0 / 256.0);
        // one flip moves the main coefficient by 2/256 and each other
        // singleton by at most 2/256
        let expect_main: f64 = 1.0 - 2.0 / 256.0;
        assert!(rep.level1_weight >= expect_main * expect_main - 1e-12);
        assert!(rep.level1_weight < 1.0);
    }

    #[test]
    fn majority3_is_quarter_far() {
        let f = Generator::Majority.build(3).unwrap();
        let rep = fkn_analysis(&f).unwrap();
        assert!((rep.level1_weight - 0.75).abs() < 1e-12);
        assert_eq!(rep.distance, 0.25);
        assert_eq!(rep.bound_ok, Some(true));
    }

    #[test]
    fn unbalanced_functions_skip_the_assertion() {
        let f = Generator::Tribes { width: 2 }.build(8).unwrap();
        let rep = fkn_analysis(&f).unwrap();
        assert!(rep.bound_ok.is_none());
    }
}
