use super::{influences, BooleanFunction};
use crate::error::{Error, Result};

/// Trace of the greedy coalition construction: repeatedly fix the currently
/// most influential variable to +1.
#[derive(Debug, Clone)]
pub struct CoalitionTrace {
    /// Chosen coordinates, in the original function's numbering.
    pub coalition: Vec<usize>,
    /// Conditioned means, starting with `E[f]` before any conditioning.
    pub means: Vec<f64>,
    /// Every step satisfied the Poincaré-derived gain `Var[f_cur]/(4n)`.
    pub step_bound_ok: bool,
}

/// Greedy coalition of size ≤ `budget` for monotone ±1-valued `f`.
///
/// Each conditioning step raises the mean by the selected influence, which
/// for a monotone function is its level-1 coefficient; the trace records the
/// mean after every step. Stops early when the function becomes constant.
pub fn greedy_coalition(f: &BooleanFunction, budget: usize) -> Result<CoalitionTrace> {
    let f = f.to_pm_one()?;
    if !f.is_monotone() {
        return Err(Error::NotMonotone(
            "greedy coalition needs monotone f".into(),
        ));
    }
    let n = f.n() as usize;
    let mut current = f.clone();
    // Map from the shrinking function's coordinates to original coordinates.
    let mut live: Vec<usize> = (0..n).collect();
    let mut coalition = Vec::new();
    let mut means = vec![current.mean()];
    let mut step_bound_ok = true;

    for _ in 0..budget.min(n) {
        let var = current.variance();
        if var == 0.0 {
            break;
        }
        let infl = influences(&current);
        let (best, &best_inf) = infl
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonconstant function has coordinates");
        let before = current.mean();
        coalition.push(live[best]);
        if current.n() == 1 {
            // conditioning the last variable: the mean is the +1 value
            means.push(current.at(1));
            let gain = current.at(1) - before;
            if gain + 1e-12 < var / (4.0 * n as f64) {
                step_bound_ok = false;
            }
            break;
        }
        current = current.restrict(best, true)?;
        live.remove(best);
        let after = current.mean();
        means.push(after);
        // monotone: gain equals the chosen influence; check the 1/(4n) form
        let gain = after - before;
        if gain + 1e-12 < var / (4.0 * n as f64) {
            step_bound_ok = false;
        }
        debug_assert!(gain + 1e-12 >= best_inf - 1e-9 || best_inf == 0.0);
    }

    Ok(CoalitionTrace {
        coalition,
        means,
        step_bound_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::generators::Generator;

    #[test]
    fn dictator_saturates_in_one_step() {
        let f = Generator::Dictator(2).build(5).unwrap();
        let trace = greedy_coalition(&f, 3).unwrap();
        assert_eq!(trace.coalition, vec![2]);
        assert_eq!(trace.means, vec![0.0, 1.0]);
        assert!(trace.step_bound_ok);
    }

    #[test]
    fn majority9_strictly_increases() {
        let f = Generator::Majority.build(9).unwrap();
        let trace = greedy_coalition(&f, 3).unwrap();
        assert_eq!(trace.coalition.len(), 3);
        for w in trace.means.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert!(trace.step_bound_ok);
    }

    #[test]
    fn one_full_tribe_fixes_tribes() {
        let f = Generator::Tribes { width: 2 }.build(8).unwrap();
        let trace = greedy_coalition(&f, 2).unwrap();
        assert_eq!(trace.coalition.len(), 2);
        assert!((trace.means.last().unwrap() - 1.0).abs() < 1e-12);
        // the two coordinates form one tribe
        assert_eq!(trace.coalition[0] / 2, trace.coalition[1] / 2);
    }

    #[test]
    fn rejects_non_monotone() {
        let f = Generator::Parity.build(4).unwrap();
        assert!(greedy_coalition(&f, 2).is_err());
    }
}
