use super::graph::OpinionGraph;
use crate::error::{Error, Result};
use rayon::prelude::*;

/// One synchronous majority update (degrees are odd, so no ties).
pub fn step(graph: &OpinionGraph, state: &[i8]) -> Vec<i8> {
    (0..graph.vertex_count())
        .into_par_iter()
        .map(|v| {
            let s: i32 = graph
                .neighbors(v)
                .iter()
                .map(|&w| state[w as usize] as i32)
                .sum();
            if s > 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Trace of a run to periodicity. The energy `L_t` is the integer
/// disagreement sum `Σ_{(u,v)} ((X_v(t+1) - X_u(t))² + (X_u(t+1) - X_v(t))²)/2`
/// over undirected edges; it decreases by exactly the coupling `J_t`.
#[derive(Debug, Clone)]
pub struct DynamicsTrace {
    pub states: Vec<Vec<i8>>,
    /// `L_t` for t = 0, 1, ...
    pub energies: Vec<i64>,
    /// `J_t` for t = 1, 2, ... (aligned so `energies[t] - energies[t-1] = -couplings[t-1]`).
    pub couplings: Vec<i64>,
    pub period: usize,
    /// First time the eventual cycle is entered.
    pub entry_time: usize,
}

fn energy(graph: &OpinionGraph, state: &[i8], next: &[i8]) -> i64 {
    let mut sum = 0i64;
    #[allow(clippy::needless_range_loop)]
    for u in 0..graph.vertex_count() {
        for &v in graph.neighbors(u) {
            let d = (next[v as usize] - state[u]) as i64;
            sum += d * d;
        }
    }
    sum / 2
}

fn coupling(graph: &OpinionGraph, prev: &[i8], state: &[i8], next: &[i8]) -> i64 {
    (0..graph.vertex_count())
        .map(|v| {
            let s: i64 = graph
                .neighbors(v)
                .iter()
                .map(|&w| state[w as usize] as i64)
                .sum();
            (next[v] - prev[v]) as i64 * s
        })
        .sum()
}

/// Runs until `X(t) = X(t-2)` (period 1 or 2), checking the energy identity
/// `L_t - L_{t-1} = -J_t` and `J_v(t) ≥ 0` at every step. A run exceeding
/// `t_max` without entering a 2-cycle aborts loudly (it would falsify the
/// convergence theorem).
pub fn run_to_period(graph: &OpinionGraph, init: &[i8], t_max: usize) -> Result<DynamicsTrace> {
    if init.len() != graph.vertex_count() {
        return Err(Error::Malformed("state length mismatch".into()));
    }
    if init.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Malformed("states must be ±1".into()));
    }
    let mut states = vec![init.to_vec()];
    let mut energies = Vec::new();
    let mut couplings = Vec::new();
    loop {
        let t = states.len() - 1;
        if t > t_max {
            return Err(Error::GateViolated(format!(
                "no period ≤ 2 entered within {t_max} steps — convergence violated"
            )));
        }
        let next = step(graph, &states[t]);
        energies.push(energy(graph, &states[t], &next));
        if t >= 1 {
            let j = coupling(graph, &states[t - 1], &states[t], &next);
            // per-vertex coupling terms are nonnegative
            for v in 0..graph.vertex_count() {
                let s: i64 = graph
                    .neighbors(v)
                    .iter()
                    .map(|&w| states[t][w as usize] as i64)
                    .sum();
                let jv = (next[v] - states[t - 1][v]) as i64 * s;
                if jv < 0 {
                    return Err(Error::GateViolated(format!(
                        "negative vertex coupling at v = {v}, t = {t}"
                    )));
                }
            }
            if energies[t] - energies[t - 1] != -j {
                return Err(Error::GateViolated(format!(
                    "energy identity broken at t = {t}: ΔL = {} vs -J = {}",
                    energies[t] - energies[t - 1],
                    -j
                )));
            }
            couplings.push(j);
            if next == states[t - 1] {
                let period = if next == states[t] { 1 } else { 2 };
                states.push(next);
                // earliest e with X(s+2) = X(s) for all recorded s ≥ e
                let m = states.len() - 1; // X(m) = X(m-2)
                let mut entry = m - 2;
                while entry > 0 && states[entry - 1] == states[entry + 1] {
                    entry -= 1;
                }
                return Ok(DynamicsTrace {
                    states,
                    energies,
                    couplings,
                    period,
                    entry_time: entry,
                });
            }
        } else if next == states[0] {
            states.push(next);
            return Ok(DynamicsTrace {
                states,
                energies,
                couplings,
                period: 1,
                entry_time: 0,
            });
        }
        states.push(next);
    }
}

#[derive(Debug, Clone)]
pub struct RetentionReport {
    pub p: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Monte-Carlo estimate of `P[maj(X_∞) = +]` over i.i.d. `p`-biased initial
/// opinions, reading the limit state at the first even time of the cycle.
pub fn retention_experiment(
    graph: &OpinionGraph,
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<RetentionReport> {
    let t_max = 4 * graph.vertex_count() + 16;
    let results: Vec<Result<u64>> = crate::rng::par_chunks(seed, samples, |mut rng, len| {
        let mut hits = 0u64;
        for _ in 0..len {
            let init = graph.random_state(p, &mut rng);
            let trace = match run_to_period(graph, &init, t_max) {
                Ok(t) => t,
                Err(e) => return Err(e),
            };
            // first even time inside the cycle
            let mut t = trace.entry_time;
            if t % 2 == 1 {
                t += 1;
            }
            let limit = &trace.states[t.min(trace.states.len() - 1)];
            let sum: i32 = limit.iter().map(|&s| s as i32).sum();
            // odd-degree forces an even vertex count, so global ties are
            // possible; count them half-half to keep the estimator symmetric
            if sum > 0 {
                hits += 2;
            } else if sum == 0 {
                hits += 1;
            }
        }
        Ok(hits)
    });
    let mut half_units = 0u64;
    for r in results {
        half_units += r?;
    }
    let estimate = half_units as f64 / (2 * samples) as f64;
    // the per-sample value lives in [0,1], so Var ≤ m(1-m)
    let std_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(RetentionReport {
        p,
        estimate,
        std_error,
        samples,
    })
}

/// Retention estimates across a bias sweep, with the empirical
/// monotonicity-in-`p` flag (3·SE slack between consecutive points).
pub fn retention_sweep(
    graph: &OpinionGraph,
    ps: &[f64],
    samples: u64,
    seed: u64,
) -> Result<(Vec<RetentionReport>, bool)> {
    let mut reports = Vec::with_capacity(ps.len());
    for (i, &p) in ps.iter().enumerate() {
        reports.push(retention_experiment(graph, p, samples, seed + i as u64)?);
    }
    let monotone = reports.windows(2).all(|w| {
        w[1].estimate + 3.0 * (w[0].std_error + w[1].std_error) >= w[0].estimate
    });
    Ok((reports, monotone))
}
