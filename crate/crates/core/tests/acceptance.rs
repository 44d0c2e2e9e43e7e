//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all)
//! and enforcing the stated tolerance and runtime budget.

use quantsoc_core::aggregate::{
    effects, jury_strictly_increasing, kkl_diagnostic, pivot_influence,
    weighted_majority_bound_check, FiniteDistribution,
};
use quantsoc_core::boolean::{
    corrupt, fkn_analysis, hypercontractivity_check, influence, noisy_inner_product,
    reverse_hypercontractivity_check, tribes_influence_exact, BooleanFunction, Codomain, Generator,
};
use quantsoc_core::condorcet::{
    arrow_exhaustive_n3, boolean_reverse_hyp_check, paradox_probability, random_monotone_set,
    ParadoxMode,
};
use quantsoc_core::dynamics::{run_to_period, OpinionGraph};
use quantsoc_core::gaussian::{
    guilbaud_constant, j_rho, j_rho_derivative_checks, sheppard, QuadrantParams,
};
use quantsoc_core::manip::{
    canonical_path_above, census, congestion_census, gs_witness,
    product_complete_graph_isoperimetry, Ranking, Rule, SocialChoiceFunction,
};
use rand::Rng;
use std::time::{Duration, Instant};

fn criterion(name: &str, limit: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) => println!("ACCEPTANCE {name}: PASS ({elapsed:.2?}, limit {limit:.0?})"),
        Err(msg) => println!("ACCEPTANCE {name}: FAIL ({msg})"),
    }
    if let Err(msg) = outcome {
        panic!("{name}: {msg}");
    }
    assert!(
        elapsed <= limit,
        "{name}: runtime {elapsed:?} over the {limit:?} budget"
    );
}

fn check(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

#[test]
fn acceptance_01_guilbaud_limit() {
    criterion("01 guilbaud-limit", Duration::from_secs(60), || {
        let g = guilbaud_constant();
        // closed form pinned to 1e-9
        check(
            (g - 0.087739828).abs() < 1e-9,
            format!("constant {g} off the 1e-9 reference"),
        )?;
        let mut last = -1.0;
        for n in [1u32, 3, 5, 7, 9, 11] {
            let m = Generator::Majority.build(n).unwrap();
            let p = paradox_probability(&m, &m, &m, ParadoxMode::Exhaustive)
                .map_err(|e| e.to_string())?;
            check(
                p > last || (n == 1 && p == 0.0),
                format!("paradox not increasing at n = {n}: {p} after {last}"),
            )?;
            check(p < g, format!("n = {n} overshoots the limit: {p}"))?;
            last = p;
        }
        // n = 101 by sampling
        let mc = mc_majority_paradox(101, 1_000_000, 2024);
        check(
            (mc - g).abs() < 0.005,
            format!("n = 101 estimate {mc} not within 0.005 of {g}"),
        )
    });
}

/// Monte-Carlo paradox probability of majority without a dense table.
fn mc_majority_paradox(n: u32, samples: u64, seed: u64) -> f64 {
    let mut rng = quantsoc_core::rng::stream(seed, 0);
    let atoms = quantsoc_core::condorcet::ATOMS;
    let half = n / 2;
    let mut hits = 0u64;
    for _ in 0..samples {
        let (mut x, mut y, mut z) = (0u32, 0u32, 0u32);
        for _ in 0..n {
            let atom = atoms[rng.gen_range(0..6)];
            x += (atom & 1) as u32;
            y += (atom >> 1 & 1) as u32;
            z += (atom >> 2 & 1) as u32;
        }
        let (fx, fy, fz) = (x > half, y > half, z > half);
        if fx == fy && fy == fz {
            hits += 1;
        }
    }
    hits as f64 / samples as f64
}

#[test]
fn acceptance_02_majority3_paradox() {
    criterion("02 majority3-paradox", Duration::from_secs(1), || {
        let m = Generator::Majority.build(3).unwrap();
        let exhaustive =
            paradox_probability(&m, &m, &m, ParadoxMode::Exhaustive).map_err(|e| e.to_string())?;
        check(
            (exhaustive - 1.0 / 18.0).abs() < 1e-12,
            format!("216-profile oracle gives {exhaustive}, want 1/18"),
        )?;
        let fourier =
            paradox_probability(&m, &m, &m, ParadoxMode::Fourier).map_err(|e| e.to_string())?;
        check(
            (fourier - exhaustive).abs() < 1e-10,
            format!("paths disagree: {fourier} vs {exhaustive}"),
        )
    });
}

#[test]
fn acceptance_03_dictators_maximize_stability() {
    criterion("03 dictator-stability", Duration::from_secs(300), || {
        let rho = 0.5;
        let mut max = f64::NEG_INFINITY;
        let mut maximizers = Vec::new();
        for bits in 0u32..(1 << 16) {
            if bits.count_ones() != 8 {
                continue; // balanced functions only
            }
            let f = BooleanFunction::from_pm_predicate(4, |idx| bits >> idx & 1 == 1).unwrap();
            let s = noisy_inner_product(&f, &f, rho).unwrap();
            if s > max + 1e-12 {
                max = s;
                maximizers.clear();
            }
            if (s - max).abs() <= 1e-12 {
                maximizers.push(bits);
            }
        }
        check(
            (max - rho).abs() < 1e-12,
            format!("max stability {max}, expected ρ = {rho}"),
        )?;
        let dictators: Vec<u32> = (0..4)
            .flat_map(|i| {
                let d = Generator::Dictator(i).build(4).unwrap();
                let bits = (0..16).fold(0u32, |acc, k| acc | (((d.at(k) == 1.0) as u32) << k));
                [bits, bits ^ 0xffff]
            })
            .collect();
        let mut want = dictators.clone();
        want.sort_unstable();
        maximizers.sort_unstable();
        check(
            maximizers == want,
            format!("maximizers {maximizers:?} are not exactly the signed dictators"),
        )
    });
}

#[test]
fn acceptance_04_arrow_exhaustive() {
    criterion("04 arrow-exhaustive", Duration::from_secs(10), || {
        let rows = arrow_exhaustive_n3().map_err(|e| e.to_string())?;
        let dictators: Vec<u32> = (0..3)
            .flat_map(|i| {
                let d = Generator::Dictator(i).build(3).unwrap();
                let bits = (0..8).fold(0u32, |acc, k| acc | (((d.at(k) == 1.0) as u32) << k));
                [bits, bits ^ 0xff]
            })
            .collect();
        for (bits, p) in rows {
            let zero = p.abs() < 1e-12;
            let is_dictator = dictators.contains(&bits);
            check(
                zero == is_dictator,
                format!("f = {bits:08b}: paradox {p}, dictator = {is_dictator}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_05_sheppard_cross_check() {
    criterion("05 sheppard-cross-check", Duration::from_secs(60), || {
        // exact Fourier value at n = 15
        let m = Generator::Majority.build(15).unwrap();
        let exact = noisy_inner_product(&m, &m, 0.5).unwrap();
        check(
            (exact - 1.0 / 3.0).abs() < 0.03,
            format!("n = 15 stability {exact} not within 0.03 of 1/3"),
        )?;
        // n = 1001 by sampling: flip mask with probability 1/4 per bit is
        // the AND of two fair masks
        let n = 1001u32;
        let samples = 100_000u64;
        let mut rng = quantsoc_core::rng::stream(7, 0);
        let words = n.div_ceil(64) as usize;
        let last_mask = if n.is_multiple_of(64) {
            u64::MAX
        } else {
            (1u64 << (n % 64)) - 1
        };
        let mut sum = 0i64;
        for _ in 0..samples {
            let mut count_x = 0u32;
            let mut count_y = 0u32;
            for w in 0..words {
                let mask = if w + 1 == words { last_mask } else { u64::MAX };
                let x = rng.gen::<u64>() & mask;
                let flip = rng.gen::<u64>() & rng.gen::<u64>() & mask;
                count_x += x.count_ones();
                count_y += (x ^ flip).count_ones();
            }
            let fx = if 2 * count_x > n { 1 } else { -1 };
            let fy = if 2 * count_y > n { 1 } else { -1 };
            sum += (fx * fy) as i64;
        }
        let estimate = sum as f64 / samples as f64;
        check(
            (estimate - 1.0 / 3.0).abs() < 0.01,
            format!("n = 1001 MC stability {estimate} not within 0.01 of 1/3"),
        )
    });
}

#[test]
fn acceptance_06_hypercontractivity_suite() {
    criterion("06 hypercontractivity", Duration::from_secs(60), || {
        let rho_fwd = 1.0 / 3f64.sqrt();
        let mut rng = quantsoc_core::rng::stream(61, 0);
        for trial in 0..1000 {
            let f = BooleanFunction::from_pm_predicate(10, |_| rng.gen::<bool>()).unwrap();
            let rep = hypercontractivity_check(&f, rho_fwd, 4.0, 2.0).unwrap();
            check(
                rep.lhs_norm <= rep.rhs_norm + 1e-12,
                format!("forward fails on trial {trial}: {rep:?}"),
            )?;
        }
        let rho_rev = (0.5f64 / 0.75).sqrt();
        for trial in 0..1000 {
            let values: Vec<f64> = (0..1 << 10).map(|_| rng.gen::<f64>() + 1e-6).collect();
            let f = BooleanFunction::new(10, Codomain::Real, values).unwrap();
            let rep = reverse_hypercontractivity_check(&f, rho_rev, 0.5, 0.25).unwrap();
            check(
                rep.lhs_norm >= rep.rhs_norm - 1e-12,
                format!("reverse fails on trial {trial}: {rep:?}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_07_boolean_reverse_hyp() {
    criterion("07 reverse-hyp-boolean", Duration::from_secs(30), || {
        for seed in 0..100u64 {
            let b1 = random_monotone_set(10, 0.25, 31_000 + seed);
            let b2 = random_monotone_set(10, 0.25, 32_000 + seed);
            let rep =
                boolean_reverse_hyp_check(&b1, &b2, 10, -1.0 / 3.0).map_err(|e| e.to_string())?;
            check(
                rep.p_joint >= rep.bound - 1e-12,
                format!("seed {seed}: joint {} < bound {}", rep.p_joint, rep.bound),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_08_j_rho_calculus() {
    criterion("08 j-rho-calculus", Duration::from_secs(60), || {
        let grid: Vec<f64> = (1..=19).map(|i| 0.05 * i as f64).collect();
        for rho in [0.2, 0.5, 0.8] {
            let report = j_rho_derivative_checks(&grid, rho, &[0.0, rho / 2.0, rho])
                .map_err(|e| e.to_string())?;
            check(
                report.max_eigenvalue <= 1e-6,
                format!("ρ = {rho}: max eigenvalue {}", report.max_eigenvalue),
            )?;
            check(
                report.max_rho_derivative_excess <= 1e-6,
                format!(
                    "ρ = {rho}: |∂J/∂ρ| exceeds (1-ρ²)^(-3/2) by {}",
                    report.max_rho_derivative_excess
                ),
            )?;
            let j = j_rho(QuadrantParams::new(0.5, 0.5, rho).unwrap());
            let arcsin = 0.25 + rho.asin() / (2.0 * std::f64::consts::PI);
            check(
                (j - arcsin).abs() < 1e-8,
                format!("ρ = {rho}: J(1/2,1/2) = {j} vs closed form {arcsin}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_09_borda_example() {
    let f = SocialChoiceFunction::named("borda", 4, 2).unwrap();
    let honest = vec![
        Ranking::new(vec![0, 1, 2, 3]).unwrap(),
        Ranking::new(vec![2, 0, 3, 1]).unwrap(),
    ];
    let misreport = vec![
        Ranking::new(vec![0, 1, 2, 3]).unwrap(),
        Ranking::new(vec![2, 3, 1, 0]).unwrap(),
    ];
    criterion("09 borda-example", Duration::from_millis(1), || {
        let winner = f.evaluate(&honest);
        check(winner == 0, format!("honest winner {winner}, want a"))?;
        let flipped = f.evaluate(&misreport);
        check(flipped == 2, format!("misreport winner {flipped}, want c"))?;
        check(
            honest[1].prefers(flipped, winner),
            "voter 2 must truly prefer the flipped outcome".into(),
        )
    });
}

#[test]
fn acceptance_10_gs_witness_and_nonmanipulable() {
    criterion("10 gs-witness", Duration::from_secs(120), || {
        for (k, n) in [(3u8, 2u32), (3, 3), (4, 2)] {
            for rule in ["plurality", "borda"] {
                let f = SocialChoiceFunction::named(rule, k, n).unwrap();
                let w =
                    gs_witness(&f).map_err(|e| format!("{rule} ({k},{n}) has no witness: {e}"))?;
                check(
                    w.profile[w.voter].prefers(w.outcome_after, w.outcome),
                    format!("{rule} ({k},{n}): witness not profitable"),
                )?;
            }
        }
        // top-subset dictators and pairwise-monotone rules never manipulate
        for k in [3u8, 4] {
            for n in [2u32, 3] {
                let top = SocialChoiceFunction::new(
                    k,
                    n,
                    Rule::TopH {
                        voter: 0,
                        set: (0..k).collect(),
                    },
                    "top",
                )
                .unwrap();
                let c = census(&top, 3).map_err(|e| e.to_string())?;
                check(
                    c.manipulable_fraction == 0.0,
                    format!("top dictator manipulable at ({k},{n})"),
                )?;
                let maj = Generator::Majority.build(n.max(3)).unwrap();
                if n >= 3 {
                    let two = SocialChoiceFunction::new(
                        k,
                        n,
                        Rule::PairwiseBoolean { a: 0, b: 1, f: maj },
                        "pair_maj",
                    )
                    .unwrap();
                    let c = census(&two, 3).map_err(|e| e.to_string())?;
                    check(
                        c.manipulable_fraction == 0.0,
                        format!("monotone two-valued rule manipulable at ({k},{n})"),
                    )?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_11_canonical_path_congestion() {
    criterion("11 path-congestion", Duration::from_secs(30), || {
        for k in [3u8, 4] {
            let rep = congestion_census(k, 1).map_err(|e| e.to_string())?;
            let bound = (k as u64).pow(2) * quantsoc_core::manip::factorial(k as usize) as u64 / 2;
            check(
                rep.max_congestion <= bound,
                format!("k = {k}: congestion {} over {bound}", rep.max_congestion),
            )?;
            let rep2 = congestion_census(k, 2).map_err(|e| e.to_string())?;
            check(
                rep2.order_preserved && rep2.ok,
                format!("k = {k}: variant-2 path property fails: {rep2:?}"),
            )?;
        }
        // spot audit of a variant-2 path at k = 4
        let from = Ranking::new(vec![2, 0, 3, 1]).unwrap();
        let to = Ranking::new(vec![0, 3, 2, 1]).unwrap();
        let path = canonical_path_above(&from, &to, 0, 1).map_err(|e| e.to_string())?;
        check(
            path.iter().all(|r| r.prefers(0, 1)),
            "intermediate ranking dropped a below b".into(),
        )
    });
}

#[test]
fn acceptance_12_isoperimetry() {
    criterion("12 isoperimetry", Duration::from_secs(10), || {
        use rand::seq::SliceRandom;
        let total = 216usize;
        for seed in 0..100u64 {
            let mut rng = quantsoc_core::rng::stream(12_000 + seed, 0);
            let size = rng.gen_range(1..=180);
            let mut idx: Vec<usize> = (0..total).collect();
            idx.shuffle(&mut rng);
            let mut set = vec![false; total];
            for &i in idx.iter().take(size) {
                set[i] = true;
            }
            let (boundary, mass, ok) =
                product_complete_graph_isoperimetry(6, 3, &set).map_err(|e| e.to_string())?;
            check(
                ok && boundary >= mass,
                format!("seed {seed}: |∂A| = {boundary} < |A| = {mass}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_13_goles_olivos() {
    criterion("13 goles-olivos", Duration::from_secs(30), || {
        for g_seed in 0..50u64 {
            let graph =
                OpinionGraph::random_regular(3, 100, 13_000 + g_seed).map_err(|e| e.to_string())?;
            let mut rng = quantsoc_core::rng::stream(14_000 + g_seed, 0);
            for _ in 0..10 {
                let init = graph.random_state(0.5, &mut rng);
                let trace = run_to_period(&graph, &init, 5_000).map_err(|e| e.to_string())?;
                check(trace.period <= 2, format!("period {}", trace.period))?;
                check(
                    trace.energies.windows(2).all(|w| w[1] <= w[0]),
                    "energy increased".into(),
                )?;
                // the exact identity L_t - L_{t-1} = -J_t is enforced inside
                // run_to_period; re-verify the bookkeeping here
                for t in 1..trace.energies.len() {
                    check(
                        trace.energies[t] - trace.energies[t - 1] == -trace.couplings[t - 1],
                        format!("energy identity broken at t = {t}"),
                    )?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_14_jury_and_neyman_pearson() {
    criterion("14 jury-monotonicity", Duration::from_secs(30), || {
        for (num, den) in [(11u64, 20u64), (3, 5), (3, 4)] {
            let ok = jury_strictly_increasing((num, den), 101).map_err(|e| e.to_string())?;
            check(ok, format!("p = {num}/{den} not strictly increasing"))?;
        }
        // Neyman–Pearson at p = 0.6: majority uniquely maximizes P[f = s]
        let p: f64 = 0.6;
        let score = |bits: u32| -> f64 {
            let mut total = 0.0;
            for x in 0..8u32 {
                let ones = x.count_ones() as i32;
                let plus = p.powi(ones) * (1.0 - p).powi(3 - ones);
                let minus = p.powi(3 - ones) * (1.0 - p).powi(ones);
                if bits >> x & 1 == 1 {
                    total += 0.5 * plus;
                } else {
                    total += 0.5 * minus;
                }
            }
            total
        };
        let maj_bits = {
            let m = Generator::Majority.build(3).unwrap();
            (0..8).fold(0u32, |acc, k| acc | (((m.at(k) == 1.0) as u32) << k))
        };
        let best = score(maj_bits);
        for bits in 0u32..256 {
            if bits == maj_bits {
                continue;
            }
            check(
                score(bits) < best - 1e-15,
                format!("{bits:08b} ties or beats majority"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_15_tribes_kkl() {
    criterion("15 tribes-kkl", Duration::from_secs(30), || {
        use num_rational::BigRational;
        // closed form 2^{1-r}(1 - 1/m)^{m-1} in exact rationals for r ≤ 4
        for r in 1..=4u32 {
            let m = 1u64 << r;
            let derived = tribes_influence_exact(r, m as u32);
            let closed = {
                let two = BigRational::from_integer(2.into());
                let one = BigRational::from_integer(1.into());
                let m_rat = BigRational::from_integer(m.into());
                let base = one.clone() - one.clone() / m_rat;
                let mut acc = two.pow(1 - r as i32);
                for _ in 0..(m - 1) {
                    acc *= base.clone();
                }
                acc
            };
            check(
                derived == closed,
                format!("r = {r}: structural {derived} vs closed {closed}"),
            )?;
        }
        // dense pivot count agrees for r ≤ 3 (f64-exact dyadics)
        for r in [2u32, 3] {
            let n = r * (1 << r);
            let f = Generator::Tribes { width: r }.build(n).unwrap();
            let direct = influence(&f, 0).unwrap();
            let mf = (1u64 << r) as f64;
            let closed = 2f64.powi(1 - r as i32) * (1.0 - 1.0 / mf).powi((1 << r) - 1);
            check(
                direct == closed,
                format!("r = {r}: dense {direct} vs closed {closed}"),
            )?;
        }
        // KKL band across the zoo (all transitive-symmetric, Var ≥ 1/2)
        let zoo: Vec<(&str, BooleanFunction)> = vec![
            ("majority9", Generator::Majority.build(9).unwrap()),
            ("majority15", Generator::Majority.build(15).unwrap()),
            (
                "tribes_r2",
                Generator::Tribes { width: 2 }.build(8).unwrap(),
            ),
            ("parity8", Generator::Parity.build(8).unwrap()),
            ("ec9", Generator::ElectoralCollege.build(9).unwrap()),
            (
                "rm3h2",
                Generator::RecursiveMajority { base: 3 }.build(9).unwrap(),
            ),
        ];
        for (name, f) in zoo {
            let d = kkl_diagnostic(&f);
            check(
                d.variance >= 0.5,
                format!("{name}: variance {}", d.variance),
            )?;
            check(
                d.ratio >= 0.1,
                format!("{name}: KKL ratio {} below 0.1", d.ratio),
            )?;
        }
        // tribes ratios stay inside the [0.1, 10] band
        for r in [2u32, 3] {
            let f = Generator::Tribes { width: r }.build(r * (1 << r)).unwrap();
            let d = kkl_diagnostic(&f);
            check(
                (0.1..=10.0).contains(&d.ratio),
                format!("tribes r = {r}: ratio {}", d.ratio),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_16_fkn_recovery() {
    criterion("16 fkn-recovery", Duration::from_secs(10), || {
        let d = Generator::Dictator(0).build(8).unwrap();
        for (flips, seed) in [(1usize, 1u64), (4, 2), (16, 3)] {
            let eps = flips as f64 / 256.0;
            let corrupted = corrupt(&d, flips, 16_000 + seed).unwrap();
            let rep = fkn_analysis(&corrupted).unwrap();
            check(
                rep.coord == 0 && rep.sign == 1.0,
                format!(
                    "ε = {eps}: recovered wrong dictator {:?}",
                    (rep.coord, rep.sign)
                ),
            )?;
            check(
                rep.distance == eps,
                format!("ε = {eps}: distance {} not exactly ε", rep.distance),
            )?;
            check(
                rep.level1_weight >= 1.0 - 8.0 * eps,
                format!("ε = {eps}: W₁ = {} below 1 - 8ε", rep.level1_weight),
            )?;
        }
        Ok(())
    });
}

#[test]
fn acceptance_17_effects_chapter() {
    criterion("17 effects", Duration::from_secs(10), || {
        // all voters identical: unit effects, zero pivot influences
        let maj = Generator::Majority.build(3).unwrap();
        let identical = FiniteDistribution::perfectly_correlated(3, 0.5).unwrap();
        let rep = effects(&maj, &identical).map_err(|e| e.to_string())?;
        for (k, e) in rep.effects.iter().enumerate() {
            check(
                (e.unwrap_or(f64::NAN) - 1.0).abs() < 1e-12,
                format!("effect of voter {k} is {e:?}, want 1"),
            )?;
            let pivot = pivot_influence(&maj, &identical, k).unwrap();
            check(
                pivot == 0.0,
                format!("pivot influence of voter {k} is {pivot}"),
            )?;
        }
        check(
            rep.covariance_identity_ok,
            "covariance identity failed".into(),
        )?;

        // the aggregation bound on 20 constructed measures
        let f = Generator::Majority.build(5).unwrap();
        let weights = [1.0f64; 5];
        for seed in 0..20u64 {
            let mu = random_biased_measure(5, 17_000 + seed);
            let p = (0..5).map(|i| mu.marginal(i)).sum::<f64>() / 5.0;
            check(p > 0.5, format!("seed {seed}: mean marginal {p} ≤ 1/2"))?;
            let rep = effects(&f, &mu).map_err(|e| e.to_string())?;
            let effect_sum: f64 = (0..5)
                .map(|i| {
                    let pi = mu.marginal(i);
                    pi * (1.0 - pi) * rep.effects[i].unwrap_or(0.0)
                })
                .sum();
            let delta = (effect_sum / (p * (1.0 - p) * 5.0)).max(0.0) + 1e-12;
            let out = weighted_majority_bound_check(&weights, &f, &mu, p, 0.5, delta)
                .map_err(|e| format!("seed {seed}: {e}"))?;
            check(
                out.mu_f >= out.bound - 1e-12,
                format!("seed {seed}: μ[f] = {} < bound {}", out.mu_f, out.bound),
            )?;
        }
        Ok(())
    });
}

/// A mixture of two positively biased product measures — correlated, with
/// every marginal above 1/2.
fn random_biased_measure(n: u32, seed: u64) -> FiniteDistribution {
    let mut rng = quantsoc_core::rng::stream(seed, 0);
    let hi: Vec<f64> = (0..n).map(|_| 0.75 + 0.2 * rng.gen::<f64>()).collect();
    let lo: Vec<f64> = (0..n).map(|_| 0.55 + 0.15 * rng.gen::<f64>()).collect();
    let lambda = 0.3 + 0.4 * rng.gen::<f64>();
    let support: Vec<u32> = (0..1u32 << n).collect();
    let weights: Vec<f64> = support
        .iter()
        .map(|&x| {
            let w = |ps: &[f64]| -> f64 {
                (0..n)
                    .map(|i| {
                        if x >> i & 1 == 1 {
                            ps[i as usize]
                        } else {
                            1.0 - ps[i as usize]
                        }
                    })
                    .product()
            };
            lambda * w(&hi) + (1.0 - lambda) * w(&lo)
        })
        .collect();
    FiniteDistribution::new(n, support, weights).unwrap()
}

// ---------------------------------------------------------------------------
// Property-style invariants promoted by the modules (not numbered criteria).

#[test]
fn invariant_mist_desk_margin() {
    // majority stability sits above κ(ρ) and within the calibrated desk
    // margin for n ≥ 9 (measured maximum excess 0.0579 at n = 9, ρ = 0.8)
    for rho in [0.2, 0.5, 0.8] {
        for n in [9u32, 11, 13, 15] {
            let m = Generator::Majority.build(n).unwrap();
            let s = noisy_inner_product(&m, &m, rho).unwrap();
            let kappa = sheppard(rho);
            assert!(s >= kappa - 1e-12, "n={n} ρ={rho}: s={s} below κ={kappa}");
            assert!(
                s <= kappa + 0.06,
                "n={n} ρ={rho}: excess {} above the desk margin",
                s - kappa
            );
        }
    }
}

#[test]
fn invariant_poincare_across_the_zoo() {
    for f in [
        Generator::Majority.build(9).unwrap(),
        Generator::Tribes { width: 2 }.build(8).unwrap(),
        Generator::Parity.build(6).unwrap(),
        Generator::Dictator(3).build(6).unwrap(),
    ] {
        let total: f64 = quantsoc_core::boolean::influences(&f).iter().sum();
        assert!(total + 1e-12 >= f.variance());
    }
}
