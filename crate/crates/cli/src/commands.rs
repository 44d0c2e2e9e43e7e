use crate::report::Report;
use clap::{Args, Parser, Subcommand};
use quantsoc_core::aggregate::{jury_curve, jury_strictly_increasing, kkl_diagnostic};
use quantsoc_core::boolean::{
    self, build_named, fkn_analysis, influences, is_resilient, parse_generator, stability_curve,
    total_influence,
};
use quantsoc_core::condorcet::{
    self, classify_arrow, constitution_check, paradox_probability, ArrowVerdict, Constitution,
    ParadoxMode,
};
use quantsoc_core::dynamics::{retention_experiment, run_to_period, OpinionGraph};
use quantsoc_core::gaussian::{
    self, borell_mc_check, guilbaud_constant, j_rho, majority_predictability, sheppard,
    tournament_mc, GaussianTestFn, QuadrantParams,
};
use quantsoc_core::manip::{
    census, dist_to_nonmanip, gs_witness, quantitative_gs_gate, SocialChoiceFunction,
};
use quantsoc_core::Error;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(
    name = "quantsoc",
    version,
    about = "quantitative social choice toolkit"
)]
pub struct Cli {
    /// Worker threads (default: QUANTSOC_THREADS or all cores). Results are
    /// independent of this setting.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Emit CSV instead of JSON where the subcommand has a tabular payload.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boolean-function analyses on a named generator or BFN1/JSON file.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Noise-stability curve of a generator family.
    Stability(StabilityArgs),
    /// Condorcet paradox probabilities and Arrow classification.
    #[command(subcommand)]
    Condorcet(CondorcetCmd),
    /// Gaussian special functions and Monte-Carlo checks.
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Manipulation censuses over ranking profiles.
    #[command(subcommand)]
    Manip(ManipCmd),
    /// Majority dynamics on odd-degree graphs.
    #[command(subcommand)]
    Dynamics(DynamicsCmd),
    /// Jury curves, KKL diagnostics and tree-broadcast experiments.
    #[command(subcommand)]
    Aggregate(AggregateCmd),
    /// Re-run a TOML manifest through the same argument schema.
    Run(RunArgs),
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Coordinate influences and the total influence.
    Influences(FunctionArgs),
    /// Full Walsh–Hadamard coefficient table (CSV-able).
    Wht(FunctionArgs),
    /// Exhaustive (r, α)-resilience with the worst witness.
    Resilience(ResilienceArgs),
    /// Level-1 weight and nearest signed dictator.
    Fkn(FunctionArgs),
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Generator spec such as `majority:n=9` or `tribes:r=2,m=4`.
    #[arg(long)]
    pub function: Option<String>,
    /// Arity for specs that do not pin it.
    #[arg(long)]
    pub n: Option<u32>,
    /// Load the function from a BFN1 binary file instead.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResilienceArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Family name: majority | electoral_college | recursive_majority |
    /// tribes | parity | dictator.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rho: f64,
    /// Comma-separated sizes, e.g. `1,3,5,7`.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CondorcetCmd {
    /// P[f(x) = g(y) = h(z)] over the uniform ranking source.
    Paradox(ParadoxArgs),
    /// Zero-paradox taxonomy or distances to the certificate family.
    Classify(ClassifyArgs),
    /// Transitivity probability of a uniform-rule constitution.
    Constitution(ConstitutionArgs),
}

#[derive(Debug, Args)]
pub struct ParadoxArgs {
    /// Aggregator spec for all three coordinates (e.g. `maj`).
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n: u32,
    /// fourier | exhaustive | mc
    #[arg(long, default_value = "fourier")]
    pub mode: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct ConstitutionArgs {
    /// Pairwise aggregator used for every pair.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub k: u8,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value = "exhaustive")]
    pub mode: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum GaussianCmd {
    /// The limiting three-alternative paradox probability.
    Guilbaud,
    /// κ(ρ) = 1 - 2·arccos(ρ)/π.
    Sheppard(RhoArgs),
    /// Quadrant probability J_ρ(x, y).
    Jrho(JrhoArgs),
    /// Majority predictability (2/π)·arcsin √ρ and the dictator crossover.
    Predictability(RhoArgs),
    /// Gaussian majority tournament frequencies.
    Tournament(TournamentArgs),
    /// CSV grid of J_ρ values (x, y, rho, value).
    Jgrid(JgridArgs),
    /// Functional noise-stability Monte-Carlo check.
    Borell(BorellArgs),
    /// Reverse-hypercontractive joint-mass floor for two sets.
    Revhyp(BorellArgs),
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[arg(long)]
    pub rho: f64,
}

#[derive(Debug, Args)]
pub struct JrhoArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub y: f64,
    #[arg(long)]
    pub rho: f64,
}

#[derive(Debug, Args)]
pub struct TournamentArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct JgridArgs {
    #[arg(long)]
    pub rho: f64,
    #[arg(long, default_value_t = 19)]
    pub steps: u32,
}

#[derive(Debug, Args)]
pub struct BorellArgs {
    /// Test function spec, e.g. `half_space:mass=0.5`.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub rho: f64,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ManipCmd {
    /// Manipulation-point census with the M_r ladder.
    Census(ManipArgs),
    /// A concrete manipulation point for a non-dictatorial rule.
    Witness(RuleArgs),
    /// Distances to the nonmanipulable family and the quantitative gate.
    Distance(RuleArgs),
}

#[derive(Debug, Args)]
pub struct ManipArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, default_value_t = 4)]
    pub rmax: usize,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    /// plurality | borda | dictator
    #[arg(long)]
    pub rule: String,
    #[arg(long)]
    pub k: u8,
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum DynamicsCmd {
    /// Run to periodicity; CSV trace columns t, L_t, J_t, hamming_to_final.
    Run(DynamicsRunArgs),
    /// Estimate of P[maj(X_∞) = +] under p-biased initial opinions.
    Retention(RetentionArgs),
}

#[derive(Debug, Args)]
pub struct DynamicsRunArgs {
    /// Graph spec (`random_regular:d=3,n=100,seed=7`, `torus_diag:w=5,h=5`,
    /// ...) or an edge-list file path prefixed `file:`.
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 0.5)]
    pub init_p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub tmax: usize,
}

#[derive(Debug, Args)]
pub struct RetentionArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 2_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum AggregateCmd {
    /// Exact majority success probabilities over odd jury sizes.
    Jury(JuryArgs),
    /// Minimal-influence ratio diagnostic.
    Kkl(FunctionArgs),
    /// Broadcast-tree experiment.
    TreeIsing(TreeIsingArgs),
    /// Coordinate effects of a function under a JSON-encoded measure.
    Effects(EffectsArgs),
}

#[derive(Debug, Args)]
pub struct EffectsArgs {
    /// Function spec, e.g. `majority:n=3`.
    #[arg(long)]
    pub function: String,
    /// JSON file holding {"support": ["0110", ...], "weights": [...]}.
    #[arg(long)]
    pub distribution: PathBuf,
}

#[derive(Debug, Args)]
pub struct JuryArgs {
    /// Signal quality as a fraction, e.g. `--p-num 3 --p-den 5`.
    #[arg(long)]
    pub p_num: u64,
    #[arg(long)]
    pub p_den: u64,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct TreeIsingArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML manifest with `subcommand = "..."` and a `[params]` table.
    #[arg(long)]
    pub manifest: PathBuf,
}

pub fn run(cli: Cli) -> i32 {
    let threads = cli.threads.or_else(|| {
        std::env::var("QUANTSOC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        // ignore failure when a pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let started = Instant::now();
    let mut report = Report::new();
    let outcome = dispatch(&cli.command, &mut report, cli.csv);
    report.finalize(started);
    match outcome {
        Ok(csv) => {
            let payload = match (cli.csv, csv) {
                (true, Some(table)) => table,
                _ => report.to_json(),
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => println!("{payload}"),
            }
            if report.all_ok() {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GateViolated(_) => 2,
                _ => 1,
            }
        }
    }
}

fn load_function(args: &FunctionArgs) -> Result<quantsoc_core::BooleanFunction, Error> {
    if let Some(path) = &args.file {
        let bytes = std::fs::read(path)?;
        return boolean::read_bfn(&bytes[..]);
    }
    let spec = args
        .function
        .as_deref()
        .ok_or_else(|| Error::Precondition("need --function or --file".into()))?;
    build_named(spec, args.n)
}

fn dispatch(cmd: &Command, report: &mut Report, want_csv: bool) -> Result<Option<String>, Error> {
    match cmd {
        Command::Analyze(a) => analyze(a, report, want_csv),
        Command::Stability(a) => {
            let (gen, _) = parse_generator(&a.family)?;
            let curve = stability_curve(gen, a.rho, &a.sizes)?;
            report.echo("family", a.family.clone());
            report.echo("rho", a.rho);
            report.echo("sizes", serde_json::to_value(&a.sizes)?);
            report.result("stability", serde_json::to_value(&curve.stability)?);
            if let Some(limit) = curve.limit {
                report.result("limit", limit);
            }
            report.verdict("monotone_toward_limit", curve.monotone_toward_limit);
            if want_csv {
                let mut table = String::from("n,stability\n");
                for (n, s) in curve.sizes.iter().zip(&curve.stability) {
                    table.push_str(&format!("{n},{s}\n"));
                }
                return Ok(Some(table));
            }
            Ok(None)
        }
        Command::Condorcet(c) => condorcet_cmd(c, report),
        Command::Gaussian(g) => gaussian_cmd(g, report, want_csv),
        Command::Manip(m) => manip_cmd(m, report),
        Command::Dynamics(d) => dynamics_cmd(d, report, want_csv),
        Command::Aggregate(a) => aggregate_cmd(a, report),
        Command::Run(r) => {
            let (inner, csv) = manifest_to_cli(&r.manifest)?;
            dispatch(&inner, report, csv)
        }
    }
}

fn analyze(cmd: &AnalyzeCmd, report: &mut Report, want_csv: bool) -> Result<Option<String>, Error> {
    match cmd {
        AnalyzeCmd::Influences(args) => {
            let f = load_function(args)?;
            let infl = influences(&f);
            report.echo("n", f.n());
            report.result("influences", serde_json::to_value(&infl)?);
            report.result("total_influence", total_influence(&f));
            report.result("variance", f.variance());
            Ok(None)
        }
        AnalyzeCmd::Wht(args) => {
            let f = load_function(args)?;
            let fe = f.wht();
            report.echo("n", f.n());
            report.result("parseval_sum", fe.parseval_sum());
            if want_csv {
                let mut table = String::from("subset,coefficient\n");
                for (s, c) in fe.coeffs().iter().enumerate() {
                    table.push_str(&format!("{s},{c}\n"));
                }
                return Ok(Some(table));
            }
            report.result("coefficients", serde_json::to_value(fe.coeffs())?);
            Ok(None)
        }
        AnalyzeCmd::Resilience(args) => {
            let f = load_function(&args.function)?;
            let rep = is_resilient(&f, args.r, args.alpha, false)?;
            report.echo("r", args.r as u64);
            report.echo("alpha", args.alpha);
            report.result("worst_subset", rep.worst.subset);
            report.result("worst_assignment", rep.worst.assignment);
            report.result("worst_deviation", rep.worst.deviation);
            report.verdict("resilient", rep.resilient);
            Ok(None)
        }
        AnalyzeCmd::Fkn(args) => {
            let f = load_function(args)?;
            let rep = fkn_analysis(&f)?;
            report.result("level1_weight", rep.level1_weight);
            report.result("nearest_dictator_coord", rep.coord as u64 + 1);
            report.result("nearest_dictator_sign", rep.sign);
            report.result("distance", rep.distance);
            if let Some(ok) = rep.bound_ok {
                report.verdict("fkn_bound", ok);
            }
            Ok(None)
        }
    }
}

fn condorcet_cmd(cmd: &CondorcetCmd, report: &mut Report) -> Result<Option<String>, Error> {
    match cmd {
        CondorcetCmd::Paradox(a) => {
            let f = build_named(&a.f, Some(a.n))?;
            let mode = match a.mode.as_str() {
                "fourier" => ParadoxMode::Fourier,
                "exhaustive" => ParadoxMode::Exhaustive,
                "mc" => ParadoxMode::MonteCarlo {
                    samples: a.samples,
                    seed: a.seed,
                },
                other => return Err(Error::Precondition(format!("unknown mode `{other}`"))),
            };
            let p = paradox_probability(&f, &f, &f, mode)?;
            report.echo("f", a.f.clone());
            report.echo("n", a.n);
            report.echo("mode", a.mode.clone());
            report.result("p_paradox", p);
            if let ParadoxMode::MonteCarlo { samples, .. } = mode {
                report.std_error("p_paradox", (p * (1.0 - p) / samples as f64).sqrt());
            }
            Ok(None)
        }
        CondorcetCmd::Classify(a) => {
            let f = build_named(&a.f, Some(a.n))?;
            let g = build_named(&a.g, Some(a.n))?;
            let h = build_named(&a.h, Some(a.n))?;
            let cls = classify_arrow(&f, &g, &h)?;
            report.echo("n", a.n);
            report.result("p_paradox", cls.paradox_probability);
            report.result(
                "verdict",
                match cls.verdict {
                    ArrowVerdict::DictatorTriple { coord, sign } => {
                        format!("dictator_triple:voter={},sign={}", coord + 1, sign)
                    }
                    ArrowVerdict::OppositeConstantsPair { pair, values } => format!(
                        "opposite_constants:slots=({},{}),values=({},{})",
                        pair.0, pair.1, values.0, values.1
                    ),
                    ArrowVerdict::Paradoxical => "paradoxical".to_string(),
                },
            );
            report.result("distances", serde_json::to_value(cls.distances.to_vec())?);
            Ok(None)
        }
        CondorcetCmd::Constitution(a) => {
            let f = build_named(&a.f, Some(a.n))?;
            let c = Constitution::uniform(a.k, &f)?;
            let mode = match a.mode.as_str() {
                "exhaustive" => condorcet::ConstitutionMode::Exhaustive,
                "mc" => condorcet::ConstitutionMode::MonteCarlo {
                    samples: a.samples,
                    seed: a.seed,
                },
                other => return Err(Error::Precondition(format!("unknown mode `{other}`"))),
            };
            let rep = constitution_check(&c, mode)?;
            report.echo("k", a.k);
            report.echo("n", a.n);
            report.result("p_nontransitive", rep.p_nontransitive);
            if let Some(se) = rep.std_error {
                report.std_error("p_nontransitive", se);
            }
            report.result(
                "partition",
                rep.partition
                    .map(|blocks| format!("{blocks:?}"))
                    .unwrap_or_else(|| "none".into()),
            );
            Ok(None)
        }
    }
}

fn gaussian_cmd(
    cmd: &GaussianCmd,
    report: &mut Report,
    want_csv: bool,
) -> Result<Option<String>, Error> {
    match cmd {
        GaussianCmd::Guilbaud => {
            report.result("guilbaud", guilbaud_constant());
            Ok(None)
        }
        GaussianCmd::Sheppard(a) => {
            report.echo("rho", a.rho);
            report.result("kappa", sheppard(a.rho));
            Ok(None)
        }
        GaussianCmd::Jrho(a) => {
            let params = QuadrantParams::new(a.x, a.y, a.rho)?;
            report.echo("x", a.x);
            report.echo("y", a.y);
            report.echo("rho", a.rho);
            report.result("j", j_rho(params));
            Ok(None)
        }
        GaussianCmd::Predictability(a) => {
            report.echo("rho", a.rho);
            report.result("predictability", majority_predictability(a.rho));
            report.result("crossover", gaussian::predictability_crossover());
            Ok(None)
        }
        GaussianCmd::Tournament(a) => {
            let rep = tournament_mc(a.k, a.samples, a.seed)?;
            report.echo("k", a.k as u64);
            report.echo("samples", a.samples);
            report.echo("seed", a.seed);
            report.result("p_unique_max", rep.p_unique_max);
            report.result("p_acyclic", rep.p_acyclic);
            report.result("shared_edge_cov", rep.shared_edge_cov);
            report.std_error("p_unique_max", rep.se_unique_max);
            report.std_error("p_acyclic", rep.se_acyclic);
            Ok(None)
        }
        GaussianCmd::Jgrid(a) => {
            let mut table = String::from("x,y,rho,value\n");
            for i in 1..=a.steps {
                for j in 1..=a.steps {
                    let x = i as f64 / (a.steps + 1) as f64;
                    let y = j as f64 / (a.steps + 1) as f64;
                    let v = j_rho(QuadrantParams::new(x, y, a.rho)?);
                    table.push_str(&format!("{x},{y},{},{v}\n", a.rho));
                }
            }
            report.echo("rho", a.rho);
            report.result("rows", (a.steps * a.steps) as u64);
            if want_csv {
                Ok(Some(table))
            } else {
                report.result("csv", table);
                Ok(None)
            }
        }
        GaussianCmd::Revhyp(a) => {
            let b1 = GaussianTestFn::parse(&a.f)?;
            let b2 = GaussianTestFn::parse(&a.g)?;
            let rep =
                gaussian::gaussian_reverse_hyp_check(b1, b2, a.rho, a.dim, a.samples, a.seed)?;
            report.echo("b1", a.f.clone());
            report.echo("b2", a.g.clone());
            report.echo("rho", a.rho);
            report.echo("seed", a.seed);
            report.result("estimate", rep.p_joint);
            report.result("bound", rep.bound);
            report.std_error("estimate", rep.se);
            report.verdict("joint_mass_floor", rep.ok);
            Ok(None)
        }
        GaussianCmd::Borell(a) => {
            let f = GaussianTestFn::parse(&a.f)?;
            let g = GaussianTestFn::parse(&a.g)?;
            let rep = borell_mc_check(f, g, a.rho, a.dim, a.samples, a.seed)?;
            report.echo("f", a.f.clone());
            report.echo("g", a.g.clone());
            report.echo("rho", a.rho);
            report.echo("seed", a.seed);
            report.result("estimate", rep.lhs);
            report.result("inner_product", rep.inner);
            report.result("bound", rep.rhs);
            report.result("margin", rep.margin);
            report.std_error("estimate", rep.lhs_se);
            report.std_error("inner_product", rep.inner_se);
            report.verdict("noise_stability_bound", rep.ok);
            if let Some(eq) = rep.equality_case_ok {
                report.verdict("half_space_equality", eq);
            }
            Ok(None)
        }
    }
}

fn manip_cmd(cmd: &ManipCmd, report: &mut Report) -> Result<Option<String>, Error> {
    match cmd {
        ManipCmd::Census(a) => {
            let f = SocialChoiceFunction::named(&a.rule.rule, a.rule.k, a.rule.n)?;
            let c = census(&f, a.rmax)?;
            report.echo("rule", a.rule.rule.clone());
            report.echo("k", a.rule.k);
            report.echo("n", a.rule.n);
            report.echo("rmax", a.rmax as u64);
            report.result("profiles", c.profiles);
            report.result("manipulable_fraction", c.manipulable_fraction);
            for (r, frac) in &c.r_manipulable_fraction {
                report.result(&format!("m{r}_fraction"), *frac);
            }
            Ok(None)
        }
        ManipCmd::Witness(a) => {
            let f = SocialChoiceFunction::named(&a.rule, a.k, a.n)?;
            let w = gs_witness(&f)?;
            report.echo("rule", a.rule.clone());
            report.result("voter", w.voter as u64 + 1);
            report.result("profile", format!("{:?}", w.profile));
            report.result("misreport", format!("{:?}", w.misreport));
            report.result("outcome", w.outcome);
            report.result("outcome_after", w.outcome_after);
            report.result("block_size", w.r as u64);
            Ok(None)
        }
        ManipCmd::Distance(a) => {
            let f = SocialChoiceFunction::named(&a.rule, a.k, a.n)?;
            let d = dist_to_nonmanip(&f)?;
            let gate = quantitative_gs_gate(&f)?;
            report.echo("rule", a.rule.clone());
            report.result("dist_top_h", d.dist_top_h);
            report.result("two_valued_lower", d.two_valued_lower);
            report.result("two_valued_upper", d.two_valued_upper);
            report.result("combined_lower", d.combined_lower);
            report.result("combined_upper", d.combined_upper);
            report.result("m4_fraction", gate.m4_fraction);
            report.result("gate_bound", gate.bound);
            report.result("gate_vacuous", gate.vacuous);
            report.verdict("quantitative_gate", gate.ok);
            Ok(None)
        }
    }
}

fn load_graph(spec: &str) -> Result<OpinionGraph, Error> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        OpinionGraph::from_edge_list(&text)
    } else {
        OpinionGraph::generate(spec)
    }
}

fn dynamics_cmd(
    cmd: &DynamicsCmd,
    report: &mut Report,
    want_csv: bool,
) -> Result<Option<String>, Error> {
    match cmd {
        DynamicsCmd::Run(a) => {
            let graph = load_graph(&a.graph)?;
            let mut rng = quantsoc_core::rng::stream(a.seed, 0);
            let init = graph.random_state(a.init_p, &mut rng);
            let trace = run_to_period(&graph, &init, a.tmax)?;
            report.echo("graph", a.graph.clone());
            report.echo("seed", a.seed);
            report.result("period", trace.period as u64);
            report.result("entry_time", trace.entry_time as u64);
            report.result("steps", trace.energies.len() as u64);
            report.verdict(
                "energy_nonincreasing",
                trace.energies.windows(2).all(|w| w[1] <= w[0]),
            );
            let final_state = trace.states.last().expect("nonempty trace");
            let mut table = String::from("t,L_t,J_t,hamming_to_final\n");
            for (t, state) in trace.states.iter().enumerate() {
                let l = trace
                    .energies
                    .get(t)
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                let j = if t >= 1 {
                    trace
                        .couplings
                        .get(t - 1)
                        .map(|v| v.to_string())
                        .unwrap_or_default()
                } else {
                    String::new()
                };
                let hamming = state
                    .iter()
                    .zip(final_state)
                    .filter(|(a, b)| a != b)
                    .count();
                table.push_str(&format!("{t},{l},{j},{hamming}\n"));
            }
            if want_csv {
                return Ok(Some(table));
            }
            report.result("csv", table);
            Ok(None)
        }
        DynamicsCmd::Retention(a) => {
            let graph = load_graph(&a.graph)?;
            let rep = retention_experiment(&graph, a.p, a.samples, a.seed)?;
            report.echo("graph", a.graph.clone());
            report.echo("p", a.p);
            report.echo("seed", a.seed);
            report.result("estimate", rep.estimate);
            report.std_error("estimate", rep.std_error);
            Ok(None)
        }
    }
}

fn aggregate_cmd(cmd: &AggregateCmd, report: &mut Report) -> Result<Option<String>, Error> {
    match cmd {
        AggregateCmd::Jury(a) => {
            let values = jury_curve((a.p_num, a.p_den), &a.sizes)?;
            report.echo("p", format!("{}/{}", a.p_num, a.p_den));
            report.result("sizes", serde_json::to_value(&a.sizes)?);
            report.result("probabilities", serde_json::to_value(&values)?);
            let max = a.sizes.iter().copied().max().unwrap_or(1);
            report.verdict(
                "strictly_increasing",
                jury_strictly_increasing((a.p_num, a.p_den), max)?,
            );
            Ok(None)
        }
        AggregateCmd::Kkl(args) => {
            let f = load_function(args)?;
            let d = kkl_diagnostic(&f);
            report.result("min_influence", d.min_influence);
            report.result("variance", d.variance);
            report.result("ratio", d.ratio);
            Ok(None)
        }
        AggregateCmd::Effects(a) => {
            let text = std::fs::read_to_string(&a.distribution)?;
            let mu: quantsoc_core::aggregate::FiniteDistribution = serde_json::from_str(&text)?;
            let f = build_named(&a.function, Some(mu.n))?;
            let rep = quantsoc_core::aggregate::effects(&f, &mu)?;
            report.echo("function", a.function.clone());
            let rendered: Vec<serde_json::Value> = rep
                .effects
                .iter()
                .map(|e| match e {
                    Some(v) => serde_json::json!(v),
                    None => serde_json::Value::String("undefined".into()),
                })
                .collect();
            report.result("effects", serde_json::Value::Array(rendered));
            report.verdict("covariance_identity", rep.covariance_identity_ok);
            Ok(None)
        }
        AggregateCmd::TreeIsing(a) => {
            let spec = quantsoc_core::aggregate::TreeIsingSpec::new(a.r, a.eps, a.delta)?;
            let rep = quantsoc_core::aggregate::tree_ising_experiment(spec, a.samples, a.seed)?;
            report.echo("r", a.r);
            report.echo("eps", a.eps);
            report.echo("delta", a.delta);
            report.echo("seed", a.seed);
            report.result("mean", rep.mean);
            report.result("mean_bound", rep.mean_bound);
            report.result("effect", rep.effect);
            report.result("effect_bound", rep.effect_bound);
            report.std_error("mean", rep.mean_se);
            report.std_error("effect", rep.effect_se);
            report.verdict("mean_bound_ok", rep.mean_ok);
            report.verdict("effect_bound_ok", rep.effect_ok);
            Ok(None)
        }
    }
}

/// Expands a TOML manifest into the regular argument schema and re-parses
/// it, so manifests and the command line share one validator.
fn manifest_to_cli(path: &std::path::Path) -> Result<(Command, bool), Error> {
    let text = std::fs::read_to_string(path)?;
    let value: toml::Value = text
        .parse()
        .map_err(|e| Error::Malformed(format!("manifest: {e}")))?;
    let sub = value
        .get("subcommand")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Malformed("manifest needs `subcommand`".into()))?;
    let mut argv: Vec<String> = vec!["quantsoc".into()];
    argv.extend(sub.split_whitespace().map(String::from));
    if let Some(params) = value.get("params").and_then(|v| v.as_table()) {
        for (key, val) in params {
            argv.push(format!("--{key}"));
            let rendered = match val {
                toml::Value::String(s) => s.clone(),
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Boolean(b) => b.to_string(),
                other => {
                    return Err(Error::Malformed(format!(
                        "unsupported manifest value for {key}: {other}"
                    )))
                }
            };
            argv.push(rendered);
        }
    }
    let csv = value.get("csv").and_then(|v| v.as_bool()).unwrap_or(false);
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| Error::Malformed(format!("manifest arguments: {e}")))?;
    Ok((cli.command, csv))
}
