use std::path::Path;
use std::process::{Command, Output};

fn quantsoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantsoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Strips the volatile fields so reports can be compared bytewise.
fn strip_volatile(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("\"runtime_ms\"") && !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn paradox_subcommand_reports_one_eighteenth() {
    let out = quantsoc(&[
        "condorcet",
        "paradox",
        "--f",
        "maj",
        "--n",
        "3",
        "--mode",
        "exhaustive",
    ]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let p = body["results"]["p_paradox"].as_f64().unwrap();
    assert!((p - 1.0 / 18.0).abs() < 1e-12);
}

#[test]
fn identical_runs_are_byte_identical_modulo_timestamps() {
    let args = [
        "condorcet",
        "paradox",
        "--f",
        "maj",
        "--n",
        "5",
        "--mode",
        "mc",
        "--samples",
        "50000",
        "--seed",
        "42",
    ];
    let a = quantsoc(&args);
    let b = quantsoc(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip_volatile(&stdout(&a)), strip_volatile(&stdout(&b)));
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        let out = quantsoc(&[
            "--threads",
            threads,
            "gaussian",
            "tournament",
            "--k",
            "5",
            "--samples",
            "100000",
            "--seed",
            "7",
        ]);
        assert!(out.status.success());
        strip_volatile(&stdout(&out))
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn manifest_runs_reproduce_the_direct_invocation() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("exp.toml");
    std::fs::write(
        &manifest,
        "subcommand = \"manip census\"\n[params]\nrule = \"borda\"\nk = 3\nn = 2\nrmax = 3\n",
    )
    .unwrap();
    let via_manifest = quantsoc(&["run", "--manifest", manifest.to_str().unwrap()]);
    let direct = quantsoc(&[
        "manip", "census", "--rule", "borda", "--k", "3", "--n", "2", "--rmax", "3",
    ]);
    assert!(via_manifest.status.success());
    assert_eq!(
        strip_volatile(&stdout(&via_manifest)),
        strip_volatile(&stdout(&direct))
    );
}

#[test]
fn bad_manifest_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("bad.toml");
    std::fs::write(
        &manifest,
        "subcommand = \"manip census\"\n[params]\nbogus = 1\n",
    )
    .unwrap();
    let out = quantsoc(&["run", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn failed_theory_gate_exits_two() {
    // a dictator is not (1, 0.5)-resilient, so the resilience verdict fails
    let out = quantsoc(&[
        "analyze",
        "resilience",
        "--function",
        "dictator:i=1,n=4",
        "--r",
        "1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        body["verdicts"]["resilient"],
        serde_json::Value::Bool(false)
    );
}

#[test]
fn usage_errors_exit_one() {
    let out = quantsoc(&[
        "condorcet",
        "paradox",
        "--f",
        "maj",
        "--n",
        "3",
        "--mode",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_emitters_produce_tables() {
    let out = quantsoc(&["--csv", "gaussian", "jgrid", "--rho", "0.5", "--steps", "3"]);
    assert!(out.status.success());
    let table = stdout(&out);
    assert!(table.starts_with("x,y,rho,value"));
    assert_eq!(table.trim().lines().count(), 1 + 9);

    let out = quantsoc(&[
        "--csv",
        "dynamics",
        "run",
        "--graph",
        "complete:n=4",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("t,L_t,J_t,hamming_to_final"));
}

#[test]
fn bfn_files_round_trip_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("maj5.bfn");
    write_majority5(&path);
    let out = quantsoc(&["analyze", "influences", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let infl = body["results"]["influences"].as_array().unwrap();
    assert_eq!(infl.len(), 5);
    // every coordinate of majority_5 has influence C(4,2)/2^4 = 3/8
    for v in infl {
        assert!((v.as_f64().unwrap() - 0.375).abs() < 1e-12);
    }
}

fn write_majority5(path: &Path) {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(b"BFN1");
    bytes.extend_from_slice(&5u32.to_le_bytes());
    for idx in 0u32..32 {
        let v: f64 = if idx.count_ones() >= 3 { 1.0 } else { -1.0 };
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn stability_subcommand_tracks_the_limit() {
    let out = quantsoc(&[
        "stability",
        "--family",
        "majority",
        "--rho",
        "0.5",
        "--sizes",
        "1,3,5,7,9",
    ]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((body["results"]["limit"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(body["verdicts"]["monotone_toward_limit"], true);
}

#[test]
fn output_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = quantsoc(&[
        "--output",
        path.to_str().unwrap(),
        "gaussian",
        "sheppard",
        "--rho",
        "0.5",
    ]);
    assert!(out.status.success());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((body["results"]["kappa"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}
