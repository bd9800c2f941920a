//! End-to-end tests of the command-line surface: exit codes, file outputs,
//! determinism, and the gen/verify round trip.

mod common;

use funiq::cli::run;
use std::path::Path;

fn runv(args: &[&str]) -> i32 {
    let mut argv = vec!["funiq"];
    argv.extend_from_slice(args);
    run(argv)
}

fn count_rows(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count() - 1 // minus header
}

#[test]
fn pairs_gen_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("nodes.csv");
    let code = runv(&[
        "pairs", "gen", "--weight", "power:1", "--shift", "1", "--jmax", "100", "--out",
        nodes.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(count_rows(&nodes), 201); // symmetric window

    let report = dir.path().join("report.json");
    let code = runv(&[
        "pairs", "verify", "--nodes", nodes.to_str().unwrap(), "--weight", "power:1", "--shift",
        "1", "--threshold", "0.5", "--out", report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"pass\": true"));
}

#[test]
fn verify_fails_on_scaled_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("rv.csv");
    assert_eq!(
        runv(&["pairs", "gen", "--generator", "rv", "--jmax", "50", "--out", nodes.to_str().unwrap()]),
        0
    );
    // rv passes at threshold 1/2 under the left rule
    assert_eq!(
        runv(&["pairs", "verify", "--nodes", nodes.to_str().unwrap(), "--weight", "power:1"]),
        0
    );
    // but not at a tighter threshold
    assert_eq!(
        runv(&[
            "pairs", "verify", "--nodes", nodes.to_str().unwrap(), "--weight", "power:1",
            "--threshold", "0.4",
        ]),
        1
    );
}

#[test]
fn gen_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        assert_eq!(
            runv(&[
                "pairs", "gen", "--weight", "exppower:1,1,0.5", "--shift", "0.5", "--jmax",
                "500", "--out", out.to_str().unwrap(),
            ]),
            0
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn brs_generator_writes_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let lam = dir.path().join("lambda.csv");
    let mu = dir.path().join("mu.csv");
    assert_eq!(
        runv(&[
            "pairs", "gen", "--generator", "brs", "--s", "1.0", "--jstart", "10", "--jmax",
            "500", "--out", lam.to_str().unwrap(), "--out-mu", mu.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(count_rows(&lam), 491);
    assert_eq!(count_rows(&mu), 491);
}

#[test]
fn classify_rv_pair_is_critical() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("rv.csv");
    runv(&["pairs", "gen", "--generator", "rv", "--jmax", "4000", "--out", nodes.to_str().unwrap()]);
    let code = runv(&[
        "pairs", "classify", "--lambda", nodes.to_str().unwrap(), "--mu", nodes.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn density_scan_with_limit_check() {
    let dir = tempfile::tempdir().unwrap();
    let nodes = dir.path().join("rv.csv");
    runv(&["pairs", "gen", "--generator", "rv", "--jmax", "10000", "--out", nodes.to_str().unwrap()]);
    let json = dir.path().join("scan.json");
    let csv = dir.path().join("scan.csv");
    let code = runv(&[
        "density", "scan", "--lambda", nodes.to_str().unwrap(), "--mu", nodes.to_str().unwrap(),
        "--k", "10,20,40", "--alpha", "0.5", "--out", json.to_str().unwrap(), "--out-csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"inf_per_K\""));
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("W,T,ratio"));
}

#[test]
fn density_fenchel_prints_closed_form_value() {
    // value 1/3 + (2/3) 2^{3/2} - 2 = 0.2189514...; printed on stdout
    assert_eq!(
        runv(&["density", "fenchel", "--weight", "power:2", "--t", "1", "--w", "2"]),
        0
    );
}

#[test]
fn zeta_stats_and_rvm_on_small_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("zeros.txt");
    let zeros = common::compute_zero_ordinates(60);
    let mut text = String::new();
    for z in &zeros {
        text.push_str(&format!("{z:.9}\n"));
    }
    std::fs::write(&table, text).unwrap();

    let stats = dir.path().join("stats.json");
    let code = runv(&[
        "zeta", "stats", "--data", table.to_str().unwrap(), "--bins", "10", "--out",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(code, 0); // the first 60 zeros already reach above and below 1/2
    assert!(std::fs::read_to_string(&stats).unwrap().contains("\"normalized_gaps\""));

    let code = runv(&["zeta", "rvm", "--data", table.to_str().unwrap(), "--t", "50,100"]);
    assert_eq!(code, 0);
}

#[test]
fn zeta_uses_data_dir_env() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("zeros1.txt");
    let zeros = common::compute_zero_ordinates(10);
    let mut text = String::new();
    for z in &zeros {
        text.push_str(&format!("{z:.9}\n"));
    }
    std::fs::write(&table, text).unwrap();
    // spawn the real binary so the env var is isolated to the child
    let exe = env!("CARGO_BIN_EXE_funiq");
    let out = std::process::Command::new(exe)
        .args(["zeta", "rvm", "--t", "30"])
        .env("FUNIQ_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn probe_pw_and_svd_commands() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(runv(&["probe", "pw", "--t", "2"]), 0);

    let nodes = dir.path().join("rv.csv");
    runv(&["pairs", "gen", "--generator", "rv", "--jmax", "64", "--out", nodes.to_str().unwrap()]);
    let witness = dir.path().join("witness");
    let code = runv(&[
        "probe", "svd", "--lambda", nodes.to_str().unwrap(), "--mu", nodes.to_str().unwrap(),
        "--n", "32", "--witness-out", witness.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(witness.with_extension("csv").exists());
    assert!(std::fs::read_to_string(witness.with_extension("json"))
        .unwrap()
        .contains("\"sigma_min\""));

    let sweep = dir.path().join("sweep.csv");
    let code = runv(&[
        "probe", "sweep", "--lambda", nodes.to_str().unwrap(), "--mu", nodes.to_str().unwrap(),
        "--scales", "0.9,1.0", "--n", "16,24", "--out", sweep.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(count_rows(&sweep), 4);
}

#[test]
fn weights_check_subcommand() {
    assert_eq!(runv(&["weights", "check", "--weight", "power:3"]), 0);
    // e^t fails the integrability half of the subexponential conditions
    assert_eq!(runv(&["weights", "check", "--weight", "exp"]), 1);
    assert_eq!(
        runv(&["weights", "check", "--weight", "exp", "--kind", "widely", "--xmax", "200"]),
        0
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(runv(&["nonsense"]), 2);
    assert_eq!(runv(&["pairs", "gen", "--weight", "bogus:1", "--jmax", "5", "--out", "/tmp/x.csv"]), 2);
    assert_eq!(runv(&["pairs", "verify", "--nodes", "/nonexistent.csv", "--weight", "power:1"]), 2);
    // spawn the binary for the canonical malformed-input contract
    let exe = env!("CARGO_BIN_EXE_funiq");
    let out = std::process::Command::new(exe).args(["zeta", "stats"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2)); // no --data, no env var
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "diagnostic: {err}");
}

#[test]
fn config_file_supplies_weight_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{ "weight": { "family": "power", "params": [2.0] }, "tolerances": { "quad": 1e-10 } }"#,
    )
    .unwrap();
    assert_eq!(
        runv(&["--config", cfg.to_str().unwrap(), "density", "fenchel", "--t", "1", "--w", "2"]),
        0
    );
    // flags override the config weight
    assert_eq!(
        runv(&[
            "--config", cfg.to_str().unwrap(), "density", "fenchel", "--weight", "power:1",
            "--t", "1", "--w", "1",
        ]),
        0
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{ "weight": { "family": "power", "params": [2.0] }, "zzz": 1 }"#)
        .unwrap();
    assert_eq!(
        runv(&["--config", bad.to_str().unwrap(), "density", "fenchel", "--t", "1", "--w", "2"]),
        2
    );
    let neg = dir.path().join("neg.json");
    std::fs::write(&neg, r#"{ "tolerances": { "quad": -1.0 } }"#).unwrap();
    assert_eq!(
        runv(&[
            "--config", neg.to_str().unwrap(), "density", "fenchel", "--weight", "power:1",
            "--t", "1", "--w", "2",
        ]),
        2
    );
}

#[test]
fn probe_fractional_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frac.json");
    let code = runv(&[
        "probe", "fractional", "--psi", "identity", "--phi", "identity", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"ratio\""));
}
