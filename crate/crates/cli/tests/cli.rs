use std::process::Command;

use nestrad_cli::{run, Outcome, EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_REDUCTION, EXIT_USAGE, SCHEMA_VERSION};
use serde_json::Value;

fn nestrad(args: &[&str]) -> Outcome {
    let mut argv = vec!["nestrad"];
    argv.extend_from_slice(args);
    run(argv, None)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", out.stdout))
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let schema = validator();
    let errors: Vec<String> = schema.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{v:#}");
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
}

#[test]
fn classic_nesting_converges_to_three() {
    let out = nestrad(&["solve", "--method", "quad-nest", "--a", "1", "--b", "0", "--c", "-6", "--mu", "1", "--nu", "1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["status"], "Converged");
    assert!((v["root"]["re"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!(v["oracle"]["distance"].as_f64().unwrap() < 1e-12);
}

#[test]
fn septic_worked_example_matches_oracle() {
    let out = nestrad(&["solve", "--method", "septic", "--coeffs", "1,1,0,-0.5"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_valid(&v);
    assert!(v["oracle"]["distance"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn bring_radical_outside_its_disc_is_an_honest_failure() {
    let out = nestrad(&["solve", "--method", "quintic-br", "--A", "1", "--B", "9"]);
    assert_eq!(out.code, EXIT_FAILED);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["status"], "OutsideDomain");
    assert!(v["root"].is_null());
}

#[test]
fn every_solve_method_emits_valid_reports() {
    let cases: &[&[&str]] = &[
        &["--method", "euler-series", "--a", "0.1", "--p", "1", "--q", "2"],
        &["--method", "euler-series", "--a", "0.1", "--p", "1", "--q", "2", "--n", "2"],
        &["--method", "euler-nest", "--a", "0.1", "--p", "1", "--q", "2"],
        &["--method", "quintic-br", "--A", "1", "--B", "0.2"],
        &["--method", "quintic-nest", "--A", "-5", "--B", "0", "--u0", "1"],
        &["--method", "octic", "--coeffs", "0.1,0.2,-0.1,0.1,0.2"],
        &["--method", "nonic", "--coeffs", "0.1,0,0.2,0,0.1,0.3"],
        &["--method", "h7", "--coeffs", "1,1,0,-0.5", "--u", "1"],
        &["--method", "h7-printed", "--u", "1", "--constant", "0.125"],
        &["--method", "auto", "--poly", "1,1,1,1,1,1"],
        &["--method", "auto", "--poly", "1,-3,2"],
        &["--method", "quad-nest", "--a", "1", "--b", "0.5i", "--c", "-2+1i", "--mu", "1", "--nu", "5/3"],
    ];
    for case in cases {
        let mut argv = vec!["solve"];
        argv.extend_from_slice(case);
        let out = nestrad(&argv);
        assert!(out.code == EXIT_OK || out.code == EXIT_FAILED, "{case:?}: {} {}", out.code, out.stderr);
        let v = json(&out);
        assert_valid(&v);
        let converged = v["status"] == "Converged";
        assert_eq!(converged, out.code == EXIT_OK, "{case:?}");
    }
}

#[test]
fn repulsive_quintic_never_claims_zero() {
    let out = nestrad(&["solve", "--method", "quintic-nest", "--A", "-5", "--B", "0", "--u0", "1"]);
    let v = json(&out);
    if v["status"] == "Converged" {
        let re = v["root"]["re"].as_f64().unwrap();
        assert!((re - 5f64.powf(0.25)).abs() < 1e-9, "{v}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["solve", "--method", "quad-nest", "--a", "1"][..],
        &["solve", "--method", "septic", "--coeffs", "1,2"],
        &["solve", "--method", "bogus"],
        &["solve", "--method", "quad-nest", "--a", "1+", "--b", "0", "--c", "1"],
        &["solve", "--method", "quad-nest", "--a", "0", "--b", "0", "--c", "1"],
        &["solve", "--method", "auto", "--poly", "1,0,0,0,0,0,0,0,0,0,1"],
        &["reduce", "--poly", "1,2,3"],
        &["basin", "--method", "octic", "--coeffs", "1,1,1,1,1", "--csv", "x.csv"],
        &["basin", "--method", "quad-nest", "--a", "1", "--b", "0", "--c", "-6", "--nx", "5000", "--csv", "x.csv"],
        &["frobnicate"],
    ] {
        let out = nestrad(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn reduce_reports_and_failures() {
    let out = nestrad(&["reduce", "--poly", "1,1,1,1,1,1"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["result"]["shape"], "quintic");
    assert!(v["result"]["max_match_error"].as_f64().unwrap() <= 1e-6);

    let out = nestrad(&["reduce", "--poly", "1,0,0,0,2,3"]);
    let v = json(&out);
    assert_valid(&v);
    let map = &v["result"]["map"];
    assert_eq!(map["n"]["re"], 1.0);
    for k in ["k", "l", "m", "s"] {
        assert_eq!(map[k]["re"], 0.0);
    }

    let out = nestrad(&["reduce", "--poly", "1,-3,3,-1,0,0"]);
    assert_eq!(out.code, EXIT_REDUCTION);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["status"], "ReductionFailed");
}

#[test]
fn seed_flag_beats_environment() {
    let argv = ["nestrad", "reduce", "--poly", "1,0.3,-0.2,0.5,0.1,-0.7"];
    let env = json(&run(argv, Some("5")));
    assert_eq!(env["seed"], 5);
    let mut with_flag = argv.to_vec();
    with_flag.extend(["--seed", "9"]);
    assert_eq!(json(&run(with_flag, Some("5")))["seed"], 9);
    assert_eq!(json(&run(argv, None))["seed"], 0);
    assert_eq!(run(argv, Some("many")).code, EXIT_USAGE);
}

#[test]
fn basin_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let pgm = dir.path().join(format!("{tag}.pgm"));
        let out = nestrad(&[
            "basin", "--method", "quad-nest", "--a", "1", "--b", "0", "--c", "-6", "--nx", "33", "--ny", "17",
            "--csv", csv.to_str().unwrap(), "--pgm", pgm.to_str().unwrap(),
        ]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        (std::fs::read(csv).unwrap(), std::fs::read(pgm).unwrap(), json(&out))
    };
    let (csv1, pgm1, v) = render("a");
    let (csv2, pgm2, _) = render("b");
    assert_eq!(csv1, csv2);
    assert_eq!(pgm1, pgm2);
    assert_valid(&v);
    let text = String::from_utf8(csv1).unwrap();
    assert_eq!(text.lines().next(), Some("re,im,status,root_index,iterations"));
    assert_eq!(text.lines().count(), 1 + 33 * 17);
    assert_eq!(v["center"]["status"], "Converged");
    assert!(v["center"]["iterations"].as_u64().unwrap() <= 40);
}

#[test]
fn single_cell_basin() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    let out = nestrad(&[
        "basin", "--method", "quad-nest", "--a", "1", "--b", "0", "--c", "-6", "--nx", "1", "--ny", "1",
        "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 2);
}

#[test]
fn unwritable_basin_output_exits_four() {
    let out = nestrad(&[
        "basin", "--method", "quad-nest", "--a", "1", "--b", "0", "--c", "-6", "--nx", "2", "--ny", "2",
        "--csv", "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.code, EXIT_IO);
}

#[test]
fn modular_verification() {
    let out = nestrad(&["verify-modular"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_valid(&v);
    assert!(v["runs"][0]["identity_residual"].as_f64().unwrap() <= 1e-6);

    let out = nestrad(&["verify-modular", "--tau", "0.1i"]);
    assert_eq!(out.code, EXIT_FAILED);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["status"], "Domain");

    let out = nestrad(&["verify-modular", "--nmax", "5,40"]);
    let v = json(&out);
    assert_valid(&v);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    assert!(v["spread_j"].as_f64().unwrap() < 1e-6);

    let out = nestrad(&["verify-modular", "--nome", "half", "--tau", "1.2i"]);
    assert_eq!(out.code, EXIT_FAILED);
    assert_eq!(json(&out)["status"], "IdentityFailed");
}

#[test]
fn binary_honours_environment_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nestrad");
    let run_bin = |args: &[&str], seed: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(args).env_remove("NESTRAD_SEED");
        if let Some(s) = seed {
            cmd.env("NESTRAD_SEED", s);
        }
        cmd.output().unwrap()
    };
    let out = run_bin(&["reduce", "--poly", "1,1,1,1,1,1"], Some("4"));
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 4);
    let again = run_bin(&["reduce", "--poly", "1,1,1,1,1,1"], Some("4"));
    assert_eq!(out.stdout, again.stdout);
    assert_eq!(run_bin(&["solve", "--method", "quintic-br", "--A", "1", "--B", "9"], None).status.code(), Some(EXIT_FAILED));
    assert_eq!(run_bin(&["solve"], None).status.code(), Some(EXIT_USAGE));
}
