//! End-to-end runs of the `jordanlp` binary: exit codes, report shape and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jordanlp::harness::{VerificationReport, EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATIONS, SCHEMA_VERSION};

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jordanlp-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn jordanlp(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jordanlp"));
    cmd.args(args).env_remove("JORDANLP_THREADS");
    if let Some(t) = threads {
        cmd.env("JORDANLP_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn verify(dir: &Path, tag: &str, config: &str, threads: Option<&str>) -> (i32, Option<VerificationReport>) {
    let cfg = dir.join(format!("{tag}.json"));
    let out = dir.join(format!("{tag}.report.json"));
    std::fs::write(&cfg, config).unwrap();
    let o = jordanlp(&["verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], threads);
    let report = std::fs::read_to_string(&out).ok().map(|t| VerificationReport::from_json(&t).unwrap());
    (o.status.code().unwrap(), report)
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const SMALL: &str = r#"{
    "schema_version": 1,
    "algebra": "matrix:2",
    "suites": ["axioms", "calculus", "lp", "expectation", "interp"],
    "samples": {"checks": 40, "interp": 2},
    "seed": 3
}"#;

#[test]
fn verify_passes_and_is_deterministic_across_thread_caps() {
    let dir = scratch_dir("determinism");
    let (code, a) = verify(&dir, "a", SMALL, Some("1"));
    let (code_b, b) = verify(&dir, "b", SMALL, None);
    assert_eq!((code, code_b), (EXIT_PASS, EXIT_PASS));
    let (a, b) = (a.unwrap(), b.unwrap());
    assert_eq!(a.schema_version, SCHEMA_VERSION);
    assert_eq!(a.seed, 3);
    assert!(a.counts.fail == 0 && a.counts.pass > 20);
    assert_eq!(a.without_runtime(), b.without_runtime());
    let raw: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("a.report.json")).unwrap()).unwrap();
    assert_eq!(raw["schema_version"], 1);
}

#[test]
fn exit_codes_for_config_errors_violations_and_inconclusive_runs() {
    let dir = scratch_dir("codes");
    let bad_version = SMALL.replace("\"schema_version\": 1", "\"schema_version\": 9");
    assert_eq!(verify(&dir, "version", &bad_version, None).0, EXIT_CONFIG);
    let unknown_field = SMALL.replace("\"seed\": 3", "\"seed\": 3, \"sed\": 4");
    assert_eq!(verify(&dir, "field", &unknown_field, None).0, EXIT_CONFIG);
    assert_eq!(verify(&dir, "threads", SMALL, Some("zero")).0, EXIT_CONFIG);
    let negative = SMALL.replace("\"seed\": 3", "\"seed\": 3, \"tolerances\": {\"structural\": -1}");
    assert_eq!(verify(&dir, "negative", &negative, None).0, EXIT_CONFIG);

    // an exact-zero tolerance cannot absorb rounding in the Jordan identity
    let strict = r#"{"schema_version": 1, "algebra": "matrix:3", "suites": ["axioms"],
        "samples": {"checks": 30}, "tolerances": {"structural": 0}}"#;
    let (code, report) = verify(&dir, "strict", strict, None);
    assert_eq!(code, EXIT_VIOLATIONS);
    let report = report.unwrap();
    assert_eq!(report.exit_code, EXIT_VIOLATIONS);
    assert!(report.entries.iter().any(|e| e.status == jordanlp::harness::Status::Fail && !e.witnesses.is_empty()));

    // a single low-degree stage cannot reach ratio 1 on a non-tracial state
    let starved = r#"{"schema_version": 1, "algebra": "matrix:2", "state": "ambient_diag:0.7,0.3",
        "suites": ["interp"], "p_grid": [2], "samples": {"interp": 1},
        "budget": {"stages": [[2, 16]], "target_ratio": 1.0, "random_witnesses": 0, "epsilon": 0.0, "seed": 0}}"#;
    let (code, report) = verify(&dir, "starved", starved, None);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert_eq!(report.unwrap().counts.inconclusive, 1);
}

#[test]
fn interp_norm_reports_a_bracket() {
    let o = jordanlp(&["interp-norm", "--algebra", "matrix:2", "--theta", "0.5", "--element", "4"], None);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v = stdout_json(&o);
    assert_eq!(v["schema_version"], 1);
    let (lower, upper) = (v["bracket"]["lower"].as_f64().unwrap(), v["bracket"]["upper"].as_f64().unwrap());
    let l2 = v["l2_norm"].as_f64().unwrap();
    assert!(lower <= l2 * (1.0 + 1e-9) && l2 <= upper * (1.0 + 1e-9));

    let dir = scratch_dir("interp");
    let element = dir.join("x.json");
    std::fs::write(&element, r#"{"coords": [[1, 0], [0, 0], [0, 0], [-0.5, 0]]}"#).unwrap();
    let o = jordanlp(&["interp-norm", "--algebra", "matrix:2", "--theta", "0.25", "--element", element.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    // diag(1, −0.5) at p = 4: ((1 + 0.0625)/2)^{1/4}
    let expected = (0.5f64 * (1.0 + 0.0625)).powf(0.25);
    let v = stdout_json(&o);
    assert!((v["bracket"]["upper"].as_f64().unwrap() - expected).abs() < 1e-9);

    let o = jordanlp(&["interp-norm", "--algebra", "matrix:2", "--theta", "1.5", "--element", "0"], None);
    assert_eq!(o.status.code(), Some(EXIT_CONFIG));
}

#[test]
fn expect_and_gen_subcommands() {
    let o = jordanlp(&["expect", "--algebra", "matrix:2", "--sub", "transpose", "--samples", "100"], None);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v = stdout_json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["subalgebra_dim"], 3);

    let o = jordanlp(&["expect", "--algebra", "spin:3", "--sub", "transpose"], None);
    assert_eq!(o.status.code(), Some(EXIT_CONFIG));

    let a = jordanlp(&["gen", "--algebra", "spin:4", "--seed", "9", "--count", "3", "--distribution", "selfadjoint"], None);
    let b = jordanlp(&["gen", "--algebra", "spin:4", "--seed", "9", "--count", "3", "--distribution", "selfadjoint"], None);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 3);
    assert!(elements.iter().all(|x| x.as_array().unwrap().iter().all(|c| c[1].as_f64().unwrap().abs() < 1e-15)));
}
