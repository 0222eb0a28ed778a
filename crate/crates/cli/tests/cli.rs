use std::path::PathBuf;
use std::process::Command;

use voa_forge_cli::{run, OutputFormat, RunConfig, EXIT_INPUT, EXIT_MATH, EXIT_PASS};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cfg(command: &str, input: Option<&str>) -> RunConfig {
    RunConfig {
        command: command.into(),
        input_path: input.map(fixture),
        output: OutputFormat::Json,
        seed: 0,
        weight_cap: 2,
        level: None,
    }
}

fn json(out: &str) -> serde_json::Value {
    serde_json::from_str(out).expect("valid JSON")
}

#[test]
fn sl2_level_two_matches_golden_report() {
    let out = run(&RunConfig { level: Some(2), ..cfg("sl2-shift", None) });
    assert_eq!(out.code, EXIT_PASS);
    let v = json(&out.stdout);
    assert_eq!(v["schema"], "voa-forge/1");
    assert_eq!(v["result"]["self_dual"], true);
    let de_rham = &v["result"]["de_rham"];
    for flag in ["nonnegative_integers", "degree_zero_is_unit", "top_is_minimal_ideal", "multiplicative", "orthogonality_ok", "perfect_pairing"] {
        assert_eq!(de_rham[flag], true, "{flag}");
    }
    let golden = std::fs::read_to_string(fixture("sl2_level2.golden.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn a1_lattice_shift_is_case_i() {
    let out = run(&cfg("lattice-shift", Some("a1.toml")));
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["datum"]["trichotomy"]["case"], "i");
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("a1.golden.json")).unwrap());
}

#[test]
fn toml_and_json_lattice_inputs_agree() {
    let out = run(&cfg("lattice-shift", Some("a1a1.json")));
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(json(&out.stdout)["result"]["set_a"].as_array().unwrap().len(), 4);
    let unshifted = run(&cfg("lattice-shift", Some("a1_unshifted.toml")));
    assert_eq!(unshifted.code, EXIT_PASS);
    assert_eq!(json(&unshifted.stdout)["result"]["dim_v1"], 3);
}

#[test]
fn leibniz_violation_exits_one_with_the_triple() {
    let out = run(&cfg("analyze-leibniz", Some("bad.json")));
    assert_eq!(out.code, EXIT_MATH);
    assert_eq!(json(&out.stdout)["result"]["violation"], serde_json::json!([0, 0, 0]));
    let text = run(&RunConfig { output: OutputFormat::Text, ..cfg("analyze-leibniz", Some("bad.json")) });
    assert!(text.stdout.contains("(0, 0, 0)"));
}

#[test]
fn sl2_table_is_semisimple() {
    let out = run(&cfg("analyze-leibniz", Some("sl2.json")));
    assert_eq!(out.code, EXIT_PASS);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["is_lie"], true);
    assert_eq!(v["result"]["tower"]["solvable_b"]["dim"], 0);
    assert_eq!(v["result"]["levi_of_quotient"]["dim"], 3);
}

#[test]
fn frobenius_with_grading() {
    let out = run(&cfg("analyze-frobenius", Some("truncated_cubic.json")));
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["local"], true);
    assert_eq!(v["result"]["de_rham"]["nu"], 2);
}

#[test]
fn fock_eval_of_exponentials() {
    let out = run(&cfg("fock-eval", Some("vertex_op.json")));
    assert_eq!(out.code, EXIT_PASS);
    // e^a(-1) e^{-a} = (a(-1)^2 + a(-2)) 1 / 2
    let v = json(&out.stdout);
    let terms = v["result"]["result"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coeff"] == "1/2"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&cfg("lattice-shift", Some("a1_inadmissible.toml"))).code, EXIT_INPUT);
    assert_eq!(run(&cfg("lattice-shift", Some("missing.toml"))).code, EXIT_INPUT);
    assert_eq!(run(&cfg("lattice-shift", None)).code, EXIT_INPUT);
    assert_eq!(run(&RunConfig { level: Some(0), ..cfg("sl2-shift", None) }).code, EXIT_INPUT);
    let dir = std::env::temp_dir().join(format!("voa-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let float = dir.join("float.json");
    std::fs::write(&float, r#"{"gram": [[2]], "h": [0.5]}"#).unwrap();
    let out = run(&RunConfig { input_path: Some(float), ..cfg("lattice-shift", None) });
    assert_eq!(out.code, EXIT_INPUT);
    let odd = dir.join("odd.toml");
    std::fs::write(&odd, "gram = [[1]]\n").unwrap();
    assert_eq!(run(&RunConfig { input_path: Some(odd), ..cfg("lattice-shift", None) }).code, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_voa-forge");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    let bad = fixture("bad.json");
    assert_eq!(status(&["analyze-leibniz", bad.to_str().unwrap()]), Some(EXIT_MATH));
    assert_eq!(status(&["sl2-shift", "--level", "3"]), Some(EXIT_PASS));
    assert_eq!(status(&["no-such-command"]), Some(EXIT_INPUT));
    let a1 = fixture("a1.toml");
    assert_eq!(status(&["lattice-shift", "--input", a1.to_str().unwrap()]), Some(EXIT_PASS));
}

#[test]
fn report_accepts_a_serialized_datum() {
    let bundle = voa_forge::examples::build_lattice_shift(&voa_forge::lattice::ShiftDatum::half_root(2)).unwrap();
    let dir = std::env::temp_dir().join(format!("voa-forge-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("datum.json");
    std::fs::write(&path, serde_json::to_string(&bundle.datum).unwrap()).unwrap();
    let out = run(&RunConfig { input_path: Some(path), output: OutputFormat::Text, seed: 9, ..cfg("report", None) });
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("input datum: pass"));
    assert!(out.stdout.lines().filter(|l| l.starts_with("suite ")).all(|l| l.ends_with("pass")));
}
