use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const SQUARE: &str = r#"{"monomial_ideal":{"vars":2,"gens":[[2,0],[1,1],[0,2]]}}"#;
const RESIDUE_11: &str = r#"{"field":"q","vars":2,"rows":[{"degree":[1,1]}],
    "cols":[{"degree":[2,1]},{"degree":[1,2]}],"coeffs":[["1","1"]]}"#;
const RESIDUE_00: &str = r#"{"field":"q","vars":2,"rows":[{"degree":[0,0]}],
    "cols":[{"degree":[1,0]},{"degree":[0,1]}],"coeffs":[["1","1"]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multibetti")).args(args).env_remove("MULTIBETTI_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("multibetti-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_betti_reports_slack() {
    let o = run(&["verify-betti", "--json", "--input", SQUARE]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["kind"], "verify-betti");
    assert_eq!(v["format_version"], 1);
    assert!(v["version"].is_string());
    let check = &v["checks"][0];
    assert_eq!((check["i"].as_u64(), check["computed"].as_u64()), (Some(2), Some(2)));
    assert_eq!((check["bound"].as_u64(), check["slack"].as_i64()), (Some(3), Some(1)));
    assert_eq!(check["pass"], true);
}

#[test]
fn genex_check_is_sharp() {
    let o = run(&["genex", "--rank", "2", "--cols", "5", "--check", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    let totals: Vec<u64> = serde_json::from_value(v["report"]["totals"].clone()).unwrap();
    assert_eq!(&totals[..5], &[2, 5, 10, 10, 3]);
    assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["equal"] == true));
}

#[test]
fn invalid_input_exits_two() {
    let unit_entry = r#"{"vars":1,"rows":[{"degree":[0]}],"cols":[{"degree":[0]}],"coeffs":[["1"]]}"#;
    let o = run(&["validate", "--input", unit_entry]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NonMinimal(0,0)"));
    assert_eq!(code(&run(&["betti", "--input", unit_entry])), 2);
    assert_eq!(code(&run(&["betti", "--input", "{not json"])), 2);
    assert_eq!(code(&run(&["betti", "--input", r#"{"field":{"fp":10003},"vars":1,"rows":[]}"#])), 2);
    assert_eq!(code(&run(&["bound", "--i", "1", "--beta0", "1", "--beta1", "2"])), 2);
    assert_eq!(code(&run(&["genex", "--rank", "3", "--cols", "2"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["bass", "--prime", "3", "--input", SQUARE])), 2);
}

#[test]
fn validate_accepts_valid_input() {
    let o = run(&["validate", "--input", SQUARE]);
    assert_eq!(code(&o), 0);
}

#[test]
fn probe_exit_codes() {
    let p = temp_file("k11.json", RESIDUE_11);
    let q = temp_file("k00.json", RESIDUE_00);
    let (p, q) = (p.to_str().unwrap(), q.to_str().unwrap());
    assert_eq!(code(&run(&["probe-duality", "--input", p, "--candidate", p, "--a", "2,2"])), 0);
    let o = run(&["probe-duality", "--input", p, "--candidate", q, "--a", "2,2", "--json"]);
    assert_eq!(code(&o), 1);
    assert!(!json_of(&o)["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn emitted_presentation_round_trips() {
    let o = run(&["genex", "--rank", "2", "--cols", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let emitted = String::from_utf8(o.stdout).unwrap();
    let direct = run(&["betti", "--json", "--input", &emitted]);
    let inner: Value = serde_json::from_str(&emitted).unwrap();
    let again = run(&["betti", "--json", "--input", &inner["presentation"].to_string()]);
    assert_eq!(code(&direct), 0);
    assert_eq!(direct.stdout, again.stdout);
    assert_eq!(json_of(&direct)["totals"], serde_json::json!([2, 3, 1, 0]));
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_multibetti"))
        .args(["dual", "--a", "1,1,1", "--input", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"vars":3,"gens":[[1,1,0],[0,1,1]]}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["dual"]["gens"], serde_json::json!([[0, 1, 0], [1, 0, 1]]));
    assert_eq!(v["agrees_with_intersection"], true);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["bass", "--json", "--input", SQUARE];
    let outputs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|t| {
            Command::new(env!("CARGO_BIN_EXE_multibetti")).args(args).env("MULTIBETTI_THREADS", t).output().unwrap().stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], run(&["bass", "--json", "--threads", "2", "--input", SQUARE]).stdout);
}

#[test]
fn bass_totals_and_selection() {
    let o = run(&["bass", "--json", "--input", SQUARE]);
    assert_eq!(json_of(&o)["totals"], serde_json::json!([2, 3, 1]));
    let o = run(&["verify-bass", "--primes", "positive", "--json", "--input", SQUARE]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["selection"], "positive");
}

#[test]
fn matroid_queries() {
    let o = run(&["matroid", "circuits", "--json", "--input", SQUARE]);
    assert_eq!(json_of(&o)["sets"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));
    let o = run(&["matroid", "tflats", "--level", "1", "--json", "--input", SQUARE]);
    assert_eq!(json_of(&o)["sets"], serde_json::json!([[0, 1, 2]]));
    let o = run(&["brt", "--cols", "5", "--rank", "2", "--json"]);
    let ranks: Vec<u64> = json_of(&o)["ranks"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![10, 10, 3]);
}
