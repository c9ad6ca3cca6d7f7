use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use waring_core::generate::{generate, mixed_strata};

fn waring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("waring-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

fn batch(path: &PathBuf, extra: &[&str]) -> Output {
    let mut args = vec!["batch", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    waring(&args)
}

#[test]
fn rank_examples() {
    let o = waring(&["rank", "x^6 + 6*x*y^5 + 5*y^6", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!((v["rank"].as_u64(), v["branch"].as_str()), (Some(5), Some("S-rank5")));

    let o = waring(&["rank", "--coeffs", "binomial", "0,0,0,1,0,0,0", "--json"]);
    let v = json(&o);
    assert_eq!((v["rank"].as_u64(), v["branch"].as_str()), (Some(4), Some("M3")));

    let o = waring(&["rank", "--coeffs", "0,0,0,1,0,0,0", "--convention", "binomial", "--json"]);
    assert_eq!(json(&o)["plain"][3], "20");

    let o = waring(&["rank", "x^5*y", "--general=false", "--json"]);
    assert_eq!(json(&o)["rank"], 6);
    let o = waring(&["rank", "x^5*y", "--general", "--json"]);
    let v = json(&o);
    assert_eq!((v["rank"].as_u64(), v["method"].as_str()), (Some(6), Some("apolarity")));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&waring(&["rank", "2x^6"])), 1);
    assert_eq!(code(&waring(&["rank", "x^2 + y"])), 1);
    assert_eq!(code(&waring(&["rank", "x^6 - x^6"])), 2);
    assert_eq!(code(&waring(&["rank", "x^5"])), 2);
    assert_eq!(code(&waring(&["rank", "x^5", "--general"])), 0);
    assert_eq!(code(&waring(&["frobnicate"])), 1);
    assert_eq!(code(&waring(&["rank"])), 1);
    assert_eq!(code(&waring(&["generate", "rank:9"])), 1);
    assert_eq!(code(&waring(&["selfcheck", "--samples", "0"])), 1);
    assert_eq!(code(&waring(&["--help"])), 0);
}

#[test]
fn parse_errors_report_positions() {
    let o = waring(&["rank", "x^6 + 2y^6", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 8);
    let o = waring(&["rank", "x^6 + x^2*y", "--json"]);
    assert!(json(&o)["error"]["message"].as_str().unwrap().contains("x^2*y"));
}

#[test]
fn orbit_equivalence_examples() {
    let o = waring(&["orbit-eq", "x^6+y^6", "x^6+2*y^6", "--json"]);
    assert_eq!((code(&o), json(&o)["equivalent"].as_bool()), (0, Some(true)));
    let o = waring(&["orbit-eq", "x^6+y^6", "x^6+6*x*y^5+y^6", "--json"]);
    assert_eq!(json(&o)["equivalent"], false);
    let o = waring(&["orbit-eq", "x^3*y^3", "x^6+y^6"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("semistable-not-stable"));
}

#[test]
fn invariants_command() {
    let o = waring(&["invariants", "x^6+y^6", "--json"]);
    let v = json(&o);
    assert_eq!(v["invariants"]["I2"], "1");
    assert_eq!(v["pi"], serde_json::json!(["1", "0", "-1", "1"]));
}

#[test]
fn decompose_command() {
    let o = waring(&["decompose", "(x+y)^6+(x-y)^6-2*x^6", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 3);
    assert!(v["decomposition"]["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn batch_preserves_order() {
    let p = temp_file(
        "witnesses",
        "(x+y)^6+(x-y)^6-2*x^6\n30*y^2*(x^4+x^2*y^2+y^4)\nx^6+6*x*y^5+5*y^6\n",
    );
    let o = batch(&p, &[]);
    assert_eq!(code(&o), 0);
    let ranks: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![3, 4, 5]);
}

#[test]
fn batch_edge_cases() {
    let p = temp_file("empty", "");
    let o = batch(&p, &[]);
    assert_eq!((code(&o), stdout(&o)), (0, String::new()));

    let p = temp_file("malformed", "x^6+y^6\nx^6 +* y^6\nx^5*y\n");
    let o = batch(&p, &[]);
    assert_eq!(code(&o), 1);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["error"]["kind"], "parse");
    assert_eq!(lines[1]["line"], 2);
    assert_eq!(lines[2]["rank"], 6);

    let o = waring(&["batch", "/nonexistent/waring-input"]);
    assert_eq!(code(&o), 1);
}

fn mixed_corpus() -> String {
    let mut lines = Vec::new();
    for (i, s) in mixed_strata().into_iter().enumerate() {
        for f in generate(s, 4, i as u64) {
            lines.push(f.to_expression());
        }
    }
    lines.push("binomial: 0,0,0,1,0,0,0".into());
    lines.push("x^3".into());
    lines.push("x^6 + (".into());
    lines.join("\n")
}

#[test]
fn batch_is_independent_of_concurrency() {
    let p = temp_file("mixed", &mixed_corpus());
    let base = batch(&p, &["--jobs", "1", "--decompose"]);
    for jobs in ["2", "4", "8"] {
        let o = batch(&p, &["--jobs", jobs, "--decompose"]);
        assert_eq!(code(&o), code(&base));
        assert_eq!(o.stdout, base.stdout, "jobs = {jobs}");
    }
}

#[test]
fn records_validate_against_schema() {
    let schema_path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("valid schema");
    let p = temp_file("schema", &mixed_corpus());
    let mut records = Vec::new();
    for extra in [&["--decompose"][..], &["--general"][..], &["--timing"][..]] {
        let o = batch(&p, extra);
        records.extend(stdout(&o).lines().map(|l| serde_json::from_str::<Value>(l).unwrap()));
    }
    let single = waring(&["rank", "x^6+y^6", "--decompose", "--json"]);
    records.push(json(&single));
    let error = waring(&["rank", "x^6 + 2y^6", "--json"]);
    records.push(json(&error));
    assert!(records.len() > 200);
    for r in &records {
        if let Err(errors) = compiled.validate(r) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{r}\n{msgs:?}");
        }
    }
}

#[test]
fn generate_and_selfcheck() {
    let o = waring(&["generate", "rank:2", "-n", "1", "--seed", "7"]);
    let form = stdout(&o);
    let r = waring(&["rank", form.trim(), "--json"]);
    assert_eq!(json(&r)["rank"], 2);
    let again = waring(&["generate", "rank:2", "-n", "1", "--seed", "7"]);
    assert_eq!(stdout(&again), form);

    let o = waring(&["generate", "multiplicity:5", "-n", "1", "--seed", "1", "--json"]);
    let v = json(&o);
    let r = waring(&["rank", v["form"].as_str().unwrap(), "--json"]);
    assert_eq!((json(&r)["rank"].as_u64(), json(&r)["branch"].as_str()), (Some(6), Some("M5")));

    let o = waring(&["selfcheck", "--samples", "1", "--seed", "1", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], true);
}
