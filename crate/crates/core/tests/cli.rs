use std::process::{Command, Output};

use crossfam::oracle::Verdict;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossfam")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn one(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut v = json_lines(&o);
    assert_eq!(v.len(), 1);
    v.remove(0)
}

#[test]
fn rank_and_unrank() {
    assert_eq!(one(&["rank", "--n", "4", "--set", "2,3", "--order", "colex"])["rank"], 2);
    assert_eq!(one(&["rank", "--n", "4", "--set", "2,3", "--order", "lex"])["rank"], 3);
    let u = one(&["unrank", "--n", "4", "--k", "2", "--order", "colex", "--rank", "0"]);
    assert_eq!(u["set"], serde_json::json!([1, 2]));
}

#[test]
fn bad_element_exits_2() {
    let o = run(&["rank", "--n", "5", "--set", "1,7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn shadow_of_colex_segment() {
    let v = one(&["shadow", "--n", "6", "--k", "3", "--t", "2", "--segment", "colex:5"]);
    assert_eq!(v["shadow"], 8);
    assert_eq!(v["kk_min"], 8);
    let lov = v["lovasz"].as_f64().unwrap();
    assert!((lov - 6.7736).abs() < 1e-3 && lov <= 8.0);
}

#[test]
fn shadow_of_explicit_family() {
    let v = one(&["shadow", "--n", "5", "--family", "1,2,3;1,2,4"]);
    assert_eq!(v["k"], 3);
    assert_eq!(v["shadow"], 5);
    assert_eq!(v["kk_min"], 5);
}

#[test]
fn maxb_and_extremal() {
    let v = one(&["maxb", "--n", "6", "--k", "3", "--a", "7"]);
    assert_eq!(v["max_b"], 13);
    let e = one(&["extremal", "--n", "6", "--k", "3", "--i", "3"]);
    assert_eq!((e["a_size"].clone(), e["b_size"].clone(), e["product"].clone()), (7.into(), 13.into(), 91.into()));
    assert_eq!(e["cross_intersecting"], true);
    assert_eq!(run(&["extremal", "--n", "6", "--k", "3", "--i", "1"]).status.code(), Some(2));
}

#[test]
fn extremal_sets_match_sizes() {
    let e = one(&["extremal", "--n", "8", "--k", "3", "--i", "4", "--emit", "sets"]);
    assert_eq!(e["a_family"].as_array().unwrap().len() as u64, e["a_size"].as_u64().unwrap());
    assert_eq!(e["b_family"].as_array().unwrap().len() as u64, e["b_size"].as_u64().unwrap());
}

#[test]
fn large_integers_are_strings() {
    let v = one(&["maxb", "--n", "64", "--k", "20", "--a", "1000"]);
    assert!(v["max_b"].is_string());
    assert!(v["product"].is_string());
    let e = one(&["extremal", "--n", "64", "--k", "20", "--i", "3"]);
    assert!(e["product"].is_string());
    assert_eq!(e["closed_form_matches"], true);
}

#[test]
fn verify_json_roundtrips_into_verdicts() {
    let o = run(&["verify", "thm2", "--n", "6..8", "--k", "3", "--ordered"]);
    assert_eq!(o.status.code(), Some(0));
    let verdicts: Vec<Verdict> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|v| v.passed));
    let first = verdicts.iter().find(|v| v.claim == "thm2" && v.n == 6 && v.i == Some(3)).unwrap();
    assert_eq!(first.observed, 91);
    assert_eq!(first.attained_at, vec![(7, 13)]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("summary:"));
}

#[test]
fn csv_and_json_agree() {
    let base = ["verify", "pyber", "--n", "4..8", "--k", "2..3", "--ordered"];
    let json = json_lines(&run(&base));
    let mut args = base.to_vec();
    args.extend(["--format", "csv"]);
    let csv_out = stdout(&run(&args));
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), json.len());
    let h = rdr.headers().unwrap().clone();
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    for (row, j) in rows.iter().zip(&json) {
        for key in ["n", "k", "expected", "observed"] {
            assert_eq!(row[col(key)], j[key].to_string(), "{key}");
        }
        assert_eq!(row[col("passed")], j["passed"].to_string());
    }
}

#[test]
fn ordered_output_is_deterministic() {
    let args = ["verify", "lemma7", "--n", "4..9", "--k", "2", "--ordered", "--jobs", "4"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn sampled_runs_are_seeded() {
    let args = ["verify", "kk", "--n", "6", "--k", "3", "--mode", "sampled", "--samples", "500", "--seed", "7"];
    let a = json_lines(&run(&args));
    assert_eq!(a, json_lines(&run(&args)));
    assert!(a.iter().all(|v| v["seed"].is_u64() && v["passed"] == true));
}

#[test]
fn rejected_config_exits_2() {
    let o = run(&["verify", "hilton", "--n", "6", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "hilton", "--n", "6", "--k", "3", "--mode", "sampled", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn human_format() {
    let o = run(&["verify", "thm2", "--n", "6", "--k", "3", "--i", "3", "--format", "human"]);
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("thm2 n=6 k=3 i=3"));
    assert!(text.contains("PASS"));
}

#[test]
fn inequalities_subcommand() {
    let o = run(&["inequalities", "--n", "6..10", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o).iter().all(|v| v["passed"] == true));
}
