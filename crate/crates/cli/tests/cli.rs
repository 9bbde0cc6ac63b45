use std::process::{Command, Output};

use serde_json::Value;

fn ramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(args)
        .env_remove("RAMSEY_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_examples() {
    let out = ramsey(&["bounds", "t3", "--m", "36"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["bound"]["lo"], "1500");
    assert_eq!(v["result"]["bound"]["hi"], "1500");

    let v = json(&ramsey(&["bounds", "c1", "--m1", "3", "--m2", "5"]));
    let lo: f64 = v["result"]["bound"]["lo"].as_str().unwrap().parse().unwrap();
    assert!((lo - 250.0 * 5f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["result"]["report"]["overall"], true);

    let out = ramsey(&["bounds", "t2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n > 2"));

    assert_eq!(ramsey(&["bounds", "t6"]).status.code(), Some(2));
    assert_eq!(ramsey(&["bounds", "t1"]).status.code(), Some(2));
}

#[test]
fn alon_bound_and_bipartite_corollary() {
    let v = json(&ramsey(&["bounds", "t7", "--h", "10", "--p", "8", "--k", "2", "--r", "1"]));
    let lo: f64 = v["result"]["bound"]["lo"].as_str().unwrap().parse().unwrap();
    assert!((lo - 8000f64.log2()).abs() < 1e-9);
    assert_eq!(ramsey(&["bounds", "c4", "--p", "27"]).status.code(), Some(2));
}

#[test]
fn verify_main2_fixture_and_failure() {
    let out = ramsey(&["verify", "t5", "--h", "c30", "--p", "10", "--l", "5", "--m", "1000000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["certificates"].is_object());

    let out = ramsey(&["--format", "table", "verify", "t5", "--h", "e3", "--p", "1", "--l", "1000", "--m", "27"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL main2.hyp.l"), "{text}");
}

#[test]
fn verify_main_defaults_and_missing_evidence() {
    let out = ramsey(&["verify", "t4", "--g1", "k3", "--g2", "p4", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ramsey(&["verify", "t4", "--g1", "k3", "--g2", "p4", "--m", "3", "--v1", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ramsey(&["verify", "t4", "--g1", "k3", "--g2", "p4", "--m", "3", "--v1", "0", "--r1", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["args"]["r1"], 3);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join(format!("ramsey-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g6 = dir.join("bad.g6");
    std::fs::write(&g6, "C~~\n").unwrap();
    let out = ramsey(&["verify", "t4", "--g1", g6.to_str().unwrap(), "--g2", "k3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let edges = dir.join("bad.txt");
    std::fs::write(&edges, "# header\n0 1\n1 x\n").unwrap();
    let out = ramsey(&["verify", "t4", "--g1", edges.to_str().unwrap(), "--g2", "k3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let good = dir.join("k3.g6");
    std::fs::write(&good, "Bw\n").unwrap();
    let out = ramsey(&["oracle", "--g1", good.to_str().unwrap(), "--g2", "k3"]);
    assert_eq!(json(&out)["result"]["exact"]["status"]["value"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extract_examples() {
    let out = ramsey(&["extract", "--coloring", "red:6", "--g1", "k3", "--g2", "k3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["status"], "witness");
    assert_eq!(v["result"]["embedding"]["color"], "red");

    let out = ramsey(&["extract", "--coloring", "pentagon", "--g1", "k3", "--g2", "k3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["status"], "failure");

    let out = ramsey(&["extract", "--coloring", "pentagon", "--g1", "k3", "--g2", "k3", "--m", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_and_budget_exhaustion() {
    let v = json(&ramsey(&["oracle", "--g1", "k3", "--g2", "k3"]));
    assert_eq!(v["result"]["exact"]["status"]["kind"], "exact");
    assert_eq!(v["result"]["exact"]["witness"]["n"], 5);
    assert!(v["result"]["dominance"]["entries"].is_array());

    let out = ramsey(&["oracle", "--g1", "k3", "--g2", "k3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["exact"]["status"]["kind"], "lower_bound_only");
}

#[test]
fn trace_first_rows() {
    let out = ramsey(&["--format", "table", "trace", "--m", "3600"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let alphas: Vec<&str> = text.lines().skip(2).filter_map(|l| l.split_whitespace().nth(1)).collect();
    assert_eq!(&alphas[..3], &["27.000000", "64.000000", "256.000000"]);
    assert_eq!(json(&ramsey(&["trace", "--m", "3600"]))["result"]["stages"][1]["alpha"]["lo"], "64");
}

#[test]
fn precision_from_environment_is_echoed() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(["bounds", "t3", "--m", "2"])
        .env("RAMSEY_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["precision"]["cap"], 128);
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let args = ["selftest", "pipeline", "--pipeline-samples", "300", "--seed", "7"];
    let a = ramsey(&args);
    let b = ramsey(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut one = vec!["--threads", "1"];
    one.extend(args);
    let mut four = vec!["--threads", "4"];
    four.extend(args);
    let (x, y) = (ramsey(&one), ramsey(&four));
    let strip = |o: &Output| {
        let mut v = json(o);
        v["config"]["threads"] = Value::Null;
        v
    };
    assert_eq!(strip(&x), strip(&a));
    assert_eq!(strip(&y), strip(&a));
}

#[test]
fn selftest_unknown_suite_is_usage_error() {
    assert_eq!(ramsey(&["selftest", "nope"]).status.code(), Some(2));
    let out = ramsey(&["selftest", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["pass"], true);
}
