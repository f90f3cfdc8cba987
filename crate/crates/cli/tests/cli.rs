use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn metrics_report() {
    let v = json(&["metrics", "--perm", "2 4 1 3"]);
    assert_eq!(v["command"], "metrics");
    assert_eq!(v["n"], 4);
    assert_eq!(v["status"], "ok");
    let r = &v["results"];
    assert_eq!(r["displacement"], "3/2");
    assert_eq!(r["s_plus"], "7/3");
    assert_eq!(r["s_star"]["product"], "12");
    assert_eq!(r["s_star"]["root"], 3);
    assert_eq!(r["spread"], 3);
    assert_eq!(r["dispersion"], "2/3");
    assert_eq!(r["min_delay"], 1);
    assert_eq!(r["crossing"], false);
    assert_eq!(r["permutation"], serde_json::json!([2, 4, 1, 3]));
}

#[test]
fn metrics_small_n_reports_undefined() {
    let v = json(&["metrics", "--perm", "1"]);
    assert!(v["results"]["spread"].is_null());
    assert!(v["results"]["s_plus"].is_null());
}

#[test]
fn extremal_s_star_n5() {
    let v = json(&["extremal", "--n", "5", "--stat", "s-star"]);
    let r = &v["results"];
    assert_eq!(r["max"]["product"], "48");
    assert_eq!(r["max"]["root"], 4);
    assert_eq!(r["maximizers"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_passes_with_lines() {
    let out = run(&["verify", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let passes = text.lines().filter(|l| l.ends_with(": pass")).count();
    assert_eq!(passes, 7, "{text}");
    assert!(text.ends_with("status: ok\n"));
}

#[test]
fn verify_is_byte_identical() {
    let a = run(&["verify", "--max-n", "7", "--format", "json"]);
    let b = run(&["verify", "--max-n", "7", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_large_needs_flag() {
    let out = run(&["verify", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`10`"));
    assert_eq!(
        run(&["verify", "--max-n", "12", "--allow-large"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sample_deterministic_and_csv() {
    let args = [
        "sample", "--n", "50", "--trials", "2000", "--seed", "3", "--format", "csv",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bin_lo,bin_hi,count"));
    let total: u64 = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 2000);
}

#[test]
fn sample_json_report() {
    let v = json(&["sample", "--n", "1000", "--trials", "2000", "--seed", "1"]);
    let r = &v["results"];
    assert_eq!(r["expected_mean"], "333333/1000");
    assert_eq!(r["window"]["lo"], 330.0);
    assert_eq!(r["window"]["hi"], 336.0);
    assert_eq!(r["concentration"].as_array().unwrap().len(), 4);
    assert!((r["mean"].as_f64().unwrap() - 333.333).abs() < 2.0);
}

#[test]
fn construct_within_tolerance() {
    let v = json(&["construct", "--n", "1000", "--displacement", "0.4"]);
    assert_eq!(v["inputs"]["displacement"], "2/5");
    let err: Vec<i64> = v["results"]["error"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|t| t.parse().unwrap())
        .collect();
    let (num, den) = (err[0], *err.get(1).unwrap_or(&1));
    assert!(num * 1000 <= 2 * den);
    let v = json(&["construct", "--n", "8", "--displacement", "1/4"]);
    assert_eq!(v["results"]["permutation"].as_array().unwrap().len(), 8);
}

#[test]
fn construct_rejects_out_of_range() {
    let out = run(&["construct", "--n", "10", "--displacement", "0.7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0.7"));
    let out = run(&["construct", "--n", "10", "--displacement", "half"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("half"));
}

#[test]
fn malformed_permutations_name_the_token() {
    for (perm, token) in [("1 2 2", "\"2\""), ("1 x 3", "\"x\""), ("1 5 2", "\"5\"")] {
        let out = run(&["metrics", "--perm", perm]);
        assert_eq!(out.status.code(), Some(2), "{perm}");
        assert!(stderr(&out).contains(token), "{perm}: {}", stderr(&out));
    }
}

#[test]
fn missing_input_file() {
    let out = run(&["metrics", "--input", "/nonexistent/perm.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/perm.txt"));
}

#[test]
fn input_file_with_header() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("perm_header.txt");
    std::fs::write(&path, "n=4\n2 4 1 3\n").unwrap();
    let v = json(&["metrics", "--input", path.to_str().unwrap()]);
    assert_eq!(v["results"]["displacement"], "3/2");
}

#[test]
fn csv_only_for_sample() {
    let out = run(&["extremal", "--n", "4", "--stat", "disp", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("csv"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["extremal", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["extremal", "--n", "4", "--stat", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

/// Every permutation printed in either format is accepted by `--perm`.
#[test]
fn printed_permutations_round_trip() {
    let mut printed: Vec<String> = Vec::new();
    for stat in ["disp", "s-plus", "s-star"] {
        let v = json(&["extremal", "--n", "7", "--stat", stat]);
        let r = &v["results"];
        for key in ["example", "maximizers"] {
            match &r[key] {
                Value::Array(a) if a.iter().all(Value::is_array) => {
                    printed.extend(a.iter().map(|p| p.to_string()))
                }
                Value::Array(_) => printed.push(r[key].to_string()),
                _ => {}
            }
        }
        let out = run(&["extremal", "--n", "7", "--stat", stat]);
        let text = String::from_utf8(out.stdout).unwrap();
        for line in text.lines() {
            let line = line.trim();
            if let Some(p) = line
                .strip_prefix("example: ")
                .or_else(|| line.strip_prefix("- "))
            {
                printed.push(p.to_string());
            }
        }
    }
    let pretty = serde_json::to_string_pretty(&serde_json::json!([3, 1, 2])).unwrap();
    printed.push(pretty);
    assert!(printed.len() >= 10);
    for p in &printed {
        let v = json(&["metrics", "--perm", p]);
        assert_eq!(
            v["n"].as_u64(),
            Some(p.matches(char::is_numeric).count() as u64),
            "{p}"
        );
    }
}

#[test]
fn improve_reaches_crossing_and_maximum() {
    let v = json(&["improve", "--perm", "1 2 3 4 5 6 7"]);
    let disp_final: Vec<String> = v["results"]["displacement"]["final"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let m = json(&["metrics", "--perm", &disp_final.join(" ")]);
    assert_eq!(m["results"]["crossing"], true);
    let steps = v["results"]["cycle"]["steps"].as_array().unwrap();
    assert_eq!(steps[0]["step"], 0);
    for w in steps.windows(2) {
        assert_eq!(w[1]["step"].as_u64(), w[0]["step"].as_u64().map(|s| s + 1));
    }
    let only_disp = json(&["improve", "--perm", "2 1 3", "--stat", "disp"]);
    assert!(only_disp["results"].get("cycle").is_none());
}
