use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kme")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("kme-cli-{}-{name}", std::process::id()))
}

#[test]
fn verify_cocycle_instance() {
    let out = kme(&["verify", "cocycle", "--type", "A", "--rank", "1", "--chi", "-3,-3", "--genus", "0", "--max-length", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["checks"], 49);
}

#[test]
fn cterm_lists_seventeen_terms() {
    let out = kme(&["cterm", "--type", "A", "--rank", "1", "--chi", "-3,-3", "--q", "3", "--L", "8", "--m", "deg1:1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 17);
    for t in terms {
        for key in ["word", "length", "c", "char_exponent", "char_ratfunc", "numeric"] {
            assert!(t.get(key).is_some(), "missing {key}");
        }
        assert!(t["c"]["num"].is_string() && t["c"]["den"].is_string());
    }
    let sums: Vec<f64> = v["partial_sums"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            assert!(p["partial_sum_exact"].is_string());
            p["partial_sum"].as_str().unwrap().trim_end_matches("...").parse::<f64>().unwrap()
        })
        .collect();
    assert!(sums.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn cfunc_reports_pole() {
    let out = kme(&["cfunc", "--word", "1", "--chi", "-2,-3", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("zeta pole") && err.contains("a1"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn cfunc_value() {
    let out = kme(&["cfunc", "--word", "1", "--chi", "-3,-3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["c"]["num"], "q^2 + q + 1");
    assert_eq!(v["c"]["den"], "q");
    assert_eq!(v["numeric_exact"], "7/2");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["cterm", "--type", "A", "--rank", "2", "--chi", "-3,-4,-5", "--q", "2", "--L", "4", "--m", "deg1:1", "--h", "deg1:1,0,-1"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_kme")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, run("4").stdout);
}

#[test]
fn csv_partial_sums() {
    let out = kme(&["cterm", "--chi", "-3,-3", "--q", "3", "--L", "4", "--m", "deg1:1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("L,partial_sum,tail_bound"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn config_file_with_flag_override() {
    let cfg = scratch("config.json");
    std::fs::write(&cfg, r#"{"type": "A", "rank": 1, "chi": "-4,-4", "word": "12", "q": 2}"#).unwrap();
    let out_path = scratch("out.json");
    let out = kme(&["cfunc", "--config", cfg.to_str().unwrap(), "--chi", "-3,-3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["chi"], serde_json::json!(["-3", "-3"]));
    assert_eq!(v["word"], serde_json::json!([1, 2]));

    std::fs::write(&cfg, r#"{"colour": "blue"}"#).unwrap();
    assert_eq!(kme(&["cfunc", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_file(cfg);
    let _ = std::fs::remove_file(out_path);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["cfunc", "--word", "1", "--type", "A", "--rank", "2", "--chi", "-3,-3"],
        vec!["cfunc", "--word", "9", "--chi", "-3,-3"],
        vec!["cterm", "--chi", "-3,-3", "--L", "3", "--h", "deg1:1"],
        vec!["cterm", "--chi", "-3,-3", "--L", "3"],
        vec!["cterm", "--chi", "-1,-1", "--L", "3", "--m", "deg1:1", "--mode", "meromorphic"],
        vec!["verify", "nonsense"],
        vec!["gk", "--kappa", "-1"],
        vec!["cfunc", "--word", "1", "--chi", "-3,-3", "--genus", "1"],
        vec!["weyl", "--type", "E", "--rank", "4", "--L", "1"],
        vec!["frobnicate"],
    ] {
        let out = kme(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?} wrote partial output");
    }
}

#[test]
fn verify_failure_exits_one() {
    let out = kme(&["verify", "gk-induction", "--chi", "-2,-3", "--max-length", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gk-induction"));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn gk_and_euler() {
    let v = json(&kme(&["gk", "--q", "2", "--kappa", "-3", "--N", "4", "--M", "4"]));
    assert_eq!(v["total"], "7/6");
    assert_eq!(v["agrees"], true);
    let v = json(&kme(&["gk", "--q", "2", "--kappa", "-2", "--N", "3"]));
    assert!(v["hypothesis"].as_str().unwrap().starts_with("convergence"));
    let v = json(&kme(&["euler", "--q", "2", "--s", "2", "--D", "10"]));
    assert!(v["gap"].as_f64().unwrap().abs() < 1e-3);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn weyl_describes_word() {
    let v = json(&kme(&["weyl", "--chi", "-3,-3", "--word", "1,2,2,1,2"]));
    let e = &v["elements"][0];
    assert_eq!(e["word"], serde_json::json!([2]));
    assert_eq!(e["inversion_set"].as_array().unwrap().len(), 1);
}
