use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn trinomia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinomia"))
        .args(args)
        .env_remove("TRINOMIA_JOBS")
        .env_remove("TRINOMIA_INJECT_FAULT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn without_wall_time(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gen_tnk_csv() {
    let o = trinomia(&["gen", "tnk", "--rows", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n1\n1,2\n1,6\n1,12,6\n1,20,30\n");
}

#[test]
fn gen_tbc_symbolic_and_numeric() {
    let o = trinomia(&["gen", "tbc", "--n", "3", "--symbolic"]);
    assert_eq!(stdout(&o), "n,value\n0,1\n1,b\n2,b^2 + 2*c\n3,b^3 + 6*b*c\n");
    let o = trinomia(&["gen", "tbc", "--n", "5"]);
    assert_eq!(stdout(&o), "n,value\n0,1\n1,1\n2,3\n3,7\n4,19\n5,51\n");
    let o = trinomia(&["gen", "motzkin", "--n", "5", "--b", "1", "--c", "1"]);
    assert_eq!(stdout(&o), "n,value\n0,1\n1,1\n2,2\n3,4\n4,9\n5,21\n");
}

#[test]
fn gen_laurent_and_triangle_json() {
    let o = trinomia(&["gen", "laurent", "--n", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["kind"], "laurent");
    let values: Vec<&str> = v["data"].as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "2", "3", "2", "1"]);

    let o = trinomia(&["gen", "triangle", "--rows", "3"]);
    assert_eq!(stdout(&o), "1\n1,1\n3,2,1\n");
}

#[test]
fn verify_hankel_symbolic_passes() {
    let o = trinomia(&["verify", "hankel", "--n", "6", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["suite"], "hankel");
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() >= 7);
}

#[test]
fn corrupted_tli_fails_with_witness() {
    let o = trinomia(&["verify", "tli", "--max-sum", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.get("witness").is_some()));
}

#[test]
fn fault_env_var_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_trinomia"))
        .args(["verify", "tli", "--max-sum", "3"])
        .env("TRINOMIA_INJECT_FAULT", "true")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn every_fault_model_fails() {
    for suite in ["hankel", "interlace", "tp", "sm", "criteria", "riordan", "tli", "fundamental"] {
        let mut args = vec!["verify", suite, "--inject-fault"];
        if suite == "interlace" {
            args.extend(["--max-n", "10"]);
        }
        let o = trinomia(&args);
        assert_eq!(o.status.code(), Some(1), "{suite}");
    }
    for suite in ["binomial", "motzkin", "limits"] {
        let o = trinomia(&["verify", suite, "--inject-fault"]);
        assert_eq!(o.status.code(), Some(2), "{suite}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["verify", "nonsense"],
        vec!["verify", "sm", "--b", "x"],
        vec!["verify", "sm", "--b", "0"],
        vec!["verify", "tp", "--rows", "11"],
        vec!["gen", "tbc", "--symbolic", "--b", "2"],
        vec!["report", "all", "--suites", "hankel,nope"],
        vec!["report", "all", "--jobs", "0"],
        vec!["verify", "binomial", "--a", "1/2"],
    ] {
        let o = trinomia(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn sm_below_threshold_is_a_pass_of_the_theorem() {
    let o = trinomia(&["verify", "sm", "--b", "1", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"][0]["details"]["report"]["result"]["verdict"], "not_sm");
}

#[test]
fn fractional_parameters() {
    let o = trinomia(&["verify", "binomial", "--a", "1/2", "--b", "3/2", "--c", "2", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = trinomia(&["gen", "tbc", "--n", "2", "--b", "1/2", "--c", "1/3"]);
    assert_eq!(stdout(&o), "n,value\n0,1\n1,1/2\n2,11/12\n");
}

#[test]
fn identical_config_gives_identical_json() {
    let args = ["report", "all", "--suites", "hankel,tp,sm,tli,fundamental"];
    let a = stdout(&trinomia(&args));
    let b = stdout(&trinomia(&args));
    let one_job = Command::new(env!("CARGO_BIN_EXE_trinomia"))
        .args(args)
        .env("TRINOMIA_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(without_wall_time(&a), without_wall_time(&b));
    assert_eq!(without_wall_time(&a), without_wall_time(&stdout(&one_job)));
    let three = stdout(&trinomia(&[&args[..], &["--jobs", "3"]].concat()));
    assert_eq!(without_wall_time(&a), without_wall_time(&three));
}

#[test]
fn empty_suite_list_is_an_empty_pass() {
    let o = trinomia(&["report", "all", "--suites", ""]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["pass"], 0);
}

#[test]
fn quick_profile_passes_quickly() {
    let start = Instant::now();
    let o = trinomia(&["report", "all", "--profile", "quick"]);
    let elapsed = start.elapsed();
    assert_eq!(o.status.code(), Some(0));
    assert!(elapsed < Duration::from_secs(30), "{elapsed:?}");
    let v = json(&o);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for suite in ["hankel", "interlace", "tp", "sm", "criteria", "riordan", "binomial", "tli", "motzkin", "limits", "fundamental"] {
        assert!(names.iter().any(|n| n.starts_with(&format!("{suite}: "))), "{suite}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("trinomia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tnk.csv");
    let o = trinomia(&["gen", "tnk", "--rows", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1\n1\n1,2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_report_layout() {
    let o = trinomia(&["verify", "sm", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,verdict,witness"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("sm,") && row.contains(",pass,"), "{row}");
}

#[test]
fn tli_report_carries_uv_polynomials() {
    let o = trinomia(&["verify", "tli", "--max-sum", "4", "--max-n", "2", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entry = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["details"]["i"] == 1 && c["details"]["j"] == 1)
        .expect("(1,1) entry");
    // T_0 T_2 - T_1^2 = 2c = 2v
    assert_eq!(entry["details"]["f"], serde_json::json!({ "terms": [[0, 1, "2"]] }));
    assert_eq!(entry["details"]["parity"], "even");
    let f2 = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "f_2").unwrap();
    assert_eq!(f2["details"]["coeffs"], serde_json::json!(["4", "1", "1"]));
}
