use std::process::{Command, Output};

use permlab::schroeder::schroeder_number;
use serde_json::Value;

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab")).args(args).env_remove("PERMLAB_MAX_N").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn triangle_tsv() {
    let o = permlab(&["triangle", "--n", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().last().unwrap(), "16\t40\t68\t90\t90\t90");
    assert_eq!(stdout(&permlab(&["triangle", "--n", "1"])), "1\n");
}

#[test]
fn triangle_json_row_sums() {
    let o = permlab(&["--format", "json", "triangle", "--n", "12"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "permlab/1");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for (k, row) in rows.iter().enumerate() {
        let sum: u64 = row.as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
        assert_eq!(sum.to_string(), schroeder_number(k + 1).to_string());
    }
}

#[test]
fn triangle_limits() {
    assert_eq!(permlab(&["triangle", "--n", "41"]).status.code(), Some(2));
    assert_eq!(permlab(&["triangle", "--n", "0"]).status.code(), Some(2));
    assert_eq!(permlab(&["triangle", "--bogus"]).status.code(), Some(2));
}

#[test]
fn distribution_methods() {
    let o = permlab(&["distribution", "--pair", "2314,3124", "--n", "8"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1806,1092,752,629,629,752,1092,1806"));
    let o = permlab(&["distribution", "--pair", "1243,1423", "--n", "1", "--method", "series"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1"));

    let o = permlab(&["--format", "json", "distribution", "--pair", "1243,1423", "--n", "8", "--check"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["checked"].as_array().unwrap().len(), 3);

    let o = permlab(&["distribution", "--pair", "2314,3124", "--n", "5", "--method", "recurrence"]);
    assert_eq!(o.status.code(), Some(2));
    let o = permlab(&["distribution", "--pair", "1324,1423", "--n", "12"]);
    assert_eq!(o.status.code(), Some(2), "cap");
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(["verify", "inversion", "--n", "10"])
        .env("PERMLAB_MAX_N", "10")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(permlab(&["verify", "inversion", "--n", "10"]).status.code(), Some(2));
}

#[test]
fn bijection_traces() {
    let o = permlab(&["bijection", "1 3 2"]);
    assert!(stdout(&o).ends_with("f = 1 2 3\n"));
    let o = permlab(&["bijection", "3 5 2 4 1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("pi_")).count(), 4);
    assert!(text.ends_with("f = 3 4 2 5 1\n"));
    let o = permlab(&["bijection", "1 3 4 2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain"));
}

#[test]
fn verify_reports() {
    let o = permlab(&["--format", "json", "verify", "systems", "--deg", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "permlab/1");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() > 20);

    assert_eq!(permlab(&["verify", "bijection", "--n", "7"]).status.code(), Some(0));
    assert_eq!(permlab(&["verify", "conjecture", "--n", "12"]).status.code(), Some(2));
}

#[test]
fn table2_and_output_file() {
    let dir = std::env::temp_dir().join(format!("permlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table2.tsv");
    let o = permlab(&["table2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, stdout(&o));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 59);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn series_dump() {
    let o = permlab(&["series", "triangle_gf", "--deg", "3"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "3\t3\t0\t2"));
    assert_eq!(permlab(&["series", "no_such_form"]).status.code(), Some(2));
    assert!(stdout(&permlab(&["forms"])).lines().count() >= 18);
}
