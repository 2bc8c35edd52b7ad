use std::process::{Command, Output};

fn prm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prm")).args(args).env_remove("PRM_WORKERS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_csv_f_column() {
    let o = prm(&["--format", "csv", "table", "2", "2", "3", "1..6"]);
    assert_eq!(o.status.code(), Some(0));
    let f: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(f, ["7", "5", "4", "2", "1", "0"]);
}

#[test]
fn table_first_row_is_serre_value() {
    // r = 1: d q^(m-1) + π_(m-2)(q) = 3·16 + 5 = 53 at (d, m, q) = (3, 3, 4)
    let o = prm(&["--format", "csv", "table", "3", "3", "4", "1"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().rsplit(',').next(), Some("53"));
}

#[test]
fn search_reports_match() {
    let o = prm(&["search", "e_r", "2", "2", "2", "3", "1", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"][0]["best_value"], 5);
    assert_eq!(v["result"][0]["comparison"]["consistent"], true);
    assert_eq!(v["config"]["verb"], "search");
    assert!(v["version"].is_string());
}

#[test]
fn u_r_search() {
    let o = prm(&["--format", "csv", "search", "u_r", "2", "2", "3", "3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("2,2,3,3,exhaustive,3,3,true"));
}

#[test]
fn randomized_runs_are_byte_identical() {
    let args = ["search", "e_r", "2", "2", "1..6", "3", "1", "randomized", "--seed", "7", "--iterations", "200"];
    let a = prm(&args);
    let b = prm(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["search", "e_r", "2", "2", "3", "3", "1"];
    let one = prm(&[&["--workers", "1"], &base[..]].concat());
    let four = prm(&[&["--workers", "4"], &base[..]].concat());
    let strip = |o: &Output| stdout(o).replace("\"workers\": 4", "\"workers\": 1");
    assert_eq!(strip(&one), strip(&four));
}

#[test]
fn construct_examples() {
    let o = prm(&["construct", "2", "2", "4", "5", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["verified_dim"], 4);
    assert_eq!(v["result"]["verified_count"], 2);

    let o = prm(&["construct", "3", "3", "3", "5", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["verified_count"], 27);

    assert_eq!(prm(&["construct", "3", "2", "3", "2", "1"]).status.code(), Some(2));
}

#[test]
fn ghw_examples() {
    let o = prm(&["--format", "csv", "ghw", "1", "1", "2", "1", "1..2"]);
    assert_eq!(o.status.code(), Some(0));
    let d: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(d, ["2", "3"]);
    assert_eq!(prm(&["ghw", "1", "1", "2", "1", "1..3"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["hprime-le-h", "noether", "rank-roundtrip", "appendix"] {
        let o = prm(&["--format", "csv", "verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",true"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(prm(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(prm(&["table"]).status.code(), Some(2));
    let o = prm(&["--visit-budget", "100", "search", "e_r", "2", "2", "3", "3", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("prm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let o = prm(&["--format", "csv", "-o", path.to_str().unwrap(), "table", "1", "2", "2", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}
