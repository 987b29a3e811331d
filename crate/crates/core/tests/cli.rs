use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equal-quartics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn search_verify_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out_s = out.to_str().unwrap();
    let o = run(&[
        "search", "--h-min", "2", "--h-max", "12", "--methods", "families,brute", "--brute-a-max",
        "40", "--brute-b-max", "40", "--brute-c-max", "40", "--out", out_s,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("unsolved: 2"));
    assert!(dir.path().join("r.jsonl.summary.json").exists());

    let o = run(&["verify", out_s]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(" 0 failed"));

    let o = run(&["report", out_s, "--a-max", "40", "--b-max", "40"]);
    assert!(o.status.success());
    let table = stdout(&o);
    assert!(table.starts_with("h\tA\tB\tC\tD\tweight\tmethod\tnote\n"));
    assert!(table.lines().any(|l| l.starts_with("3\t4\t1\t2\t3\t259\t")));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("r.jsonl");
    fs::write(
        &cfg,
        format!(
            "h_min = 3\nh_max = 40\nmethods = \"brute\"\nbrute_a_max = 20\nbrute_b_max = 20\nbrute_c_max = 20\nout = {:?}\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = run(&["search", "--config", cfg.to_str().unwrap(), "--h-max", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("h in [3, 3]:"));
    assert!(fs::read_to_string(&out).unwrap().contains("\"h\":\"3\""));
}

#[test]
fn config_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out_s = out.to_str().unwrap();
    assert!(!run(&["search", "--h-min", "9", "--h-max", "3", "--out", out_s]).status.success());
    assert!(!run(&["search", "--methods", "sieve", "--out", out_s]).status.success());
    assert!(!run(&["search", "--h-min", "2", "--h-max", "3"]).status.success());
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "nonsense = 1\n").unwrap();
    assert!(!run(&["search", "--config", bad.to_str().unwrap(), "--out", out_s]).status.success());
    assert!(!run(&["verify", dir.path().join("missing").to_str().unwrap()]).status.success());
}

#[test]
fn unsolved_h_does_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = run(&[
        "search", "--h-min", "2", "--h-max", "2", "--methods", "brute", "--brute-a-max", "10",
        "--brute-b-max", "10", "--brute-c-max", "10", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 solved, 1 unsolved"));
}

#[test]
fn verify_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    fs::write(
        &path,
        "{\"h\":\"48\",\"a\":\"8\",\"b\":\"1\",\"c\":\"4\",\"d\":\"2\",\"method\":\"imported\",\"weight\":\"4144\",\"ts\":\"0\"}\n",
    )
    .unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("line 1:"));
}

#[test]
fn family_subcommand() {
    let o = run(&["family", "--id", "Gerardin", "--params", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with(r#"{"h":"48","a":"8","b":"1","c":"4","d":"3","method":"family:Gerardin","weight":"4144","ts":""#));
    let o = run(&["family", "--id", "DerivedA", "--params", "2,1"]);
    assert!(stdout(&o).contains(r#""a":"93","b":"11","c":"3","d":"29""#));
    assert!(!run(&["family", "--id", "Gerardin", "--params", "2,3"]).status.success());
    assert!(!run(&["family", "--id", "Nope", "--params", "2"]).status.success());
}

#[test]
fn elliptic_subcommand() {
    let o = run(&[
        "elliptic", "--h", "9069", "--a", "3", "--b", "1", "--seed-x", "11633949063/14161",
        "--seed-y", "1164093129464040/1685159", "--max-multiple", "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains(r#""a":"11390652421","b":"504256282","c":"6436474351","d":"1147136408""#));
    let off = run(&["elliptic", "--h", "9069", "--a", "3", "--b", "1", "--seed-x", "1", "--seed-y", "1"]);
    assert!(!off.status.success());
}
