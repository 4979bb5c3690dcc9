use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_consistent-oracle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(summary: &str, key: &str) -> u64 {
    summary
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {summary}"))
        .parse()
        .unwrap()
}

fn write_class(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const THRESHOLDS: &str = r#"{"domain":[0,1,2],"hypotheses":[
    {"name":"t0","values":"111"},{"name":"t2","values":"001"}]}"#;

const SQUARE: &str = r#"{"domain":[0,1],"hypotheses":[
    {"name":"a","values":"00"},{"name":"b","values":"01"},
    {"name":"c","values":"10"},{"name":"d","values":"11"}]}"#;

#[test]
fn simulate_ternary_two() {
    let o = run(&["simulate", "--learner", "predict", "--adversary", "ternary:2", "--cap", "50", "--seed", "7"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(field(&s, "mistakes"), 9);
    assert!(s.contains("validation=pass"));
}

#[test]
fn simulate_create_adv_zero() {
    let o = run(&["simulate", "--learner", "create-adv:0", "--adversary", "free", "--cap", "100"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(field(&s, "mistakes"), 16);
    assert!(s.contains("termination=learner-halted"));
}

#[test]
fn simulate_soa_on_dimension_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_class(dir.path(), "t.json", THRESHOLDS);
    let o = run(&["simulate", "--learner", "soa", "--adversary", &format!("class-greedy:{file}"), "--cap", "100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(field(&stdout(&o), "mistakes") <= 1);
}

#[test]
fn transcripts_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_class(dir.path(), "sq.json", SQUARE);
    let adv = format!("class-random:{file}");
    let out = |name: &str, seed: &str| {
        let path = dir.path().join(name);
        let o = run(&[
            "simulate", "--adversary", &adv, "--seed", seed, "--cap", "40", "--validate", "full",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        fs::read(path).unwrap()
    };
    let a = out("a.jsonl", "3");
    assert_eq!(a, out("b.jsonl", "3"));
    assert_ne!(a, out("c.jsonl", "4"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().next().unwrap().contains("\"kind\":\"header\""));
    assert!(text.lines().any(|l| l.contains("\"vote_width\"") && l.contains("\"active_count\"")));
}

#[test]
fn ldim_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let one = write_class(dir.path(), "one.json", r#"{"domain":[0,1],"hypotheses":[{"name":"h","values":"10"}]}"#);
    let o = run(&["ldim", &one]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ldim = 0");

    let sq = write_class(dir.path(), "sq.json", SQUARE);
    let o = run(&["ldim", &sq, "--certificate"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("ldim = 2\n"));
    assert_eq!(s.matches("leaf ").count(), 4);
    assert_eq!(s.matches("x=").count(), 3);
    assert!(!s.contains("leaf ?"));
}

#[test]
fn malformed_class_names_the_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_class(
        dir.path(),
        "bad.json",
        r#"{"domain":[0,1,2],"hypotheses":[{"name":"ok","values":"010"},{"name":"broken","values":"01"}]}"#,
    );
    let o = run(&["ldim", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken"));
}

#[test]
fn verify_suites_exit_status() {
    for suite in ["prefix:2", "lower:2", "advanced:0"] {
        let o = run(&["verify", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).ends_with(&format!("verify {suite}: pass\n")));
    }
    let o = run(&["verify", "prefix:40"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL size guard"));
}

#[test]
fn bench_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let table = |name: &str| {
        let path = dir.path().join(name);
        let o = run(&[
            "bench", "--d", "1-4", "--learners", "predict", "--adversaries", "ternary,flood",
            "--no-timing", "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        fs::read_to_string(path).unwrap()
    };
    let a = table("a.tsv");
    assert_eq!(a, table("b.tsv"));
    let mistakes: Vec<&str> = a.lines().skip(1).map(|l| l.split('\t').nth(4).unwrap()).collect();
    assert_eq!(mistakes, ["3", "3", "9", "7", "27", "15", "81", "31"]);
}

#[test]
fn bench_upper_row_reports_budget() {
    let o = run(&["bench", "--d", "1", "--learners", "predict", "--adversaries", "class-greedy", "--no-timing"]);
    assert!(o.status.success());
    let row: Vec<String> = stdout(&o).lines().nth(1).unwrap().split('\t').map(String::from).collect();
    assert_eq!(row[3], "220");
    assert_eq!(row[5], "271");
    assert_eq!(row[7], "ok");
}

#[test]
fn bad_selectors_are_usage_errors() {
    let o = run(&["simulate", "--adversary", "nope:1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["simulate", "--learner", "soa", "--adversary", "free"]);
    assert_eq!(o.status.code(), Some(2));
}
