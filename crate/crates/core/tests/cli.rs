use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_posetcov");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("POSETCOV_NAIVE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_worked_example() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "worked.txt", "abdce\nbadce\nabcde\nabdec\n");
    let o = run(&["solve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("k = 2\n"), "{out}");
    assert!(o.stderr.is_empty());
}

#[test]
fn solve_diamond_reports_hasse_edges() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "diamond.txt", "abcd\nacbd\n");
    let o = run(&["solve", s(&f), "--format", "json", "--languages"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 1);
    let mut hasse: Vec<String> = v["posets"][0]["hasse"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| format!("{}{}", e[0].as_str().unwrap(), e[1].as_str().unwrap()))
        .collect();
    hasse.sort();
    assert_eq!(hasse, ["ab", "ac", "bd", "cd"]);
    assert_eq!(
        v["posets"][0]["linearizations"],
        serde_json::json!(["abcd", "acbd"])
    );
    for key in ["universe", "method", "components", "stats"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["vars", "clauses", "queries", "solve_ms"] {
        assert!(v["stats"].get(key).is_some(), "{key}");
    }
}

#[test]
fn max_k_failure_is_nonzero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "worked.txt", "abdce\nbadce\nabcde\nabdec\n");
    let o = run(&["solve", s(&f), "--max-k", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("at most 1"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "abc\nabd\n");
    assert_eq!(run(&["solve", s(&f)]).status.code(), Some(2));
    let f = write(&dir, "dup.txt", "abc\nabc\n");
    assert_eq!(run(&["check-single", s(&f)]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bench", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(run(&["export", "x.txt"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_single() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "diamond.txt", "abcd\nacbd\n");
    let o = run(&["check-single", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "single poset: a<b a<c b<d c<d\n");

    let f = write(&dir, "worked.txt", "abdce\nbadce\nabcde\nabdec\n");
    let o = run(&["check-single", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not a single poset language\n");

    let f = write(&dir, "chain.txt", "abc\n");
    assert_eq!(
        stdout(&run(&["check-single", s(&f)])),
        "single poset: a<b b<c\n"
    );
}

#[test]
fn gen_is_deterministic_and_valid() {
    let o = run(&["gen", "--n", "3", "--m", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 6);

    assert_eq!(run(&["gen", "--n", "3", "--m", "7"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let f = dir.path().join("g.txt");
    let args = [
        "gen",
        "--n",
        "5",
        "--m",
        "30",
        "--connected",
        "--seed",
        "7",
        "-o",
        s(&f),
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = fs::read_to_string(&f).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(fs::read_to_string(&f).unwrap(), first);
    assert_eq!(first.lines().filter(|l| !l.starts_with('#')).count(), 30);

    let orders = posetcov::instance::parse_instance(&first).unwrap();
    let g = posetcov::swap_graph::SwapGraph::build(&orders);
    assert_eq!(g.components().len(), 1);

    let o = run(&[
        "gen",
        "--n",
        "4",
        "--from-poset",
        "--density",
        "0.3",
        "--seed",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lang = posetcov::instance::parse_instance(&stdout(&o)).unwrap();
    assert!(posetcov::driver::single_poset_cover(&lang).is_some());
}

#[test]
fn export_dot() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "diamond.txt", "abcd\nacbd\n");
    let o = run(&["export", "--swap-graph", s(&f)]);
    assert_eq!(
        stdout(&o),
        "graph swap {\n  \"abcd\";\n  \"acbd\";\n  \"abcd\" -- \"acbd\" [label=\"b,c\"];\n}\n"
    );
    let o = run(&["export", "--hasse", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches(" -> ").count(), 4);

    let f = write(&dir, "far.txt", "abc\ncba\n");
    let out = stdout(&run(&["export", "--swap-graph", s(&f)]));
    assert_eq!(out.matches(" -- ").count(), 0);
    assert_eq!(out.lines().count(), 4);

    assert_eq!(
        run(&["export", "--swap-graph", "--hasse", s(&f)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn emit_cnf_writes_dimacs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ab.txt", "ab\n");
    let cnf = dir.path().join("out.cnf");
    let o = run(&["solve", s(&f), "--emit-cnf", s(&cnf)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&cnf).unwrap();
    assert!(text.contains("c var 1 poset 0 pair 0 1 a b\n"));
    assert!(text.contains("p cnf 2 3\n"));
}

#[test]
fn naive_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.txt", "abcd\nbacd\ndcba\n");
    let cnf = dir.path().join("out.cnf");
    let o = Command::new(BIN)
        .args(["solve", s(&f), "--method", "naive", "--emit-cnf", s(&cnf)])
        .env("POSETCOV_NAIVE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 3"));
}

#[test]
fn bench_csv() {
    let o = run(&[
        "bench",
        "--n-range",
        "3..3",
        "--m-range",
        "2..4",
        "--trials",
        "5",
        "--timeout",
        "60",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,m,trials,solved,timeouts,median_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(&r[2..5], ["5", "5", "0"]);
    }
}
