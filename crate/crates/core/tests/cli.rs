use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spinor-kit"));
    c.env_remove("SPINORKIT_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const PROGRAM: &str = "universe { sector f: fermion [1,2] }\n\
                       let x = emit(f:1) * absorb(~f:2)\n\
                       bracket(x, emit(f:2))\n\
                       g(e1*eb1 + e2*eb2, e1*eb1 + e2*eb2)\n";

#[test]
fn eval_reads_stdin_and_files() {
    let out = run_stdin(&["eval", "-"], PROGRAM);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), "emit(f:1)\n2\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prog.sk");
    std::fs::write(&path, PROGRAM).unwrap();
    let from_file = run(&["eval", path.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, out.stdout);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["check", "--suite", "nope", "--seed", "1", "--trials", "3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "clifford", "--seed", "1", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "clifford", "--seed", "1", "--trials", "-4"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "clifford"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["eval", "-"], "g(e1*eb1,").status.code(), Some(2));
    assert_eq!(run(&["eval", "/definitely/not/here"]).status.code(), Some(2));
    let bad = bin().env("SPINORKIT_THREADS", "zero").args(["check", "--suite", "clifford", "--seed", "1", "--trials", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_file_matches_stdout_and_is_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["check", "--suite", "pauli", "--seed", "3", "--trials", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read(&path).unwrap();
    assert_eq!(file, out.stdout);
    let v: serde_json::Value = serde_json::from_slice(&file).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["trials"], 5);
    assert!(!String::from_utf8_lossy(&file).contains("elapsed"));
}

#[test]
fn thread_count_does_not_change_the_report() {
    let args = ["check", "--suite", "adjunction", "--seed", "11", "--trials", "20"];
    let one = bin().env("SPINORKIT_THREADS", "1").args(args).output().unwrap();
    let four = bin().env("SPINORKIT_THREADS", "4").args(args).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
