use std::path::PathBuf;
use std::process::{Command, Output};

fn program_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lazy-asp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazy-asp"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn prints_sorted_answer_sets() {
    let path = program_file("choice.lp", "b :- not a.\na :- not b.\nc.\n");
    let output = run(&[path.to_str().unwrap(), "--n-answers", "all"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let mut sets = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let (label, set) = line.split_once(": ").unwrap();
        assert_eq!(label, format!("Answer set {}", i + 1));
        sets.push(set);
    }
    sets.sort();
    assert_eq!(sets, ["{ a, c }", "{ b, c }"]);
}

#[test]
fn answer_limit() {
    let text: String = (1..=4)
        .map(|i| format!("p{i} :- not q{i}.\nq{i} :- not p{i}.\n"))
        .collect();
    let path = program_file("sixteen.lp", &text);
    let output = run(&[path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).lines().count(), 10);
    let output = run(&[path.to_str().unwrap(), "--n-answers", "3"]);
    assert_eq!(stdout(&output).lines().count(), 3);
    let output = run(&[path.to_str().unwrap(), "--n-answers", "all"]);
    assert_eq!(stdout(&output).lines().count(), 16);
}

#[test]
fn experimental_arm_flags() {
    let path = program_file("arm.lp", "a :- not b.\nb :- not a.\n:- a.\n");
    for flags in [
        &["--phase-init", "false", "--no-restarts"][..],
        &["--phase-init", "random", "--seed", "9", "--deletion", "off"],
        &["--heuristic", "naive", "--restarts", "off", "--luby-unit", "1"],
        &["--grounding-constraints", "strict", "--grounding-rules", "permissive"],
    ] {
        let mut args = vec![path.to_str().unwrap()];
        args.extend_from_slice(flags);
        let output = run(&args);
        assert_eq!(output.status.code(), Some(0), "{flags:?}");
        assert_eq!(stdout(&output), "Answer set 1: { b }\n", "{flags:?}");
    }
}

#[test]
fn stats_go_to_stderr() {
    let path = program_file("stats.lp", "a.\n");
    let output = run(&[path.to_str().unwrap(), "--stats"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "Answer set 1: { a }\n");
    let stderr = String::from_utf8(output.stderr).unwrap();
    for key in ["status=", "conflicts=", "decisions=", "restarts=", "learned=", "deleted=", "ground_rules=", "wall_time_ms="] {
        assert!(stderr.contains(key), "{key} missing from {stderr}");
    }
}

#[test]
fn unsatisfiable_exits_zero() {
    let path = program_file("odd.lp", "a :- not a.\n");
    let output = run(&[path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "UNSATISFIABLE\n");
}

#[test]
fn usage_and_input_errors_exit_one() {
    let missing = run(&["/nonexistent/program.lp"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8(missing.stderr).unwrap().contains("cannot read"));

    let bad = program_file("bad.lp", "p(1 :- q.\n");
    let output = run(&[bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8(output.stderr).unwrap().contains("bad.lp:"));

    let unsafe_rule = program_file("unsafe.lp", "p(X) :- not q(X).\n");
    assert_eq!(run(&[unsafe_rule.to_str().unwrap()]).status.code(), Some(1));

    let good = program_file("good.lp", "a.\n");
    assert_eq!(run(&[good.to_str().unwrap(), "--n-answers", "0"]).status.code(), Some(1));
    assert_eq!(run(&[good.to_str().unwrap(), "--luby-unit", "0"]).status.code(), Some(1));
    assert_eq!(run(&[good.to_str().unwrap(), "--phase-init", "maybe"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("--n-answers"));
}

#[test]
fn files_are_combined() {
    let facts = program_file("facts.lp", "q(1,2).\n");
    let rules = program_file("rules.lp", "p(X) :- q(X,Y).\n");
    let output = run(&[facts.to_str().unwrap(), rules.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "Answer set 1: { p(1), q(1,2) }\n");
}

#[test]
fn time_limit_exits_three() {
    // 2^20 answer sets cannot be enumerated within a millisecond
    let text: String = (1..=20)
        .map(|i| format!("p{i} :- not q{i}.\nq{i} :- not p{i}.\n"))
        .collect();
    let path = program_file("wide.lp", &text);
    let output = run(&[path.to_str().unwrap(), "--n-answers", "all", "--time-limit", "0.001"]);
    assert_eq!(output.status.code(), Some(3));
}
