use std::process::{Command, Output};

use quqe_core::kernel::script::parse_wff_in;
use quqe_core::stdlib::stdlib_theory;
use serde_json::Value;

const ROOT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");

fn quqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quqe")).args(args).current_dir(ROOT).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = quqe(&all);
    (serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{:?}: {} in {:?}", args, e, o)), code(&o))
}

fn expected_code(verdict: &str) -> i32 {
    match verdict {
        "ok" | "true" | "defined" => 0,
        "false" | "undefined" | "failed" => 1,
        "unknown" => 2,
        "usage" => 3,
        other => panic!("unknown verdict {}", other),
    }
}

#[test]
fn substitution_where_only_the_first_step_acts() {
    let o = quqe(&["sub", "--a", "(quote T)", "--x", "x:eps", "--b", "(quote (eval x:eps : o))"]);
    assert_eq!(stdout(&o), "(quote T)");
    assert_eq!(code(&o), 0);
}

#[test]
fn proves_excluded_middle() {
    let o = quqe(&["prove", "proofs/lem.qpf", "--theory", "stdlib.quqe"]);
    assert_eq!(stdout(&o), "ok (6 lines)");
    assert_eq!(code(&o), 0);
}

#[test]
fn bound_variable_is_not_free() {
    let o = quqe(&["not-free-in", "--v", "x:i", "--c", "(quote (\\x:i. x:i))"]);
    assert_eq!(stdout(&o), "true");
    assert_eq!(code(&o), 0);
}

#[test]
fn proves_every_shipped_script() {
    let o = quqe(&[
        "prove",
        "--theory",
        "stdlib.quqe",
        "proofs/t_true.qpf",
        "proofs/lem.qpf",
        "proofs/implies_eq.qpf",
        "proofs/sub_app.qpf",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "proofs/t_true.qpf: ok (1 lines)");
    assert_eq!(lines[1], "proofs/lem.qpf: ok (6 lines)");
}

#[test]
fn failing_proof_reports_class() {
    let dir = std::env::temp_dir().join("quqe-cli-bad.qpf");
    std::fs::write(&dir, "line 1: T ; axiom 6.2 {c=#Q:((o o) o)}\nline 2: T ; rule2 3 1\n").unwrap();
    let (v, c) = json(&["prove", dir.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(v["diagnostics"][0]["class"], "BadLineRef");
}

#[test]
fn undefined_and_unknown_verdicts() {
    let o = quqe(&["cleanse", "--c", "(quote (eval x:eps : i))"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("undefined", 1));
    let o = quqe(&["not-free-in", "--v", "y:eps", "--c", "z:eps"]);
    assert_eq!(code(&o), 2);
    let o = quqe(&["not-free-in", "--v", "x:eps", "--c", "(quote (eval x:eps : o))"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("false", 1));
}

#[test]
fn exit_codes_follow_verdicts() {
    let cases: &[&[&str]] = &[
        &["check-wff", "(p:o & q:o)"],
        &["check-wff", "(p:o & x:i)"],
        &["typecheck", "(\\x:i. x:i)"],
        &["normalize", "((\\x:i. x:i) c:i)"],
        &["normalize", "(eval (quote x:i) : o)"],
        &["normalize", "bot:i"],
        &["sub", "--a", "y:i", "--x", "x:i", "--b", "(quote (\\y:i. x:i))"],
        &["sub", "--a", "y:i", "--x", "x:i", "--b", "(quote (f:(i i) x:i))"],
        &["sub", "--a", "y:i", "--x", "(f:(i i) x:i)", "--b", "(quote x:i)"],
        &["cleanse", "--c", "(quote (p:o & q:o))"],
        &["cleanse", "--c", "(quote (eval x:eps : i))"],
        &["not-free-in", "--v", "x:i", "--c", "(quote x:i)"],
        &["not-free-in", "--v", "x:eps", "--c", "w:eps"],
        &["quote", "(p:o => q:o)"],
        &["eval", "(quote (p:o & T))", "--type", "o"],
        &["eval", "(quote p:o)", "--type", "i"],
        &["taut", "(p:o | (~ p:o))"],
        &["taut", "(p:o & q:o)"],
        &["taut", "x:i"],
        &["normalize", "((\\x:i. x:i) c:i)", "--fuel", "0"],
        &["prove", "does-not-exist.qpf"],
        &["demo", "and-simp"],
    ];
    for args in cases {
        let (v, c) = json(args);
        let verdict = v["verdict"].as_str().unwrap();
        assert_eq!(c, expected_code(verdict), "{:?}: {}", args, v);
    }
}

#[test]
fn json_wffs_parse_back() {
    let theory = stdlib_theory();
    let cases: &[&[&str]] = &[
        &["normalize", "--theory", "stdlib.quqe", "(#converse:(eps eps) (quote (p:o => q:o)))"],
        &["normalize", "--theory", "stdlib.quqe", "(#and-simp:((eps eps) eps) (quote p:o) (quote q:o))"],
        &["quote", "(forall x:i. (x:i == x:i))"],
        &["check-wff", "(\\x:eps. (eval x:eps : o))"],
        &["check-wff", "--expand-sugar", "((p:o => q:o) & (exists x:i. (x:i == c:i)))"],
        &["sub", "--a", "(quote (x:eps == x:eps))", "--x", "x:eps", "--b", "(quote (eval x:eps : o))"],
    ];
    for args in cases {
        let (v, _) = json(args);
        let text = v["wff"].as_str().unwrap_or_else(|| panic!("{:?}: {}", args, v));
        parse_wff_in(text, &theory.sig).unwrap_or_else(|e| panic!("{}: {}", text, e));
    }
    let (v, _) = json(&["sub", "--a", "(quote (x:eps == x:eps))", "--x", "x:eps", "--b", "(quote (eval x:eps : o))"]);
    let got = parse_wff_in(v["wff"].as_str().unwrap(), &theory.sig).unwrap();
    let want = parse_wff_in("(quote ((quote (x:eps == x:eps)) == (quote (x:eps == x:eps))))", &theory.sig).unwrap();
    assert_eq!(quqe_core::encoding::canonicalize(&got), quqe_core::encoding::canonicalize(&want));
}

#[test]
fn malformed_input_never_panics() {
    let cases: &[&[&str]] = &[
        &["check-wff", ""],
        &["check-wff", "((((("],
        &["check-wff", "(\\x. x)"],
        &["normalize", "(quote"],
        &["sub", "--a", "y:i", "--x", "x:i", "--b", "y:i"],
        &["sub", "--a", "y:i"],
        &["eval", "(quote p:o)", "--type", "((o"],
        &["taut", "%%%"],
        &["prove", "Cargo.toml"],
        &["prove", "proofs/lem.qpf", "--theory", "Cargo.toml"],
        &["--fuel", "-1", "normalize", "T"],
        &["--mode", "strange", "normalize", "T"],
        &["demo", "nothing"],
        &[],
    ];
    for args in cases {
        let o = quqe(args);
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(!err.contains("panicked"), "{:?}: {}", args, err);
        assert!((1..=3).contains(&code(&o)), "{:?}: exit {}", args, code(&o));
    }
}

#[test]
fn demo_runs() {
    let o = quqe(&["demo"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("converse (quote ((p:o & q:o) => r:o)) = (quote (r:o => (p:o & q:o)))"), "{}", out);
    assert!(out.contains("lem: ok (6 lines)"));
}
