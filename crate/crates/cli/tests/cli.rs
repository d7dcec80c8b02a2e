mod common;

use std::fs;

use common::{blessing, fixture, read_golden, run, run_case, write_golden, CASES, RESEARCH};

#[test]
fn batch_outputs_match_goldens() {
    let mut failures = Vec::new();
    for c in CASES {
        let (out, code) = run_case(c);
        if blessing() {
            write_golden(c.name, &out);
        }
        if code != c.code {
            failures.push(format!("{}: exit {code}, expected {}", c.name, c.code));
        }
        match read_golden(c.name) {
            Some(g) if g == out => {}
            Some(_) => failures.push(format!("{}: output differs:\n{}", c.name, String::from_utf8_lossy(&out))),
            None => failures.push(format!("{}: no golden file", c.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn c1_subsumption_reports_the_structural_engine() {
    let (out, code) = run(&["subsumes", RESEARCH, "C1", "author"], None);
    assert_eq!(String::from_utf8(out).unwrap(), "SUBSUMED (engine: structural)\n");
    assert_eq!(code, 0);
}

#[test]
fn counterexample_has_one_element() {
    let (out, code) = run(&["subsumes", RESEARCH, "person", "author"], None);
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("NOT SUBSUMED"));
    assert!(text.contains("domain = {0}\n"));
    assert_eq!(code, 1);
}

#[test]
fn budget_can_come_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_adelog"))
        .args(["--engine", "tableau", "subsumes", RESEARCH, "C1", "author"])
        .current_dir(common::manifest_dir())
        .env("ADELOG_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    let (_, code) = run(&["frobnicate"], None);
    assert_eq!(code, 2);
    let (_, code) = run(&["subsumes", RESEARCH, "C1"], None);
    assert_eq!(code, 2);
}

#[test]
fn fire_writes_a_restorable_snapshot() {
    let dir = std::env::temp_dir().join(format!("adelog-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let snap = dir.join("after.adl");
    let snap_arg = snap.to_str().unwrap();
    let (_, code) = run(&["fire", RESEARCH, "addAnnaPaper", "--snapshot", snap_arg], None);
    assert_eq!(code, 0);
    let (out, code) = run(&["query", snap_arg, "authors"], None);
    assert_eq!((String::from_utf8(out).unwrap().as_str(), code), ("{Anna, Rick}\n", 0));

    // the cache line is part of the file and is checked on load
    let text = fs::read_to_string(&snap).unwrap();
    assert!(text.contains("cache authors w0 { Anna, Rick };"));
    fs::write(&snap, text.replace("{ Anna, Rick }", "{ Rick }")).unwrap();
    let (out, code) = run(&["check", snap_arg], None);
    assert_eq!(code, 1, "{}", String::from_utf8_lossy(&out));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repl_keeps_going_after_errors() {
    let (out, code) = run(&["repl", RESEARCH], Some("tests/fixtures/session.txt"));
    let text = String::from_utf8(out).unwrap();
    assert_eq!(code, 0);
    assert!(text.starts_with("SUBSUMED (structural)\n"));
    assert!(text.contains("error: unknown event `nope`"));
    assert!(text.trim_end().ends_with("* w0 (5 assertions)"));
    assert!(fixture(RESEARCH).exists());
}
