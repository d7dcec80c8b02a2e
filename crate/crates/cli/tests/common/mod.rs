#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub const RESEARCH: &str = "tests/fixtures/research.adl";

/// A batch invocation with its committed output and exit code.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case { name, args, stdin: None, code }
}

pub const CASES: &[Case] = &[
    case("check", &["check", RESEARCH], 0),
    case("check_invalid", &["check", "tests/fixtures/invalid.adl"], 1),
    case("classify", &["classify", RESEARCH], 0),
    case("classify_dot", &["--format", "dot", "classify", RESEARCH], 0),
    case("classify_json", &["--format", "json-lines", "classify", RESEARCH], 0),
    case("classify_empty", &["classify", "tests/fixtures/empty.adl"], 0),
    case("subsumes_c1_author", &["subsumes", RESEARCH, "C1", "author"], 0),
    case("subsumes_c1_author_tableau", &["--engine", "tableau", "subsumes", RESEARCH, "C1", "author"], 0),
    case("subsumes_person_author", &["subsumes", RESEARCH, "person", "author"], 1),
    case("subsumes_person_author_json", &["--format", "json-lines", "subsumes", RESEARCH, "person", "author"], 1),
    case("subsumes_parse_error", &["subsumes", RESEARCH, "person and", "author"], 2),
    case("subsumes_undefined", &["subsumes", RESEARCH, "editor", "author"], 2),
    case("subsumes_budget", &["--engine", "tableau", "--budget-nodes", "1", "subsumes", RESEARCH, "C1", "author"], 3),
    case("satisfiable_c1", &["satisfiable", RESEARCH, "C1"], 0),
    case("satisfiable_clash", &["satisfiable", RESEARCH, "C1 and (<= 0 paper)"], 1),
    case("instances_technical", &["instances", RESEARCH, "technical"], 0),
    case("instance_logics_technical", &["instance", RESEARCH, "Logics in Humanities", "technical"], 0),
    case("instance_rick_technical", &["instance", RESEARCH, "Rick", "technical"], 1),
    case("oracle_c1_author", &["--max-domain", "4", "oracle", RESEARCH, "C1", "author"], 0),
    case("oracle_person_author", &["oracle", RESEARCH, "person", "author"], 1),
    case("describe_author", &["describe", RESEARCH, "author"], 0),
    case("describe_person", &["describe", RESEARCH, "person"], 1),
    case("describe_technical", &["describe", RESEARCH, "technical"], 0),
    case("describe_nobody", &["describe", RESEARCH, "InformationTechnologies"], 1),
    case("query_authors", &["query", RESEARCH, "authors"], 0),
    case("fire_add_anna", &["fire", RESEARCH, "addAnnaPaper"], 0),
    case("fire_unknown", &["fire", RESEARCH, "nope"], 2),
    case("worlds", &["worlds", RESEARCH], 0),
    case("missing_file", &["classify", "tests/fixtures/absent.adl"], 2),
    case("bad_max_domain", &["--max-domain", "9", "oracle", RESEARCH, "C1", "author"], 2),
    Case { name: "repl_session", args: &["repl", RESEARCH], stdin: Some("tests/fixtures/session.txt"), code: 0 },
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Runs the binary from the crate directory so paths in the output are stable.
pub fn run(args: &[&str], stdin: Option<&str>) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adelog"));
    cmd.args(args).current_dir(manifest_dir()).env_remove("ADELOG_BUDGET").stderr(Stdio::null());
    cmd.stdin(match stdin {
        Some(p) => Stdio::from(fs::File::open(manifest_dir().join(p)).expect("stdin fixture")),
        None => Stdio::null(),
    });
    let out = cmd.output().expect("run adelog");
    (out.stdout, out.status.code().expect("exit code"))
}

pub fn run_case(c: &Case) -> (Vec<u8>, i32) {
    run(c.args, c.stdin)
}

/// Writes goldens instead of comparing when `ADELOG_BLESS` is set.
pub fn blessing() -> bool {
    std::env::var_os("ADELOG_BLESS").is_some()
}

pub fn read_golden(name: &str) -> Option<Vec<u8>> {
    fs::read(golden_path(name)).ok()
}

pub fn write_golden(name: &str, bytes: &[u8]) {
    fs::write(golden_path(name), bytes).expect("write golden");
}

pub fn fixture(rel: &str) -> PathBuf {
    manifest_dir().join(Path::new(rel))
}
