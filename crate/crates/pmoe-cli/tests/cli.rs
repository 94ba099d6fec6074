//! End-to-end tests of the `pmoe` binary: documented queries against their
//! fixtures, byte-exact, and the exit-code contract (0 = results, 1 = none,
//! 2 = error).

use std::io::Write;
use std::process::{Command, Output};

fn pmoe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmoe"))
        .args(args)
        .output()
        .expect("pmoe runs")
}

fn write_json(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn multiset_cons_query_fixture() {
    let target = write_json("[1,2,3]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "multiset integer",
        "--pattern",
        "$x : $xs",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "(1, [2, 3])\n(2, [1, 3])\n(3, [1, 2])\n");
}

#[test]
fn infinite_set_pairs_fixture() {
    let out = pmoe(&[
        "query",
        "--matcher",
        "set something",
        "--pattern",
        "$x : $y : _",
        "--target-builtin",
        "naturals",
        "--mode",
        "bfs",
        "--take",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "(1, 1)\n(1, 2)\n(2, 1)\n(1, 3)\n(2, 2)\n(3, 1)\n"
    );
}

#[test]
fn twin_primes_fixture() {
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "_ ++ $p : #(p + 2) : _",
        "--body",
        "(p, p + 2)",
        "--target-builtin",
        "primes",
        "--take",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "(3, 5)\n(5, 7)\n(11, 13)\n(17, 19)\n(29, 31)\n(41, 43)\n(59, 61)\n(71, 73)\n(101, 103)\n(107, 109)\n"
    );
}

#[test]
fn dfs_mode_changes_the_order() {
    let out = pmoe(&[
        "query",
        "--matcher",
        "set something",
        "--pattern",
        "$x : $y : _",
        "--target-builtin",
        "naturals",
        "--mode",
        "dfs",
        "--take",
        "6",
    ]);
    assert_eq!(
        stdout_of(&out),
        "(1, 1)\n(1, 2)\n(1, 3)\n(1, 4)\n(1, 5)\n(1, 6)\n"
    );
}

#[test]
fn zero_results_exit_one() {
    let target = write_json("[1,2,3]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "#[9, 9]",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_of(&out), "");
}

#[test]
fn unbound_value_variable_exit_two_names_it() {
    let target = write_json("[1,2,3]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "#z : $z : _",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("`z`"), "stderr: {stderr}");
}

#[test]
fn syntax_error_exit_two_with_position() {
    let target = write_json("[1]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "$x :",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("1:"), "stderr: {stderr}");
}

#[test]
fn non_integer_json_exit_two() {
    let target = write_json("1.5");
    let out = pmoe(&[
        "query",
        "--matcher",
        "eq",
        "--pattern",
        "#1",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runaway_query_hits_the_state_fuel() {
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "_ ++ #0 : _",
        "--target-builtin",
        "naturals",
        "--max-states",
        "5000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("fuel"), "stderr: {stderr}");
}

#[test]
fn stats_go_to_stderr() {
    let target = write_json("[1,2,3]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "multiset integer",
        "--pattern",
        "$x : _",
        "--target",
        target.path().to_str().unwrap(),
        "--stats",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout_of(&out).contains("statesExpanded"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("statesExpanded:"), "stderr: {stderr}");
    assert!(stderr.contains("branchesCreated:"), "stderr: {stderr}");
}

#[test]
fn term_targets_from_json() {
    let target = write_json(r#"[{"ctor":"Edge","args":[1,2]},{"ctor":"Edge","args":[2,3]}]"#);
    let out = pmoe(&[
        "query",
        "--matcher",
        "multiset something",
        "--pattern",
        "$e : _",
        "--target",
        target.path().to_str().unwrap(),
        "--take",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "Edge 1 2\n");
}

#[test]
fn demo_list_and_replay() {
    let out = pmoe(&["demo", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = stdout_of(&out);
    for name in ["twin-primes", "nqueens", "sat", "poker", "tsp", "social"] {
        assert!(listing.contains(name), "missing {name} in listing");
    }

    let out = pmoe(&["demo", "nqueens"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "[2, 4, 1, 3]\n[3, 1, 4, 2]\n");

    let out = pmoe(&["demo", "twin-primes", "--take", "3"]);
    assert_eq!(stdout_of(&out), "(3, 5)\n(5, 7)\n(11, 13)\n");

    let out = pmoe(&["demo", "no-such-demo"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demo_outputs_match_documented_results() {
    let out = pmoe(&["demo", "descendants"]);
    assert_eq!(
        stdout_of(&out),
        "\"OCaml\"\n\"Haskell\"\n\"Curry\"\n\"Coq\"\n\"Egison\"\n\"Lisp\"\n\"Scheme\"\n\"Racket\"\n"
    );
    let out = pmoe(&["demo", "two-hop"]);
    assert_eq!(stdout_of(&out), "[1, 3, 4, 5, 6, 7]\n");
    let out = pmoe(&["demo", "unrequited"]);
    assert_eq!(stdout_of(&out), "4\n");
    let out = pmoe(&["demo", "sat"]);
    assert_eq!(stdout_of(&out), "True\n");
    let out = pmoe(&["demo", "tsp", "--take", "1"]);
    assert_eq!(
        stdout_of(&out),
        "([\"London\", \"New York\", \"Vancouver\", \"Tokyo\", \"Berlin\"], 46)\n"
    );
    let out = pmoe(&["demo", "social"]);
    assert_eq!(stdout_of(&out), "(2, \"Haskell_Cafe\")\n");
}

#[test]
fn invalid_mode_exit_two() {
    let target = write_json("[1]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "$x : _",
        "--target",
        target.path().to_str().unwrap(),
        "--mode",
        "sideways",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn take_larger_than_result_count_prints_everything() {
    let target = write_json("[1,2]");
    let out = pmoe(&[
        "query",
        "--matcher",
        "list integer",
        "--pattern",
        "_ ++ $x : _",
        "--target",
        target.path().to_str().unwrap(),
        "--take",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "1\n2\n");
}

#[test]
fn sorted_list_matcher_through_the_query_language() {
    let out = pmoe(&[
        "query",
        "--matcher",
        "sortedList integer",
        "--pattern",
        "_ ++ $p : (_ ++ #(p + 6) : _)",
        "--body",
        "(p, p + 6)",
        "--target-builtin",
        "primes",
        "--take",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "(5, 11)\n(7, 13)\n(11, 17)\n(13, 19)\n(17, 23)\n(23, 29)\n(31, 37)\n(37, 43)\n(41, 47)\n(47, 53)\n"
    );
}

#[test]
fn tuple_matchers_through_the_query_language() {
    let target = write_json(r#"{"tuple": [[1,2,3],[2,3,4]]}"#);
    let out = pmoe(&[
        "query",
        "--matcher",
        "(multiset eq, multiset eq)",
        "--pattern",
        "($x : _, #x : _)",
        "--target",
        target.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "2\n3\n");
}
