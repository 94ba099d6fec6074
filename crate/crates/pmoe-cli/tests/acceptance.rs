//! Acceptance suite, CLI criterion: the three documented example queries
//! reproduce their fixtures byte-exactly, and the exit codes follow the
//! contract (0 = results, 1 = none, 2 = error).

use std::io::Write;
use std::process::{Command, Output};

fn pmoe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmoe"))
        .args(args)
        .output()
        .expect("pmoe runs")
}

#[test]
fn criterion_6_cli_fixtures_and_exit_codes() {
    // Documented query 1: multiset cons decomposition with the default body.
    let mut target = tempfile::NamedTempFile::new().unwrap();
    target.write_all(b"[1,2,3]").unwrap();
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
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "(1, [2, 3])\n(2, [1, 3])\n(3, [1, 2])\n"
    );

    // Documented query 2: fair enumeration over an infinite builtin target.
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
        String::from_utf8(out.stdout).unwrap(),
        "(1, 1)\n(1, 2)\n(2, 1)\n(1, 3)\n(2, 2)\n(3, 1)\n"
    );

    // Documented query 3: twin primes with an explicit body.
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
        String::from_utf8(out.stdout).unwrap(),
        "(3, 5)\n(5, 7)\n(11, 13)\n(17, 19)\n(29, 31)\n(41, 43)\n(59, 61)\n(71, 73)\n(101, 103)\n(107, 109)\n"
    );

    // Exit 1: a query that matches nothing.
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

    // Exit 2: an unbound value-pattern variable, named in the message.
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
    assert!(String::from_utf8(out.stderr).unwrap().contains("`z`"));

    println!(
        "criterion 6: PASS — documented CLI queries byte-exact; exit codes 0/1/2 as specified"
    );
}
