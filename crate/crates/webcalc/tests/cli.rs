//! End-to-end tests of the `webcalc` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn webcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_webcalc"))
        .args(args)
        .env_remove("WEBCALC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_a_dump() {
    let o = webcalc(&["eval", &fixture("t2_n2.web")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.starts_with("# (1^,1^) -> (1^,1^), 4x4, 2 nonzero\n"),
        "{text}"
    );
    assert!(text.contains("{1}|{1}\t{1}|{1}\t1\n"));
    assert!(text.contains("{2}|{2}\t{2}|{2}\t1\n"));
}

#[test]
fn eval_of_small_webs() {
    let o = webcalc(&["eval", &fixture("empty.web")]);
    assert!(
        stdout(&o).starts_with("# () -> (), 1x1, 1 nonzero"),
        "{}",
        stdout(&o)
    );
    let o = webcalc(&["eval", &fixture("essential_circle_n3.web")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 nonzero"));
    let o = webcalc(&["eval", &fixture("circle_n3.web")]);
    assert!(stdout(&o).contains("q^2"), "{}", stdout(&o));
}

#[test]
fn check_certifies_identities() {
    for (a, b) in [
        ("st2_n3.web", "t2_n3.web"),
        ("t3_product_n2.web", "t3_sandwich_n2.web"),
        ("bigon_n3.web", "bigon_value_n3.web"),
    ] {
        let o = webcalc(&["check", &fixture(a), &fixture(b)]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{a} vs {b}: {}{}",
            stdout(&o),
            stderr(&o)
        );
    }
}

#[test]
fn check_reports_the_first_difference() {
    let o = webcalc(&[
        "check",
        &fixture("dumbbell_n2.web"),
        &fixture("crossing_n2.web"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.starts_with("not equal: first difference at target {1}|{1} source {1}|{1}"),
        "{text}"
    );
    assert!(text.lines().any(|l| l.starts_with("- ")) && text.lines().any(|l| l.starts_with("+ ")));
}

#[test]
fn exit_codes_for_bad_input() {
    // Different N.
    assert_eq!(
        webcalc(&["check", &fixture("t2_n2.web"), &fixture("t2_n3.web")])
            .status
            .code(),
        Some(2)
    );
    // Different boundaries.
    let o = webcalc(&[
        "check",
        &fixture("t2_n2.web"),
        &fixture("t3_product_n2.web"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("boundaries differ"));
    // --N disagreeing with the header.
    assert_eq!(
        webcalc(&["eval", "--N", "3", &fixture("t2_n2.web")])
            .status
            .code(),
        Some(2)
    );
    // Unknown suite, unknown flag, missing file, suite with a mode.
    assert_eq!(webcalc(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        webcalc(&["suite", "tm", "--mode", "q"]).status.code(),
        Some(2)
    );
    assert_eq!(webcalc(&["eval", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(
        webcalc(&["eval", "/nonexistent/file.web"]).status.code(),
        Some(2)
    );
    assert_eq!(
        webcalc(&["char", "T:3", "--N", "3", "--mode", "q"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.web");
    std::fs::write(&path, "N=2 mode=zeta\n[merge@1(1,1) ; frob(2)]\n").unwrap();
    let o = webcalc(&["eval", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
    // A well-formed word whose slices do not chain is a boundary error.
    std::fs::write(
        &path,
        "N=2 mode=zeta source=1^\n[split(1,1) ; split(1,1)]\n",
    )
    .unwrap();
    assert_eq!(
        webcalc(&["eval", path.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn characters_of_projectors() {
    let o = webcalc(&["char", "T:3", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "ch(T:3) = X1^3 + X2^3 + X3^3\n        = e1^3 - 3*e2*e1 + 3*e3\nrank 3\n"
    );
    let o = webcalc(&["char", "Vclasp:2", "--N", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    let o = webcalc(&["char", &fixture("t2_n3.web")]);
    assert!(stdout(&o).contains("rank 3"), "{}", stdout(&o));
}

#[test]
fn suite_reports_in_both_formats() {
    let o = webcalc(&["suite", "end2", "--N", "2..3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), 2);
    assert!(text.lines().last().unwrap().starts_with("PASSED: 2 items"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = webcalc(&[
        "suite",
        "newton",
        "--N",
        "2",
        "--k",
        "2..3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], "webcalc-suite-report/1");
    assert_eq!(v["params"]["newton_ks"], serde_json::json!([2, 3]));
    assert_eq!(v["items"].as_array().unwrap().len(), 2);
    assert_eq!(v["summary"]["passed"], true);
}

#[test]
fn projector_cache_is_used_and_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_webcalc"))
            .args(["eval", "--projector", "T:3", "--N", "2"])
            .env("WEBCALC_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].extension().unwrap(), "op");
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        stdout(&webcalc(&["eval", "--projector", "T:3", "--N", "2"])),
        stdout(&first)
    );
}

#[test]
fn list_names_every_suite() {
    let text = stdout(&webcalc(&["list"]));
    for s in webcalc_core::suites::SUITES {
        assert!(text.contains(s), "{s}");
    }
}
