//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p webcalc --test acceptance -- --nocapture` to see
//! the lines. Criterion 2 states the curl factor as `q^{∓k(N−1)}` for every
//! label; the evaluation gives `q^{∓k(N+1−2k)}`, which agrees only for
//! `k = 1`, so that line reports FAIL. The test asserts exactly this outcome
//! and that every other criterion passes.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use webcalc::dsl::{parse_web, print_web};
use webcalc_core::check::CheckList;
use webcalc_core::eval::{EvalConfig, Evaluator};
use webcalc_core::relations::{curl, curl_exponent};
use webcalc_core::scalars::{Mode, Scalar};
use webcalc_core::suites::{suite_items, SuiteParams};
use webcalc_core::web::{essential_circle, Boundary, Gen, Sign, Strand, WebWord};

struct Verdict {
    passed: bool,
    detail: String,
}

struct Line {
    criterion: usize,
    title: &'static str,
    verdict: Verdict,
    elapsed: Duration,
    budget: Duration,
}

impl Line {
    fn passed(&self) -> bool {
        self.verdict.passed && self.elapsed <= self.budget
    }

    fn render(&self) -> String {
        let timing = if self.elapsed <= self.budget {
            format!("{:.2} s", self.elapsed.as_secs_f64())
        } else {
            format!(
                "{:.2} s, over the {} s budget",
                self.elapsed.as_secs_f64(),
                self.budget.as_secs()
            )
        };
        format!(
            "criterion {:>2}: {} {} — {} ({timing})",
            self.criterion,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.verdict.detail
        )
    }
}

fn run(
    criterion: usize,
    title: &'static str,
    budget_secs: u64,
    f: impl FnOnce() -> Verdict,
) -> Line {
    let start = Instant::now();
    let verdict = f();
    Line {
        criterion,
        title,
        verdict,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_secs),
    }
}

/// Runs named suites and summarizes their checks.
fn suites(names: &[&str], ns: &[u32], params: &SuiteParams) -> (CheckList, String) {
    let mut all = CheckList::new();
    for name in names {
        for item in suite_items(name, ns, params).expect("suite exists") {
            all.extend(item.run());
        }
    }
    let failures: Vec<String> = all.failures().take(3).map(|c| c.name.clone()).collect();
    let mut detail = format!("{} checks, {} failed", all.len(), all.failures().count());
    if !failures.is_empty() {
        detail.push_str(&format!(": {}", failures.join("; ")));
    }
    (all, detail)
}

fn suite_verdict(names: &[&str], ns: &[u32], params: &SuiteParams) -> Verdict {
    let (list, detail) = suites(names, ns, params);
    Verdict {
        passed: list.all_passed() && !list.is_empty(),
        detail,
    }
}

fn q_id(n: u32, s: Strand, e: i64) -> webcalc_core::eval::SparseOperator {
    let ev = Evaluator::new(EvalConfig::new(n, Mode::QGeneric));
    ev.identity(&Boundary(vec![s])).scale(&Scalar::q_pow(e))
}

/// Curls on strands labeled 1 and 2, both orientations, sides and signs,
/// compared with the stated factor `q^{∓k(N−1)}` (the pairing of signs fixed
/// by `k = 1`).
fn curl_mismatches(ns: &[u32]) -> (Vec<String>, bool) {
    let mut stated_fails = Vec::new();
    let mut actual_holds = true;
    for &n in ns {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::QGeneric));
        for k in 1..=2.min(n) {
            for s in [Strand::up(k), Strand::down(k)] {
                for sign in [Sign::Pos, Sign::Neg] {
                    for right in [true, false] {
                        let op = ev.evaluate_word(&curl(n, s, sign, right).unwrap()).unwrap();
                        let stated = k as i64 * curl_exponent(n, 1, sign);
                        let actual = curl_exponent(n, k, sign);
                        actual_holds &= op == q_id(n, s, actual);
                        if op != q_id(n, s, stated) {
                            let msg =
                                format!("N={n} k={k}: curl = q^{actual}·id, stated q^{stated}");
                            if !stated_fails.contains(&msg) {
                                stated_fails.push(msg);
                            }
                        }
                    }
                }
            }
        }
    }
    (stated_fails, actual_holds)
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn exit_code(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_webcalc"))
        .args(args)
        .env_remove("WEBCALC_CACHE_DIR")
        .output()
        .ok()?
        .status
        .code()
}

#[test]
fn acceptance() {
    let params = SuiteParams::default();
    let mut lines = Vec::new();

    lines.push(run(1, "planar relations, N = 2, 3, 4", 120, || {
        suite_verdict(&["webrel"], &[2, 3, 4], &params)
    }));

    let mut known_curl_deviation = false;
    lines.push(run(
        2,
        "Reidemeister moves and fork slides, N = 2, 3",
        120,
        || {
            let (list, detail) = suites(&["reid"], &[2, 3], &params);
            let (stated_fails, actual_holds) = curl_mismatches(&[2, 3]);
            known_curl_deviation = list.all_passed()
                && actual_holds
                && !stated_fails.is_empty()
                && stated_fails.iter().all(|m| !m.contains("k=1"));
            let mut detail =
                format!("RII, RIII, forkslide and curls with q^(∓k(N+1−2k)): {detail}");
            if !stated_fails.is_empty() {
                detail.push_str(&format!(
                    "; the stated factor q^(∓k(N−1)) fails for {}",
                    stated_fails.join(", ")
                ));
            }
            Verdict {
                passed: list.all_passed() && actual_holds && stated_fails.is_empty(),
                detail,
            }
        },
    ));

    lines.push(run(
        3,
        "extremal projectors T_m, N = 2, 3, 4, m ≤ 5",
        300,
        || suite_verdict(&["tm"], &[2, 3, 4], &params),
    ));

    lines.push(run(
        4,
        "essential circles and D^N = id, N = 2..6",
        60,
        || {
            let mut bad = Vec::new();
            for n in 2..=6u32 {
                let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
                for k in 1..=n {
                    let v = ev.evaluate_word(&essential_circle(n, k)).unwrap().get(0, 0);
                    let want = if k < n {
                        Scalar::zero()
                    } else {
                        Scalar::int(if n % 2 == 1 { 1 } else { -1 })
                    };
                    if v != want {
                        bad.push(format!("N={n} k={k} circle = {v}"));
                    }
                }
                for s in [Strand::up(1), Strand::down(1)] {
                    let b = Boundary(vec![s]);
                    let id = ev.identity(&b);
                    for j in 1..=n as i64 {
                        let d = ev
                            .evaluate_word(
                                &WebWord::single(n, &b, 0, Gen::Wrap(j))
                                    .unwrap()
                                    .into_annular(),
                            )
                            .unwrap();
                        if (d == id) != (j == n as i64) {
                            bad.push(format!("N={n} D^{j} on {s}"));
                        }
                    }
                }
            }
            Verdict {
                passed: bad.is_empty(),
                detail: if bad.is_empty() {
                    "all values exact".into()
                } else {
                    bad.join("; ")
                },
            }
        },
    ));

    lines.push(run(
        5,
        "End(2): B_1 calibration, A_k, X_n = Y_n, N = 2..5",
        120,
        || suite_verdict(&["end2"], &[2, 3, 4, 5], &params),
    ));

    lines.push(run(6, "Newton isomorphism, N = 2, 3, k ≤ 4", 300, || {
        suite_verdict(&["newton"], &[2, 3], &params)
    }));

    lines.push(run(
        7,
        "characters and Newton's identity, N ≤ 4",
        120,
        || suite_verdict(&["chars"], &[2, 3, 4], &params),
    ));

    lines.push(run(
        8,
        "gl(2): relations, partial trace, e_{m,n}, skeleton",
        300,
        || suite_verdict(&["gl2rel", "gl2ptr", "gl2emn", "gl2skel"], &[2], &params),
    ));

    lines.push(run(9, "spanning-set rank, N ≤ 3, n ≤ 3", 60, || {
        suite_verdict(&["spanning"], &[2, 3], &params)
    }));

    lines.push(run(10, "command line: suites, checks, fixture round trips", 300, || {
        let mut bad = Vec::new();
        for n in ["2", "3"] {
            let code = exit_code(&["suite", "all", "--N", n]);
            if code != Some(0) {
                bad.push(format!("suite all --N {n} exited {code:?}"));
            }
        }
        for (a, b) in [("st2_n3.web", "t2_n3.web"), ("t3_product_n2.web", "t3_sandwich_n2.web")] {
            let code = exit_code(&["check", &fixture(a), &fixture(b)]);
            if code != Some(0) {
                bad.push(format!("check {a} {b} exited {code:?}"));
            }
        }
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let mut count = 0;
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_none_or(|x| x != "web") {
                continue;
            }
            count += 1;
            let ok = std::fs::read_to_string(&path).ok().and_then(|t| parse_web(&t).ok()).is_some_and(|f| {
                let printed = print_web(&f.expr);
                parse_web(&printed).is_ok_and(|g| g.expr == f.expr && print_web(&g.expr) == printed)
            });
            if !ok {
                bad.push(format!("{} does not round-trip", path.display()));
            }
        }
        Verdict {
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("suite all exits 0 for N = 2, 3; sT_2 = T_2 and both T_3 recursions certified; {count} fixtures round-trip")
            } else {
                bad.join("; ")
            },
        }
    }));

    println!();
    for l in &lines {
        println!("{}", l.render());
    }
    let passed = lines.iter().filter(|l| l.passed()).count();
    println!("{passed}/{} criteria pass", lines.len());

    for l in &lines {
        if l.criterion == 2 {
            assert!(
                known_curl_deviation,
                "criterion 2 deviates from the known curl-factor discrepancy: {}",
                l.render()
            );
        } else {
            assert!(l.passed(), "{}", l.render());
        }
    }
}
