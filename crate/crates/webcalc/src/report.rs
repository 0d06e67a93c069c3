//! Running suites and rendering their reports.
//!
//! The JSON report (schema `webcalc-suite-report/1`) is
//!
//! ```text
//! { "schema": "webcalc-suite-report/1", "suite": "tm", "N": [2, 3],
//!   "params": { "newton_ks": [2, 3, 4], "max_m": 5 },
//!   "items": [ { "suite": "tm", "N": 2, "label": "...", "passed": true,
//!                "checks": 203, "failures": 0, "elapsed_ms": 12.5,
//!                "results": [ { "name": "...", "passed": true, "detail": null }, … ] }, … ],
//!   "summary": { "items": 2, "checks": 433, "failures": 0, "passed": true, "elapsed_ms": 40.1 } }
//! ```
//!
//! Failing checks carry a `detail`, which for operator comparisons is the
//! line diff of the two operator dumps. Items appear in registry order
//! whatever the scheduling, so two runs differ only in `elapsed_ms` fields.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use webcalc_core::check::Check;
use webcalc_core::suites::{SuiteItem, SuiteParams};

pub const SCHEMA: &str = "webcalc-suite-report/1";

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl From<Check> for CheckResult {
    fn from(c: Check) -> Self {
        CheckResult {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItemReport {
    pub suite: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub label: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub elapsed_ms: f64,
    pub results: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Params {
    pub newton_ks: Vec<usize>,
    pub max_m: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub items: usize,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    #[serde(rename = "N")]
    pub ns: Vec<u32>,
    pub params: Params,
    pub items: Vec<ItemReport>,
    pub summary: Summary,
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn run_item(item: &SuiteItem) -> ItemReport {
    let start = Instant::now();
    let list = item.run();
    let failures = list.failures().count();
    ItemReport {
        suite: item.suite.to_string(),
        n: item.n,
        label: item.label.clone(),
        passed: failures == 0,
        checks: list.len(),
        failures,
        elapsed_ms: millis(start),
        results: list.checks.into_iter().map(CheckResult::from).collect(),
    }
}

/// Runs the items on at most `jobs` threads; the report keeps item order.
pub fn run_suite(
    name: &str,
    ns: &[u32],
    params: &SuiteParams,
    items: Vec<SuiteItem>,
    jobs: usize,
) -> SuiteReport {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let reports: Vec<ItemReport> = pool.install(|| items.par_iter().map(run_item).collect());
    let checks = reports.iter().map(|r| r.checks).sum();
    let failures = reports.iter().map(|r| r.failures).sum();
    SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        ns: ns.to_vec(),
        params: Params {
            newton_ks: params.newton_ks.clone(),
            max_m: params.max_m,
        },
        summary: Summary {
            items: reports.len(),
            checks,
            failures,
            passed: failures == 0,
            elapsed_ms: millis(start),
        },
        items: reports,
    }
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One line per item, followed by the details of failing checks.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            let status = if it.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{status} {:<9} N={} {:<40} {:>5} checks {:>3} failed  {:>9.1} ms\n",
                it.suite, it.n, it.label, it.checks, it.failures, it.elapsed_ms
            ));
            for c in it.results.iter().filter(|c| !c.passed) {
                out.push_str(&format!("     ✗ {}\n", c.name));
                if let Some(d) = &c.detail {
                    for l in d.lines() {
                        out.push_str(&format!("       {l}\n"));
                    }
                }
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} items, {} checks, {} failures in {:.1} ms\n",
            if s.passed { "PASSED" } else { "FAILED" },
            s.items,
            s.checks,
            s.failures,
            s.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use webcalc_core::suites::suite_items;

    fn strip_timings(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                m.remove("elapsed_ms");
                m.values_mut().for_each(strip_timings);
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timings),
            _ => {}
        }
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let p = SuiteParams::default();
        let run = |jobs| {
            let items = suite_items("newton", &[2], &p).unwrap();
            let r = run_suite("newton", &[2], &p, items, jobs);
            let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
            strip_timings(&mut v);
            v
        };
        let a = run(1);
        assert_eq!(a, run(4));
        assert_eq!(a["schema"], SCHEMA);
        assert_eq!(a["summary"]["failures"], 0);
    }
}
