//! Verification results shared by all suites.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Result;
use crate::eval::{Basis, SparseOperator};

/// Most differing entries listed in a failure report.
const MAX_DIFF_LINES: usize = 40;

/// The outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// On failure: what went wrong, including an operator dump diff when
    /// two operators were compared.
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        }
    }

    /// A boolean condition with a lazily rendered explanation.
    pub fn holds(name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> Check {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, why())
        }
    }

    /// Compares two operators; the failure detail is a dump diff (`-` lines
    /// from the left operator, `+` lines from the right one).
    pub fn equal(
        name: impl Into<String>,
        basis: &Basis,
        lhs: &SparseOperator,
        rhs: &SparseOperator,
    ) -> Check {
        let name = name.into();
        match lhs.first_difference(rhs) {
            Ok(None) => Check::pass(name),
            Ok(Some(_)) => Check::fail(name, dump_diff(basis, lhs, rhs)),
            Err(e) => Check::fail(name, e.to_string()),
        }
    }

    /// Turns an error raised while building a check into a failure.
    pub fn from_result(name: impl Into<String>, r: Result<Check>) -> Check {
        match r {
            Ok(c) => c,
            Err(e) => Check::fail(name, format!("error: {e}")),
        }
    }
}

/// Line-level diff of two operator dumps (boundaries must agree).
pub fn dump_diff(basis: &Basis, lhs: &SparseOperator, rhs: &SparseOperator) -> String {
    let a: BTreeSet<String> = lhs.dump(basis).lines().map(String::from).collect();
    let b: BTreeSet<String> = rhs.dump(basis).lines().map(String::from).collect();
    let mut out = String::new();
    let removed = a.difference(&b).map(|l| ('-', l));
    let added = b.difference(&a).map(|l| ('+', l));
    let mut all: Vec<(char, &String)> = removed.chain(added).collect();
    all.sort_by(|x, y| x.1.cmp(y.1).then(x.0.cmp(&y.0)));
    let total = all.len();
    for (lines, (sign, l)) in all.into_iter().enumerate() {
        if lines == MAX_DIFF_LINES {
            let _ = writeln!(out, "… {} more differing lines", total - lines);
            break;
        }
        let _ = writeln!(out, "{sign} {l}");
    }
    out
}

/// Named list of checks produced by one suite run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> CheckList {
        CheckList::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Records the result of a fallible check builder.
    pub fn record(&mut self, name: impl Into<String>, r: Result<Check>) {
        self.checks.push(Check::from_result(name, r));
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
