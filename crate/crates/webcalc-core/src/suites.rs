//! Named identity suites, split into independently runnable items.
//!
//! Each item is a pure function producing a [`CheckList`], so a driver may
//! run items in any order or concurrently and still assemble a
//! deterministic report by keeping the item order.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::check::{Check, CheckList};
use crate::end2::end2_suite;
use crate::error::{Error, Result};
use crate::gl2::{calibrate_ptr, gl2emn_suite, gl2ptr_suite, gl2rel_suite, gl2skel_suite};
use crate::newton::newton_suite;
use crate::projectors::{spanning_suite, tm_suite};
use crate::relations::{annular_suite, reid_suite, webrel_suite};
use crate::symfun::chars_suite;

/// Every suite name, in the order `all` runs them.
pub const SUITES: [&str; 11] = [
    "webrel", "reid", "tm", "end2", "newton", "chars", "gl2rel", "gl2ptr", "gl2emn", "gl2skel",
    "spanning",
];

/// One-line descriptions for listing.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "webrel" => {
            "planar web relations at generic q, essential circles and wraps at the root of unity"
        }
        "reid" => "Reidemeister moves and fork slides for the braiding",
        "tm" => "extremal weight projectors T_m: brute-force image, properties, recursions",
        "end2" => "endomorphisms of the 2-labeled strand: calibration of B_1, A_k, X_n = Y_n",
        "newton" => "the zig-zag isomorphism categorifying Newton's identity",
        "chars" => "characters of idempotents as symmetric polynomials",
        "gl2rel" => "gl(2) circle, bigon and square relations at generic q",
        "gl2ptr" => "calibration of the partial trace and pTr_n(T_m)",
        "gl2emn" => "the idempotents e_{m,n} and their decompositions",
        "gl2skel" => "endomorphism and hom dimensions of the gl(2) skeleton",
        "spanning" => "rank of the spanning set of endomorphisms",
        _ => return None,
    })
}

/// Size parameters for the suites; the defaults are the acceptance sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    /// Clasp sizes `k` for the Newton isomorphism.
    pub newton_ks: Vec<usize>,
    /// Largest `m` for `T_m`.
    pub max_m: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            newton_ks: alloc::vec![2, 3, 4],
            max_m: 5,
        }
    }
}

type Runner = Box<dyn Fn() -> CheckList + Send + Sync>;

/// A runnable piece of a suite.
pub struct SuiteItem {
    pub suite: &'static str,
    pub n: u32,
    pub label: String,
    run: Runner,
}

impl SuiteItem {
    pub fn run(&self) -> CheckList {
        (self.run)()
    }
}

impl core::fmt::Debug for SuiteItem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SuiteItem({} N={} {})", self.suite, self.n, self.label)
    }
}

fn items_for(suite: &'static str, n: u32, p: &SuiteParams) -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let max_m = p.max_m;
    let mut push = |label: String, f: Box<dyn Fn() -> CheckList + Send + Sync>| {
        out.push(SuiteItem {
            suite,
            n,
            label,
            run: f,
        });
    };
    match suite {
        "webrel" => {
            push(
                format!("planar relations N={n}"),
                Box::new(move || webrel_suite(n)),
            );
            push(
                format!("annular relations N={n}"),
                Box::new(move || annular_suite(n)),
            );
        }
        "reid" => push(
            format!("Reidemeister N={n}"),
            Box::new(move || reid_suite(n)),
        ),
        "tm" => push(
            format!("T_m N={n}, m ≤ {max_m}"),
            Box::new(move || tm_suite(n, max_m)),
        ),
        "end2" => push(format!("End(2) N={n}"), Box::new(move || end2_suite(n))),
        "newton" => {
            for &k in &p.newton_ks {
                push(
                    format!("Newton N={n}, k={k}"),
                    Box::new(move || newton_suite(n, &[k])),
                );
            }
        }
        "chars" => {
            let max_sym = if n <= 3 { 4 } else { 0 };
            let ks: Vec<usize> = p.newton_ks.iter().copied().filter(|&k| k <= 3).collect();
            push(
                format!("characters N={n}"),
                Box::new(move || chars_suite(n, max_m, max_sym, &ks, 6)),
            );
        }
        "gl2rel" if n == 2 => push("gl(2) relations".into(), Box::new(gl2rel_suite)),
        "gl2ptr" if n == 2 => push("partial trace, m ≤ 4".into(), Box::new(|| gl2ptr_suite(4))),
        "gl2emn" if n == 2 => push(
            "e_{m,n}, m + n ≤ 5".into(),
            Box::new(|| match calibrate_ptr() {
                Ok(c) => gl2emn_suite(&c.chosen, 5),
                Err(e) => {
                    let mut l = CheckList::new();
                    l.push(Check::fail("pTr calibration", format!("{e}")));
                    l
                }
            }),
        ),
        "gl2skel" if n == 2 => push(
            "skeleton, m ≤ 5, J = 3".into(),
            Box::new(|| gl2skel_suite(5, 3)),
        ),
        "spanning" if n <= 3 => push(
            format!("spanning set N={n}, m ≤ 3"),
            Box::new(move || spanning_suite(n, 3)),
        ),
        _ => {}
    }
    out
}

/// Items of the named suite (or `all`) for every `N` in `ns`.
///
/// The `gl2*` suites only run at `N = 2` and `spanning` only for `N ≤ 3`;
/// other values of `N` contribute no items. Requesting a suite that yields
/// no items at all is an error.
pub fn suite_items(name: &str, ns: &[u32], p: &SuiteParams) -> Result<Vec<SuiteItem>> {
    let names: Vec<&'static str> = if name == "all" {
        SUITES.to_vec()
    } else {
        let s = SUITES
            .iter()
            .find(|s| **s == name)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{name}`")))?;
        alloc::vec![*s]
    };
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::Invalid(format!("suites need N ≥ 2, got {n}")));
    }
    let mut out = Vec::new();
    for s in names {
        for &n in ns {
            out.extend(items_for(s, n, p));
        }
    }
    if out.is_empty() {
        return Err(Error::Invalid(format!(
            "suite `{name}` has nothing to run for N in {ns:?}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let p = SuiteParams::default();
        assert!(suite_items("nope", &[2], &p).is_err());
        assert!(suite_items("gl2rel", &[3], &p).is_err());
        assert_eq!(suite_items("newton", &[2, 3], &p).unwrap().len(), 6);
        let all2 = suite_items("all", &[2], &p).unwrap();
        assert!(all2.iter().any(|i| i.suite == "gl2skel"));
        let all4 = suite_items("all", &[4], &p).unwrap();
        assert!(all4
            .iter()
            .all(|i| !i.suite.starts_with("gl2") && i.suite != "spanning"));
        for s in SUITES {
            assert!(describe(s).is_some());
        }
    }
}
