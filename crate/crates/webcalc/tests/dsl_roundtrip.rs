//! Printing and parsing web files are inverse to each other.

use std::path::PathBuf;

use proptest::prelude::*;
use webcalc::dsl::{parse_web, print_web};
use webcalc_core::eval::{EvalConfig, Evaluator};
use webcalc_core::scalars::{rat, Mode, Scalar};
use webcalc_core::web::{Boundary, Gen, Orient, Sign, WebExpr, WebWord, WordBuilder};

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "web"))
        .collect();
    out.sort();
    out
}

#[test]
fn every_fixture_round_trips() {
    let files = fixtures();
    assert!(files.len() >= 10);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_web(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = print_web(&parsed.expr);
        let again = parse_web(&printed).unwrap_or_else(|e| {
            panic!("{}: reprint does not parse: {e}\n{printed}", path.display())
        });
        assert_eq!(again.expr, parsed.expr, "{}", path.display());
        assert_eq!(
            print_web(&again.expr),
            printed,
            "{}: printing is not a fixpoint",
            path.display()
        );
        // The printed form evaluates to the same operator.
        let ev = Evaluator::new(EvalConfig::new(parsed.header.n, parsed.header.mode));
        assert_eq!(
            ev.evaluate_expr(&again.expr).unwrap(),
            ev.evaluate_expr(&parsed.expr).unwrap()
        );
    }
}

/// One random step applied to the current boundary, if it fits.
fn step(b: WordBuilder, n: u32, annular: bool, choice: u8, pos: usize, x: i64) -> WordBuilder {
    let cur = b.current().0.clone();
    let len = cur.len();
    let at = if len == 0 { 0 } else { pos % (len + 1) };
    let k = (x.unsigned_abs() as u32 % n) + 1;
    let gen = match choice % 9 {
        0 => Gen::CupL(k),
        1 => Gen::CupR(k),
        2 if at + 1 < len + 1 && at + 1 < len => match (cur[at].orient, cur[at + 1].orient) {
            (Orient::Up, Orient::Down) => Gen::CapR(cur[at].label),
            _ => Gen::CapL(cur[at].label),
        },
        3 if at + 1 < len => Gen::Merge(cur[at].label, cur[at + 1].label),
        4 if at < len && cur[at].label >= 2 => {
            let l = (x.unsigned_abs() as u32 % (cur[at].label - 1)) + 1;
            Gen::Split(l, cur[at].label - l)
        }
        5 if at + 1 < len => Gen::Cross(
            cur[at].label,
            cur[at + 1].label,
            if x >= 0 { Sign::Pos } else { Sign::Neg },
        ),
        6 if annular && at < len => Gen::Wrap(x),
        7 if annular && len > 0 => Gen::Rotate(x),
        _ => return b,
    };
    let pos = if matches!(gen, Gen::Rotate(_)) { 0 } else { at };
    let attempt = b.clone().at(pos, gen);
    attempt.unwrap_or(b)
}

fn random_word(n: u32, annular: bool, source: &Boundary, steps: &[(u8, usize, i64)]) -> WebWord {
    let mut b = WordBuilder::new(n, source.clone());
    for &(c, p, x) in steps {
        b = step(b, n, annular, c, p, x);
    }
    let w = b.build();
    if annular {
        w.into_annular()
    } else {
        w
    }
}

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::QGeneric), Just(Mode::Zeta), Just(Mode::FormalX)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_expressions_round_trip(
        n in 2u32..=4,
        mode in mode_strategy(),
        labels in prop::collection::vec((1u32..=4, any::<bool>()), 0..4),
        words in prop::collection::vec(
            (prop::collection::vec((any::<u8>(), 0usize..6, -3i64..=3), 0..7), -5i64..=5, 1i64..=3),
            1..4,
        ),
    ) {
        let annular = mode != Mode::QGeneric;
        let source = Boundary(
            labels
                .iter()
                .map(|&(l, up)| {
                    let l = (l - 1) % n + 1;
                    if up { webcalc_core::web::Strand::up(l) } else { webcalc_core::web::Strand::down(l) }
                })
                .collect(),
        );
        // Every summand shares the source; keep those whose target matches the first.
        let built: Vec<(Scalar, WebWord)> = words
            .iter()
            .map(|(steps, a, b)| (Scalar::rational(rat(*a, *b)), random_word(n, annular, &source, steps)))
            .collect();
        let target = built[0].1.target().clone();
        let terms: Vec<_> = built.into_iter().filter(|(_, w)| *w.target() == target).collect();
        let e = WebExpr::from_terms(n, mode, source, target, terms).unwrap();
        let text = print_web(&e);
        let back = parse_web(&text).map_err(|err| TestCaseError::fail(format!("{err}\n{text}")))?;
        prop_assert_eq!(&back.expr, &e, "{}", text);
        prop_assert_eq!(print_web(&back.expr), text);
    }
}
