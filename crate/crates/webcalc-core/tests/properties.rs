//! Algebraic invariants checked on random inputs.

use proptest::prelude::*;
use webcalc_core::eval::{EvalConfig, Evaluator, SparseOperator};
use webcalc_core::projectors::{crossing, dumbbell, extremal, id, points, rotation, t2, wrap};
use webcalc_core::scalars::{
    parse_scalar, quantum_binomial, quantum_integer, rat, Assignment, CycloField, Cyclotomic,
    LaurentQ, LaurentX, Mode, Rational, Scalar,
};
use webcalc_core::symfun::{power_sum, term_character};
use webcalc_core::web::{Gen, Sign, Strand, Term, WebWord};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn cyclotomic(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(small_rational(), 0..(n as usize + 2))
        .prop_map(move |c| Cyclotomic::from_poly(&CycloField::new(n), &c))
}

fn laurent_q() -> impl Strategy<Value = LaurentQ> {
    prop::collection::vec((-4i64..=4, small_rational()), 0..5).prop_map(|ts| {
        ts.into_iter().fold(LaurentQ::zero(), |acc, (e, c)| {
            acc.add(&LaurentQ::monomial(e, c))
        })
    })
}

fn laurent_x(nvars: usize) -> impl Strategy<Value = LaurentX> {
    prop::collection::vec(
        (prop::collection::vec(-2i64..=2, nvars), small_rational()),
        0..4,
    )
    .prop_map(move |ts| {
        ts.into_iter().fold(LaurentX::zero(nvars), |acc, (e, c)| {
            acc.add(&LaurentX::monomial(e, c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(
        (n, a, b, c) in (2u32..=8).prop_flat_map(|n| (Just(n), cyclotomic(n), cyclotomic(n), cyclotomic(n)))
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero elements are invertible");
            prop_assert_eq!(a.mul(&inv), Cyclotomic::one(&CycloField::new(n)));
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero(n in 2u32..=12, shift in -20i64..20) {
        let f = CycloField::new(n);
        let total = (0..n as i64).fold(Cyclotomic::zero(&f), |acc, k| acc.add(&Cyclotomic::zeta(&f, k + shift)));
        prop_assert!(total.is_zero());
        prop_assert_eq!(Cyclotomic::zeta(&f, n as i64), Cyclotomic::one(&f));
        prop_assert_eq!(Cyclotomic::zeta(&f, shift).mul(&Cyclotomic::zeta(&f, -shift)), Cyclotomic::one(&f));
    }

    #[test]
    fn laurent_ring_axioms(a in laurent_q(), b in laurent_q(), c in laurent_q()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn q_to_one_is_a_ring_homomorphism(a in laurent_q(), b in laurent_q()) {
        let s = |p: &LaurentQ| Scalar::from_q(p.clone()).specialize(&Assignment::QToOne).unwrap();
        prop_assert_eq!(s(&a.add(&b)), s(&a).add(&s(&b)));
        prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
    }

    #[test]
    fn x_to_zeta_is_a_ring_homomorphism((n, a, b) in (2usize..=4).prop_flat_map(|n| (Just(n), laurent_x(n), laurent_x(n)))) {
        let f = CycloField::new(n as u32);
        let s = |p: &LaurentX| Scalar::from_x(p.clone()).specialize(&Assignment::XToZeta(f.clone())).unwrap();
        prop_assert_eq!(s(&a.add(&b)), s(&a).add(&s(&b)));
        prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
    }

    #[test]
    fn quantum_numbers_are_bar_invariant(m in -6i64..=8, t in 0i64..=5) {
        prop_assert_eq!(quantum_integer(m).bar(), quantum_integer(m));
        prop_assert_eq!(quantum_binomial(m, t).bar(), quantum_binomial(m, t));
        // Pascal with balanced shifts: [m+1, t+1] = q^{t+1}[m, t+1] + q^{t−m}[m, t].
        if m >= 0 {
            let lhs = quantum_binomial(m + 1, t + 1);
            let rhs = LaurentQ::q_pow(t + 1).mul(&quantum_binomial(m, t + 1))
                .add(&LaurentQ::q_pow(t - m).mul(&quantum_binomial(m, t)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cyclotomic_values_print_and_parse_back(n in 2u32..=7, c in prop::collection::vec(small_rational(), 0..8)) {
        let z = Scalar::from_cyc(Cyclotomic::from_poly(&CycloField::new(n), &c));
        let back = parse_scalar(&z.to_string(), Mode::Zeta, n).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn generic_values_print_and_parse_back(a in laurent_q()) {
        let z = Scalar::from_q(a);
        prop_assert_eq!(parse_scalar(&z.to_string(), Mode::QGeneric, 3).unwrap(), z);
    }
}

// ----- evaluation is a monoidal functor --------------------------------------

/// Endomorphisms of two upward 1-labeled points, in root-of-unity mode.
fn pool(n: u32, which: usize, p: i64) -> Term {
    match which % 7 {
        0 => id(n, 2),
        1 => crossing(n, 2, 1).unwrap(),
        2 => crossing(n, 2, 2).unwrap(),
        3 => dumbbell(n, 2, 1).unwrap(),
        4 => wrap(n, 2, 0, p).unwrap(),
        5 => wrap(n, 2, 1, p).unwrap(),
        _ => t2(n).unwrap(),
    }
}

/// Like [`pool`] but also allowing global rotations (not tensorable).
fn pool_rot(n: u32, which: usize, p: i64) -> Term {
    if which % 8 == 7 {
        rotation(n, 2, p).unwrap()
    } else {
        pool(n, which, p)
    }
}

fn eval(ev: &Evaluator, t: &Term) -> SparseOperator {
    ev.evaluate(t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_preserved(n in 2u32..=4, picks in prop::collection::vec((0usize..8, -3i64..=3), 1..5)) {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        let terms: Vec<Term> = picks.iter().map(|&(w, p)| pool_rot(n, w, p)).collect();
        let whole = eval(&ev, &Term::chain(&terms).unwrap());
        let stepwise = terms.iter().map(|t| eval(&ev, t)).reduce(|a, b| a.compose(&b).unwrap()).unwrap();
        prop_assert_eq!(whole, stepwise);
    }

    #[test]
    fn interchange_law(n in 2u32..=3, a in 0usize..7, b in 0usize..7, c in 0usize..7, d in 0usize..7, p in -2i64..=2) {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        let (ta, tb, tc, td) = (pool(n, a, p), pool(n, b, -p), pool(n, c, p + 1), pool(n, d, 1 - p));
        let lhs = Term::chain(&[ta.tensor(&tb).unwrap(), tc.tensor(&td).unwrap()]).unwrap();
        let rhs = Term::chain(&[ta.clone(), tc.clone()]).unwrap().tensor(&Term::chain(&[tb.clone(), td.clone()]).unwrap()).unwrap();
        let (l, r) = (eval(&ev, &lhs), eval(&ev, &rhs));
        prop_assert_eq!(&l, &r);
        let manual = eval(&ev, &ta).tensor(&eval(&ev, &tb)).compose(&eval(&ev, &tc).tensor(&eval(&ev, &td))).unwrap();
        prop_assert_eq!(l, manual);
    }

    #[test]
    fn winding_grade_is_additive(n in 2u32..=5, gens in prop::collection::vec((0usize..4, -3i64..=3), 1..6)) {
        let b = points(2);
        let words: Vec<WebWord> = gens
            .iter()
            .map(|&(g, p)| {
                let gen = match g {
                    0 => Gen::Wrap(p),
                    1 => Gen::Rotate(p),
                    2 => Gen::Cross(1, 1, if p >= 0 { Sign::Pos } else { Sign::Neg }),
                    _ => Gen::Id(Strand::up(1)),
                };
                let pos = if matches!(gen, Gen::Wrap(_)) { (p.unsigned_abs() % 2) as usize } else { 0 };
                WebWord::single(n, &b, pos, gen).unwrap()
            })
            .collect();
        let total: i64 = words.iter().map(WebWord::winding_grade).sum();
        let composed = words.iter().skip(1).fold(words[0].clone(), |acc, w| w.compose(&acc).unwrap());
        prop_assert_eq!(composed.winding_grade(), total);
    }

    #[test]
    fn characters_are_additive_and_multiplicative(n in 2u32..=4, m in 1usize..=3, k in 1usize..=2) {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        let t = extremal(n, m).unwrap();
        let rest = id(n, m).sub(&t).unwrap();
        let ch = |x: &Term| term_character(&ev, x).unwrap().to_poly();
        // T_m and id − T_m are orthogonal idempotents summing to id.
        let p1 = power_sum(n as usize, 1);
        prop_assert_eq!(ch(&t).add(&ch(&rest)), p1.pow(m as u32));
        prop_assert_eq!(ch(&t), power_sum(n as usize, m));
        // Tensor products multiply characters.
        let u = extremal(n, k).unwrap();
        prop_assert_eq!(ch(&t.tensor(&u).unwrap()), ch(&t).mul(&ch(&u)));
    }
}
