//! Values computed independently (by hand or with a computer algebra system)
//! and frozen here, compared against the evaluator.

use std::collections::BTreeMap;

use webcalc_core::eval::{EvalConfig, Evaluator};
use webcalc_core::linalg::linear_span_dim;
use webcalc_core::projectors::{extremal, spanning_element, t2, tuples};
use webcalc_core::scalars::{Mode, Scalar};
use webcalc_core::symfun::{elementary, power_sum, term_character, SymPoly};
use webcalc_core::web::{essential_circle, Boundary, Sketch, Strand};

/// `(exponent, coefficient)` pairs of a Laurent polynomial in `q`.
type Terms = &'static [(i64, i64)];

/// Balanced quantum binomials `[N choose k]` as `(exponent, coefficient)`
/// lists, for N = 2, 3, 4.
const QBINOM: &[(u32, u32, Terms)] = &[
    (2, 1, &[(-1, 1), (1, 1)]),
    (2, 2, &[(0, 1)]),
    (3, 1, &[(-2, 1), (0, 1), (2, 1)]),
    (3, 2, &[(-2, 1), (0, 1), (2, 1)]),
    (3, 3, &[(0, 1)]),
    (4, 1, &[(-3, 1), (-1, 1), (1, 1), (3, 1)]),
    (4, 2, &[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]),
    (4, 3, &[(-3, 1), (-1, 1), (1, 1), (3, 1)]),
    (4, 4, &[(0, 1)]),
];

/// `Σ_μ (number of N-colourings of n points with content μ)²`.
const SPANNING_DIMS: &[(u32, usize, usize)] = &[
    (2, 1, 2),
    (2, 2, 6),
    (2, 3, 20),
    (3, 1, 3),
    (3, 2, 15),
    (3, 3, 93),
];

/// `(partition, coefficient)` pairs of a product expansion.
type EExpansion = &'static [(&'static [usize], i64)];

/// `p_m` in elementary symmetric polynomials in N variables, as
/// (partition, coefficient) pairs.
const POWER_SUMS_IN_E: &[(usize, usize, EExpansion)] = &[
    (3, 2, &[(&[1, 1], 1), (&[2], -2)]),
    (3, 3, &[(&[1, 1, 1], 1), (&[2, 1], -3), (&[3], 3)]),
    (
        3,
        4,
        &[
            (&[1, 1, 1, 1], 1),
            (&[2, 1, 1], -4),
            (&[2, 2], 2),
            (&[3, 1], 4),
        ],
    ),
    (
        3,
        5,
        &[
            (&[1, 1, 1, 1, 1], 1),
            (&[2, 1, 1, 1], -5),
            (&[2, 2, 1], 5),
            (&[3, 1, 1], 5),
            (&[3, 2], -5),
        ],
    ),
    (
        4,
        4,
        &[
            (&[1, 1, 1, 1], 1),
            (&[2, 1, 1], -4),
            (&[2, 2], 2),
            (&[3, 1], 4),
            (&[4], -4),
        ],
    ),
    (
        4,
        5,
        &[
            (&[1, 1, 1, 1, 1], 1),
            (&[2, 1, 1, 1], -5),
            (&[2, 2, 1], 5),
            (&[3, 1, 1], 5),
            (&[3, 2], -5),
            (&[4, 1], -5),
        ],
    ),
];

fn laurent_terms(s: &Scalar) -> Vec<(i64, i64)> {
    match s {
        Scalar::Const(c) => vec![(0, c.to_integer().try_into().unwrap())],
        Scalar::Q(p) => p
            .terms()
            .map(|(e, c)| (e, c.to_integer().try_into().unwrap()))
            .collect(),
        other => panic!("not a generic-q value: {other:?}"),
    }
}

fn normalized(
    expansion: Vec<(Vec<usize>, webcalc_core::scalars::Rational)>,
) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    for (mut parts, c) in expansion {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        *out.entry(parts).or_insert(0) += i64::try_from(c.to_integer()).unwrap();
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn closed_circles_are_quantum_binomials() {
    for &(n, k, want) in QBINOM {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::QGeneric));
        for left in [true, false] {
            let w = Sketch::new(n, Boundary::empty())
                .cup(0, k, left)
                .unwrap()
                .cap(0)
                .unwrap()
                .build();
            let op = ev.evaluate_word(&w).unwrap();
            assert_eq!(op.shape(), (1, 1));
            assert_eq!(
                laurent_terms(&op.get(0, 0)),
                want,
                "N={n} k={k} left={left}"
            );
        }
    }
}

#[test]
fn essential_circles_at_the_root_of_unity() {
    for n in 2..=6u32 {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        for k in 1..=n {
            let v = ev.evaluate_word(&essential_circle(n, k)).unwrap().get(0, 0);
            let want = if k < n {
                0
            } else if n % 2 == 1 {
                1
            } else {
                -1
            };
            assert_eq!(v, Scalar::int(want), "N={n} k={k}");
        }
    }
}

#[test]
fn essential_circles_with_formal_eigenvalues() {
    for n in 2..=4u32 {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::FormalX));
        for k in 1..=n {
            let v = ev.evaluate_word(&essential_circle(n, k)).unwrap().get(0, 0);
            assert_eq!(
                v,
                Scalar::from_x(elementary(n as usize, k as usize)),
                "N={n} k={k}"
            );
        }
    }
}

#[test]
fn two_point_extremal_projector_keeps_constant_colours() {
    for n in 2..=4u32 {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        let op = ev.evaluate(&t2(n).unwrap()).unwrap();
        let b = Boundary(vec![Strand::up(1); 2]);
        let entries: Vec<(usize, usize)> = op
            .entries()
            .map(|(r, c, v)| {
                assert!(v.is_one());
                (r, c)
            })
            .collect();
        let want: Vec<(usize, usize)> = (0..ev.basis().dim(&b))
            .filter(|&i| {
                let masks = ev.basis().decode(&b, i);
                masks[0] == masks[1]
            })
            .map(|i| (i, i))
            .collect();
        assert_eq!(entries, want);
        assert_eq!(want.len(), n as usize);
    }
}

#[test]
fn characters_of_extremal_projectors_expand_like_power_sums() {
    for &(n, m, want) in POWER_SUMS_IN_E {
        let want: BTreeMap<Vec<usize>, i64> = want.iter().map(|(p, c)| (p.to_vec(), *c)).collect();
        let direct = SymPoly::new(power_sum(n, m))
            .unwrap()
            .e_expansion()
            .unwrap();
        assert_eq!(normalized(direct), want, "p_{m} in {n} variables");
        let ev = Evaluator::new(EvalConfig::new(n as u32, Mode::Zeta));
        let ch = term_character(&ev, &extremal(n as u32, m).unwrap()).unwrap();
        assert_eq!(ch.total(), n);
        assert_eq!(
            normalized(ch.to_sym().unwrap().e_expansion().unwrap()),
            want,
            "ch(T_{m}) at N={n}"
        );
    }
}

#[test]
fn spanning_set_dimensions() {
    for &(n, m, want) in SPANNING_DIMS {
        let ev = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
        let all = tuples(n, m);
        let mut ops = Vec::new();
        for e in &all {
            for f in &all {
                if let Some(t) = spanning_element(n, e, f).unwrap() {
                    ops.push(ev.evaluate(&t).unwrap());
                }
            }
        }
        assert_eq!(ops.len(), want, "N={n} n={m}");
        assert_eq!(linear_span_dim(&ops).unwrap(), want, "N={n} n={m}");
    }
}
