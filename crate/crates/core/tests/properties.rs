mod common;

use std::collections::BTreeSet;

use beauville_core::dsl::{eval, parse, render_json, run_suite, Ast, Context, EvalParams, Suite};
use beauville_core::exact::{int, rat, rational_roots, Poly, QPoly, Rational, Var, GQ};
use beauville_core::jacobian::{abelian_push, qp, Gen, Locus, Mono, TautExpr};
use beauville_core::llv::{is_skew, FourClassModel, Generators};
use beauville_core::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn small_gq() -> impl Strategy<Value = GQ> {
    (small_rat(), small_rat()).prop_map(|(a, b)| GQ::new(a, b))
}

proptest! {
    #[test]
    fn gaussian_field_axioms(a in small_gq(), b in small_gq(), c in small_gq()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GQ::one());
        }
    }

    #[test]
    fn rational_roots_match_brute_force(a in -6i64..=6, b in -12i64..=12, c in -12i64..=12) {
        prop_assume!(a != 0);
        let p: QPoly = Poly::from_terms(Var::B, [(0, int(c)), (1, int(b)), (2, int(a))]);
        let got = rational_roots(&p).unwrap();
        // rational root theorem: p/q with p | c, q | a
        let mut want = BTreeSet::new();
        let divisors = |n: i64| (1..=n.abs().max(1)).filter(move |d| n == 0 || n % d == 0).collect::<Vec<_>>();
        let nums: Vec<i64> = if c == 0 { vec![0] } else { divisors(c) };
        if c == 0 {
            want.insert(Rational::zero());
        }
        for &num in &nums {
            for &den in &divisors(a) {
                for s in [1, -1] {
                    let x = rat(s * num, den);
                    if p.eval(&x).is_zero() {
                        want.insert(x);
                    }
                }
            }
        }
        if c == 0 {
            // the other root is −b/a
            let x = rat(-b, a);
            want.insert(x);
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn brackets_of_skew_operators_stay_skew(seed in 0u64..1000, dim in 6usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = FourClassModel::random(2, &int(2), dim - 6, &mut rng).unwrap();
        let g = Generators::<GQ>::new(&model).unwrap();
        let x = g.e(1).add(&g.f(3).scale(&GQ::i())).unwrap();
        let y = g.k(2, 4).unwrap().clone();
        prop_assert!(is_skew(model.space(), &x.bracket(&y).unwrap()));
    }

    #[test]
    fn weight_is_additive(a in 0u32..4, b in 0u32..3, c in 0u32..3, d in 0u32..4, e in 0u32..3, f in 0u32..3) {
        let x = Mono { theta: a, xi2: b, psi1: c, ..Mono::ONE };
        let y = Mono { theta: d, xi2: e, psi2: f, ..Mono::ONE };
        prop_assert_eq!(x.mul(&y).unwrap().weight(), x.weight() + y.weight());
    }

    #[test]
    fn n_weight_is_multiplicative(xs in proptest::collection::vec((0u32..3, 0u32..3, 0u32..2, -5i64..=5), 1..4),
                                  ys in proptest::collection::vec((0u32..3, 0u32..3, 0u32..2, -5i64..=5), 1..4),
                                  n in 2i64..5) {
        let build = |v: &[(u32, u32, u32, i64)]| {
            let mut x = TautExpr::zero(Locus::Boundary, 6);
            for &(t, xi, p, c) in v {
                let m = TautExpr::gen(Locus::Boundary, 6, Gen::Theta).unwrap().pow(t).unwrap()
                    .mul(&TautExpr::gen(Locus::Boundary, 6, Gen::Xi2).unwrap().pow(xi).unwrap()).unwrap()
                    .mul(&TautExpr::gen(Locus::Boundary, 6, Gen::Psi1).unwrap().pow(p).unwrap()).unwrap();
                x = x.add(&m.scale_q(int(c))).unwrap();
            }
            x
        };
        // [N]* at a numeric N
        let at = |x: &TautExpr| {
            let mut out = TautExpr::zero(Locus::Boundary, 6);
            for (t, p) in x.n_weight() {
                let mut one = TautExpr::zero(Locus::Boundary, 6);
                let m = TautExpr::gen(Locus::Boundary, 6, Gen::Theta).unwrap().pow(t.mono.theta).unwrap()
                    .mul(&TautExpr::gen(Locus::Boundary, 6, Gen::Xi2).unwrap().pow(t.mono.xi2).unwrap()).unwrap()
                    .mul(&TautExpr::gen(Locus::Boundary, 6, Gen::Psi1).unwrap().pow(t.mono.psi1).unwrap()).unwrap();
                one = one.add(&m.scale(&p.eval(&qp(int(n))))).unwrap();
                out = out.add(&one).unwrap();
            }
            out
        };
        let (x, y) = (build(&xs), build(&ys));
        prop_assert_eq!(at(&x.mul(&y).unwrap()), at(&x).mul(&at(&y)).unwrap());
    }

    #[test]
    fn abelian_push_projection_formula(a in 0u32..5, p1 in 0u32..3, p2 in 0u32..3, q1 in 0u32..3, q2 in 0u32..3) {
        let g = 4;
        let bd = |gen| TautExpr::gen(Locus::Boundary, g, gen).unwrap();
        let base = |gen| TautExpr::gen(Locus::BaseBoundary, g, gen).unwrap();
        let x = bd(Gen::Theta).pow(a).unwrap().mul(&bd(Gen::Psi1).pow(p1).unwrap()).unwrap().mul(&bd(Gen::Psi2).pow(p2).unwrap()).unwrap();
        let u_up = bd(Gen::Psi1).pow(q1).unwrap().mul(&bd(Gen::Psi2).pow(q2).unwrap()).unwrap();
        let u = base(Gen::Psi1).pow(q1).unwrap().mul(&base(Gen::Psi2).pow(q2).unwrap()).unwrap();
        let lhs = abelian_push(&x.mul(&u_up).unwrap()).unwrap();
        let rhs = abelian_push(&x).unwrap().mul(&u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn jacobi_on_random_operator_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let n = 6;
        let (a, b, c) = (common::random_op(&mut rng, n), common::random_op(&mut rng, n), common::random_op(&mut rng, n));
        assert!(common::jacobiator(&a, &b, &c).is_zero());
    }
}

#[test]
fn associativity_on_basis_triples() {
    let (n, bad) = common::rel_mul_associativity();
    assert!(n > 0 && bad.is_empty(), "{bad:?}");
    let (n, bad) = common::compose_associativity();
    assert!(n > 1000 && bad.is_empty(), "{bad:?}");
}

/// The corpus lists 25 llv, 15 k3 and 10 taut expressions in that order.
fn context_of(k: usize) -> Context {
    match k {
        0..=24 => Context::Llv,
        25..=39 => Context::K3,
        _ => Context::Taut,
    }
}

#[test]
fn corpus_round_trips_and_evaluates() {
    let params = EvalParams { genus: 3, ..EvalParams::default() };
    for (k, src) in common::CORPUS.iter().enumerate() {
        let ast = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        assert_eq!(ast.to_string(), *src);
        assert_eq!(parse(&ast.to_string()).unwrap(), ast);
        match eval(&ast, context_of(k), &params) {
            Ok(_) => {}
            Err(Error::Unsupported(_) | Error::OutsideModel(_)) => {}
            Err(e) => panic!("{src}: {e}"),
        }
    }
}

fn ast_strategy() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Ast::Lit(rat(n, d))),
        Just(Ast::Imag),
        prop_oneof![Just("h"), Just("theta"), Just("F"), Just("cst")].prop_map(Ast::sym),
        (1i64..=4, 1i64..=4).prop_map(|(i, j)| Ast::call("K", vec![Ast::Lit(int(i)), Ast::Lit(int(j))])),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Compose(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| Ast::Pow(Box::new(a), e)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Bracket(Box::new(a), Box::new(b))),
            inner.prop_map(|a| Ast::call("p1", vec![a])),
        ]
    })
}

proptest! {
    #[test]
    fn parse_print_round_trip(ast in ast_strategy()) {
        let printed = ast.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), ast);
    }
}

#[test]
fn reports_are_byte_stable() {
    let sel = [
        Suite::Llv { hdim: 9, t: int(-3), trials: 4, seed: 77 },
        Suite::ThetaObstruction { genus: 3 },
        Suite::K3Motive,
    ];
    let a = render_json(&run_suite(&sel, false).unwrap());
    let b = render_json(&run_suite(&sel, false).unwrap());
    assert_eq!(a, b);
    let other = render_json(&run_suite(&[Suite::Llv { hdim: 9, t: int(-3), trials: 4, seed: 78 }], false).unwrap());
    assert_ne!(a, other);
}
