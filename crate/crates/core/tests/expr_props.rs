use mannheim_core::expr::{differentiate, parse_expr, BinOp, Expr, Func};
use mannheim_core::lab::expressions::{derivative_agreement, round_trip};
use mannheim_core::ScalarFn;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        (-3.0f64..3.0).prop_map(|v| Expr::Num((v * 1000.0).round() / 1000.0)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Add, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Sub, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::bin(BinOp::Mul, a, b)),
            inner.clone().prop_map(Expr::neg),
            inner.clone().prop_map(|a| Expr::call(Func::Sin, a)),
            inner.clone().prop_map(|a| Expr::call(Func::Tanh, a)),
            inner.prop_map(|a| Expr::call(Func::Exp, Expr::call(Func::Cos, a))),
        ]
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn print_parse_preserves_values(e in arb_expr(), s in -2.0f64..2.0) {
        let back = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), e.to_string());
        prop_assert!(rel(e.eval(s).unwrap(), back.eval(s).unwrap()) <= 1e-12);
    }

    #[test]
    fn derivative_is_linear(a in arb_expr(), b in arb_expr(), s in -1.0f64..1.0) {
        let sum = differentiate(&Expr::bin(BinOp::Add, a.clone(), b.clone())).eval(s).unwrap();
        let parts = differentiate(&a).eval(s).unwrap() + differentiate(&b).eval(s).unwrap();
        prop_assert!(rel(sum, parts) <= 1e-12);
    }

    #[test]
    fn product_rule(a in arb_expr(), b in arb_expr(), s in -1.0f64..1.0) {
        let prod = differentiate(&Expr::bin(BinOp::Mul, a.clone(), b.clone())).eval(s).unwrap();
        let (fa, fb) = (a.eval(s).unwrap(), b.eval(s).unwrap());
        let (da, db) = (differentiate(&a).eval(s).unwrap(), differentiate(&b).eval(s).unwrap());
        prop_assert!(rel(prod, da * fb + fa * db) <= 1e-10);
    }

    #[test]
    fn cached_derivatives_match_repeated_differentiation(e in arb_expr(), s in -1.0f64..1.0) {
        let f = ScalarFn::new(e.clone());
        let mut d = e;
        for k in 1..=3 {
            d = differentiate(&d);
            prop_assert!(rel(f.deriv(s, k).unwrap(), d.eval(s).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn thousand_random_trees_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let d = derivative_agreement(&mut rng, 1000);
    assert!(d.first <= 1e-6, "{d:?}");
    assert!(d.second <= 1e-6, "{d:?}");
    assert!(d.rejected < d.samples, "generator mostly produces tame trees: {d:?}");
}

#[test]
fn random_trees_round_trip_through_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let r = round_trip(&mut rng, 1000);
    assert_eq!(r.parse_failures, 0);
    assert_eq!(r.unstable_prints, 0);
    assert!(r.max_rel_diff <= 1e-12, "{r:?}");
}

#[test]
fn malformed_input_points_at_the_problem() {
    for (text, offset) in [("sin(s", 5), ("s +* 2", 3), ("2 ** s", 3), ("foo(s)", 0), ("1.2.3", 0)] {
        let err = parse_expr(text).unwrap_err();
        assert_eq!(err.offset(), Some(offset), "{text}: {err}");
    }
}
