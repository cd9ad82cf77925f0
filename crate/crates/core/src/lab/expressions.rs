//! Random expression trees for checking the parser and the differentiator
//! against finite differences.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::expr::{parse_expr, BinOp, Constant, Expr, Func, ScalarFn};

fn n(v: f64) -> Expr {
    Expr::Num(v)
}

fn leaf(rng: &mut ChaCha8Rng) -> Expr {
    match rng.gen_range(0..6) {
        0..=2 => Expr::Var,
        3 => Expr::Const(if rng.gen() { Constant::Pi } else { Constant::E }),
        _ => n((rng.gen_range(-2.0f64..2.0) * 100.0).round() / 100.0),
    }
}

/// `1 + u^2`, positive for any `u`.
fn lift(u: Expr) -> Expr {
    Expr::bin(BinOp::Add, n(1.0), Expr::bin(BinOp::Pow, u, n(2.0)))
}

/// A random tree of depth at most `depth`.
///
/// Functions with restricted domains only receive arguments that stay inside
/// them (`sqrt(1 + u^2)`, `asin(sin(u)/2)`, ...), so every tree is smooth on
/// the whole real line and every operator and function is exercised.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let u = random_expr(rng, depth - 1);
    match rng.gen_range(0..20) {
        0 => Expr::bin(BinOp::Add, u, random_expr(rng, depth - 1)),
        1 => Expr::bin(BinOp::Sub, u, random_expr(rng, depth - 1)),
        2 | 3 => Expr::bin(BinOp::Mul, u, random_expr(rng, depth - 1)),
        4 => Expr::bin(BinOp::Div, u, lift(random_expr(rng, depth - 1))),
        5 => Expr::bin(BinOp::Pow, u, n(rng.gen_range(2..=3) as f64)),
        6 => Expr::bin(BinOp::Pow, lift(u), n(if rng.gen() { 0.5 } else { -1.5 })),
        7 => Expr::neg(u),
        8 => Expr::call(Func::Sin, u),
        9 => Expr::call(Func::Cos, u),
        10 => Expr::call(Func::Tan, Expr::bin(BinOp::Div, Expr::call(Func::Atan, u), n(2.0))),
        11 => Expr::call(Func::Sinh, Expr::call(Func::Tanh, u)),
        12 => Expr::call(Func::Cosh, Expr::call(Func::Sin, u)),
        13 => Expr::call(Func::Exp, Expr::call(Func::Cos, u)),
        14 => Expr::call(Func::Ln, lift(u)),
        15 => Expr::call(Func::Sqrt, lift(u)),
        16 => Expr::call(Func::Asin, Expr::bin(BinOp::Div, Expr::call(Func::Sin, u), n(2.0))),
        17 => Expr::call(Func::Acos, Expr::bin(BinOp::Div, Expr::call(Func::Cos, u), n(2.0))),
        18 => Expr::call(Func::Asinh, u),
        _ => match rng.gen_range(0..2) {
            0 => Expr::call(Func::Acosh, Expr::bin(BinOp::Add, n(1.0), lift(u))),
            _ => Expr::call(Func::Atanh, Expr::bin(BinOp::Div, Expr::call(Func::Tanh, u), n(2.0))),
        },
    }
}

/// Worst symbolic-vs-finite-difference disagreement over random trees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivativeAgreement {
    /// Accepted (tree, point) samples.
    pub samples: usize,
    /// Draws rejected because the function was too large on the stencil.
    pub rejected: usize,
    /// `max |f' - fd| / max(1, |f'|)`
    pub first: f64,
    /// Same for `f''` against differences of `f'`.
    pub second: f64,
}

const FD_STEP: f64 = 1e-3;
const MAX_VALUE: f64 = 50.0;

fn five_point(f: impl Fn(f64) -> f64, s: f64, h: f64) -> f64 {
    (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h)
}

/// Compares `f'` and `f''` of `n` random trees at random `s ∈ [-1, 1]` with
/// 5-point central differences (step 1e-3).
///
/// Draws whose values or derivatives exceed 50 in magnitude are redrawn, as
/// the difference quotient is not an accurate oracle there.
pub fn derivative_agreement(rng: &mut ChaCha8Rng, n: usize) -> DerivativeAgreement {
    let mut out = DerivativeAgreement::default();
    while out.samples < n {
        let e = random_expr(rng, 4);
        let s = rng.gen_range(-1.0..=1.0);
        let f = ScalarFn::new(e);
        let d = |k: usize, x: f64| f.deriv(x, k).unwrap_or(f64::NAN);
        let stencil = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|j| s + j * FD_STEP);
        let tame = stencil.iter().all(|&x| (0..=2).all(|k| d(k, x).abs() <= MAX_VALUE));
        if !tame {
            out.rejected += 1;
            continue;
        }
        let (d1, d2) = (d(1, s), d(2, s));
        out.first = out.first.max((d1 - five_point(|x| d(0, x), s, FD_STEP)).abs() / d1.abs().max(1.0));
        out.second = out.second.max((d2 - five_point(|x| d(1, x), s, FD_STEP)).abs() / d2.abs().max(1.0));
        out.samples += 1;
    }
    out
}

/// Worst print-then-parse disagreement over random trees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoundTrip {
    pub trees: usize,
    /// Printed trees the parser rejected.
    pub parse_failures: usize,
    /// Trees whose reprint differs from the first print.
    pub unstable_prints: usize,
    /// `max |f(s) - g(s)| / max(1, |f(s)|)` over 100 points per tree.
    pub max_rel_diff: f64,
}

pub fn round_trip(rng: &mut ChaCha8Rng, trees: usize) -> RoundTrip {
    let mut out = RoundTrip { trees, ..Default::default() };
    for _ in 0..trees {
        let e = random_expr(rng, 5);
        let text = e.to_string();
        let Ok(back) = parse_expr(&text) else {
            out.parse_failures += 1;
            continue;
        };
        if back.to_string() != text {
            out.unstable_prints += 1;
        }
        for _ in 0..100 {
            let s = rng.gen_range(-1.0..=1.0);
            let (a, b) = (e.eval(s), back.eval(s));
            let diff = match (a, b) {
                (Ok(a), Ok(b)) => (a - b).abs() / a.abs().max(1.0),
                (Err(_), Err(_)) => 0.0,
                _ => f64::INFINITY,
            };
            out.max_rel_diff = out.max_rel_diff.max(diff);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generator_covers_every_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::HashSet::new();
        fn walk(e: &Expr, seen: &mut std::collections::HashSet<&'static str>) {
            match e {
                Expr::Call(f, a) => {
                    seen.insert(f.name());
                    walk(a, seen);
                }
                Expr::Bin(_, a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
                Expr::Neg(a) => walk(a, seen),
                _ => {}
            }
        }
        for _ in 0..2000 {
            walk(&random_expr(&mut rng, 4), &mut seen);
        }
        assert_eq!(seen.len(), 15, "{seen:?}");
    }

    #[test]
    fn small_batches_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = derivative_agreement(&mut rng, 50);
        assert!(d.first <= 1e-6 && d.second <= 1e-6, "{d:?}");
        let r = round_trip(&mut rng, 20);
        assert_eq!((r.parse_failures, r.unstable_prints), (0, 0));
        assert!(r.max_rel_diff <= 1e-12, "{r:?}");
    }
}
