//! Symbolic differentiation with respect to `s` plus a light simplifier.

use super::ast::{BinOp, Expr, Func};

fn n(v: f64) -> Expr {
    Expr::Num(v)
}

fn add(a: Expr, b: Expr) -> Expr {
    simplify_node(Expr::bin(BinOp::Add, a, b))
}

fn sub(a: Expr, b: Expr) -> Expr {
    simplify_node(Expr::bin(BinOp::Sub, a, b))
}

fn mul(a: Expr, b: Expr) -> Expr {
    simplify_node(Expr::bin(BinOp::Mul, a, b))
}

fn div(a: Expr, b: Expr) -> Expr {
    simplify_node(Expr::bin(BinOp::Div, a, b))
}

fn pow(a: Expr, b: Expr) -> Expr {
    simplify_node(Expr::bin(BinOp::Pow, a, b))
}

fn neg(a: Expr) -> Expr {
    simplify_node(Expr::neg(a))
}

fn call(f: Func, a: Expr) -> Expr {
    simplify_node(Expr::call(f, a))
}

/// d/ds of `e`. Domain problems only surface when the result is evaluated.
pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Const(_) => n(0.0),
        Expr::Var => n(1.0),
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::Bin(op, a, b) => {
            let (a, b) = (a.as_ref(), b.as_ref());
            match op {
                BinOp::Add => add(differentiate(a), differentiate(b)),
                BinOp::Sub => sub(differentiate(a), differentiate(b)),
                BinOp::Mul => add(mul(differentiate(a), b.clone()), mul(a.clone(), differentiate(b))),
                BinOp::Div => {
                    let da = differentiate(a);
                    let db = differentiate(b);
                    // a'/b - a b' / b^2
                    sub(div(da, b.clone()), div(mul(a.clone(), db), pow(b.clone(), n(2.0))))
                }
                BinOp::Pow => {
                    let da = differentiate(a);
                    if b.is_constant() {
                        // b a^(b-1) a'
                        mul(mul(b.clone(), pow(a.clone(), sub(b.clone(), n(1.0)))), da)
                    } else {
                        // a^b (b' ln a + b a'/a)
                        let db = differentiate(b);
                        let inner = add(mul(db, call(Func::Ln, a.clone())), div(mul(b.clone(), da), a.clone()));
                        mul(e.clone(), inner)
                    }
                }
            }
        }
        Expr::Call(f, a) => {
            let u = a.as_ref().clone();
            let du = differentiate(a);
            let outer = match f {
                Func::Sin => call(Func::Cos, u),
                Func::Cos => neg(call(Func::Sin, u)),
                Func::Tan => add(n(1.0), pow(call(Func::Tan, u), n(2.0))),
                Func::Sinh => call(Func::Cosh, u),
                Func::Cosh => call(Func::Sinh, u),
                Func::Tanh => sub(n(1.0), pow(call(Func::Tanh, u), n(2.0))),
                Func::Exp => call(Func::Exp, u),
                Func::Ln => div(n(1.0), u),
                Func::Sqrt => div(n(1.0), mul(n(2.0), call(Func::Sqrt, u))),
                Func::Asin => div(n(1.0), call(Func::Sqrt, sub(n(1.0), pow(u, n(2.0))))),
                Func::Acos => neg(div(n(1.0), call(Func::Sqrt, sub(n(1.0), pow(u, n(2.0)))))),
                Func::Atan => div(n(1.0), add(n(1.0), pow(u, n(2.0)))),
                Func::Asinh => div(n(1.0), call(Func::Sqrt, add(pow(u, n(2.0)), n(1.0)))),
                Func::Acosh => div(n(1.0), call(Func::Sqrt, sub(pow(u, n(2.0)), n(1.0)))),
                Func::Atanh => div(n(1.0), sub(n(1.0), pow(u, n(2.0)))),
            };
            mul(outer, du)
        }
    }
}

/// Bottom-up simplification: constant folding and the usual 0/1 identities.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Neg(a) => simplify_node(Expr::neg(simplify(a))),
        Expr::Bin(op, a, b) => simplify_node(Expr::bin(*op, simplify(a), simplify(b))),
        Expr::Call(f, a) => simplify_node(Expr::call(*f, simplify(a))),
        other => other.clone(),
    }
}

fn num_of(e: &Expr) -> Option<f64> {
    match e {
        Expr::Num(v) => Some(*v),
        _ => None,
    }
}

fn finite(v: f64, fallback: Expr) -> Expr {
    if v.is_finite() {
        Expr::Num(v)
    } else {
        fallback
    }
}

/// Simplifies one node assuming its children are already simplified.
fn simplify_node(e: Expr) -> Expr {
    match e {
        Expr::Neg(a) => match *a {
            Expr::Num(v) => Expr::Num(-v),
            Expr::Neg(inner) => *inner,
            other => Expr::neg(other),
        },
        Expr::Call(f, a) => match num_of(&a) {
            Some(v) => finite(f.apply(v), Expr::Call(f, a)),
            None => Expr::Call(f, a),
        },
        Expr::Bin(op, a, b) => {
            let (x, y) = (num_of(&a), num_of(&b));
            if let (Some(x), Some(y)) = (x, y) {
                let fallback = Expr::Bin(op, a.clone(), b.clone());
                let v = match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => x.powf(y),
                };
                return finite(v, fallback);
            }
            match op {
                BinOp::Add => match (x, y) {
                    (Some(z), _) if z == 0.0 => *b,
                    (_, Some(z)) if z == 0.0 => *a,
                    _ => match *b {
                        Expr::Neg(nb) => Expr::bin(BinOp::Sub, *a, *nb),
                        b => Expr::bin(BinOp::Add, *a, b),
                    },
                },
                BinOp::Sub => match (x, y) {
                    (_, Some(z)) if z == 0.0 => *a,
                    (Some(z), _) if z == 0.0 => simplify_node(Expr::neg(*b)),
                    _ => match *b {
                        Expr::Neg(nb) => Expr::bin(BinOp::Add, *a, *nb),
                        b => Expr::bin(BinOp::Sub, *a, b),
                    },
                },
                BinOp::Mul => match (x, y) {
                    (Some(z), _) | (_, Some(z)) if z == 0.0 => Expr::Num(0.0),
                    (Some(z), _) if z == 1.0 => *b,
                    (_, Some(z)) if z == 1.0 => *a,
                    (Some(z), _) if z == -1.0 => simplify_node(Expr::neg(*b)),
                    (_, Some(z)) if z == -1.0 => simplify_node(Expr::neg(*a)),
                    _ => Expr::bin(BinOp::Mul, *a, *b),
                },
                BinOp::Div => match (x, y) {
                    (Some(z), _) if z == 0.0 => Expr::Num(0.0),
                    (_, Some(z)) if z == 1.0 => *a,
                    _ => Expr::bin(BinOp::Div, *a, *b),
                },
                BinOp::Pow => match y {
                    Some(z) if z == 0.0 => Expr::Num(1.0),
                    Some(z) if z == 1.0 => *a,
                    _ => Expr::bin(BinOp::Pow, *a, *b),
                },
            }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn d(text: &str) -> Expr {
        differentiate(&parse_expr(text).unwrap())
    }

    #[test]
    fn textbook_rules() {
        assert_eq!(d("sinh(s)"), parse_expr("cosh(s)").unwrap());
        assert_eq!(d("s^2"), parse_expr("2*s").unwrap());
        assert_eq!(d("3"), Expr::Num(0.0));
        assert_eq!(d("s"), Expr::Num(1.0));
        assert_eq!(d("pi*s"), Expr::Const(crate::expr::Constant::Pi));
    }

    #[test]
    fn chain_rule_values() {
        let cases: &[(&str, fn(f64) -> f64, f64)] = &[
            ("sin(2*s)", |s| 2.0 * (2.0 * s).cos(), 0.7),
            ("ln(s^2 + 1)", |s| 2.0 * s / (s * s + 1.0), 1.3),
            ("s^s", |s| s.powf(s) * (s.ln() + 1.0), 1.7),
            ("tan(3 - s)", |s| -(1.0 + (3.0 - s).tan().powi(2)), 0.4),
            ("atanh(s/2)", |s| 0.5 / (1.0 - s * s / 4.0), 0.9),
            ("acosh(s)", |s| 1.0 / (s * s - 1.0).sqrt(), 2.5),
            ("sqrt(s)", |s| 0.5 / s.sqrt(), 4.0),
            ("cosh(3 - s)/sinh(3 - s)", |s| 1.0 / (3.0 - s).sinh().powi(2), 1.0),
        ];
        for (text, exact, s) in cases {
            let got = d(text).eval(*s).unwrap();
            assert!((got - exact(*s)).abs() < 1e-12 * exact(*s).abs().max(1.0), "{text}: {got}");
        }
    }

    #[test]
    fn folds_constants() {
        assert_eq!(simplify(&parse_expr("2*3 + 0*s").unwrap()), Expr::Num(6.0));
        assert_eq!(simplify(&parse_expr("1*s + 0").unwrap()), Expr::Var);
        assert_eq!(simplify(&parse_expr("--s").unwrap()), Expr::Var);
        assert_eq!(simplify(&parse_expr("s^0").unwrap()), Expr::Num(1.0));
    }
}
