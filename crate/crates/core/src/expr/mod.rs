//! Closed-form curves of one parameter `s`.
//!
//! Expressions use the grammar in [`parse`]; a curve is three of them. Every
//! derivative up to [`MAX_ORDER`] is produced symbolically once, at
//! construction, so geometric quantities carry no finite-difference noise.

mod ast;
mod diff;
mod parse;

pub use ast::{BinOp, Constant, Expr, Func};
pub use diff::{differentiate, simplify};
pub use parse::parse_expr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lorentz::{classify_causal, CausalClass, LVec3, CAUSAL_TOL};

/// Highest derivative order any geometric formula asks for.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected one of [{}], found {found}", expected.join(", "))]
    Syntax { offset: usize, expected: Vec<String>, found: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("curve needs 3 components, found {0}")]
    Arity(usize),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => Some(*offset),
            ParseError::Arity(_) => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("non-finite value of `{expr}` at s = {s}")]
    NonFinite { s: f64, expr: String },
    #[error("s = {s} outside domain [{lo}, {hi}]")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },
    #[error("derivative order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooHigh(usize),
    #[error("tangent is null at s = {0}")]
    NullTangent(f64),
    #[error("adaptive quadrature did not converge on [{0}, {1}]")]
    NonConvergence(f64, f64),
    #[error("invalid interval [{0}, {1}]")]
    BadInterval(f64, f64),
}

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self, EvalError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Domain { lo, hi })
        } else {
            Err(EvalError::BadInterval(lo, hi))
        }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, s: f64) -> bool {
        let slack = 1e-12 * self.len().max(1.0);
        s >= self.lo - slack && s <= self.hi + slack
    }

    pub fn check(&self, s: f64) -> Result<(), EvalError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(EvalError::OutOfDomain { s, lo: self.lo, hi: self.hi })
        }
    }

    /// `n` evenly spaced points including both ends (`n == 1` gives `lo`).
    pub fn grid(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.lo],
            _ => (0..n).map(|i| self.lo + self.len() * i as f64 / (n - 1) as f64).collect(),
        }
    }

    /// Grid of `n` points strictly inside the domain, `inset` away from each end.
    pub fn interior_grid(&self, n: usize, inset: f64) -> Vec<f64> {
        Domain { lo: self.lo + inset, hi: self.hi - inset }.grid(n)
    }
}

/// A scalar function of `s` with its symbolic derivatives cached.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFn {
    derivs: Vec<Expr>,
}

impl ScalarFn {
    pub fn new(e: Expr) -> Self {
        Self::with_order(e, MAX_ORDER)
    }

    pub fn with_order(e: Expr, order: usize) -> Self {
        let mut derivs = vec![simplify(&e)];
        for k in 0..order {
            let next = differentiate(&derivs[k]);
            derivs.push(next);
        }
        ScalarFn { derivs }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Self::new(parse_expr(text)?))
    }

    pub fn constant(v: f64) -> Self {
        Self::new(Expr::Num(v))
    }

    pub fn expr(&self) -> &Expr {
        &self.derivs[0]
    }

    pub fn max_order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn eval(&self, s: f64) -> Result<f64, EvalError> {
        self.derivs[0].eval(s)
    }

    pub fn deriv(&self, s: f64, order: usize) -> Result<f64, EvalError> {
        self.derivs.get(order).ok_or(EvalError::OrderTooHigh(order))?.eval(s)
    }

    pub fn is_constant(&self) -> bool {
        self.derivs[0].is_constant()
    }
}

/// A space curve given by three closed-form components.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveDef {
    comps: [ScalarFn; 3],
    pub domain: Option<Domain>,
}

impl CurveDef {
    pub fn new(c1: Expr, c2: Expr, c3: Expr) -> Self {
        CurveDef { comps: [ScalarFn::new(c1), ScalarFn::new(c2), ScalarFn::new(c3)], domain: None }
    }

    pub fn with_domain(mut self, d: Domain) -> Self {
        self.domain = Some(d);
        self
    }

    pub fn component(&self, i: usize) -> &Expr {
        self.comps[i].expr()
    }

    /// Value of the `order`-th derivative at `s`, ignoring the domain.
    pub fn eval_unchecked(&self, order: usize, s: f64) -> Result<LVec3, EvalError> {
        if order > MAX_ORDER {
            return Err(EvalError::OrderTooHigh(order));
        }
        Ok(LVec3::new(
            self.comps[0].deriv(s, order)?,
            self.comps[1].deriv(s, order)?,
            self.comps[2].deriv(s, order)?,
        ))
    }
}

impl std::fmt::Display for CurveDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.comps[0].expr(), self.comps[1].expr(), self.comps[2].expr())
    }
}

/// Parses `(e1, e2, e3)`.
pub fn parse_curve(text: &str) -> Result<CurveDef, ParseError> {
    let mut p = parse::Parser::new(text)?;
    p.expect_sym('(', &["("])?;
    let mut comps = vec![p.expr()?];
    while p.is_sym(',') {
        p.expect_sym(',', &[","])?;
        comps.push(p.expr()?);
    }
    p.expect_sym(')', &[",", ")"])?;
    p.expect_end(&["end of input"])?;
    if comps.len() != 3 {
        return Err(ParseError::Arity(comps.len()));
    }
    let c3 = comps.pop().unwrap();
    let c2 = comps.pop().unwrap();
    let c1 = comps.pop().unwrap();
    Ok(CurveDef::new(c1, c2, c3))
}

/// Componentwise `order`-th derivative at `s`; checks the curve's domain when set.
pub fn eval_curve(c: &CurveDef, order: usize, s: f64) -> Result<LVec3, EvalError> {
    if let Some(d) = c.domain {
        d.check(s)?;
    }
    c.eval_unchecked(order, s)
}

const ARCLENGTH_TOL: f64 = 1e-10;
const MAX_DEPTH: u32 = 50;

fn speed(c: &CurveDef, s: f64) -> Result<f64, EvalError> {
    Ok(c.eval_unchecked(1, s)?.norm())
}

/// Lorentzian arc length `∫ ||c'(s)|| ds` by adaptive Simpson quadrature.
///
/// The tangent is sampled first; a null tangent anywhere on the interval is an
/// error because the integrand loses smoothness there.
pub fn arclength(c: &CurveDef, s0: f64, s1: f64) -> Result<f64, EvalError> {
    if !(s0.is_finite() && s1.is_finite()) {
        return Err(EvalError::BadInterval(s0, s1));
    }
    if s0 == s1 {
        return Ok(0.0);
    }
    if s1 < s0 {
        return arclength(c, s1, s0).map(|v| -v);
    }
    if let Some(d) = c.domain {
        d.check(s0)?;
        d.check(s1)?;
    }
    for i in 0..=64 {
        let s = s0 + (s1 - s0) * i as f64 / 64.0;
        let t = c.eval_unchecked(1, s)?;
        if t.euclid_norm_sq() == 0.0 || classify_causal(t, CAUSAL_TOL) == CausalClass::Null {
            return Err(EvalError::NullTangent(s));
        }
    }
    let f = |s: f64| speed(c, s);
    let (fa, fm, fb) = (f(s0)?, f(0.5 * (s0 + s1))?, f(s1)?);
    let whole = (s1 - s0) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, s0, s1, fa, fm, fb, whole, ARCLENGTH_TOL, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(EvalError::NonConvergence(a, b));
    }
    Ok(simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Inverse arc-length table: `(arc, s)` pairs with `arc` measured from the
/// domain start, resampled at `n` equally spaced arc values by a monotone
/// (Fritsch-Carlson) cubic interpolant of `s(arc)`.
pub fn reparametrize_by_arclength(c: &CurveDef, domain: Domain, n: usize) -> Result<Vec<(f64, f64)>, EvalError> {
    let knots = 256.max(n);
    let ss = domain.grid(knots + 1);
    let mut arcs = Vec::with_capacity(ss.len());
    let mut acc = 0.0;
    arcs.push(0.0);
    for w in ss.windows(2) {
        acc += arclength(c, w[0], w[1])?;
        arcs.push(acc);
    }
    // ds/darc = 1/speed gives exact end slopes for the inverse
    let mut slopes = Vec::with_capacity(ss.len());
    for &s in &ss {
        slopes.push(1.0 / speed(c, s)?);
    }
    let interp = MonotoneCubic::new(arcs, ss, slopes);
    let total = acc;
    Ok((0..n)
        .map(|i| {
            let a = if n == 1 { 0.0 } else { total * i as f64 / (n - 1) as f64 };
            (a, interp.eval(a))
        })
        .collect())
}

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slope limiting.
struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ms: Vec<f64>,
}

impl MonotoneCubic {
    fn new(xs: Vec<f64>, ys: Vec<f64>, mut ms: Vec<f64>) -> Self {
        let n = xs.len();
        for i in 0..n - 1 {
            let delta = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            if delta == 0.0 {
                ms[i] = 0.0;
                ms[i + 1] = 0.0;
                continue;
            }
            let (a, b) = (ms[i] / delta, ms[i + 1] / delta);
            let r = a * a + b * b;
            if r > 9.0 {
                let t = 3.0 / r.sqrt();
                ms[i] = t * a * delta;
                ms[i + 1] = t * b * delta;
            }
        }
        MonotoneCubic { xs, ys, ms }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.ys[i]
            + (t3 - 2.0 * t2 + t) * h * self.ms[i]
            + (-2.0 * t3 + 3.0 * t2) * self.ys[i + 1]
            + (t3 - t2) * h * self.ms[i + 1]
    }
}
