//! Mannheim offsets `φ*(s, v) = c(s) + R(s) a(s) + v q*(s)` of timelike ruled
//! surfaces, their developability conditions and trajectory surfaces.

mod trajectory;

pub use trajectory::{trajectory_dralls, trajectory_frames, trajectory_report, trajectory_surfaces, TrajectoryEntry, TrajectoryReport};

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{BinOp, Domain, EvalError, Expr, ScalarFn};
use crate::lorentz::LVec3;
use crate::ruled::{
    SurfaceType,
    classify_surface, curvature_jet, drall_unchecked, frame_sample_unchecked, frenet_frame, striction_tangent_unchecked,
    striction_unchecked, FnSurface, FrameSample, FrameTriple, FrameType, RuledSurface, SurfaceError,
    DEVELOPABLE_TOL,
};

/// Tolerance on `||dc/ds|| - 1` for bases whose striction curve must be
/// parametrized by arc length.
pub const ARC_LENGTH_TOL: f64 = 1e-6;

/// Denominators below this are treated as zero.
const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OffsetError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("pairing {pairing} needs a {expected} base, found {found}")]
    PairingMismatch { pairing: OffsetPairing, expected: FrameType, found: String },
    #[error("no real θ for pairing {pairing}: R κ ds1/ds = {value} but {bound}")]
    NoRealSolution { pairing: OffsetPairing, value: f64, bound: &'static str },
    #[error("division by zero: {0} vanishes")]
    DivisionByZero(&'static str),
    #[error("offset distance R must be nonzero")]
    ZeroDistance,
    #[error("base is not developable at s = {s} (drall {drall:e})")]
    NotDevelopable { s: f64, drall: f64 },
    #[error("striction curve is not unit speed at s = {s} (||dc/ds|| = {speed})")]
    NotArcLength { s: f64, speed: f64 },
}

impl OffsetError {
    pub(crate) fn into_surface(self, s: f64) -> SurfaceError {
        match self {
            OffsetError::Surface(e) => e,
            other => SurfaceError::Unclassifiable { s, reason: other.to_string() },
        }
    }
}

impl From<EvalError> for OffsetError {
    fn from(e: EvalError) -> Self {
        OffsetError::Surface(e.into())
    }
}

/// Frame transformation between a base and its Mannheim offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OffsetPairing {
    /// M1- base, M1+ offset: `q* = sinh θ q + cosh θ h`.
    M1mToM1p,
    /// M1- base, M1- offset: `q* = cosh θ q + sinh θ h`.
    M1mToM1m,
    /// M1+ base, spacelike M2+ offset: `q* = cos θ q + sin θ h`.
    M1pToM2p,
}

impl OffsetPairing {
    pub const ALL: [OffsetPairing; 3] = [OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m, OffsetPairing::M1pToM2p];

    pub fn base_type(self) -> FrameType {
        match self {
            OffsetPairing::M1pToM2p => FrameType::M1Plus,
            _ => FrameType::M1Minus,
        }
    }

    pub fn target_type(self) -> FrameType {
        match self {
            OffsetPairing::M1mToM1p => FrameType::M1Plus,
            OffsetPairing::M1mToM1m => FrameType::M1Minus,
            OffsetPairing::M1pToM2p => FrameType::M2Plus,
        }
    }

    /// CLI name.
    pub fn label(self) -> &'static str {
        match self {
            OffsetPairing::M1mToM1p => "eq11",
            OffsetPairing::M1mToM1m => "eq12",
            OffsetPairing::M1pToM2p => "eq13",
        }
    }

    pub fn from_label(s: &str) -> Option<OffsetPairing> {
        OffsetPairing::ALL.into_iter().find(|p| p.label() == s)
    }

    /// Rows of the transformation, `(q*, h*, a*)` in terms of `(q, h, a)`.
    pub fn matrix(self, theta: f64) -> [[f64; 3]; 3] {
        let (sh, ch) = (theta.sinh(), theta.cosh());
        let (sn, cs) = theta.sin_cos();
        match self {
            OffsetPairing::M1mToM1p => [[sh, ch, 0.0], [0.0, 0.0, 1.0], [ch, sh, 0.0]],
            OffsetPairing::M1mToM1m => [[ch, sh, 0.0], [0.0, 0.0, 1.0], [sh, ch, 0.0]],
            OffsetPairing::M1pToM2p => [[cs, sn, 0.0], [0.0, 0.0, 1.0], [sn, -cs, 0.0]],
        }
    }
}

impl std::fmt::Display for OffsetPairing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

fn check_kind(pairing: OffsetPairing, kind: FrameType) -> Result<(), OffsetError> {
    if kind == pairing.base_type() {
        Ok(())
    } else {
        Err(OffsetError::PairingMismatch { pairing, expected: pairing.base_type(), found: kind.to_string() })
    }
}

/// Offset frame `(q*, h*, a*)` from the base frame at angle `theta`.
pub fn offset_frame(f: &FrameSample, theta: f64, pairing: OffsetPairing) -> Result<FrameTriple, OffsetError> {
    check_kind(pairing, f.kind)?;
    let m = pairing.matrix(theta);
    let row = |r: [f64; 3]| f.q * r[0] + f.h * r[1] + f.a * r[2];
    Ok(FrameTriple { q: row(m[0]), h: row(m[1]), a: row(m[2]) })
}

/// A Mannheim offset request: base, distance `R(s)`, angle `θ(s)` and pairing.
#[derive(Clone)]
pub struct OffsetSpec {
    pub base: Arc<dyn RuledSurface>,
    pub r: ScalarFn,
    pub theta: ScalarFn,
    pub pairing: OffsetPairing,
}

impl std::fmt::Debug for OffsetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OffsetSpec")
            .field("domain", &self.base.domain())
            .field("r", &self.r.expr().to_string())
            .field("theta", &self.theta.expr().to_string())
            .field("pairing", &self.pairing)
            .finish()
    }
}

impl OffsetSpec {
    pub fn new(base: Arc<dyn RuledSurface>, r: ScalarFn, theta: ScalarFn, pairing: OffsetPairing) -> Self {
        OffsetSpec { base, r, theta, pairing }
    }

    pub fn domain(&self) -> Domain {
        self.base.domain()
    }

    /// Striction point of the offset candidate, `c + R a`.
    pub(crate) fn base_point(&self, s: f64) -> Result<LVec3, OffsetError> {
        let f = frame_sample_unchecked(self.base.as_ref(), s)?;
        Ok(striction_unchecked(self.base.as_ref(), s)? + f.a * self.r.eval(s)?)
    }

    pub(crate) fn frame_at(&self, s: f64) -> Result<(FrameSample, FrameTriple), OffsetError> {
        let f = frame_sample_unchecked(self.base.as_ref(), s)?;
        let t = offset_frame(&f, self.theta.eval(s)?, self.pairing)?;
        Ok((f, t))
    }
}

/// `c0 + c1 s` as a scalar function.
pub fn affine(c0: f64, c1: f64) -> ScalarFn {
    ScalarFn::new(Expr::bin(BinOp::Add, Expr::Num(c0), Expr::bin(BinOp::Mul, Expr::Num(c1), Expr::Var)))
}

fn check_arc_length(base: &dyn RuledSurface) -> Result<(), OffsetError> {
    for s in base.grid() {
        let speed = striction_tangent_unchecked(base, s)?.norm();
        if !((speed - 1.0).abs() <= ARC_LENGTH_TOL) {
            return Err(OffsetError::NotArcLength { s, speed });
        }
    }
    Ok(())
}

/// Builds `φ*` as a sampled surface with base curve `c + R a` and director `q*`.
///
/// The base must match the pairing's base type and its striction curve must
/// be parametrized by arc length.
pub fn build_offset(spec: &OffsetSpec) -> Result<FnSurface, OffsetError> {
    let kind = classify_surface(spec.base.as_ref());
    match kind.frame_type() {
        Some(t) => check_kind(spec.pairing, t)?,
        None => {
            return Err(OffsetError::PairingMismatch {
                pairing: spec.pairing,
                expected: spec.pairing.base_type(),
                found: match kind {
                    SurfaceType::Degenerate(r) => format!("degenerate ({r})"),
                    other => other.label().to_string(),
                },
            })
        }
    }
    check_arc_length(spec.base.as_ref())?;
    for s in spec.base.grid() {
        spec.r.eval(s)?;
        spec.theta.eval(s)?;
    }
    Ok(offset_surface(spec))
}

/// `φ*` without the base-type and arc-length checks of [`build_offset`].
pub(crate) fn offset_surface(spec: &OffsetSpec) -> FnSurface {
    let (a, b) = (spec.clone(), spec.clone());
    FnSurface::new(
        move |s| a.base_point(s).map_err(|e| e.into_surface(s)),
        move |s| b.frame_at(s).map(|(_, t)| t.q).map_err(|e| e.into_surface(s)),
        spec.domain(),
    )
    .with_samples(spec.base.samples())
}

/// True iff the intrinsic central normal of `offset` equals `± a` of `base`
/// with one sign over the whole grid.
pub fn mannheim_condition_check(
    base: &(impl RuledSurface + ?Sized),
    offset: &(impl RuledSurface + ?Sized),
    tol: f64,
) -> Result<bool, OffsetError> {
    let mut plus = true;
    let mut minus = true;
    for s in base.grid() {
        let a = frenet_frame(base, s)?.a;
        let h = frenet_frame(offset, s)?.h;
        plus &= (h - a).euclid_norm() <= tol;
        minus &= (h + a).euclid_norm() <= tol;
        if !plus && !minus {
            return Ok(false);
        }
    }
    Ok(plus || minus)
}

/// `ε2 ||dq/ds|| d + dR/ds`; zero iff `c + R a` is the striction curve of `φ*`.
pub fn striction_offset_residual(spec: &OffsetSpec, s: f64) -> Result<f64, OffsetError> {
    spec.domain().check(s)?;
    let base = spec.base.as_ref();
    let f = frenet_frame(base, s)?;
    let d = drall_unchecked(base, s)?;
    Ok(f.eps2 as f64 * f.ds1_ds * d + spec.r.deriv(s, 1)?)
}

/// Residual of the developability condition of `φ*` for the pairing:
/// `cosh θ + Rκσ sinh θ`, `sinh θ + Rκσ cosh θ` or `sin θ - Rκσ cos θ`
/// with `σ = ds1/ds`.
pub fn developability_residual(pairing: OffsetPairing, theta: f64, r: f64, kappa: f64, ds1_ds: f64) -> f64 {
    let x = r * kappa * ds1_ds;
    match pairing {
        OffsetPairing::M1mToM1p => theta.cosh() + x * theta.sinh(),
        OffsetPairing::M1mToM1m => theta.sinh() + x * theta.cosh(),
        OffsetPairing::M1pToM2p => theta.sin() - x * theta.cos(),
    }
}

/// Principal θ solving [`developability_residual`] `= 0`.
pub fn solve_theta(pairing: OffsetPairing, r: f64, kappa: f64, ds1_ds: f64) -> Result<f64, OffsetError> {
    let x = r * kappa * ds1_ds;
    match pairing {
        OffsetPairing::M1mToM1p if x.abs() > 1.0 => Ok((-1.0 / x).atanh()),
        OffsetPairing::M1mToM1p => Err(OffsetError::NoRealSolution { pairing, value: x, bound: "|R κ ds1/ds| > 1 is required" }),
        OffsetPairing::M1mToM1m if x.abs() < 1.0 => Ok((-x).atanh()),
        OffsetPairing::M1mToM1m => Err(OffsetError::NoRealSolution { pairing, value: x, bound: "|R κ ds1/ds| < 1 is required" }),
        OffsetPairing::M1pToM2p => Ok(x.atan()),
    }
}

/// `dθ/ds + ds1/ds`, which vanishes for every developable Mannheim pair.
pub fn theta_evolution_residual(spec: &OffsetSpec, s: f64) -> Result<f64, OffsetError> {
    spec.domain().check(s)?;
    let f = frenet_frame(spec.base.as_ref(), s)?;
    Ok(spec.theta.deriv(s, 1)? + f.ds1_ds)
}

/// Residual of the curvature relation characterizing developable bases with
/// developable Mannheim offsets at constant distance `r`:
/// `κ' + (R²κ²σ² ∓ 1)/R + σ''κ/σ`, with `-` for an M1- base and `+` for M1+.
pub fn characterization_residual(
    base: &(impl RuledSurface + ?Sized),
    r: f64,
    s: f64,
    variant: FrameType,
) -> Result<f64, OffsetError> {
    if r == 0.0 {
        return Err(OffsetError::ZeroDistance);
    }
    let j = curvature_jet(base, s)?;
    if j.kind != variant || variant == FrameType::M2Plus {
        return Err(OffsetError::PairingMismatch {
            pairing: if variant == FrameType::M1Plus { OffsetPairing::M1pToM2p } else { OffsetPairing::M1mToM1p },
            expected: variant,
            found: j.kind.to_string(),
        });
    }
    let d = drall_unchecked(base, s)?;
    if d.abs() > DEVELOPABLE_TOL {
        return Err(OffsetError::NotDevelopable { s, drall: d });
    }
    let speed = striction_tangent_unchecked(base, s)?.norm();
    if (speed - 1.0).abs() > ARC_LENGTH_TOL {
        return Err(OffsetError::NotArcLength { s, speed });
    }
    let sign = if variant == FrameType::M1Minus { -1.0 } else { 1.0 };
    let x = r * j.kappa * j.sigma;
    Ok(j.dkappa + (x * x + sign) / r + j.d2sigma * j.kappa / j.sigma)
}
