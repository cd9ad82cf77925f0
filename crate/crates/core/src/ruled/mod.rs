//! Ruled surfaces `φ(s, v) = k(s) + v q(s)`: striction curve, drall,
//! classification, Frenet frame and conical curvature.
//!
//! Everything here works on any [`RuledSurface`]. Closed-form surfaces
//! ([`RuledSurfaceDef`]) supply exact derivatives, surfaces synthesized by
//! [`integrate_frame`] supply derivatives through the frame equations, and
//! derived surfaces ([`FnSurface`]) fall back to finite differences.

mod analytic;
mod fn_surface;
mod frame;
mod integrate;
pub mod library;

pub use analytic::RuledSurfaceDef;
pub use fn_surface::FnSurface;
pub use frame::{FrameSample, FrameTriple, FrameType, SurfaceType};
pub use integrate::{integrate_frame, FrameState, IntegratedSurface};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Domain, EvalError};
use crate::jet::Jet;
use crate::lorentz::{classify_causal, mixed_product, CausalClass, LVec3, CAUSAL_TOL};

/// Default number of grid samples per surface.
pub const DEFAULT_SAMPLES: usize = 512;

/// `|drall| <= DEVELOPABLE_TOL` on every grid point means developable.
pub const DEVELOPABLE_TOL: f64 = 1e-8;

/// A director derivative with Euclidean length below this is treated as zero.
const ZERO_DERIV: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("director is null or zero at s = {0}")]
    NullDirector(f64),
    #[error("cylindrical ruling (dq/ds = 0) at s = {0}")]
    Cylindrical(f64),
    #[error("dq/ds is null at s = {0}")]
    NullDerivative(f64),
    #[error("singular point at (s, v) = ({0}, {1})")]
    Singular(f64, f64),
    #[error("null surface normal at (s, v) = ({0}, {1})")]
    NullNormal(f64, f64),
    #[error("frame not classifiable at s = {s}: {reason}")]
    Unclassifiable { s: f64, reason: String },
    #[error("derivative order {0} not supported by this surface")]
    OrderTooHigh(usize),
    #[error("invalid initial frame (defect {0:e})")]
    InvalidSeed(f64),
    #[error("integration step must be positive, got {0}")]
    BadStep(f64),
    #[error("frame drift {drift:e} exceeds 1e-6 near s = {s}")]
    FrameDrift { s: f64, drift: f64 },
    #[error("ds1/ds must be positive, got {value} at s = {s}")]
    NonPositiveSpeed { s: f64, value: f64 },
}

/// A ruled surface described by its base curve and director.
///
/// Evaluation methods do not check the domain: finite-difference stencils
/// reach slightly past the ends. Public geometric operations check it.
pub trait RuledSurface: Send + Sync {
    fn domain(&self) -> Domain;

    /// Derivatives of the base curve `k` of orders `0..=n`.
    fn base_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError>;

    /// Derivatives of the director of orders `0..=n`; need not be unit length.
    fn director_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError>;

    fn samples(&self) -> usize {
        DEFAULT_SAMPLES
    }

    fn grid(&self) -> Vec<f64> {
        self.domain().grid(self.samples())
    }
}

/// Derivatives `0..=n` (n <= 3) of the unit director `q / ||q||`.
pub fn unit_director(surf: &(impl RuledSurface + ?Sized), s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
    if n > 3 {
        return Err(SurfaceError::OrderTooHigh(n));
    }
    let raw = surf.director_derivs(s, n)?;
    let eps = match classify_causal(raw[0], CAUSAL_TOL) {
        _ if raw[0].euclid_norm_sq() == 0.0 => return Err(SurfaceError::NullDirector(s)),
        CausalClass::Null => return Err(SurfaceError::NullDirector(s)),
        CausalClass::Spacelike => 1.0,
        CausalClass::Timelike => -1.0,
    };
    let comp = |i: usize| -> Jet<4> {
        let d: Vec<f64> = raw.iter().map(|v| v.to_array()[i]).collect();
        Jet::from_derivs(&d)
    };
    let (x1, x2, x3) = (comp(0), comp(1), comp(2));
    let g = (x2 * x2 + x3 * x3 - x1 * x1).scale(eps);
    let nu = g.powf(-0.5);
    let (y1, y2, y3) = (x1 * nu, x2 * nu, x3 * nu);
    Ok((0..=n).map(|k| LVec3::new(y1.deriv(k), y2.deriv(k), y3.deriv(k))).collect())
}

/// Local frame quantities and enough derivatives for the curvature formulas.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LocalFrame {
    pub kind: FrameType,
    /// Unit director and its derivatives.
    pub q: [LVec3; 4],
    pub sigma: f64,
    pub dsigma: f64,
    pub h: LVec3,
    pub a: LVec3,
    pub kappa: f64,
}

pub(crate) fn frame_type_of(q: LVec3, q1: LVec3, s: f64) -> Result<FrameType, SurfaceError> {
    if q1.euclid_norm() <= ZERO_DERIV {
        return Err(SurfaceError::Cylindrical(s));
    }
    let eps1 = match classify_causal(q1, CAUSAL_TOL) {
        CausalClass::Null => return Err(SurfaceError::NullDerivative(s)),
        CausalClass::Spacelike => 1,
        CausalClass::Timelike => -1,
    };
    let eps2 = if q.dot(&q) > 0.0 { 1 } else { -1 };
    FrameType::from_signs(eps2, eps1).ok_or_else(|| SurfaceError::Unclassifiable {
        s,
        reason: "timelike ruling with timelike central normal".into(),
    })
}

pub(crate) fn local_frame(surf: &(impl RuledSurface + ?Sized), s: f64, order: usize) -> Result<LocalFrame, SurfaceError> {
    let d = unit_director(surf, s, order.max(2))?;
    let mut q = [LVec3::ZERO; 4];
    q[..d.len()].copy_from_slice(&d);
    let kind = frame_type_of(q[0], q[1], s)?;
    let eps1 = kind.eps1() as f64;
    let sigma = q[1].norm();
    let dsigma = eps1 * q[1].dot(&q[2]) / sigma;
    let h = q[1] / sigma;
    let tau = kind.orientation();
    let a = q[1].cross(&q[0]) * (tau / sigma);
    let da = (q[2].cross(&q[0]) / sigma - q[1].cross(&q[0]) * (dsigma / (sigma * sigma))) * tau;
    let kappa = kind.kappa_sign() * (da / sigma).dot(&h);
    Ok(LocalFrame { kind, q, sigma, dsigma, h, a, kappa })
}

pub fn eval_surface(surf: &(impl RuledSurface + ?Sized), s: f64, v: f64) -> Result<LVec3, SurfaceError> {
    surf.domain().check(s)?;
    let k = surf.base_derivs(s, 0)?[0];
    let q = unit_director(surf, s, 0)?[0];
    Ok(k + q * v)
}

/// Character of a surface at a point, read off from its normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceCharacter {
    /// Spacelike normal, Lorentzian induced metric.
    Timelike,
    /// Timelike normal, Riemannian induced metric.
    Spacelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceNormal {
    pub m: LVec3,
    pub character: SurfaceCharacter,
}

/// Unit normal `φ_s × φ_v / ||φ_s × φ_v||`.
pub fn surface_normal(surf: &(impl RuledSurface + ?Sized), s: f64, v: f64) -> Result<SurfaceNormal, SurfaceError> {
    surf.domain().check(s)?;
    let k1 = surf.base_derivs(s, 1)?[1];
    let q = unit_director(surf, s, 1)?;
    let phi_s = k1 + q[1] * v;
    let phi_v = q[0];
    let n = phi_s.cross(&phi_v);
    let scale = phi_s.euclid_norm() * phi_v.euclid_norm();
    if n.euclid_norm() <= 1e-12 * scale.max(1.0) {
        return Err(SurfaceError::Singular(s, v));
    }
    let character = match classify_causal(n, CAUSAL_TOL) {
        CausalClass::Null => return Err(SurfaceError::NullNormal(s, v)),
        CausalClass::Spacelike => SurfaceCharacter::Timelike,
        CausalClass::Timelike => SurfaceCharacter::Spacelike,
    };
    Ok(SurfaceNormal { m: n / n.norm(), character })
}

fn director_speed_sq(q1: LVec3, s: f64) -> Result<f64, SurfaceError> {
    if q1.euclid_norm() <= ZERO_DERIV {
        return Err(SurfaceError::Cylindrical(s));
    }
    if classify_causal(q1, CAUSAL_TOL) == CausalClass::Null {
        return Err(SurfaceError::NullDerivative(s));
    }
    Ok(q1.dot(&q1))
}

pub(crate) fn striction_unchecked(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<LVec3, SurfaceError> {
    let k = surf.base_derivs(s, 1)?;
    let q = unit_director(surf, s, 1)?;
    let g = director_speed_sq(q[1], s)?;
    Ok(k[0] - q[0] * (q[1].dot(&k[1]) / g))
}

/// Striction point `c = k - (<q', k'> / <q', q'>) q` on ruling `s`.
pub fn striction_curve(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<LVec3, SurfaceError> {
    surf.domain().check(s)?;
    striction_unchecked(surf, s)
}

pub(crate) fn striction_tangent_unchecked(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<LVec3, SurfaceError> {
    let k = surf.base_derivs(s, 2)?;
    let q = unit_director(surf, s, 2)?;
    let g = director_speed_sq(q[1], s)?;
    let lambda = q[1].dot(&k[1]) / g;
    let dlambda = (q[2].dot(&k[1]) + q[1].dot(&k[2])) / g - lambda * 2.0 * q[1].dot(&q[2]) / g;
    Ok(k[1] - q[0] * dlambda - q[1] * lambda)
}

/// `dc/ds` of the striction curve.
pub fn striction_tangent(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<LVec3, SurfaceError> {
    surf.domain().check(s)?;
    striction_tangent_unchecked(surf, s)
}

pub(crate) fn drall_unchecked(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<f64, SurfaceError> {
    let k1 = surf.base_derivs(s, 1)?[1];
    let q = unit_director(surf, s, 1)?;
    let g = director_speed_sq(q[1], s)?;
    Ok(mixed_product(k1, q[0], q[1]) / g)
}

/// Distribution parameter `d = |k', q, q'| / <q', q'>`.
pub fn drall(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<f64, SurfaceError> {
    surf.domain().check(s)?;
    drall_unchecked(surf, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictionPoint {
    pub s: f64,
    pub c: LVec3,
    pub drall: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictionData {
    pub points: Vec<StrictionPoint>,
    pub developable: bool,
}

impl StrictionData {
    pub fn max_abs_drall(&self) -> f64 {
        self.points.iter().map(|p| p.drall.abs()).fold(0.0, f64::max)
    }
}

/// Striction curve and drall over the surface grid.
pub fn striction_data(surf: &(impl RuledSurface + ?Sized)) -> Result<StrictionData, SurfaceError> {
    let points = surf
        .grid()
        .into_iter()
        .map(|s| Ok(StrictionPoint { s, c: striction_unchecked(surf, s)?, drall: drall_unchecked(surf, s)? }))
        .collect::<Result<Vec<_>, SurfaceError>>()?;
    let developable = points.iter().all(|p| p.drall.abs() <= DEVELOPABLE_TOL);
    Ok(StrictionData { points, developable })
}

/// Uniform causal type over the grid, or the reason there is none.
pub fn classify_surface(surf: &(impl RuledSurface + ?Sized)) -> SurfaceType {
    let mut found: Option<FrameType> = None;
    let mut warned = false;
    for s in surf.grid() {
        let raw = match surf.director_derivs(s, 0) {
            Ok(d) => d[0],
            Err(e) => return SurfaceType::Degenerate(e.to_string()),
        };
        if !warned && (raw.norm() - 1.0).abs() > 1e-6 {
            log::warn!("director is not unit length at s = {s} (norm {}); normalizing", raw.norm());
            warned = true;
        }
        let t = match unit_director(surf, s, 1).and_then(|q| frame_type_of(q[0], q[1], s)) {
            Ok(t) => t,
            Err(e) => return SurfaceType::Degenerate(e.to_string()),
        };
        match found {
            None => found = Some(t),
            Some(prev) if prev != t => {
                return SurfaceType::Degenerate(format!("type changes from {prev} to {t} at s = {s}"))
            }
            _ => {}
        }
    }
    match found {
        Some(t) => t.into(),
        None => SurfaceType::Degenerate("empty grid".into()),
    }
}

pub(crate) fn frame_sample_unchecked(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<FrameSample, SurfaceError> {
    let lf = local_frame(surf, s, 2)?;
    Ok(FrameSample {
        s,
        kind: lf.kind,
        q: lf.q[0],
        h: lf.h,
        a: lf.a,
        eps1: lf.kind.eps1(),
        eps2: lf.kind.eps2(),
        ds1_ds: lf.sigma,
        kappa: lf.kappa,
        darboux: lf.kind.darboux(lf.kappa, lf.q[0], lf.a),
    })
}

/// Frenet frame `{q, h, a}` with `h = q'/||q'||`, conical curvature by
/// projecting `da/ds1` onto `h`, and the Darboux vector.
pub fn frenet_frame(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<FrameSample, SurfaceError> {
    surf.domain().check(s)?;
    frame_sample_unchecked(surf, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameOdeResidual {
    pub r_q: f64,
    pub r_h: f64,
    pub r_a: f64,
}

impl FrameOdeResidual {
    pub fn max(&self) -> f64 {
        self.r_q.max(self.r_h).max(self.r_a)
    }
}

const FRAME_FD_STEP: f64 = 1e-4;

fn frame_fd<F>(s: f64, f: F) -> Result<(LVec3, LVec3), SurfaceError>
where
    F: Fn(f64) -> Result<FrameSample, SurfaceError>,
{
    let h = FRAME_FD_STEP * s.abs().max(1.0);
    let (p2, p1, m1, m2) = (f(s + 2.0 * h)?, f(s + h)?, f(s - h)?, f(s - 2.0 * h)?);
    let d = |a2: LVec3, a1: LVec3, b1: LVec3, b2: LVec3| (b2 - a2 + (a1 - b1) * 8.0) / (12.0 * h);
    Ok((d(p2.h, p1.h, m1.h, m2.h), d(p2.a, p1.a, m1.a, m2.a)))
}

/// Residuals of the frame equations
/// `dq/ds1 = h`, `dh/ds1 = c q + κ a`, `da/ds1 = c' κ h`.
///
/// `dq/ds` is exact; `dh/ds` and `da/ds` come from 5-point differences of the
/// computed frame. Norms are Euclidean, which bound the Lorentzian ones.
pub fn frame_ode_residual(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<FrameOdeResidual, SurfaceError> {
    surf.domain().check(s)?;
    let lf = local_frame(surf, s, 2)?;
    let (dh, da) = frame_fd(s, |t| frame_sample_unchecked(surf, t))?;
    let k = lf.kind;
    let (q, h, a, sigma, kappa) = (lf.q[0], lf.h, lf.a, lf.sigma, lf.kappa);
    Ok(FrameOdeResidual {
        r_q: (lf.q[1] / sigma - h).euclid_norm(),
        r_h: (dh / sigma - (q * k.dh_q() + a * kappa)).euclid_norm(),
        r_a: (da / sigma - h * (k.da_h() * kappa)).euclid_norm(),
    })
}

/// Largest of `||dX/ds1 - w × X||` over `X ∈ {q, h, a}`.
pub fn darboux_residual(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<f64, SurfaceError> {
    surf.domain().check(s)?;
    let lf = local_frame(surf, s, 2)?;
    let (dh, da) = frame_fd(s, |t| frame_sample_unchecked(surf, t))?;
    let w = lf.kind.darboux(lf.kappa, lf.q[0], lf.a);
    let sigma = lf.sigma;
    let r = [
        (lf.q[1] / sigma - w.cross(&lf.q[0])).euclid_norm(),
        (dh / sigma - w.cross(&lf.h)).euclid_norm(),
        (da / sigma - w.cross(&lf.a)).euclid_norm(),
    ];
    Ok(r.into_iter().fold(0.0, f64::max))
}

/// Conical curvature, director speed and their derivatives at `s`, all exact
/// in the director derivatives up to third order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureJet {
    pub kind: FrameType,
    pub kappa: f64,
    pub dkappa: f64,
    pub sigma: f64,
    pub dsigma: f64,
    pub d2sigma: f64,
}

/// With `m = |q'', q, q'|` the curvature is `κ = c m / σ³` for a type-dependent
/// sign `c`, so `κ' = c (|q''', q, q'| / σ³ - 3 m σ' / σ⁴)`.
pub fn curvature_jet(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<CurvatureJet, SurfaceError> {
    surf.domain().check(s)?;
    let lf = local_frame(surf, s, 3)?;
    let q = lf.q;
    let k = lf.kind;
    let eps1 = k.eps1() as f64;
    let (sigma, dsigma) = (lf.sigma, lf.dsigma);
    let sign = k.kappa_sign() * k.orientation();
    let m = mixed_product(q[2], q[0], q[1]);
    let dm = mixed_product(q[3], q[0], q[1]);
    let d2sigma = (eps1 * (q[2].dot(&q[2]) + q[1].dot(&q[3])) - dsigma * dsigma) / sigma;
    Ok(CurvatureJet {
        kind: k,
        kappa: sign * m / sigma.powi(3),
        dkappa: sign * (dm / sigma.powi(3) - 3.0 * m * dsigma / sigma.powi(4)),
        sigma,
        dsigma,
        d2sigma,
    })
}

/// Checks `||dc/ds|| = 1` for the striction curve at `s` within `tol`.
pub fn unit_speed_defect(surf: &(impl RuledSurface + ?Sized), s: f64) -> Result<f64, SurfaceError> {
    Ok((striction_tangent_unchecked(surf, s)?.norm() - 1.0).abs())
}

#[cfg(test)]
mod tests;
