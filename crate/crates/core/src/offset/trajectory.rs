//! Ruled surfaces traced by the central and asymptotic normals of an offset.

use serde::{Deserialize, Serialize};

use crate::ruled::{frame_sample_unchecked, frenet_frame, FnSurface, FrameTriple};

use super::{OffsetError, OffsetPairing, OffsetSpec, POLE_TOL};

/// Frames of `φ_{h*}` and `φ_{a*}` at `s`.
///
/// A common sign is free in both frames. We take the sign that
/// makes `h1* = h` and `h2* = a`, which is continuous along `s`.
pub fn trajectory_frames(spec: &OffsetSpec, s: f64) -> Result<(FrameTriple, FrameTriple), OffsetError> {
    spec.domain().check(s)?;
    let (f, star) = spec.frame_at(s)?;
    let h_traj = FrameTriple { q: f.a, h: f.h, a: f.q };
    let a_traj = FrameTriple { q: star.a, h: f.a, a: star.q };
    Ok((h_traj, a_traj))
}

/// Closed-form dralls of the trajectory surfaces at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryEntry {
    pub s: f64,
    pub p_h_star: f64,
    pub p_a_star: f64,
}

fn nonzero(v: f64, what: &'static str) -> Result<f64, OffsetError> {
    if v.abs() <= POLE_TOL {
        Err(OffsetError::DivisionByZero(what))
    } else {
        Ok(v)
    }
}

/// `p_{h*} = ∓1/(σκ)` and `p_{a*}` for the pairing, with `σ = ds1/ds`.
pub fn trajectory_dralls(spec: &OffsetSpec, s: f64) -> Result<TrajectoryEntry, OffsetError> {
    spec.domain().check(s)?;
    let f = frenet_frame(spec.base.as_ref(), s)?;
    super::check_kind(spec.pairing, f.kind)?;
    let theta = spec.theta.eval(s)?;
    let r = spec.r.eval(s)?;
    let sk = nonzero(f.ds1_ds * f.kappa, "κ ds1/ds")?;
    let x = r * sk;
    let (p_h_star, p_a_star) = match spec.pairing {
        OffsetPairing::M1mToM1p => {
            let d = nonzero(theta.sinh(), "sinh θ")?;
            (-1.0 / sk, -(theta.sinh() + x * theta.cosh()) / (sk * d))
        }
        OffsetPairing::M1mToM1m => (-1.0 / sk, -(theta.cosh() + x * theta.sinh()) / (sk * theta.cosh())),
        OffsetPairing::M1pToM2p => {
            let d = nonzero(theta.cos(), "cos θ")?;
            (1.0 / sk, (theta.cos() + x * theta.sin()) / (sk * d))
        }
    };
    Ok(TrajectoryEntry { s, p_h_star, p_a_star })
}

/// `φ_{h*}(s, v) = c*(s) + v h*(s)` and `φ_{a*}(s, v) = c*(s) + v a*(s)`.
pub fn trajectory_surfaces(spec: &OffsetSpec) -> (FnSurface, FnSurface) {
    let build = |pick: fn(&OffsetSpec, f64) -> Result<crate::lorentz::LVec3, OffsetError>| {
        let (a, b) = (spec.clone(), spec.clone());
        FnSurface::new(
            move |s| a.base_point(s).map_err(|e| e.into_surface(s)),
            move |s| pick(&b, s).map_err(|e| e.into_surface(s)),
            spec.domain(),
        )
        .with_samples(spec.base.samples())
    };
    let h_star = build(|sp, s| Ok(frame_sample_unchecked(sp.base.as_ref(), s)?.a));
    let a_star = build(|sp, s| Ok(sp.frame_at(s)?.1.a));
    (h_star, a_star)
}

/// Trajectory dralls over a grid plus the Bertrand and Mannheim relations,
/// the latter checked on intrinsically recomputed frames.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryReport {
    pub entries: Vec<TrajectoryEntry>,
    /// Largest sine of the angle between the central normals of `φ_{h*}` and `φ`.
    pub bertrand_sin: f64,
    /// Largest sine of the angle between the central normal of `φ_{a*}` and `a`.
    pub mannheim_sin: f64,
    pub bertrand_ok: bool,
    pub mannheim_ok: bool,
}

impl TrajectoryReport {
    pub fn p_h_star(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.p_h_star).collect()
    }

    pub fn p_a_star(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.p_a_star).collect()
    }
}

pub fn trajectory_report(spec: &OffsetSpec, grid: &[f64], tol: f64) -> Result<TrajectoryReport, OffsetError> {
    let (hs, as_) = trajectory_surfaces(spec);
    let mut entries = Vec::with_capacity(grid.len());
    let (mut bertrand_sin, mut mannheim_sin) = (0.0f64, 0.0f64);
    for &s in grid {
        entries.push(trajectory_dralls(spec, s)?);
        let f = frenet_frame(spec.base.as_ref(), s)?;
        bertrand_sin = bertrand_sin.max(frenet_frame(&hs, s)?.h.euclid_sin_angle(&f.h));
        mannheim_sin = mannheim_sin.max(frenet_frame(&as_, s)?.h.euclid_sin_angle(&f.a));
    }
    Ok(TrajectoryReport {
        entries,
        bertrand_sin,
        mannheim_sin,
        bertrand_ok: bertrand_sin <= tol,
        mannheim_ok: mannheim_sin <= tol,
    })
}

