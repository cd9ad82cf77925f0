use std::sync::Arc;

use crate::expr::Domain;
use crate::lorentz::LVec3;

use super::{RuledSurface, SurfaceError, DEFAULT_SAMPLES};

type VecFn = Arc<dyn Fn(f64) -> Result<LVec3, SurfaceError> + Send + Sync>;

/// A ruled surface given by base and director closures, differentiated with
/// 5-point central differences.
///
/// Used for surfaces derived from other surfaces (offsets, trajectory
/// surfaces), whose closures already carry their own numerical error.
#[derive(Clone)]
pub struct FnSurface {
    base: VecFn,
    director: VecFn,
    domain: Domain,
    samples: usize,
}

impl std::fmt::Debug for FnSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnSurface").field("domain", &self.domain).field("samples", &self.samples).finish()
    }
}

impl FnSurface {
    pub fn new<B, D>(base: B, director: D, domain: Domain) -> Self
    where
        B: Fn(f64) -> Result<LVec3, SurfaceError> + Send + Sync + 'static,
        D: Fn(f64) -> Result<LVec3, SurfaceError> + Send + Sync + 'static,
    {
        FnSurface { base: Arc::new(base), director: Arc::new(director), domain, samples: DEFAULT_SAMPLES }
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n.max(2);
        self
    }
}

/// Step sizes per derivative order, relative to `max(1, |s|)`.
const STEPS: [f64; 4] = [0.0, 1e-4, 1e-3, 5e-3];

pub(crate) fn fd_derivs<F>(f: F, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError>
where
    F: Fn(f64) -> Result<LVec3, SurfaceError>,
{
    if n > 3 {
        return Err(SurfaceError::OrderTooHigh(n));
    }
    let scale = s.abs().max(1.0);
    let mut out = vec![f(s)?];
    for (k, step) in STEPS.iter().enumerate().take(n + 1).skip(1) {
        let h = step * scale;
        let (p2, p1, m1, m2) = (f(s + 2.0 * h)?, f(s + h)?, f(s - h)?, f(s - 2.0 * h)?);
        let d = match k {
            1 => (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h),
            2 => ((p1 + m1) * 16.0 - (p2 + m2) - out[0] * 30.0) / (12.0 * h * h),
            _ => (p2 - p1 * 2.0 + m1 * 2.0 - m2) / (2.0 * h * h * h),
        };
        out.push(d);
    }
    Ok(out)
}

impl RuledSurface for FnSurface {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn base_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        fd_derivs(|t| (self.base)(t), s, n)
    }

    fn director_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        fd_derivs(|t| (self.director)(t), s, n)
    }

    fn samples(&self) -> usize {
        self.samples
    }
}
