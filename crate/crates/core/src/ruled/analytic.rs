use crate::expr::{CurveDef, Domain, MAX_ORDER};
use crate::lorentz::LVec3;

use super::{RuledSurface, SurfaceError, DEFAULT_SAMPLES};

/// `φ(s, v) = k(s) + v q(s)` with closed-form base curve and director.
#[derive(Clone, Debug, PartialEq)]
pub struct RuledSurfaceDef {
    pub k: CurveDef,
    pub q: CurveDef,
    pub domain: Domain,
    pub samples: usize,
}

impl RuledSurfaceDef {
    pub fn new(k: CurveDef, q: CurveDef, domain: Domain) -> Self {
        RuledSurfaceDef { k, q, domain, samples: DEFAULT_SAMPLES }
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n.max(2);
        self
    }
}

fn derivs(c: &CurveDef, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
    if n > MAX_ORDER {
        return Err(SurfaceError::OrderTooHigh(n));
    }
    (0..=n).map(|k| c.eval_unchecked(k, s).map_err(SurfaceError::from)).collect()
}

impl RuledSurface for RuledSurfaceDef {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn base_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        derivs(&self.k, s, n)
    }

    fn director_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        derivs(&self.q, s, n)
    }

    fn samples(&self) -> usize {
        self.samples
    }
}
