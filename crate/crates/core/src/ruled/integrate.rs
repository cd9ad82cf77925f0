use serde::{Deserialize, Serialize};

use crate::expr::{Domain, ScalarFn};
use crate::jet::Jet;
use crate::lorentz::LVec3;

use super::{FrameTriple, FrameType, RuledSurface, SurfaceError, DEFAULT_SAMPLES};

const SEED_TOL: f64 = 1e-10;
const DRIFT_TOL: f64 = 1e-6;
const REORTHO_EVERY: usize = 16;
/// Taylor degree of the dense output; the remainder is `O(step^5)`.
const DEG: usize = 4;

/// Striction point and frame at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameState {
    pub s: f64,
    pub c: LVec3,
    pub q: LVec3,
    pub h: LVec3,
    pub a: LVec3,
}

impl FrameState {
    pub fn triple(&self) -> FrameTriple {
        FrameTriple { q: self.q, h: self.h, a: self.a }
    }

    fn axpy(&self, t: f64, d: &[LVec3; 4]) -> [LVec3; 4] {
        [self.c + d[0] * t, self.q + d[1] * t, self.h + d[2] * t, self.a + d[3] * t]
    }
}

/// A developable ruled surface synthesized from a prescribed conical
/// curvature `κ(s)` and director speed `ds1/ds`.
///
/// The frame equations are integrated with fixed-step RK4 and the striction
/// curve follows `dc/ds = q`. Between knots the state is reconstructed from
/// the Taylor series of the frame equations, which also supplies exact
/// derivatives of the base curve and director.
#[derive(Clone, Debug)]
pub struct IntegratedSurface {
    kind: FrameType,
    kappa: ScalarFn,
    speed: ScalarFn,
    domain: Domain,
    step: f64,
    start: f64,
    knots: Vec<FrameState>,
    samples: usize,
}

fn lin(x: [LVec3; 4], y: [LVec3; 4], t: f64) -> [LVec3; 4] {
    [x[0] + y[0] * t, x[1] + y[1] * t, x[2] + y[2] * t, x[3] + y[3] * t]
}

/// Integrates the frame equations of type `kind` from `seed` and `c0` at `domain.lo`.
pub fn integrate_frame(
    kind: FrameType,
    kappa: ScalarFn,
    ds1_ds: ScalarFn,
    seed: FrameTriple,
    c0: LVec3,
    domain: Domain,
    step: f64,
) -> Result<IntegratedSurface, SurfaceError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(SurfaceError::BadStep(step));
    }
    let defect = kind.frame_defect(&seed);
    if !(defect <= SEED_TOL) || !c0.is_finite() {
        return Err(SurfaceError::InvalidSeed(defect));
    }
    let mut surf = IntegratedSurface {
        kind,
        kappa,
        speed: ds1_ds,
        domain,
        step,
        start: domain.lo,
        knots: Vec::new(),
        samples: DEFAULT_SAMPLES,
    };
    let margin = (16.0 * step).max(0.02);
    let nb = (margin / step).ceil() as usize;
    let nf = ((domain.len() + margin) / step).ceil() as usize;
    let s0 = FrameState { s: domain.lo, c: c0, q: seed.q, h: seed.h, a: seed.a };
    let mut back = surf.march(s0, -step, nb)?;
    let fwd = surf.march(s0, step, nf)?;
    back.reverse();
    back.pop();
    back.extend(fwd);
    surf.start = domain.lo - nb as f64 * step;
    surf.knots = back;
    Ok(surf)
}

impl IntegratedSurface {
    pub fn kind(&self) -> FrameType {
        self.kind
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n.max(2);
        self
    }

    /// Prescribed conical curvature at `s`.
    pub fn kappa(&self, s: f64) -> Result<f64, SurfaceError> {
        Ok(self.kappa.eval(s)?)
    }

    /// Prescribed `ds1/ds` at `s`.
    pub fn ds1_ds(&self, s: f64) -> Result<f64, SurfaceError> {
        Ok(self.speed.eval(s)?)
    }

    /// RK4 knots inside the domain.
    pub fn knots(&self) -> impl Iterator<Item = &FrameState> {
        self.knots.iter().filter(move |k| self.domain.contains(k.s))
    }

    fn speed_at(&self, s: f64) -> Result<f64, SurfaceError> {
        let v = self.speed.eval(s)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(SurfaceError::NonPositiveSpeed { s, value: v })
        }
    }

    fn rhs(&self, s: f64, y: &[LVec3; 4]) -> Result<[LVec3; 4], SurfaceError> {
        let sigma = self.speed_at(s)?;
        let kappa = self.kappa.eval(s)?;
        let k = self.kind;
        let [_, q, h, a] = *y;
        Ok([q, h * sigma, (q * k.dh_q() + a * kappa) * sigma, h * (k.da_h() * kappa * sigma)])
    }

    fn march(&self, s0: FrameState, dt: f64, n: usize) -> Result<Vec<FrameState>, SurfaceError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(s0);
        let mut cur = s0;
        for i in 1..=n {
            let y = [cur.c, cur.q, cur.h, cur.a];
            let k1 = self.rhs(cur.s, &y)?;
            let k2 = self.rhs(cur.s + dt / 2.0, &cur.axpy(dt / 2.0, &k1))?;
            let k3 = self.rhs(cur.s + dt / 2.0, &cur.axpy(dt / 2.0, &k2))?;
            let k4 = self.rhs(cur.s + dt, &cur.axpy(dt, &k3))?;
            let mut incr = lin(k1, k4, 1.0);
            incr = lin(incr, lin(k2, k3, 1.0), 2.0);
            let y = lin(y, incr, dt / 6.0);
            let s = s0.s + dt * i as f64;
            if !y.iter().all(LVec3::is_finite) {
                return Err(SurfaceError::FrameDrift { s, drift: f64::INFINITY });
            }
            let mut next = FrameState { s, c: y[0], q: y[1], h: y[2], a: y[3] };
            if i % REORTHO_EVERY == 0 {
                let drift = self.kind.frame_defect(&next.triple());
                if drift > DRIFT_TOL {
                    return Err(SurfaceError::FrameDrift { s, drift });
                }
                let f = next.triple().orthonormalized();
                (next.q, next.h, next.a) = (f.q, f.h, f.a);
            }
            out.push(next);
            cur = next;
        }
        Ok(out)
    }

    fn nearest(&self, s: f64) -> Result<&FrameState, SurfaceError> {
        let idx = ((s - self.start) / self.step).round();
        if !(idx >= 0.0 && idx < self.knots.len() as f64) {
            let (lo, hi) = (self.start, self.start + self.step * (self.knots.len() - 1) as f64);
            return Err(crate::expr::EvalError::OutOfDomain { s, lo, hi }.into());
        }
        Ok(&self.knots[idx as usize])
    }

    /// Taylor coefficients of `(c, q, h, a)` at `st.s`, degrees `0..=DEG`.
    fn taylor(&self, st: &FrameState) -> Result<[[LVec3; 4]; DEG + 1], SurfaceError> {
        let s = st.s;
        let mut sd = [0.0; DEG + 1];
        let mut kd = [0.0; DEG + 1];
        for k in 0..=DEG {
            sd[k] = self.speed.deriv(s, k)?;
            kd[k] = self.kappa.deriv(s, k)?;
        }
        if !(sd[0] > 0.0) {
            return Err(SurfaceError::NonPositiveSpeed { s, value: sd[0] });
        }
        let p = Jet::<{ DEG + 1 }>::from_derivs(&sd);
        let qj = p * Jet::from_derivs(&kd);
        let (chq, cah) = (self.kind.dh_q(), self.kind.da_h());
        let mut x = [[LVec3::ZERO; 4]; DEG + 1];
        x[0] = [st.c, st.q, st.h, st.a];
        for m in 0..DEG {
            let mut nq = LVec3::ZERO;
            let mut nh = LVec3::ZERO;
            let mut na = LVec3::ZERO;
            for j in 0..=m {
                let [_, q, h, a] = x[m - j];
                nq += h * p.0[j];
                nh += q * (chq * p.0[j]) + a * qj.0[j];
                na += h * (cah * qj.0[j]);
            }
            let inv = 1.0 / (m + 1) as f64;
            x[m + 1] = [x[m][1] * inv, nq * inv, nh * inv, na * inv];
        }
        Ok(x)
    }

    /// State at `s` from the Taylor series at the nearest knot, projected back
    /// onto the frame manifold.
    pub fn interpolate(&self, s: f64) -> Result<FrameState, SurfaceError> {
        let knot = self.nearest(s)?;
        let x = self.taylor(knot)?;
        let t = s - knot.s;
        let mut y = [LVec3::ZERO; 4];
        for coeffs in x.iter().rev() {
            y = lin(*coeffs, y, t);
        }
        let f = FrameTriple { q: y[1], h: y[2], a: y[3] }.orthonormalized();
        Ok(FrameState { s, c: y[0], q: f.q, h: f.h, a: f.a })
    }

    /// Cubic Hermite interpolation between the bracketing knots.
    pub fn interpolate_cubic(&self, s: f64) -> Result<FrameState, SurfaceError> {
        let last = self.knots.len() - 1;
        let i = (((s - self.start) / self.step).floor().max(0.0) as usize).min(last - 1);
        let (k0, k1) = (&self.knots[i], &self.knots[i + 1]);
        if s < k0.s - 1e-12 || s > k1.s + 1e-12 {
            return Err(crate::expr::EvalError::OutOfDomain { s, lo: self.knots[0].s, hi: self.knots[last].s }.into());
        }
        let d0 = self.rhs(k0.s, &[k0.c, k0.q, k0.h, k0.a])?;
        let d1 = self.rhs(k1.s, &[k1.c, k1.q, k1.h, k1.a])?;
        let hstep = k1.s - k0.s;
        let t = (s - k0.s) / hstep;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let y0 = [k0.c, k0.q, k0.h, k0.a];
        let y1 = [k1.c, k1.q, k1.h, k1.a];
        let mut y = [LVec3::ZERO; 4];
        for j in 0..4 {
            y[j] = y0[j] * h00 + d0[j] * (h10 * hstep) + y1[j] * h01 + d1[j] * (h11 * hstep);
        }
        Ok(FrameState { s, c: y[0], q: y[1], h: y[2], a: y[3] })
    }

    fn derivs_at(&self, s: f64, n: usize, slot: usize) -> Result<Vec<LVec3>, SurfaceError> {
        if n > DEG - 1 {
            return Err(SurfaceError::OrderTooHigh(n));
        }
        let st = self.interpolate(s)?;
        let x = self.taylor(&st)?;
        let mut fact = 1.0;
        Ok((0..=n)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                x[k][slot] * fact
            })
            .collect())
    }
}

impl RuledSurface for IntegratedSurface {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn base_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        self.derivs_at(s, n, 0)
    }

    fn director_derivs(&self, s: f64, n: usize) -> Result<Vec<LVec3>, SurfaceError> {
        self.derivs_at(s, n, 1)
    }

    fn samples(&self) -> usize {
        self.samples
    }
}
