use serde::{Deserialize, Serialize};

use crate::lorentz::LVec3;

/// Causal type of a ruled surface with non-null frame.
///
/// | type | `<q,q>` | `<h,h>` | `<a,a>` |
/// |------|---------|---------|---------|
/// | M1-  | -1      | +1      | +1      |
/// | M1+  | +1      | +1      | -1      |
/// | M2+  | +1      | -1      | +1      |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameType {
    M1Minus,
    M1Plus,
    M2Plus,
}

impl FrameType {
    pub fn from_signs(eps2: i8, eps1: i8) -> Option<FrameType> {
        match (eps2, eps1) {
            (-1, 1) => Some(FrameType::M1Minus),
            (1, 1) => Some(FrameType::M1Plus),
            (1, -1) => Some(FrameType::M2Plus),
            _ => None,
        }
    }

    /// `<h, h>`
    pub fn eps1(self) -> i8 {
        match self {
            FrameType::M2Plus => -1,
            _ => 1,
        }
    }

    /// `<q, q>`
    pub fn eps2(self) -> i8 {
        match self {
            FrameType::M1Minus => -1,
            _ => 1,
        }
    }

    /// `<a, a>`
    pub fn a_sq(self) -> i8 {
        match self {
            FrameType::M1Plus => -1,
            _ => 1,
        }
    }

    pub fn is_timelike_surface(self) -> bool {
        !matches!(self, FrameType::M2Plus)
    }

    /// `a = orientation * (h × q)`. The sign is fixed so that the cross
    /// relations `q×h = ε2 a, h×a = -ε2 q, a×q = -h` (timelike types) and
    /// `q×h = -a, h×a = -q, a×q = h` (M2+) hold.
    pub fn orientation(self) -> f64 {
        match self {
            FrameType::M1Plus => -1.0,
            _ => 1.0,
        }
    }

    /// Coefficient of `q` in `dh/ds1`.
    pub fn dh_q(self) -> f64 {
        match self {
            FrameType::M2Plus => 1.0,
            t => -(t.eps2() as f64),
        }
    }

    /// Coefficient of `κ h` in `da/ds1`.
    pub fn da_h(self) -> f64 {
        match self {
            FrameType::M2Plus => 1.0,
            t => t.eps2() as f64,
        }
    }

    /// `κ = kappa_sign * <da/ds1, h>`.
    pub fn kappa_sign(self) -> f64 {
        match self {
            FrameType::M2Plus => -1.0,
            t => (t.eps1() * t.eps2()) as f64,
        }
    }

    pub fn darboux(self, kappa: f64, q: LVec3, a: LVec3) -> LVec3 {
        match self {
            FrameType::M2Plus => a - q * kappa,
            t => q * (t.eps2() as f64 * kappa) - a,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FrameType::M1Minus => "M1-",
            FrameType::M1Plus => "M1+",
            FrameType::M2Plus => "M2+",
        }
    }

    pub fn from_label(s: &str) -> Option<FrameType> {
        match s {
            "M1-" => Some(FrameType::M1Minus),
            "M1+" => Some(FrameType::M1Plus),
            "M2+" => Some(FrameType::M2Plus),
            _ => None,
        }
    }

    /// A seed frame of this type satisfying the cross relations exactly.
    pub fn standard_seed(self) -> FrameTriple {
        let e1 = LVec3::new(1.0, 0.0, 0.0);
        let e2 = LVec3::new(0.0, 1.0, 0.0);
        let e3 = LVec3::new(0.0, 0.0, 1.0);
        match self {
            FrameType::M1Minus => FrameTriple { q: e1, h: e2, a: e3 },
            FrameType::M1Plus => FrameTriple { q: e2, h: e3, a: e1 },
            FrameType::M2Plus => FrameTriple { q: e2, h: e1, a: -e3 },
        }
    }

    /// Largest violation of pseudo-orthonormality and the cross relations.
    pub fn frame_defect(self, f: &FrameTriple) -> f64 {
        let (q, h, a) = (f.q, f.h, f.a);
        let e2 = self.eps2() as f64;
        let ips = [
            q.dot(&q) - e2,
            h.dot(&h) - self.eps1() as f64,
            a.dot(&a) - self.a_sq() as f64,
            q.dot(&h),
            q.dot(&a),
            h.dot(&a),
        ];
        let crosses = match self {
            FrameType::M2Plus => [q.cross(&h) + a, h.cross(&a) + q, a.cross(&q) - h],
            _ => [q.cross(&h) - a * e2, h.cross(&a) + q * e2, a.cross(&q) + h],
        };
        ips.iter()
            .map(|v| v.abs())
            .chain(crosses.iter().map(|v| v.euclid_norm()))
            .fold(0.0, f64::max)
    }
}

impl std::fmt::Display for FrameType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameTriple {
    pub q: LVec3,
    pub h: LVec3,
    pub a: LVec3,
}

impl FrameTriple {
    /// Gram-Schmidt in the Lorentz metric, keeping the orientation of each vector.
    pub fn orthonormalized(&self) -> FrameTriple {
        let unit = |v: LVec3| v / v.norm();
        let q = unit(self.q);
        let h = unit(self.h - q * (self.h.dot(&q) / q.dot(&q)));
        let a = unit(self.a - q * (self.a.dot(&q) / q.dot(&q)) - h * (self.a.dot(&h) / h.dot(&h)));
        FrameTriple { q, h, a }
    }
}

/// Classification of a surface over its whole sample grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SurfaceType {
    M1Minus,
    M1Plus,
    M2Plus,
    Degenerate(String),
}

impl SurfaceType {
    pub fn frame_type(&self) -> Option<FrameType> {
        match self {
            SurfaceType::M1Minus => Some(FrameType::M1Minus),
            SurfaceType::M1Plus => Some(FrameType::M1Plus),
            SurfaceType::M2Plus => Some(FrameType::M2Plus),
            SurfaceType::Degenerate(_) => None,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            SurfaceType::Degenerate(_) => "degenerate",
            t => t.frame_type().unwrap().label(),
        }
    }
}

impl From<FrameType> for SurfaceType {
    fn from(t: FrameType) -> Self {
        match t {
            FrameType::M1Minus => SurfaceType::M1Minus,
            FrameType::M1Plus => SurfaceType::M1Plus,
            FrameType::M2Plus => SurfaceType::M2Plus,
        }
    }
}

/// Frenet data of a ruled surface at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSample {
    pub s: f64,
    pub kind: FrameType,
    pub q: LVec3,
    pub h: LVec3,
    pub a: LVec3,
    pub eps1: i8,
    pub eps2: i8,
    /// `ds1/ds = ||dq/ds||`, speed of the spherical image of the director.
    pub ds1_ds: f64,
    /// Conical curvature of the directing cone.
    pub kappa: f64,
    pub darboux: LVec3,
}

impl FrameSample {
    pub fn triple(&self) -> FrameTriple {
        FrameTriple { q: self.q, h: self.h, a: self.a }
    }

    pub fn defect(&self) -> f64 {
        self.kind.frame_defect(&self.triple())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_seeds_are_exact() {
        for t in [FrameType::M1Minus, FrameType::M1Plus, FrameType::M2Plus] {
            assert_eq!(t.frame_defect(&t.standard_seed()), 0.0, "{t}");
            assert_eq!(FrameType::from_signs(t.eps2(), t.eps1()), Some(t));
            assert_eq!(FrameType::from_label(t.label()), Some(t));
        }
        assert_eq!(FrameType::from_signs(-1, -1), None);
    }

    #[test]
    fn orientation_reproduces_seed() {
        for t in [FrameType::M1Minus, FrameType::M1Plus, FrameType::M2Plus] {
            let f = t.standard_seed();
            assert_eq!(f.h.cross(&f.q) * t.orientation(), f.a, "{t}");
        }
    }

    #[test]
    fn gram_schmidt_restores_frame() {
        let t = FrameType::M1Minus;
        let mut f = t.standard_seed();
        f.q = f.q * 1.001 + f.h * 1e-4;
        f.a = f.a + f.q * 2e-4;
        let g = f.orthonormalized();
        assert!(t.frame_defect(&g) < 1e-12);
    }
}
