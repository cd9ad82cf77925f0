//! Vector algebra in Minkowski 3-space with signature (-,+,+).
//!
//! The metric is `<x, y> = -x1*y1 + x2*y2 + x3*y3`. The cross product is the
//! component formula `(x2y3 - x3y2, x1y3 - x3y1, x2y1 - x1y2)`, which makes
//! `x × y` Lorentz-orthogonal to both factors.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance used to decide that a vector is null.
pub const CAUSAL_TOL: f64 = 1e-9;

/// A vector of Minkowski 3-space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LVec3 {
    pub const ZERO: LVec3 = LVec3 { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LVec3 { x1, x2, x3 }
    }

    /// Builds a vector, rejecting NaN or infinite components.
    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self, NonFiniteVector> {
        let v = LVec3::new(x1, x2, x3);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NonFiniteVector(v))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        LVec3::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn dot(&self, other: &LVec3) -> f64 {
        -self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    #[inline]
    pub fn cross(&self, other: &LVec3) -> LVec3 {
        LVec3::new(
            self.x2 * other.x3 - self.x3 * other.x2,
            self.x1 * other.x3 - self.x3 * other.x1,
            self.x2 * other.x1 - self.x1 * other.x2,
        )
    }

    /// Lorentzian norm `sqrt(|<v, v>|)`.
    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(self).abs().sqrt()
    }

    #[inline]
    pub fn euclid_norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    #[inline]
    pub fn euclid_norm(&self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    /// Euclidean distance, used for residuals so null differences are not hidden.
    pub fn euclid_dist(&self, other: &LVec3) -> f64 {
        (*self - *other).euclid_norm()
    }

    pub fn causal(&self, tol: f64) -> CausalClass {
        classify_causal(*self, tol)
    }

    /// `|sin|` of the Euclidean angle between two nonzero vectors; zero iff parallel.
    pub fn euclid_sin_angle(&self, other: &LVec3) -> f64 {
        let (a, b) = (self.to_array(), other.to_array());
        let c = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let cn = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        cn / (self.euclid_norm() * other.euclid_norm())
    }
}

impl fmt::Display for LVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

impl Add for LVec3 {
    type Output = LVec3;
    fn add(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for LVec3 {
    fn add_assign(&mut self, o: LVec3) {
        *self = *self + o;
    }
}

impl Sub for LVec3 {
    type Output = LVec3;
    fn sub(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for LVec3 {
    fn sub_assign(&mut self, o: LVec3) {
        *self = *self - o;
    }
}

impl Neg for LVec3 {
    type Output = LVec3;
    fn neg(self) -> LVec3 {
        LVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for LVec3 {
    type Output = LVec3;
    fn mul(self, k: f64) -> LVec3 {
        LVec3::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Mul<LVec3> for f64 {
    type Output = LVec3;
    fn mul(self, v: LVec3) -> LVec3 {
        v * self
    }
}

impl Div<f64> for LVec3 {
    type Output = LVec3;
    fn div(self, k: f64) -> LVec3 {
        LVec3::new(self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("vector has non-finite components: {0}")]
pub struct NonFiniteVector(pub LVec3);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleKind {
    Hyperbolic,
    Central,
    Spacelike,
    LorentzianTimelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzAngle {
    pub kind: AngleKind,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereMembership {
    OnS12,
    OnH02,
    Neither,
}

#[derive(Debug, Error, PartialEq)]
pub enum AngleError {
    #[error("angle undefined for null or zero vector {0}")]
    NullOrZero(LVec3),
    #[error("timelike vectors have opposite time orientations")]
    OppositeTimeOrientation,
    #[error("spacelike pair spans a degenerate plane (Gram determinant {0:e})")]
    DegeneratePlane(f64),
    #[error("cosine argument {0} outside [-1, 1]")]
    OutOfRange(f64),
}

pub fn lorentz_dot(x: LVec3, y: LVec3) -> f64 {
    x.dot(&y)
}

pub fn lorentz_norm(v: LVec3) -> f64 {
    v.norm()
}

pub fn lorentz_cross(x: LVec3, y: LVec3) -> LVec3 {
    x.cross(&y)
}

/// `|a, b, c| = <a × b, c>`. With the cross product above this equals `-det[a; b; c]`.
pub fn mixed_product(a: LVec3, b: LVec3, c: LVec3) -> f64 {
    a.cross(&b).dot(&c)
}

/// The zero vector is spacelike; a nonzero vector is null when
/// `|<v,v>| <= tol * max(1, |v|_E^2)`.
pub fn classify_causal(v: LVec3, tol: f64) -> CausalClass {
    let e2 = v.euclid_norm_sq();
    if e2 == 0.0 {
        return CausalClass::Spacelike;
    }
    let g = v.dot(&v);
    if g.abs() <= tol * e2.max(1.0) {
        CausalClass::Null
    } else if g > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Angle between two non-null vectors.
///
/// Timelike pairs must share a time orientation and give a hyperbolic angle.
/// Spacelike pairs give a central angle when they span a timelike plane and a
/// spacelike angle when they span a spacelike plane; the plane type is the sign
/// of the Gram determinant `<x,x><y,y> - <x,y>^2`. A mixed pair gives the
/// Lorentzian timelike angle. Cases other than the hyperbolic one use `|<x,y>|`
/// so that `theta >= 0` always exists.
pub fn lorentz_angle(x: LVec3, y: LVec3) -> Result<LorentzAngle, AngleError> {
    let cx = classify_causal(x, CAUSAL_TOL);
    let cy = classify_causal(y, CAUSAL_TOL);
    for (v, c) in [(x, cx), (y, cy)] {
        if c == CausalClass::Null || v.euclid_norm_sq() == 0.0 {
            return Err(AngleError::NullOrZero(v));
        }
    }
    let (nx, ny) = (x.norm(), y.norm());
    let ip = x.dot(&y);
    let ratio = ip.abs() / (nx * ny);
    use CausalClass::*;
    match (cx, cy) {
        (Timelike, Timelike) => {
            if x.x1.signum() != y.x1.signum() {
                return Err(AngleError::OppositeTimeOrientation);
            }
            // reverse Cauchy-Schwarz: ratio >= 1 up to rounding
            Ok(LorentzAngle { kind: AngleKind::Hyperbolic, theta: ratio.max(1.0).acosh() })
        }
        (Spacelike, Spacelike) => {
            let gram = x.dot(&x) * y.dot(&y) - ip * ip;
            let scale = (nx * ny).powi(2);
            if gram.abs() <= CAUSAL_TOL * scale.max(1.0) {
                Err(AngleError::DegeneratePlane(gram))
            } else if gram < 0.0 {
                Ok(LorentzAngle { kind: AngleKind::Central, theta: ratio.max(1.0).acosh() })
            } else {
                if ratio > 1.0 + 1e-12 {
                    return Err(AngleError::OutOfRange(ratio));
                }
                Ok(LorentzAngle { kind: AngleKind::Spacelike, theta: ratio.min(1.0).acos() })
            }
        }
        _ => Ok(LorentzAngle { kind: AngleKind::LorentzianTimelike, theta: ratio.asinh() }),
    }
}

pub fn sphere_membership(v: LVec3, r: f64, tol: f64) -> SphereMembership {
    let g = v.dot(&v);
    let r2 = r * r;
    if (g - r2).abs() <= tol {
        SphereMembership::OnS12
    } else if (g + r2).abs() <= tol {
        SphereMembership::OnH02
    } else {
        SphereMembership::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const E1: LVec3 = LVec3::new(1.0, 0.0, 0.0);
    const E2: LVec3 = LVec3::new(0.0, 1.0, 0.0);
    const E3: LVec3 = LVec3::new(0.0, 0.0, 1.0);

    #[test]
    fn dot_examples() {
        assert_eq!(lorentz_dot(E1, E1), -1.0);
        assert_eq!(lorentz_dot(E2, E3), 0.0);
        assert_eq!(lorentz_dot(LVec3::new(1.0, 2.0, 0.0), LVec3::new(-1.0, 2.0, 0.0)), 5.0);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(lorentz_norm(LVec3::new(0.0, 3.0, 4.0)), 5.0);
        assert_eq!(lorentz_norm(LVec3::new(1.0, 1.0, 0.0)), 0.0);
        assert_abs_diff_eq!(lorentz_norm(LVec3::new(2.0, 1.0, 0.0)), 3f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(lorentz_cross(E2, E3), E1);
        assert_eq!(lorentz_cross(E1, E2), LVec3::new(0.0, 0.0, -1.0));
        let x = LVec3::new(0.3, -2.0, 7.5);
        assert_eq!(lorentz_cross(x, x), LVec3::ZERO);
    }

    #[test]
    fn mixed_product_examples() {
        // composition oracle: <e1 × e2, e3> = <(0,0,-1), e3>
        let oracle = lorentz_dot(lorentz_cross(E1, E2), E3);
        assert_eq!(oracle, -1.0);
        assert_eq!(mixed_product(E1, E2, E3), oracle);
        let a = LVec3::new(1.0, 2.0, 3.0);
        assert_eq!(mixed_product(a, a, E3), 0.0);
        for u in [-2.0f64, -0.3, 0.0, 0.7, 3.1] {
            let b = LVec3::new(u.cosh(), u.sinh(), 0.0);
            let c = LVec3::new(u.sinh(), u.cosh(), 0.0);
            assert_abs_diff_eq!(mixed_product(E3, b, c), -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mixed_product_is_negative_determinant() {
        let a = LVec3::new(0.2, -1.3, 2.0);
        let b = LVec3::new(1.1, 0.4, -0.7);
        let c = LVec3::new(-0.5, 0.9, 0.3);
        let det = a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
            + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1);
        assert_abs_diff_eq!(mixed_product(a, b, c), -det, epsilon = 1e-14);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(classify_causal(E1, CAUSAL_TOL), CausalClass::Timelike);
        assert_eq!(classify_causal(LVec3::new(1.0, 1.0, 0.0), CAUSAL_TOL), CausalClass::Null);
        assert_eq!(classify_causal(LVec3::ZERO, CAUSAL_TOL), CausalClass::Spacelike);
        assert_eq!(classify_causal(E2, CAUSAL_TOL), CausalClass::Spacelike);
        // tolerance scales with magnitude
        let big = LVec3::new(1e6, 1e6 * (1.0 + 1e-13), 0.0);
        assert_eq!(classify_causal(big, CAUSAL_TOL), CausalClass::Null);
    }

    #[test]
    fn angle_examples() {
        let y = LVec3::new(1f64.cosh(), 1f64.sinh(), 0.0);
        let a = lorentz_angle(E1, y).unwrap();
        assert_eq!(a.kind, AngleKind::Hyperbolic);
        assert_abs_diff_eq!(a.theta, 1.0, epsilon = 1e-12);

        let a = lorentz_angle(E2, E3).unwrap();
        assert_eq!(a.kind, AngleKind::Spacelike);
        assert_abs_diff_eq!(a.theta, std::f64::consts::FRAC_PI_2, epsilon = 1e-15);

        let a = lorentz_angle(LVec3::new(1.0, 2.0, 0.0), LVec3::new(-1.0, 2.0, 0.0)).unwrap();
        assert_eq!(a.kind, AngleKind::Central);
        assert_abs_diff_eq!(a.theta, 3f64.ln(), epsilon = 1e-12);

        let a = lorentz_angle(E2, LVec3::new(2.0, 1.0, 0.0)).unwrap();
        assert_eq!(a.kind, AngleKind::LorentzianTimelike);
        // |<x,y>| = 1 = 1 * sqrt(3) * sinh(theta)
        assert_abs_diff_eq!(a.theta.sinh(), 1.0 / 3f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn angle_errors() {
        assert!(matches!(
            lorentz_angle(LVec3::new(1.0, 1.0, 0.0), E2),
            Err(AngleError::NullOrZero(_))
        ));
        assert!(matches!(lorentz_angle(LVec3::ZERO, E2), Err(AngleError::NullOrZero(_))));
        assert_eq!(lorentz_angle(E1, -E1), Err(AngleError::OppositeTimeOrientation));
        // two parallel spacelike vectors span a line, not a plane
        assert!(matches!(lorentz_angle(E2, E2 * 3.0), Err(AngleError::DegeneratePlane(_))));
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_membership(E2, 1.0, 1e-12), SphereMembership::OnS12);
        assert_eq!(sphere_membership(E1, 1.0, 1e-12), SphereMembership::OnH02);
        assert_eq!(sphere_membership(LVec3::new(1.0, 1.0, 0.0), 1.0, 1e-12), SphereMembership::Neither);
        assert_eq!(sphere_membership(E3 * 2.0, 2.0, 1e-12), SphereMembership::OnS12);
    }

    #[test]
    fn try_new_rejects_nan() {
        assert!(LVec3::try_new(f64::NAN, 0.0, 0.0).is_err());
        assert!(LVec3::try_new(0.0, f64::INFINITY, 0.0).is_err());
        assert!(LVec3::try_new(1.0, 2.0, 3.0).is_ok());
    }
}
