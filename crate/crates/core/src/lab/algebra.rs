//! Seeded randomized checks of the vector algebra and of the pseudo-orthonormal
//! frame identities.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lorentz::{lorentz_cross, lorentz_dot, mixed_product, LVec3};

pub fn uniform_vec(rng: &mut ChaCha8Rng, half_width: f64) -> LVec3 {
    LVec3::new(
        rng.gen_range(-half_width..=half_width),
        rng.gen_range(-half_width..=half_width),
        rng.gen_range(-half_width..=half_width),
    )
}

/// Uniform in `[-10, 10]³`, rejected until clearly timelike.
pub fn timelike_vec(rng: &mut ChaCha8Rng) -> LVec3 {
    loop {
        let v = uniform_vec(rng, 10.0);
        if v.dot(&v) < -1e-3 * v.euclid_norm_sq() {
            return v;
        }
    }
}

/// `(t, t cos φ, t sin φ)` with `t` uniform in `[-10, 10]` away from zero.
pub fn null_vec(rng: &mut ChaCha8Rng) -> LVec3 {
    let t = rng.gen_range(0.01..=10.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    null_at(t, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn null_at(t: f64, phi: f64) -> LVec3 {
    LVec3::new(t, t * phi.cos(), t * phi.sin())
}

/// Worst deviations over random unit-scale triples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraResiduals {
    /// `max |<x × y, x>|, |<x × y, y>|`
    pub cross_orthogonality: f64,
    /// `max ||x × y + y × x||`
    pub antisymmetry: f64,
    /// `max` deviation of `|a,b,c|` from its cyclic and transposed permutations.
    pub alternation: f64,
    /// `max |<x, y> - <y, x>|` plus bilinearity defect.
    pub bilinearity: f64,
}

pub fn algebra_residuals(rng: &mut ChaCha8Rng, n: usize) -> AlgebraResiduals {
    let mut r = AlgebraResiduals::default();
    for _ in 0..n {
        let (x, y, z) = (uniform_vec(rng, 1.0), uniform_vec(rng, 1.0), uniform_vec(rng, 1.0));
        let c = lorentz_cross(x, y);
        r.cross_orthogonality = r.cross_orthogonality.max(lorentz_dot(c, x).abs()).max(lorentz_dot(c, y).abs());
        r.antisymmetry = r.antisymmetry.max((c + lorentz_cross(y, x)).euclid_norm());
        let m = mixed_product(x, y, z);
        let alt = [
            m - mixed_product(y, z, x),
            m - mixed_product(z, x, y),
            m + mixed_product(y, x, z),
            m + mixed_product(x, z, y),
        ];
        r.alternation = alt.iter().fold(r.alternation, |acc, v| acc.max(v.abs()));
        let (a, b) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let lin = lorentz_dot(x * a + y * b, z) - (a * lorentz_dot(x, z) + b * lorentz_dot(y, z));
        r.bilinearity = r.bilinearity.max((lorentz_dot(x, y) - lorentz_dot(y, x)).abs()).max(lin.abs());
    }
    r
}

/// Violation counts of the three frame identity statements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaViolations {
    /// Two timelike vectors found orthogonal (or violating the reverse
    /// Cauchy-Schwarz inequality that implies (i)).
    pub timelike_pairs: usize,
    /// Two null vectors whose orthogonality disagrees with linear dependence.
    pub null_pairs: usize,
    /// A timelike vector found orthogonal to a null vector.
    pub mixed_pairs: usize,
}

impl LemmaViolations {
    pub fn total(&self) -> usize {
        self.timelike_pairs + self.null_pairs + self.mixed_pairs
    }
}

const ORTHO_TOL: f64 = 1e-12;
const DEPENDENT_TOL: f64 = 1e-6;

pub fn lemma_violations(rng: &mut ChaCha8Rng, n: usize) -> LemmaViolations {
    let mut v = LemmaViolations::default();
    for i in 0..n {
        let (x, y) = (timelike_vec(rng), timelike_vec(rng));
        let g = x.dot(&y);
        if g.abs() <= ORTHO_TOL * x.euclid_norm() * y.euclid_norm() || g * g < x.dot(&x) * y.dot(&y) * (1.0 - 1e-12) {
            v.timelike_pairs += 1;
        }

        // every other null pair is built dependent on purpose
        let a = null_vec(rng);
        let b = if i % 2 == 0 { a * rng.gen_range(-3.0..=3.0) } else { null_vec(rng) };
        if b.euclid_norm() > 0.0 {
            let scale = a.euclid_norm() * b.euclid_norm();
            let orthogonal = a.dot(&b).abs() <= ORTHO_TOL * scale;
            let dependent = a.euclid_sin_angle(&b) <= DEPENDENT_TOL;
            if orthogonal != dependent {
                v.null_pairs += 1;
            }
        }

        let (t, z) = (timelike_vec(rng), null_vec(rng));
        if t.dot(&z).abs() <= ORTHO_TOL * t.euclid_norm() * z.euclid_norm() {
            v.mixed_pairs += 1;
        }
    }
    v
}
