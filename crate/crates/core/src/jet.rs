//! Truncated Taylor series `c0 + c1 t + ... + c_{N-1} t^{N-1}`.

use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize>(pub [f64; N]);

const FACT: [f64; 11] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0, 3628800.0];

impl<const N: usize> Jet<N> {
    pub fn zero() -> Self {
        Jet([0.0; N])
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet(c)
    }

    /// From derivative values `f, f', f'', ...`.
    pub fn from_derivs(d: &[f64]) -> Self {
        let mut c = [0.0; N];
        for (k, v) in d.iter().take(N).enumerate() {
            c[k] = v / FACT[k];
        }
        Jet(c)
    }

    pub fn deriv(&self, k: usize) -> f64 {
        self.0[k] * FACT[k]
    }

    pub fn scale(&self, a: f64) -> Self {
        let mut c = self.0;
        c.iter_mut().for_each(|v| *v *= a);
        Jet(c)
    }

    /// `self^alpha`, requires a positive constant term.
    pub fn powf(&self, alpha: f64) -> Self {
        let g = &self.0;
        let mut f = [0.0; N];
        f[0] = g[0].powf(alpha);
        for k in 1..N {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (alpha * j as f64 - (k - j) as f64) * g[j] * f[k - j];
            }
            f[k] = acc / (k as f64 * g[0]);
        }
        Jet(f)
    }

    /// Horner evaluation at offset `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a += b;
        }
        Jet(c)
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a -= b;
        }
        Jet(c)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.0[j] * o.0[k - j]).sum();
        }
        Jet(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_sqrt_of_quadratic() {
        // g(t) = 4 + 2t + t^2 around t = 0, compare g^{-1/2} derivatives with finite values
        let g = Jet::<5>([4.0, 2.0, 1.0, 0.0, 0.0]);
        let f = g.powf(-0.5);
        let exact = |t: f64| (4.0 + 2.0 * t + t * t).powf(-0.5);
        for t in [0.01, -0.02, 0.03] {
            assert!((f.eval(t) - exact(t)).abs() < 1e-9);
        }
        assert!((f.deriv(0) - 0.5).abs() < 1e-15);
        // f' = -1/2 g^{-3/2} g' = -1/2 * 1/8 * 2
        assert!((f.deriv(1) + 0.125).abs() < 1e-15);
    }

    #[test]
    fn product_matches_leibniz() {
        let a = Jet::<4>::from_derivs(&[1.0, 2.0, 3.0, 4.0]);
        let b = Jet::<4>::from_derivs(&[5.0, 6.0, 7.0, 8.0]);
        let p = a * b;
        assert_eq!(p.deriv(0), 5.0);
        assert_eq!(p.deriv(1), 1.0 * 6.0 + 2.0 * 5.0);
        assert!((p.deriv(2) - (1.0 * 7.0 + 2.0 * 2.0 * 6.0 + 3.0 * 5.0)).abs() < 1e-12);
    }
}
