//! Shared helpers for the integration suites: a tiny deterministic RNG
//! and a bisection oracle that stays independent of the solver code.

use fractal_core::Complex;

/// splitmix64; deterministic across platforms and rust versions.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform over the square [-r, r]^2; |z| can slightly exceed r but
    /// the callers only need a bounded sampling region.
    pub fn complex_in(&mut self, r: f64) -> Complex {
        Complex::new(self.range(-r, r), self.range(-r, r))
    }
}

/// Bisection root finder; assumes f(lo) and f(hi) bracket a sign change.
#[allow(dead_code)]
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: u32) -> f64 {
    let f_lo = f(lo);
    assert!(
        f_lo * f(hi) <= 0.0,
        "bisect needs a bracket: f({lo}) and f({hi}) share a sign"
    );
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if f(mid) * f_lo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Relative closeness with an absolute floor of 1.
#[allow(dead_code)]
pub fn close(a: Complex, b: Complex, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}
