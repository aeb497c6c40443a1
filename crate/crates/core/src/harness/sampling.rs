//! Seeded angle and degree samplers.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::Exp1;

/// Default distance kept from the boundary Σ|θ| = π.
pub const DEFAULT_MARGIN: f64 = 0.3;

/// Uniform sample of the region Σ|θ_i| ≤ π - margin with random signs.
pub fn simplex_angles<R: Rng + ?Sized>(rng: &mut R, n: usize, margin: f64) -> Vec<f64> {
    let e: Vec<f64> = (0..=n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = e.iter().sum();
    let radius = PI - margin;
    e[..n]
        .iter()
        .map(|v| {
            let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
            s * radius * v / total
        })
        .collect()
}

/// Uniform sample of (-π, π)^n restricted to Σ|θ_i| ≥ π + excess.
pub fn outside_angles<R: Rng + ?Sized>(rng: &mut R, n: usize, excess: f64) -> Vec<f64> {
    loop {
        let th: Vec<f64> = (0..n).map(|_| rng.random_range(-PI..PI)).collect();
        if th.iter().map(|t| t.abs()).sum::<f64>() >= PI + excess && th.iter().all(|t| t.abs() < PI - 1e-6) {
            return th;
        }
    }
}

/// Uniform sample of (-π, π)^n.
pub fn cube_angles<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-PI..PI)).collect()
}

/// Non-integer degree in [lo, hi], kept 1e-6 away from integers.
pub fn degree<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let nu: f64 = rng.random_range(lo..hi);
        if (nu - nu.round()).abs() > 1e-6 {
            return nu;
        }
    }
}
