//! Convergence acceleration for partial-sum sequences.

use crate::error::{Error, Result};

/// Number of trailing partial sums fed to the epsilon algorithm.
pub const WYNN_WINDOW: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Acceleration {
    None,
    Cesaro,
    #[default]
    WynnEpsilon,
}

impl Acceleration {
    pub fn name(self) -> &'static str {
        match self {
            Acceleration::None => "none",
            Acceleration::Cesaro => "cesaro",
            Acceleration::WynnEpsilon => "wynn",
        }
    }
}

impl std::str::FromStr for Acceleration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Acceleration::None),
            "cesaro" => Ok(Acceleration::Cesaro),
            "wynn" | "wynn_epsilon" => Ok(Acceleration::WynnEpsilon),
            other => Err(Error::Config(format!("unknown acceleration `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accelerated {
    pub value: f64,
    pub tail_estimate: f64,
    pub method: Acceleration,
}

/// Wynn's epsilon algorithm over `sums`.
///
/// Returns the even-column estimate whose distance to the previous even column
/// is smallest, with that distance as the tail estimate.
pub fn wynn_epsilon(sums: &[f64]) -> Result<Accelerated> {
    let unaccelerated = sums.last().copied().unwrap_or(f64::NAN);
    if sums.len() < 3 {
        return Err(Error::AccelerationBreakdown { unaccelerated });
    }
    if sums.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Accelerated {
            value: unaccelerated,
            tail_estimate: 0.0,
            method: Acceleration::WynnEpsilon,
        });
    }
    let scale = sums.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut prev: Vec<f64> = vec![0.0; sums.len() + 1];
    let mut curr: Vec<f64> = sums.to_vec();
    let mut even_tails = vec![unaccelerated];
    let mut col = 0;
    while curr.len() >= 2 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        let mut broke = false;
        for k in 0..curr.len() - 1 {
            let diff = curr[k + 1] - curr[k];
            if diff == 0.0 || !diff.is_finite() || (col % 2 == 0 && diff.abs() <= 1e-15 * scale) {
                broke = true;
                break;
            }
            next.push(prev[k + 1] + 1.0 / diff);
        }
        if broke {
            break;
        }
        col += 1;
        prev = curr;
        curr = next;
        if col % 2 == 0 {
            even_tails.push(*curr.last().expect("non-empty column"));
        }
    }
    if even_tails.len() < 2 {
        return Err(Error::AccelerationBreakdown { unaccelerated });
    }
    let (mut best, mut best_err) = (f64::NAN, f64::INFINITY);
    for w in even_tails.windows(2) {
        let err = (w[1] - w[0]).abs();
        if w[1].is_finite() && err < best_err {
            best = w[1];
            best_err = err;
        }
    }
    if !best.is_finite() {
        return Err(Error::AccelerationBreakdown { unaccelerated });
    }
    Ok(Accelerated {
        value: best,
        tail_estimate: best_err,
        method: Acceleration::WynnEpsilon,
    })
}

/// Raised-cosine weighted mean of a window of partial sums.
fn hann_mean(window: &[f64]) -> f64 {
    let m = window.len() as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for (k, s) in window.iter().enumerate() {
        let w = (std::f64::consts::PI * (k as f64 + 0.5) / m).sin().powi(2);
        num += w * s;
        den += w;
    }
    num / den
}

/// Hann-weighted Cesàro mean of the trailing half of `sums`; the tail estimate
/// compares it with the same mean over the preceding quarter.
pub fn cesaro(sums: &[f64]) -> Result<Accelerated> {
    let n = sums.len();
    let unaccelerated = sums.last().copied().unwrap_or(f64::NAN);
    if n < 8 {
        return Err(Error::AccelerationBreakdown { unaccelerated });
    }
    let value = hann_mean(&sums[n / 2..]);
    let earlier = hann_mean(&sums[n / 4..n / 2]);
    Ok(Accelerated {
        value,
        tail_estimate: (value - earlier).abs(),
        method: Acceleration::Cesaro,
    })
}

/// Apply `method`. The epsilon algorithm falls back to Cesàro on breakdown or
/// when its own tail estimate exceeds `tail_tol` and the Cesàro estimate is tighter.
pub fn accelerate(sums: &[f64], method: Acceleration, tail_tol: f64) -> Result<Accelerated> {
    let last = sums.last().copied().unwrap_or(f64::NAN);
    match method {
        Acceleration::None => {
            let prev = if sums.len() > 1 { sums[sums.len() - 2] } else { f64::NAN };
            Ok(Accelerated {
                value: last,
                tail_estimate: (last - prev).abs(),
                method,
            })
        }
        Acceleration::Cesaro => cesaro(sums),
        Acceleration::WynnEpsilon => {
            let start = sums.len().saturating_sub(WYNN_WINDOW);
            match wynn_epsilon(&sums[start..]) {
                Ok(w) if w.tail_estimate <= tail_tol => Ok(w),
                Ok(w) => match cesaro(sums) {
                    Ok(c) if c.tail_estimate < w.tail_estimate => Ok(c),
                    _ => Ok(w),
                },
                Err(_) => cesaro(sums),
            }
        }
    }
}
