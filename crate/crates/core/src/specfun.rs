//! Scalar special functions: log-gamma, gamma ratios, sinc, Gauss 2F1,
//! Kummer 1F1 and the complete elliptic integral of the first kind.
//!
//! Everything here is a pure function of its arguments and works in binary64.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Crossover between the direct 2F1 series and the Euler-transformed series.
pub const Z_SWITCH: f64 = 0.5;

/// Maximum number of hypergeometric series terms before giving up.
pub const N_SERIES: usize = 20_000;

/// Largest elliptic parameter accepted before reporting the logarithmic divergence at m = 1.
pub const ELLIPTIC_M_MAX: f64 = 1.0 - 1e-15;

/// `true` if `x` is 0, -1, -2, ...
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnGamma {
    pub value: f64,
    pub sign: f64,
}

pub fn ln_gamma(x: f64) -> Result<LnGamma> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma of non-finite {x}")));
    }
    let (value, sign) = libm::lgamma_r(x);
    Ok(LnGamma {
        value,
        sign: if sign < 0 { -1.0 } else { 1.0 },
    })
}

/// `1/Γ(x)`, an entire function; exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x.abs() < 100.0 {
        let g = libm::tgamma(x);
        if g.is_finite() && g != 0.0 {
            return 1.0 / g;
        }
    }
    let (lg, sign) = libm::lgamma_r(x);
    let s = if sign < 0 { -1.0 } else { 1.0 };
    s * (-lg).exp()
}

/// `Γ(a)/Γ(b)` without overflow.
///
/// At a pole of the denominator alone the ratio is 0. When both arguments sit
/// on poles the finite limit `Γ(a+ε)/Γ(b+ε)` is returned, which is
/// `(-1)^(a-b) Γ(1-b)/Γ(1-a)`.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    let a_pole = is_nonpositive_integer(a);
    let b_pole = is_nonpositive_integer(b);
    match (a_pole, b_pole) {
        (true, true) => {
            let parity = if ((a - b) as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            Ok(parity * gamma_ratio(1.0 - b, 1.0 - a)?)
        }
        (false, true) => Ok(0.0),
        (true, false) => Err(Error::UndefinedRatio { a, b }),
        (false, false) => {
            let d = a - b;
            if d == d.round() && d.abs() <= 64.0 {
                // Γ(b+k)/Γ(b) as a short Pochhammer product.
                let k = d.abs() as usize;
                let (base, invert) = if d >= 0.0 { (b, false) } else { (a, true) };
                let prod = (0..k).fold(1.0, |acc, i| acc * (base + i as f64));
                return Ok(if invert { 1.0 / prod } else { prod });
            }
            let la = ln_gamma(a)?;
            let lb = ln_gamma(b)?;
            Ok(la.sign * lb.sign * (la.value - lb.value).exp())
        }
    }
}

/// `sin(πx)`, exactly zero at every integer.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = x.round();
    let f = x - n;
    if f == 0.0 {
        return 0.0;
    }
    let s = (PI * f).sin();
    if (n as i64).rem_euclid(2) == 1 || (n.abs() >= 9.0e15 && (n / 2.0).fract() != 0.0) {
        -s
    } else {
        s
    }
}

/// `sin(πz)/(πz)` with `sinc(0) = 1`.
pub fn sinc(z: f64) -> f64 {
    let z = z.abs();
    if z == 0.0 {
        return 1.0;
    }
    if z < 1e-5 {
        let u = PI * z;
        let u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    sin_pi(z) / (PI * z)
}

/// Argument bundle for `2F1(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeometricArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    /// Number of the last non-zero term if `a` or `b` is a non-positive integer.
    fn terminating_degree(&self) -> Option<usize> {
        [self.a, self.b]
            .into_iter()
            .filter(|&p| is_nonpositive_integer(p))
            .map(|p| (-p) as usize)
            .min()
    }
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real `z < 1`.
pub fn gauss_2f1(args: HypergeometricArgs) -> Result<f64> {
    let HypergeometricArgs { a, b, c, z } = args;
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("2F1 with non-finite parameters"));
    }
    if z >= 1.0 {
        return Err(Error::domain(format!("2F1 requires z < 1, got {z}")));
    }
    let terminating = args.terminating_degree();
    if is_nonpositive_integer(c) {
        // The series is only defined if it stops before (c)_n vanishes.
        match terminating {
            Some(m) if (m as f64) <= -c => {}
            _ => return Err(Error::Pole(c)),
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if terminating.is_some() {
        return hyp2f1_series(a, b, c, z);
    }
    if z < 0.0 {
        // Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)).
        let w = z / (z - 1.0);
        let pre = (1.0 - z).powf(-a);
        return Ok(pre * gauss_2f1(HypergeometricArgs::new(a, c - b, c, w))?);
    }
    if z <= Z_SWITCH {
        hyp2f1_series(a, b, c, z)
    } else {
        // Euler: F(a,b;c;z) = (1-z)^(c-a-b) F(c-a, c-b; c; z).
        let pre = (1.0 - z).powf(c - a - b);
        Ok(pre * hyp2f1_series(c - a, c - b, c, z)?)
    }
}

fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    for k in 0..N_SERIES {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        if series_converged(term, ratio, z, sum.value()) {
            return Ok(sum.value());
        }
    }
    Err(Error::NoConvergence {
        terms: N_SERIES,
        partial: sum.value(),
    })
}

/// Geometric tail bound using the larger of the current and limiting term ratio.
fn series_converged(term: f64, ratio: f64, z: f64, total: f64) -> bool {
    let r = ratio.abs().max(z.abs());
    if r >= 1.0 {
        return false;
    }
    let tail = term.abs() * r / (1.0 - r);
    tail <= f64::EPSILON * 0.25 * total.abs()
}

/// Kummer confluent hypergeometric function `1F1(a; b; z)`.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(b));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 && !is_nonpositive_integer(a) {
        // Kummer transformation keeps the series free of cancellation.
        return Ok(z.exp() * kummer_series(b - a, b, -z)?);
    }
    kummer_series(a, b, z)
}

fn kummer_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    for k in 0..N_SERIES {
        let kf = k as f64;
        let ratio = (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        // Ratios shrink like z/k once k exceeds |a|, |b| and |z|.
        let past_peak = kf > a.abs() + b.abs() + z.abs();
        if past_peak && ratio.abs() < 0.5 && term.abs() <= f64::EPSILON * 0.25 * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::NoConvergence {
        terms: N_SERIES,
        partial: sum.value(),
    })
}

/// Elliptic parameter `m = k²`; any `m < 1` is accepted, negative values
/// through the imaginary-modulus transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::domain("elliptic parameter must be finite"));
        }
        if m >= 1.0 {
            return Err(Error::domain(format!("elliptic parameter m = {m} must be < 1")));
        }
        if m > ELLIPTIC_M_MAX {
            return Err(Error::Divergence(format!(
                "K(m) diverges logarithmically as m -> 1 (m = {m})"
            )));
        }
        Ok(Self(m))
    }

    pub fn m(self) -> f64 {
        self.0
    }
}

/// Complete elliptic integral of the first kind, `K(m) = (π/2) 2F1(½,½;1;m)`.
pub fn elliptic_k(m: EllipticModulus) -> f64 {
    let m = m.m();
    if m < 0.0 {
        // K(m) = K(m/(m-1)) / sqrt(1-m), with m/(m-1) in (0, 1).
        let mt = m / (m - 1.0);
        return agm_k(mt) / (1.0 - m).sqrt();
    }
    agm_k(m)
}

fn agm_k(m: f64) -> f64 {
    let mut a = 1.0_f64;
    let mut g = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - g).abs() <= 2.0 * f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = an;
    }
    FRAC_PI_2 / a
}

/// `2F1(½, ½; 1; m)` through the AGM, valid for every `m < 1`.
pub fn hyp2f1_half_half_one(m: f64) -> Result<f64> {
    Ok(elliptic_k(EllipticModulus::new(m)?) / FRAC_PI_2)
}

/// Beta function `B(½, γ) = √π Γ(γ)/Γ(γ+½)`.
pub fn beta_half(gamma: f64) -> Result<f64> {
    Ok(PI.sqrt() * gamma_ratio(gamma, gamma + 0.5)?)
}
