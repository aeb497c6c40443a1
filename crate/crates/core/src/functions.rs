//! Jacobi, Gegenbauer, Legendre and Hermite functions of real degree,
//! integer-degree recurrences and integral-representation oracles.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_de_endpoint, IntegrandSpec, SingularEnds};
use crate::specfun::{
    beta_half, gamma_ratio, gauss_2f1, kummer_1f1, ln_gamma, rgamma, HypergeometricArgs,
};

/// Default distance kept from x = -1 by validation grids.
pub const DOMAIN_MARGIN: f64 = 0.02;

/// Integer degrees up to this bound are evaluated by recurrence.
const RECURRENCE_MAX_DEGREE: f64 = 100_000.0;

const MD_ABS_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain(format!(
                "Jacobi parameters need alpha, beta > -1 (got {alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Parameters of the Gegenbauer function with index `gamma`.
    pub fn gegenbauer(gamma: f64) -> Result<Self> {
        Self::new(gamma - 0.5, gamma - 0.5)
    }

    pub fn legendre() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    /// `γ = (α + β + 1)/2`.
    pub fn gamma(&self) -> f64 {
        0.5 * (self.alpha + self.beta + 1.0)
    }

    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }
}

/// A point `x = cos θ` in (-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    x: f64,
    theta: f64,
}

impl EvalPoint {
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x > -1.0 && x <= 1.0) {
            return Err(Error::domain(format!("evaluation point x = {x} outside (-1, 1]")));
        }
        Ok(Self { x, theta: x.acos() })
    }

    /// Angles are taken modulo sign: `cos θ = cos(-θ)`.
    pub fn from_theta(theta: f64) -> Result<Self> {
        let t = theta.abs();
        if !(t < PI) {
            return Err(Error::domain(format!("angle {theta} must satisfy |θ| < π")));
        }
        Ok(Self { x: t.cos(), theta: t })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(1 - x)/2 = sin²(θ/2)`, accurate near x = 1.
    pub fn half_complement(&self) -> f64 {
        let s = (0.5 * self.theta).sin();
        s * s
    }
}

/// Real degree ν.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DegreeReal(pub f64);

impl DegreeReal {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn as_nonnegative_integer(self) -> Option<usize> {
        let v = self.0;
        (v >= 0.0 && v == v.floor() && v <= RECURRENCE_MAX_DEGREE).then_some(v as usize)
    }
}

impl From<f64> for DegreeReal {
    fn from(v: f64) -> Self {
        DegreeReal(v)
    }
}

/// `P̂_ν^(α,β)(x) = 2F1(ν+α+β+1, -ν; α+1; (1-x)/2)`, normalized to 1 at x = 1.
pub fn jacobi_hat(nu: impl Into<DegreeReal>, p: JacobiParams, x: EvalPoint) -> Result<f64> {
    let nu = nu.into();
    if !nu.0.is_finite() {
        return Err(Error::domain("degree must be finite"));
    }
    if x.x == 1.0 {
        return Ok(1.0);
    }
    if let Some(n) = nu.as_nonnegative_integer() {
        return Ok(jacobi_poly_recurrence(n, p, x.x));
    }
    // the 2F1 is symmetric in its upper parameters, so P̂_ν = P̂_{-ν-2γ}
    if let Some(m) = DegreeReal(-nu.0 - 2.0 * p.gamma()).as_nonnegative_integer() {
        return Ok(jacobi_poly_recurrence(m, p, x.x));
    }
    let args = HypergeometricArgs::new(nu.0 + p.alpha + p.beta + 1.0, -nu.0, p.alpha + 1.0, x.half_complement());
    gauss_2f1(args)
}

/// `Ĉ_ν^γ(x)`, the Jacobi function with α = β = γ - ½.
pub fn gegenbauer_hat(nu: impl Into<DegreeReal>, gamma: f64, x: EvalPoint) -> Result<f64> {
    jacobi_hat(nu, JacobiParams::gegenbauer(gamma)?, x)
}

pub fn legendre_p(nu: impl Into<DegreeReal>, x: EvalPoint) -> Result<f64> {
    jacobi_hat(nu, JacobiParams::legendre(), x)
}

/// Legendre function through its Mehler-Dirichlet integral.
pub fn legendre_md(nu: impl Into<DegreeReal>, theta: f64) -> Result<f64> {
    gegenbauer_md(nu, 0.5, theta)
}

/// Gegenbauer function through the integral
/// `2^γ / (B(½,γ) sin^(2γ-1) θ) ∫_0^θ cos((ν+γ)ψ) (cos ψ - cos θ)^(γ-1) dψ`.
pub fn gegenbauer_md(nu: impl Into<DegreeReal>, gamma: f64, theta: f64) -> Result<f64> {
    let nu = nu.into().0;
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("integral representation needs γ > 0, got {gamma}")));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::domain(format!("angle {theta} outside (0, π)")));
    }
    let k = nu + gamma;
    let e = gamma - 1.0;
    let integrand = |psi: f64, _: f64, to_theta: f64| {
        let diff = 2.0 * (0.5 * (theta + psi)).sin() * (0.5 * to_theta).sin();
        (k * psi).cos() * diff.powf(e)
    };
    let spec = IntegrandSpec::new(0.0, theta, SingularEnds::Upper, MD_ABS_TOL)?;
    let integral = integrate_de_endpoint(integrand, spec)?;
    let pre = 2f64.powf(gamma) / (beta_half(gamma)? * theta.sin().powf(2.0 * gamma - 1.0));
    Ok(pre * integral.value)
}

/// `P̂_n^(α,β)(x)` from the three-term recurrence for `P_n^(α,β)` divided by
/// `(α+1)_n / n!`.
pub fn jacobi_poly_recurrence(n: usize, p: JacobiParams, x: f64) -> f64 {
    let mut it = JacobiHatIter::new(p, x);
    let mut v = 1.0;
    for _ in 0..=n {
        v = it.next().expect("infinite iterator");
    }
    v
}

/// `P̂_0, P̂_1, ..., P̂_{n_max}` at a fixed point.
pub fn jacobi_hat_sequence(n_max: usize, p: JacobiParams, x: f64) -> Vec<f64> {
    if x == 1.0 {
        return vec![1.0; n_max + 1];
    }
    JacobiHatIter::new(p, x).take(n_max + 1).collect()
}

struct JacobiHatIter {
    a: f64,
    b: f64,
    x: f64,
    n: usize,
    p_prev: f64,
    p_curr: f64,
    norm: f64,
}

impl JacobiHatIter {
    fn new(p: JacobiParams, x: f64) -> Self {
        Self {
            a: p.alpha,
            b: p.beta,
            x,
            n: 0,
            p_prev: 0.0,
            p_curr: 1.0,
            norm: 1.0,
        }
    }
}

impl Iterator for JacobiHatIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let (a, b, x) = (self.a, self.b, self.x);
        let n = self.n;
        let value = match n {
            0 => 1.0,
            1 => {
                let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) * 0.5;
                self.p_prev = 1.0;
                self.p_curr = p1;
                self.norm = a + 1.0;
                p1 / self.norm
            }
            _ => {
                let nf = n as f64;
                let s = 2.0 * nf + a + b;
                let d = 2.0 * nf * (nf + a + b) * (s - 2.0);
                let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
                let c2 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
                let next = (c1 * self.p_curr - c2 * self.p_prev) / d;
                self.p_prev = self.p_curr;
                self.p_curr = next;
                self.norm *= (nf + a) / nf;
                next / self.norm
            }
        };
        self.n += 1;
        Some(value)
    }
}

/// `d/dy P̂_ν^(α,β)(y)` at y = 1.
pub fn jacobi_derivative_at_one(nu: impl Into<DegreeReal>, p: JacobiParams) -> f64 {
    let nu = nu.into().0;
    nu * (nu + 2.0 * p.gamma()) / (2.0 * (1.0 + p.alpha))
}

/// Hermite function `H_ν(x)` of real degree.
pub fn hermite(nu: impl Into<DegreeReal>, x: f64) -> Result<f64> {
    let nu = nu.into();
    if !x.is_finite() || !nu.0.is_finite() {
        return Err(Error::domain("Hermite arguments must be finite"));
    }
    if let Some(n) = nu.as_nonnegative_integer() {
        return Ok(hermite_poly(n, x));
    }
    let v = nu.0;
    let x2 = x * x;
    let even = kummer_1f1(-0.5 * v, 0.5, x2)? * rgamma(0.5 * (1.0 - v));
    let odd = 2.0 * x * kummer_1f1(0.5 * (1.0 - v), 1.5, x2)? * rgamma(-0.5 * v);
    Ok(2f64.powf(v) * PI.sqrt() * (even - odd))
}

/// Physicists' Hermite polynomial by recurrence.
pub fn hermite_poly(n: usize, x: f64) -> f64 {
    let (mut prev, mut curr) = (1.0, 2.0 * x);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let next = 2.0 * x * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// `h_n = H_n / sqrt(2^n n!)` for n = 0..=n_max, by the stable normalized recurrence.
pub fn hermite_normalized_sequence(n_max: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(1.0);
    if n_max == 0 {
        return h;
    }
    h.push(SQRT_2 * x);
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * h[n] - (nf / (nf + 1.0)).sqrt() * h[n - 1];
        h.push(next);
    }
    h
}

/// `2^ν γ^(ν/2) Ĉ_ν^γ(x/√γ)`, which tends to `H_ν(x)` as γ grows.
///
/// Evaluated through `Ĉ_ν^γ(y) = 2F1(-ν/2, ν/2+γ; γ+½; 1-y²)` and the
/// connection formula around `1-y² = 1`, so only `x ≥ 0` is supported.
pub fn hermite_limit_oracle(nu: impl Into<DegreeReal>, x: f64, gamma_large: f64) -> Result<f64> {
    let nu = nu.into().0;
    if !(gamma_large >= 1e3) {
        return Err(Error::domain(format!("limit oracle needs γ ≥ 1e3, got {gamma_large}")));
    }
    if !(x >= 0.0) || x * x >= gamma_large {
        return Err(Error::domain(format!("limit oracle needs 0 ≤ x < √γ, got {x}")));
    }
    let g = gamma_large;
    let u = x * x / g;
    let (a, b, c) = (-0.5 * nu, 0.5 * nu + g, g + 0.5);
    let sqrt_pi = PI.sqrt();
    let scale = 2f64.powf(nu) * g.powf(0.5 * nu);
    let t1 = if rgamma(c - b) == 0.0 {
        0.0
    } else {
        sqrt_pi
            * gamma_ratio(c, c - a)?
            * rgamma(c - b)
            * gauss_2f1(HypergeometricArgs::new(a, b, 0.5, u))?
    };
    let t2 = if rgamma(a) == 0.0 || u == 0.0 {
        0.0
    } else {
        u.sqrt()
            * (-2.0 * sqrt_pi)
            * gamma_ratio(c, b)?
            * rgamma(a)
            * gauss_2f1(HypergeometricArgs::new(c - a, c - b, 1.5, u))?
    };
    Ok(scale * (t1 + t2))
}

/// `N_ν^(γ) = Γ(ν+2γ)/Γ(ν+1)`.
pub fn normalization(nu: f64, gamma: f64) -> Result<f64> {
    gamma_ratio(nu + 2.0 * gamma, nu + 1.0)
}

/// `ln Γ(n+1)` for the Hermite normalizations.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0).map(|l| l.value).unwrap_or(f64::INFINITY)
}
