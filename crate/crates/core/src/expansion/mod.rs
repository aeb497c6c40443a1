//! Sinc-sampling expansions `f_ν = Σ c_{ν,n} f_n` for products of
//! Jacobi-type and Hermite functions.

pub mod accel;

use std::f64::consts::{LN_2, PI};

pub use accel::{accelerate, cesaro, wynn_epsilon, Accelerated, Acceleration};

use crate::error::{Error, Result};
use crate::functions::{
    hermite, hermite_normalized_sequence, jacobi_hat, jacobi_hat_sequence, ln_factorial,
    normalization, EvalPoint, JacobiParams,
};
use crate::specfun::{gamma_ratio, ln_gamma, rgamma, sin_pi, sinc, CompensatedSum};

const PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Legendre,
    Gegenbauer,
    JacobiPair,
    JacobiProduct,
    HermitePair,
    HermiteSingle,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Legendre => "legendre",
            FamilyKind::Gegenbauer => "gegenbauer",
            FamilyKind::JacobiPair => "jacobi_pair",
            FamilyKind::JacobiProduct => "jacobi_product",
            FamilyKind::HermitePair => "hermite_pair",
            FamilyKind::HermiteSingle => "hermite_single",
        }
    }

    pub fn is_hermite(self) -> bool {
        matches!(self, FamilyKind::HermitePair | FamilyKind::HermiteSingle)
    }
}

/// A product family `f_ν`: kind, parameters and evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    kind: FamilyKind,
    gamma: f64,
    params: Vec<JacobiParams>,
    points: Vec<EvalPoint>,
    hermite_points: Vec<f64>,
    epsilon: u8,
    paper_valid: bool,
}

pub fn points_from_thetas(thetas: &[f64]) -> Result<Vec<EvalPoint>> {
    thetas.iter().map(|&t| EvalPoint::from_theta(t)).collect()
}

impl FamilySpec {
    fn jacobi_like(kind: FamilyKind, params: Vec<JacobiParams>, points: Vec<EvalPoint>, paper_valid: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::spec("at least one evaluation point is required"));
        }
        if params.len() != points.len() {
            return Err(Error::spec(format!(
                "{} parameter pairs for {} points",
                params.len(),
                points.len()
            )));
        }
        let gamma = params[0].gamma();
        if params.iter().any(|p| (p.gamma() - gamma).abs() > PARAM_TOL) {
            return Err(Error::spec("all factors must share alpha + beta"));
        }
        Ok(Self {
            kind,
            gamma,
            params,
            points,
            hermite_points: Vec::new(),
            epsilon: 0,
            paper_valid,
        })
    }

    pub fn legendre(points: Vec<EvalPoint>) -> Result<Self> {
        let params = vec![JacobiParams::legendre(); points.len()];
        Self::jacobi_like(FamilyKind::Legendre, params, points, true)
    }

    pub fn gegenbauer(gamma: f64, points: Vec<EvalPoint>) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::spec(format!("Gegenbauer index must be positive, got {gamma}")));
        }
        let params = vec![JacobiParams::gegenbauer(gamma)?; points.len()];
        Self::jacobi_like(FamilyKind::Gegenbauer, params, points, true)
    }

    pub fn jacobi_single(p: JacobiParams, x: EvalPoint) -> Result<Self> {
        Self::jacobi_like(FamilyKind::JacobiProduct, vec![p], vec![x], true)
    }

    /// `P̂^(α,β)(x) P̂^(β,α)(y)`.
    pub fn jacobi_pair(p: JacobiParams, x: EvalPoint, y: EvalPoint) -> Result<Self> {
        Self::jacobi_pair_with(p, p.swapped(), x, y)
    }

    /// Two-factor Jacobi product; the second parameter pair must be the swap of the first.
    pub fn jacobi_pair_with(p1: JacobiParams, p2: JacobiParams, x: EvalPoint, y: EvalPoint) -> Result<Self> {
        let swapped = p1.swapped();
        if (p2.alpha - swapped.alpha).abs() > PARAM_TOL || (p2.beta - swapped.beta).abs() > PARAM_TOL {
            return Err(Error::spec(format!(
                "Jacobi pair requires (alpha2, beta2) = (beta1, alpha1); got ({}, {}) and ({}, {})",
                p1.alpha, p1.beta, p2.alpha, p2.beta
            )));
        }
        Self::jacobi_like(FamilyKind::JacobiPair, vec![p1, p2], vec![x, y], true)
    }

    /// General product of Jacobi functions sharing `alpha + beta`.
    ///
    /// Products that fall outside the admissible parameter patterns are
    /// constructible but flagged through [`FamilySpec::paper_valid`].
    pub fn jacobi_product(params: Vec<JacobiParams>, points: Vec<EvalPoint>) -> Result<Self> {
        let symmetric = params.iter().all(|p| (p.alpha - p.beta).abs() <= PARAM_TOL);
        let valid = match params.len() {
            1 => true,
            2 => {
                let s = params[0].swapped();
                symmetric || ((params[1].alpha - s.alpha).abs() <= PARAM_TOL && (params[1].beta - s.beta).abs() <= PARAM_TOL)
            }
            _ => symmetric,
        };
        Self::jacobi_like(FamilyKind::JacobiProduct, params, points, valid)
    }

    /// `H_ν(x) H_ν(y) / (2^ν Γ(ν+1))`.
    pub fn hermite_pair(x: f64, y: f64) -> Result<Self> {
        Self::hermite(1, 0, &[x, y])
    }

    /// `H_{2ν+ε}(x) / (2^{2ν} Γ(ν+1))`.
    pub fn hermite_single(x: f64, epsilon: u8) -> Result<Self> {
        Self::hermite(2, epsilon, &[x])
    }

    /// Product of `N = points.len()` factors `H_{kν+ε}`; only `k N = 2` is admissible.
    pub fn hermite(k: u32, epsilon: u8, points: &[f64]) -> Result<Self> {
        let n = points.len();
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::spec("Hermite points must be finite"));
        }
        let kind = match (k, n) {
            (2, 1) => FamilyKind::HermiteSingle,
            (1, 2) => FamilyKind::HermitePair,
            _ => {
                return Err(Error::spec(format!(
                    "Hermite products need k·N = 2, got k = {k}, N = {n}"
                )))
            }
        };
        if u32::from(epsilon) >= k {
            return Err(Error::spec(format!("epsilon must lie in 0..{k}, got {epsilon}")));
        }
        Ok(Self {
            kind,
            gamma: 0.5,
            params: Vec::new(),
            points: Vec::new(),
            hermite_points: points.to_vec(),
            epsilon,
            paper_valid: true,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn params(&self) -> &[JacobiParams] {
        &self.params
    }

    pub fn points(&self) -> &[EvalPoint] {
        &self.points
    }

    pub fn hermite_points(&self) -> &[f64] {
        &self.hermite_points
    }

    pub fn epsilon(&self) -> u8 {
        self.epsilon
    }

    /// Number of factors in the product.
    pub fn n_factors(&self) -> usize {
        if self.kind.is_hermite() {
            self.hermite_points.len()
        } else {
            self.points.len()
        }
    }

    /// Whether the parameter pattern is one for which the expansion is asserted to hold.
    pub fn paper_valid(&self) -> bool {
        self.paper_valid
    }

    /// Same family with both factors of a pair (or product) listed in reverse order.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.params.reverse();
        out.points.reverse();
        out.hermite_points.reverse();
        out
    }

    pub fn angles(&self) -> Option<AngleTuple> {
        (!self.kind.is_hermite()).then(|| AngleTuple {
            thetas: self.points.iter().map(|p| p.theta()).collect(),
        })
    }

    /// Whether the evaluation points lie where the expansion is expected to hold.
    pub fn in_domain(&self) -> bool {
        match self.kind {
            FamilyKind::HermitePair => self.hermite_points[0] + self.hermite_points[1] > 0.0,
            FamilyKind::HermiteSingle => self.hermite_points[0] > 0.0,
            _ => self.angles().is_some_and(|a| a.in_domain()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    pub n_max: usize,
    pub acceleration: Acceleration,
    pub tail_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            n_max: 4000,
            acceleration: Acceleration::WynnEpsilon,
            tail_tol: 1e-8,
        }
    }
}

impl TruncationConfig {
    pub fn new(n_max: usize, acceleration: Acceleration, tail_tol: f64) -> Result<Self> {
        let cfg = Self {
            n_max,
            acceleration,
            tail_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 8 {
            return Err(Error::Config(format!("n_max must be at least 8, got {}", self.n_max)));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::Config("tail_tol must be positive".into()));
        }
        Ok(())
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_acceleration(mut self, acceleration: Acceleration) -> Self {
        self.acceleration = acceleration;
        self
    }
}

/// Angles `(θ_1, ..., θ_N)` in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTuple {
    pub thetas: Vec<f64>,
}

impl AngleTuple {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.iter().any(|t| !(t.abs() < PI)) {
            return Err(Error::domain("every angle must satisfy |θ| < π"));
        }
        Ok(Self { thetas })
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn abs_sum(&self) -> f64 {
        self.thetas.iter().map(|t| t.abs()).sum()
    }

    pub fn in_domain(&self) -> bool {
        self.abs_sum() < PI
    }
}

pub fn in_domain(thetas: &AngleTuple) -> bool {
    thetas.in_domain()
}

/// `c_{ν,n}^(γ) = sin π(ν-n)/π · (1/(ν-n) - 1/(ν+n+2γ))`.
pub fn coeff_c(nu: f64, n: usize, gamma: f64) -> Result<f64> {
    let d = nu - n as f64;
    let s = nu + n as f64 + 2.0 * gamma;
    let sine = sin_pi(d);
    if sine == 0.0 {
        return Ok(sinc(d));
    }
    if s == 0.0 {
        return Err(Error::Pole(s));
    }
    Ok(sinc(d) - sine / (PI * s))
}

/// `f_ν` including the family normalization.
pub fn family_value(spec: &FamilySpec, nu: f64) -> Result<f64> {
    if !nu.is_finite() {
        return Err(Error::domain("degree must be finite"));
    }
    match spec.kind {
        FamilyKind::HermitePair => {
            let [x, y] = [spec.hermite_points[0], spec.hermite_points[1]];
            Ok(hermite(nu, x)? * hermite(nu, y)? * 2f64.powf(-nu) * rgamma(nu + 1.0))
        }
        FamilyKind::HermiteSingle => {
            let x = spec.hermite_points[0];
            let h = hermite(2.0 * nu + f64::from(spec.epsilon), x)?;
            Ok(h * 4f64.powf(-nu) * rgamma(nu + 1.0))
        }
        _ => {
            let mut v = normalization(nu, spec.gamma)?;
            for (p, x) in spec.params.iter().zip(&spec.points) {
                v *= jacobi_hat(nu, *p, *x)?;
            }
            Ok(v)
        }
    }
}

/// `f_0, ..., f_{n_max}` from recurrences.
pub fn integer_samples(spec: &FamilySpec, n_max: usize) -> Result<Vec<f64>> {
    match spec.kind {
        FamilyKind::HermitePair => {
            let hx = hermite_normalized_sequence(n_max, spec.hermite_points[0]);
            let hy = hermite_normalized_sequence(n_max, spec.hermite_points[1]);
            Ok(hx.iter().zip(&hy).map(|(a, b)| a * b).collect())
        }
        FamilyKind::HermiteSingle => {
            let eps = usize::from(spec.epsilon);
            let h = hermite_normalized_sequence(2 * n_max + eps, spec.hermite_points[0]);
            Ok((0..=n_max)
                .map(|n| {
                    let m = 2 * n + eps;
                    let log_scale =
                        0.5 * (eps as f64 * LN_2 + ln_factorial(m)) - n as f64 * LN_2 - ln_factorial(n);
                    h[m] * log_scale.exp()
                })
                .collect())
        }
        _ => {
            let two_g = 2.0 * spec.gamma;
            let lg = ln_gamma(two_g)?;
            let mut norm = lg.sign * lg.value.exp();
            let mut out = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                if n > 0 {
                    norm *= (n as f64 - 1.0 + two_g) / n as f64;
                }
                out.push(norm);
            }
            for (p, x) in spec.params.iter().zip(&spec.points) {
                let seq = jacobi_hat_sequence(n_max, *p, x.x());
                for (o, s) in out.iter_mut().zip(seq) {
                    *o *= s;
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    pub tail_estimate: f64,
    pub unaccelerated: f64,
    pub method: Acceleration,
    pub in_domain: bool,
}

fn running_sums(terms: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = CompensatedSum::default();
    terms
        .map(|t| {
            acc.add(t);
            acc.value()
        })
        .collect()
}

fn finish(sums: &[f64], t: &TruncationConfig, in_domain: bool) -> Result<SumResult> {
    let unaccelerated = *sums.last().expect("n_max >= 8");
    let acc = accelerate(sums, t.acceleration, t.tail_tol)?;
    Ok(SumResult {
        value: acc.value,
        tail_estimate: acc.tail_estimate,
        unaccelerated,
        method: acc.method,
        in_domain,
    })
}

/// Accelerated partial sum of `Σ_{n=0}^{n_max} c_{ν,n} f_n`.
///
/// Hermite families use plain `sinc(ν - n)` coefficients. Points outside the
/// convergence domain are accepted and reported through `in_domain`.
pub fn sampling_sum(spec: &FamilySpec, nu: f64, t: &TruncationConfig) -> Result<SumResult> {
    t.validate()?;
    let samples = integer_samples(spec, t.n_max)?;
    let coeffs: Vec<f64> = if spec.kind.is_hermite() {
        (0..=t.n_max).map(|n| sinc(nu - n as f64)).collect()
    } else {
        (0..=t.n_max)
            .map(|n| coeff_c(nu, n, spec.gamma))
            .collect::<Result<_>>()?
    };
    let sums = running_sums(coeffs.iter().zip(&samples).map(|(c, f)| c * f));
    finish(&sums, t, spec.in_domain())
}

/// `Σ_{n=-n_max}^{n_max} sinc(ν - n) f_n` for integer `2γ`, with negative-degree
/// samples from the analytic continuation of `N_n^(γ)` and `P̂_n`.
pub fn bilateral_sinc_sum(spec: &FamilySpec, nu: f64, t: &TruncationConfig) -> Result<SumResult> {
    t.validate()?;
    if spec.kind.is_hermite() {
        return Err(Error::spec("bilateral form is defined for Jacobi-type families only"));
    }
    let two_g = 2.0 * spec.gamma;
    let k = two_g.round();
    if (two_g - k).abs() > PARAM_TOL || k < 1.0 {
        return Err(Error::spec(format!("bilateral form needs 2γ ∈ {{1, 2, ...}}, got {two_g}")));
    }
    let k = k as i64;
    let n_max = t.n_max as i64;
    let positive = integer_samples(spec, t.n_max)?;
    let hats: Vec<Vec<f64>> = spec
        .params
        .iter()
        .zip(&spec.points)
        .map(|(p, x)| jacobi_hat_sequence(t.n_max, *p, x.x()))
        .collect();
    let negative = |n: i64| -> Result<f64> {
        let norm = gamma_ratio((n + k) as f64, (n + 1) as f64)?;
        if norm == 0.0 {
            return Ok(0.0);
        }
        // P̂_n = P̂_{-n-2γ}
        let m = (-n - k) as usize;
        Ok(hats.iter().fold(norm, |acc, h| acc * h[m]))
    };
    let mut terms = Vec::with_capacity(t.n_max + 1);
    terms.push(sinc(nu) * positive[0]);
    for j in 1..=n_max {
        let plus = sinc(nu - j as f64) * positive[j as usize];
        let minus = sinc(nu + j as f64) * negative(-j)?;
        terms.push(plus + minus);
    }
    let sums = running_sums(terms.into_iter());
    finish(&sums, t, spec.in_domain())
}

/// `|f_ν - Σ c_{ν,n} f_n|`.
pub fn residual(spec: &FamilySpec, nu: f64, t: &TruncationConfig) -> Result<f64> {
    let exact = family_value(spec, nu)?;
    let approx = sampling_sum(spec, nu, t)?;
    Ok((exact - approx.value).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::legendre_p;

    fn th(v: &[f64]) -> Vec<EvalPoint> {
        points_from_thetas(v).unwrap()
    }

    #[test]
    fn coefficient_limits() {
        for m in 0..10 {
            for n in 0..10 {
                let c = coeff_c(m as f64, n, 0.75).unwrap();
                assert_eq!(c, if m == n { 1.0 } else { 0.0 });
            }
        }
        for (nu, n) in [(0.3, 2usize), (2.7, 0), (4.1, 7)] {
            let c = coeff_c(nu, n, 0.5).unwrap();
            let s = sinc(nu - n as f64) + sinc(nu + n as f64 + 1.0);
            assert!((c - s).abs() < 1e-15);
        }
        assert!(matches!(coeff_c(-2.5, 1, 0.75), Err(Error::Pole(_))));
    }

    #[test]
    fn legendre_single_expansion() {
        let spec = FamilySpec::legendre(th(&[1.0])).unwrap();
        let r = sampling_sum(&spec, 0.5, &TruncationConfig::default()).unwrap();
        let exact = legendre_p(0.5, EvalPoint::from_theta(1.0).unwrap()).unwrap();
        assert!((r.value - exact).abs() < 1e-6, "{} vs {exact}", r.value);
        assert!(r.in_domain);
    }

    #[test]
    fn gegenbauer_three_factors() {
        let spec = FamilySpec::gegenbauer(1.0, th(&[0.5, 0.6, 0.7])).unwrap();
        let r = residual(&spec, 0.5, &TruncationConfig::default()).unwrap();
        assert!(r < 1e-5, "{r}");
    }

    #[test]
    fn integer_degree_is_exact() {
        let spec = FamilySpec::jacobi_pair(
            JacobiParams::new(0.3, -0.2).unwrap(),
            EvalPoint::from_x(0.2).unwrap(),
            EvalPoint::from_x(-0.4).unwrap(),
        )
        .unwrap();
        for m in 0..=20 {
            let s = sampling_sum(&spec, m as f64, &TruncationConfig::default()).unwrap();
            let f = family_value(&spec, m as f64).unwrap();
            assert!((s.value - f).abs() <= 1e-10 * (1.0 + f.abs()), "m = {m}");
        }
    }

    #[test]
    fn hermite_pair_normalization() {
        let spec = FamilySpec::hermite_pair(0.8, 0.5).unwrap();
        assert!((family_value(&spec, 1.0).unwrap() - 0.8).abs() < 1e-15);
        let s = integer_samples(&spec, 3).unwrap();
        assert!((s[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn hermite_constructor_rule() {
        assert!(FamilySpec::hermite(1, 0, &[0.3]).is_err());
        assert!(FamilySpec::hermite(2, 0, &[0.3, 0.4]).is_err());
        assert!(FamilySpec::hermite(1, 0, &[0.3, 0.4, 0.5]).is_err());
        assert!(FamilySpec::hermite(2, 2, &[0.3]).is_err());
        assert!(FamilySpec::hermite(2, 1, &[0.3]).is_ok());
    }

    #[test]
    fn hermite_single_samples_match_values() {
        for eps in [0u8, 1] {
            let spec = FamilySpec::hermite_single(0.7, eps).unwrap();
            let s = integer_samples(&spec, 12).unwrap();
            for (n, v) in s.iter().enumerate() {
                let f = family_value(&spec, n as f64).unwrap();
                assert!((v - f).abs() <= 1e-12 * (1.0 + f.abs()), "eps {eps}, n {n}");
            }
        }
    }

    #[test]
    fn jacobi_pair_swap_rule_enforced() {
        let p = JacobiParams::new(0.3, -0.2).unwrap();
        let x = EvalPoint::from_x(0.1).unwrap();
        assert!(FamilySpec::jacobi_pair_with(p, p, x, x).is_err());
        let prod = FamilySpec::jacobi_product(vec![p; 3], vec![x; 3]).unwrap();
        assert!(!prod.paper_valid());
        let mixed = FamilySpec::jacobi_product(
            vec![p, JacobiParams::new(1.0, 0.0).unwrap()],
            vec![x, x],
        );
        assert!(mixed.is_err());
    }

    #[test]
    fn bilateral_matches_unilateral() {
        let t = TruncationConfig::default();
        let leg = FamilySpec::legendre(th(&[0.9, 0.4])).unwrap();
        let a = sampling_sum(&leg, 1.37, &t).unwrap().value;
        let b = bilateral_sinc_sum(&leg, 1.37, &t).unwrap().value;
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        let geg = FamilySpec::gegenbauer(1.0, th(&[0.8, 1.1])).unwrap();
        let a = sampling_sum(&geg, 2.3, &t).unwrap().value;
        let b = bilateral_sinc_sum(&geg, 2.3, &t).unwrap().value;
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        let half = FamilySpec::gegenbauer(0.75, th(&[0.8])).unwrap();
        assert!(bilateral_sinc_sum(&half, 0.5, &t).is_err());
    }

    #[test]
    fn domain_predicate() {
        let pi = PI;
        assert!(AngleTuple::new(vec![pi / 6.0; 3]).unwrap().in_domain());
        assert!(!AngleTuple::new(vec![pi / 2.0; 3]).unwrap().in_domain());
        assert!(AngleTuple::new(vec![1.2, -1.2]).unwrap().in_domain());
        assert!(AngleTuple::new(vec![pi]).is_err());
    }

    #[test]
    fn truncation_validation() {
        assert!(TruncationConfig::new(4, Acceleration::None, 1e-8).is_err());
        assert!(TruncationConfig::new(100, Acceleration::None, 0.0).is_err());
    }
}
