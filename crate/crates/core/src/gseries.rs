//! The alternating series `G = Σ (-1)^n (2n+2γ) f_n`: η invariants, the
//! (A, B, C) sign classification, closed forms, an Abel-regularized oracle and
//! smoothed delta pairings.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};
use crate::expansion::{integer_samples, points_from_thetas, FamilySpec};
use crate::functions::{jacobi_poly_recurrence, JacobiParams};
use crate::quadrature::{integrate, integrate_adaptive, IntegrandSpec, SingularEnds};
use crate::specfun::{beta_half, elliptic_k, EllipticModulus};

/// |η| below this is treated as the boundary of a sign region.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Default Abel grid, increasing toward t = 1.
pub const DEFAULT_T_GRID: [f64; 5] = [0.98, 0.985, 0.99, 0.995, 0.998];

/// `Σ cos²θ_i + 2 Π cos θ_i - 1`.
pub fn eta3(thetas: [f64; 3]) -> f64 {
    let [a, b, c] = thetas.map(f64::cos);
    a * a + b * b + c * c + 2.0 * a * b * c - 1.0
}

/// `4 Π cos((±θ1 ±θ2 ±θ3)/2)` over the sign patterns with an even number of minus signs.
pub fn eta3_product(thetas: [f64; 3]) -> f64 {
    let [a, b, c] = thetas;
    4.0 * (0.5 * (a + b + c)).cos()
        * (0.5 * (a - b - c)).cos()
        * (0.5 * (-a + b - c)).cos()
        * (0.5 * (-a - b + c)).cos()
}

/// A 4×4 matrix with entries `num / 2`, `num ∈ {-1, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UMatrix {
    pub num: [[i8; 4]; 4],
}

impl UMatrix {
    pub const PLUS: UMatrix = UMatrix {
        num: [[-1, -1, -1, 1], [-1, -1, 1, -1], [-1, 1, -1, -1], [1, -1, -1, -1]],
    };
    pub const MINUS: UMatrix = UMatrix {
        num: [[-1, 1, 1, -1], [1, -1, 1, -1], [1, 1, -1, -1], [-1, -1, -1, -1]],
    };

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        f64::from(self.num[i][j]) * 0.5
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.num[i][j] == self.num[j][i]))
    }

    /// `U·U = I`, checked on the integer numerators (`num·num = 4 I`).
    pub fn is_involution(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let s: i32 = (0..4)
                    .map(|k| i32::from(self.num[i][k]) * i32::from(self.num[k][j]))
                    .sum();
                s == if i == j { 4 } else { 0 }
            })
        })
    }

    /// `Φ_j = Σ_i θ_i U_ij`.
    pub fn apply(&self, thetas: [f64; 4]) -> [f64; 4] {
        let mut phi = [0.0; 4];
        for (j, p) in phi.iter_mut().enumerate() {
            *p = (0..4).map(|i| thetas[i] * self.entry(i, j)).sum();
        }
        phi
    }
}

/// `(η⁺, η⁻) = (4 Π cos Φ⁺_j, 4 Π cos Φ⁻_j)`.
pub fn eta4(thetas: [f64; 4]) -> (f64, f64) {
    let prod = |u: &UMatrix| 4.0 * u.apply(thetas).iter().map(|p| p.cos()).product::<f64>();
    (prod(&UMatrix::PLUS), prod(&UMatrix::MINUS))
}

/// Quartic coefficients `(A, B, C)`.
pub fn abc_coefficients(thetas: [f64; 4]) -> (f64, f64, f64) {
    let [t1, t2, t3, t4] = thetas;
    let a = -eta3([t1 + t2, t3, t4]);
    let c = -eta3([t1 - t2, t3, t4]);
    let s = t1.sin() * t2.sin();
    (a, a + c + 4.0 * s * s, c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaInvariants {
    pub n: usize,
    pub eta3: f64,
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EtaInvariants {
    pub fn from_angles(thetas: &[f64]) -> Result<Self> {
        match *thetas {
            [t1, t2, t3] => {
                let e = eta3([t1, t2, t3]);
                Ok(Self {
                    n: 3,
                    eta3: e,
                    eta_plus: e,
                    eta_minus: e,
                    a: f64::NAN,
                    b: f64::NAN,
                    c: f64::NAN,
                })
            }
            [t1, t2, t3, t4] => {
                let th = [t1, t2, t3, t4];
                let (ep, em) = eta4(th);
                let (a, b, c) = abc_coefficients(th);
                Ok(Self {
                    n: 4,
                    eta3: f64::NAN,
                    eta_plus: ep,
                    eta_minus: em,
                    a,
                    b,
                    c,
                })
            }
            _ => Err(Error::domain(format!("η invariants need 3 or 4 angles, got {}", thetas.len()))),
        }
    }
}

/// Value of the G series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GValue {
    Zero,
    Finite(f64),
    /// `weight · δ(x - support_x)` in the variable `x = cos θ_1`.
    Delta { support_x: f64, weight: f64 },
    Boundary,
}

impl GValue {
    /// Numeric value for the zero and finite cases.
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            GValue::Zero => Some(0.0),
            GValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

fn elliptic_f(m: f64) -> Result<f64> {
    Ok(FRAC_2_PI * elliptic_k(EllipticModulus::new(m)?))
}

/// Closed form of G for N = 4 as a function of the invariants.
pub fn table2_value(eta_plus: f64, eta_minus: f64) -> Result<GValue> {
    if eta_plus.abs() <= BOUNDARY_TOL || eta_minus.abs() <= BOUNDARY_TOL {
        return Ok(GValue::Boundary);
    }
    let v = match (eta_plus > 0.0, eta_minus > 0.0) {
        (true, true) => return Ok(GValue::Zero),
        (false, false) => FRAC_2_PI / (-eta_plus).sqrt() * elliptic_f((eta_plus - eta_minus) / eta_plus)?,
        (true, false) => FRAC_2_PI / eta_plus.sqrt() * elliptic_f(eta_minus / eta_plus)?,
        (false, true) => FRAC_2_PI / eta_minus.sqrt() * elliptic_f(eta_plus / eta_minus)?,
    };
    Ok(GValue::Finite(v))
}

/// Closed form of G. Closed forms are known for γ = ½; other γ with
/// N ∈ {3, 4} fall back to the Abel-regularized estimate.
pub fn g_closed(gamma: f64, thetas: &[f64]) -> Result<GValue> {
    let n = thetas.len();
    if !(1..=4).contains(&n) {
        return Err(Error::domain(format!("G closed forms exist for N = 1..4, got {n}")));
    }
    if (gamma - 0.5).abs() > 1e-15 {
        if n <= 2 {
            return Err(Error::domain("delta weights are only known for γ = ½"));
        }
        let est = g_abel_extrapolate(gamma, thetas, &DEFAULT_T_GRID, None)?;
        return Ok(GValue::Finite(est.value));
    }
    match *thetas {
        [_] => Ok(GValue::Delta {
            support_x: -1.0,
            weight: 2.0,
        }),
        [_, t2] => Ok(GValue::Delta {
            support_x: -t2.cos(),
            weight: 2.0,
        }),
        [t1, t2, t3] => {
            let e = eta3([t1, t2, t3]);
            if e.abs() <= BOUNDARY_TOL {
                Ok(GValue::Boundary)
            } else if e > 0.0 {
                Ok(GValue::Zero)
            } else {
                Ok(GValue::Finite(FRAC_2_PI / (-e).sqrt()))
            }
        }
        [t1, t2, t3, t4] => {
            let (ep, em) = eta4([t1, t2, t3, t4]);
            table2_value(ep, em)
        }
        _ => unreachable!(),
    }
}

/// `Σ_{n ≤ n_max} (-1)^n (2n+2γ) t^n f_n` with `f_n = N_n^(γ) Π Ĉ_n^γ(cos θ_i)`.
pub fn g_abel_oracle(gamma: f64, thetas: &[f64], t: f64, n_max: usize) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::domain(format!("Abel parameter must lie in (0, 1), got {t}")));
    }
    let spec = FamilySpec::gegenbauer(gamma, points_from_thetas(thetas)?)?;
    let f = integer_samples(&spec, n_max)?;
    let mut sum = 0.0;
    let mut w = 1.0;
    for (n, fn_) in f.iter().enumerate() {
        sum += w * (2.0 * n as f64 + 2.0 * gamma) * fn_;
        w *= -t;
    }
    Ok(sum)
}

/// Terms needed for `t^n` to fall below ~1e-17.
pub fn default_abel_terms(t: f64) -> usize {
    (40.0 / (1.0 - t)).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelEstimate {
    pub value: f64,
    /// Change in the extrapolated value when the point farthest from t = 1 is dropped.
    pub spread: f64,
}

impl AbelEstimate {
    pub fn ill_conditioned(&self, tol: f64) -> bool {
        self.spread > 10.0 * tol
    }
}

/// Interpolating polynomial in `s = 1 - t` evaluated at `s = 0` (Neville).
fn extrapolate_to_zero(s: &[f64], v: &[f64]) -> f64 {
    let mut p = v.to_vec();
    let n = s.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (s[i + k] * p[i] - s[i] * p[i + 1]) / (s[i + k] - s[i]);
        }
    }
    p[0]
}

/// Polynomial extrapolation of the Abel sums to t = 1.
pub fn g_abel_extrapolate(gamma: f64, thetas: &[f64], t_grid: &[f64], n_max: Option<usize>) -> Result<AbelEstimate> {
    if t_grid.len() < 3 {
        return Err(Error::domain("Abel extrapolation needs at least 3 grid points"));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("Abel grid must be strictly increasing"));
    }
    let values: Vec<f64> = t_grid
        .iter()
        .map(|&t| g_abel_oracle(gamma, thetas, t, n_max.unwrap_or_else(|| default_abel_terms(t))))
        .collect::<Result<_>>()?;
    let s: Vec<f64> = t_grid.iter().map(|t| 1.0 - t).collect();
    let value = extrapolate_to_zero(&s, &values);
    let reduced = extrapolate_to_zero(&s[1..], &values[1..]);
    Ok(AbelEstimate {
        value,
        spread: (value - reduced).abs(),
    })
}

/// `g_t(x) = (1 - t²)/(1 - 2tx + t²)^{3/2} = Σ (2n+1) t^n P_n(x)`.
pub fn generating_gt(t: f64, x: f64) -> f64 {
    (1.0 - t * t) / (1.0 - 2.0 * t * x + t * t).powf(1.5)
}

/// Smoothed pairing of the Legendre G series with a test function.
///
/// `theta = None` pairs `g_t` with `φ` over [-1, 1], which tends to `2 φ(-1)`
/// as t ↘ -1. `theta = Some(θ)` pairs the two-factor series
/// `Σ (2n+1) t^n P_n(x) P_n(cos θ)` in `x`, which tends to `2 φ(-cos θ)`.
pub fn delta_pairing(theta: Option<f64>, phi: &dyn Fn(f64) -> f64, t: f64) -> Result<f64> {
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::domain(format!("smoothing parameter must lie in (-1, 1), got {t}")));
    }
    let spec = IntegrandSpec::smooth(-1.0, 1.0)?;
    match theta {
        None => Ok(integrate_adaptive(|x| generating_gt(t, x) * phi(x), spec)?.value),
        Some(th) => {
            let y = th.cos();
            let sy = th.sin().abs();
            // P_n(x) P_n(y) = (1/π) ∫_0^π P_n(cos Ω) dω
            let kernel = |x: f64| -> f64 {
                let sx = (1.0 - x * x).max(0.0).sqrt();
                let inner = IntegrandSpec::smooth(0.0, PI).expect("valid interval").with_tol(1e-9);
                let gt = |w: f64| generating_gt(t, (x * y + sx * sy * w.cos()).clamp(-1.0, 1.0));
                integrate_adaptive(gt, inner).map(|r| r.value / PI).unwrap_or(f64::NAN)
            };
            let r = integrate_adaptive(|x| kernel(x) * phi(x), spec.with_tol(1e-7))?;
            Ok(r.value)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GTag {
    Zero,
    S1,
    S2,
    S3,
}

impl GTag {
    pub fn from_eta_signs(signs: (i8, i8)) -> Option<GTag> {
        match signs {
            (1, 1) => Some(GTag::Zero),
            (-1, -1) => Some(GTag::S1),
            (1, -1) => Some(GTag::S2),
            (-1, 1) => Some(GTag::S3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GTag::Zero => "0",
            GTag::S1 => "S1",
            GTag::S2 => "S2",
            GTag::S3 => "S3",
        }
    }
}

/// Integration range for `t² ≥ 0` where the quartic `A t⁴ + B t² + C` is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interval {
    Empty,
    ZeroToB,
    AToB,
    BToInf,
    ZeroToInf,
}

/// One row of the sign table: `(sgn A, sgn B, sgn C) -> (interval, (sgn η⁺, sgn η⁻), tag)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub abc: (i8, i8, i8),
    pub interval: Interval,
    pub eta: (i8, i8),
    pub tag: GTag,
}

pub const TABLE1: [TableRow; 7] = [
    TableRow { abc: (-1, -1, -1), interval: Interval::Empty, eta: (1, 1), tag: GTag::Zero },
    TableRow { abc: (-1, -1, 1), interval: Interval::ZeroToB, eta: (-1, 1), tag: GTag::S3 },
    TableRow { abc: (-1, 1, -1), interval: Interval::AToB, eta: (-1, -1), tag: GTag::S1 },
    TableRow { abc: (-1, 1, 1), interval: Interval::ZeroToB, eta: (-1, 1), tag: GTag::S3 },
    TableRow { abc: (1, 1, -1), interval: Interval::BToInf, eta: (1, -1), tag: GTag::S2 },
    TableRow { abc: (1, 1, 1), interval: Interval::ZeroToInf, eta: (-1, -1), tag: GTag::S1 },
    TableRow { abc: (1, -1, -1), interval: Interval::BToInf, eta: (1, -1), tag: GTag::S2 },
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Table1Class {
    Row {
        abc: (i8, i8, i8),
        eta: (i8, i8),
        row: TableRow,
    },
    Boundary,
}

impl Table1Class {
    /// Observed η signs equal the row's listed `(η⁺, η⁻)`.
    pub fn matches_ordered(&self) -> bool {
        match self {
            Table1Class::Row { eta, row, .. } => *eta == row.eta,
            Table1Class::Boundary => false,
        }
    }

    /// Observed η signs equal the row's pair up to `η⁺ ↔ η⁻`.
    pub fn matches_unordered(&self) -> bool {
        match self {
            Table1Class::Row { eta, row, .. } => *eta == row.eta || (eta.1, eta.0) == row.eta,
            Table1Class::Boundary => false,
        }
    }

    /// Tag implied by the observed η signs.
    pub fn observed_tag(&self) -> Option<GTag> {
        match self {
            Table1Class::Row { eta, .. } => GTag::from_eta_signs(*eta),
            Table1Class::Boundary => None,
        }
    }
}

fn sign(v: f64) -> i8 {
    if v.abs() <= BOUNDARY_TOL {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Classify a 4-tuple by the signs of `(A, B, C)` and `(η⁺, η⁻)`.
pub fn table1_classify(thetas: [f64; 4]) -> Result<Table1Class> {
    let (a, b, c) = abc_coefficients(thetas);
    let (ep, em) = eta4(thetas);
    let abc = (sign(a), sign(b), sign(c));
    let eta = (sign(ep), sign(em));
    if abc.0 == 0 || abc.1 == 0 || abc.2 == 0 || eta.0 == 0 || eta.1 == 0 {
        return Ok(Table1Class::Boundary);
    }
    if abc == (1, -1, 1) {
        return Err(Error::domain(format!(
            "sign pattern (A, B, C) = (+, -, +) at {thetas:?}"
        )));
    }
    let row = *TABLE1
        .iter()
        .find(|r| r.abc == abc)
        .expect("all other sign patterns are tabulated");
    Ok(Table1Class::Row { abc, eta, row })
}

/// `|Ĉ_n(cos a) Ĉ_n(cos b) - (1/B(½,γ)) ∫_0^π sin^{2γ-1}ω Ĉ_n(cos Ω) dω|`.
pub fn addition_identity_check(n: usize, gamma: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("addition theorem needs γ > 0"));
    }
    let p = JacobiParams::gegenbauer(gamma)?;
    let c = |x: f64| jacobi_poly_recurrence(n, p, x.clamp(-1.0, 1.0));
    let lhs = c(alpha.cos()) * c(beta.cos());
    let (ca, cb, sab) = (alpha.cos(), beta.cos(), alpha.sin() * beta.sin());
    let weight_exp = 2.0 * gamma - 1.0;
    let integrand = |w: f64| w.sin().powf(weight_exp) * c(ca * cb + sab * w.cos());
    let ends = if weight_exp < 0.0 { SingularEnds::Both } else { SingularEnds::None };
    let spec = IntegrandSpec::new(0.0, PI, ends, 1e-12)?;
    let rhs = integrate(integrand, spec)?.value / beta_half(gamma)?;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
#[allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn eta3_examples() {
        assert!((eta3([FRAC_PI_2; 3]) + 1.0).abs() < 1e-15);
        assert_eq!(eta3([0.0; 3]), 4.0);
        assert!(eta3([PI / 6.0; 3]) > 0.0);
        for th in [[0.3, 1.2, -2.0], [2.5, 2.9, 0.1], [FRAC_PI_2; 3]] {
            assert!((eta3(th) - eta3_product(th)).abs() < 1e-12);
        }
    }

    #[test]
    fn u_matrices_exact() {
        for u in [UMatrix::PLUS, UMatrix::MINUS] {
            assert!(u.is_symmetric());
            assert!(u.is_involution());
        }
    }

    #[test]
    fn eta4_examples() {
        let (ep, em) = eta4([PI / 3.0; 4]);
        assert!((ep - 0.25).abs() < 1e-15);
        assert!((em + 2.0).abs() < 1e-14);
        let th = [0.4, 1.1, -0.7, 0.0];
        let (ep, em) = eta4(th);
        let e3 = eta3([0.4, 1.1, -0.7]);
        assert!((ep - e3).abs() < 1e-14 && (em - e3).abs() < 1e-14);
        let th = [0.4, 1.1, -0.7, 2.0];
        let (ep, em) = eta4(th);
        for i in 0..4 {
            let mut f = th;
            f[i] = -f[i];
            let (fp, fm) = eta4(f);
            assert!((fp - em).abs() < 1e-14 && (fm - ep).abs() < 1e-14);
        }
    }

    #[test]
    fn abc_relations() {
        let th = [PI / 3.0; 4];
        let (a, b, c) = abc_coefficients(th);
        assert!((a - 0.5).abs() < 1e-15 && (c + 1.0).abs() < 1e-15 && (b - 1.75).abs() < 1e-14);
        let th = [0.9, -2.1, 1.3, 0.4];
        let (a, b, c) = abc_coefficients(th);
        let (ep, em) = eta4(th);
        assert!((b + ep + em).abs() < 1e-10);
        assert!((b * b - 4.0 * a * c - (ep - em).powi(2)).abs() < 1e-9);
        // A t^4 + B t^2 + C = -(1+t^2)^2 η(ω) with t = tan(ω/2)
        let [t1, t2, t3, t4] = th;
        for w in [0.3, 1.0, 2.2, 3.0] {
            let t = (0.5f64 * w).tan();
            let co = t1.cos() * t2.cos() + t1.sin() * t2.sin() * w.cos();
            let (c3, c4) = (t3.cos(), t4.cos());
            let minus_eta = 1.0 - c3 * c3 - c4 * c4 - 2.0 * c3 * c4 * co - co * co;
            let quartic = a * t.powi(4) + b * t * t + c;
            assert!((quartic - (1.0 + t * t).powi(2) * minus_eta).abs() < 1e-10);
        }
    }

    #[test]
    fn g_closed_examples() {
        assert_eq!(g_closed(0.5, &[0.3, 0.4, 0.5]).unwrap(), GValue::Zero);
        let v = g_closed(0.5, &[FRAC_PI_2; 3]).unwrap().as_f64().unwrap();
        assert!((v - FRAC_2_PI).abs() < 1e-15);
        assert_eq!(
            g_closed(0.5, &[1.0]).unwrap(),
            GValue::Delta { support_x: -1.0, weight: 2.0 }
        );
        assert_eq!(g_closed(0.5, &[1.0, 1.0, PI - 2.0]).unwrap(), GValue::Boundary);
    }

    #[test]
    fn table2_references() {
        let cases = [
            ([1.0, 1.0, 1.0, 1.0], 0.667_239_582_453_381_66),
            ([1.0, 1.0, 1.0, -1.0], 0.667_239_582_453_381_66),
            ([2.0, 2.2, 1.9, 0.4], 0.933_998_500_685_466_86),
            ([2.6, 2.4, 1.5, 0.7], 0.822_304_418_425_109_26),
            ([0.3, 1.0, 2.0, 2.5], 0.0),
            ([0.5, 0.4, 0.6, 0.3], 0.0),
        ];
        for (th, want) in cases {
            let got = g_closed(0.5, &th).unwrap().as_f64().unwrap();
            assert!((got - want).abs() <= 1e-8 * want.max(1.0), "{th:?}: {got} vs {want}");
        }
    }

    #[test]
    fn reduction_to_three() {
        let th3 = [2.0, 1.9, 1.7];
        let g3 = g_closed(0.5, &th3).unwrap().as_f64().unwrap();
        let g4 = g_closed(0.5, &[2.0, 1.9, 1.7, 1e-6]).unwrap().as_f64().unwrap();
        assert!((g3 - g4).abs() < 1e-4 * g3);
    }

    #[test]
    fn abel_generating_function() {
        for theta in [0.4, 1.5, 2.7] {
            let t = 0.9;
            let got = g_abel_oracle(0.5, &[theta], t, default_abel_terms(t)).unwrap();
            let want = generating_gt(t, -theta.cos());
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn abel_matches_closed_forms() {
        let v = g_abel_extrapolate(0.5, &[FRAC_PI_2; 3], &DEFAULT_T_GRID, None).unwrap();
        assert!((v.value - FRAC_2_PI).abs() < 1e-3, "{v:?}");
        let z = g_abel_extrapolate(0.5, &[0.5, 0.6, 0.7], &DEFAULT_T_GRID, None).unwrap();
        assert!(z.value.abs() < 1e-3);
        let th = [2.0, 2.2, 1.9, 0.4];
        let closed = g_closed(0.5, &th).unwrap().as_f64().unwrap();
        let abel = g_abel_extrapolate(0.5, &th, &DEFAULT_T_GRID, None).unwrap();
        assert!((abel.value - closed).abs() < 1e-2 * closed);
        assert!(g_abel_extrapolate(0.5, &th, &[0.9, 0.99], None).is_err());
    }

    #[test]
    fn classification() {
        let c = table1_classify([PI / 3.0; 4]).unwrap();
        assert_eq!(c.observed_tag(), Some(GTag::S2));
        assert!(c.matches_ordered());
        let c = table1_classify([0.3, 0.4, 0.5, 0.6]).unwrap();
        assert_eq!(c.observed_tag(), Some(GTag::Zero));
        // theta3 -> -theta3 keeps (A, B, C) and swaps the eta signs
        let c = table1_classify([PI / 3.0, PI / 3.0, -PI / 3.0, PI / 3.0]).unwrap();
        assert!(c.matches_unordered());
        assert!(!c.matches_ordered());
    }

    #[test]
    fn delta_pairings() {
        for t in [-0.5, 0.3, -0.99] {
            assert!((delta_pairing(None, &|_| 1.0, t).unwrap() - 2.0).abs() < 1e-10);
        }
        let v = delta_pairing(None, &|x| x * x, -0.999).unwrap();
        assert!((v - 2.0).abs() < 1e-2);
        let v = delta_pairing(None, &|x| x, -0.999).unwrap();
        assert!((v + 2.0).abs() < 1e-2);
    }

    #[test]
    fn two_factor_pairing() {
        let theta = 1.1f64;
        let v = delta_pairing(Some(theta), &|x| x * x, -0.98).unwrap();
        let want = 2.0 * theta.cos().powi(2);
        assert!((v - want).abs() < 5e-2, "{v} vs {want}");
    }

    #[test]
    fn addition_theorem() {
        assert!(addition_identity_check(0, 0.5, 0.7, 1.1).unwrap() < 1e-15);
        assert!(addition_identity_check(3, 0.5, 0.7, 1.1).unwrap() < 1e-9);
        assert!(addition_identity_check(2, 1.5, 0.7, 1.1).unwrap() < 1e-8);
        assert!(addition_identity_check(5, 0.3, 2.0, 0.4).unwrap() < 1e-8);
    }
}
