use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sampling::{cube_angles, degree, simplex_angles, DEFAULT_MARGIN};
use super::{Case, Check, Outcome, ScenarioConfig};
use crate::error::{Error, Result};
use crate::expansion::{
    bilateral_sinc_sum, family_value, points_from_thetas, residual, sampling_sum, FamilySpec, TruncationConfig,
};
use crate::functions::{EvalPoint, JacobiParams};
use crate::gseries::{
    abc_coefficients, delta_pairing, eta3, eta4, g_abel_extrapolate, g_closed, table1_classify, table2_value,
    GValue, Table1Class, DEFAULT_T_GRID,
};

pub(crate) fn build(cfg: &ScenarioConfig) -> Result<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.name.as_str() {
        "prop1_jacobi" => prop1_jacobi(cfg, &mut rng),
        "gegenbauer_multi" => gegenbauer_multi(cfg, &mut rng),
        "legendre_sinc" => legendre_sinc(cfg, &mut rng),
        "g3_closed" => g3_closed(cfg, &mut rng),
        "g4_table2" => g4_table2(cfg, &mut rng),
        "table1_sweep" => table1_sweep(cfg, &mut rng),
        "delta_smoothing" => delta_smoothing(cfg),
        "hermite_pair" => hermite_pair(cfg, &mut rng),
        "necessity_fail" => necessity_fail(cfg, &mut rng),
        "outside_domain_fail" => outside_domain_fail(cfg, &mut rng),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn residual_case(id: String, spec: FamilySpec, nu: f64, t: TruncationConfig, bound: f64) -> Case {
    Case::new(id, bound, Check::AtMost, move || {
        let exact = family_value(&spec, nu)?;
        let sum = sampling_sum(&spec, nu, &t)?;
        Ok(Outcome::of((exact - sum.value).abs())
            .with("exact", exact)
            .with("tail_estimate", sum.tail_estimate)
            .with("method", sum.method.name()))
    })
    .input("nu", nu)
    .input("n_max", t.n_max)
}

const JACOBI_PARAMS: [(f64, f64); 3] = [(0.3, -0.2), (1.5, 0.5), (0.0, 0.7)];

fn prop1_jacobi(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let bound = cfg.tolerance("residual")?;
    let mut cases = Vec::new();
    for (pi, &(a, b)) in JACOBI_PARAMS.iter().enumerate() {
        let p = JacobiParams::new(a, b)?;
        for k in 0..cfg.samples {
            let nu = degree(rng, 0.1, 4.9);
            let th1 = simplex_angles(rng, 1, DEFAULT_MARGIN);
            let th2 = simplex_angles(rng, 2, DEFAULT_MARGIN);
            let single = FamilySpec::jacobi_single(p, EvalPoint::from_theta(th1[0])?)?;
            cases.push(
                residual_case(format!("p{pi}-single-{k:04}"), single, nu, cfg.truncation, bound)
                    .input("alpha", a)
                    .input("beta", b)
                    .input("thetas", th1),
            );
            let pts = points_from_thetas(&th2)?;
            let pair = FamilySpec::jacobi_pair(p, pts[0], pts[1])?;
            cases.push(
                residual_case(format!("p{pi}-pair-{k:04}"), pair, nu, cfg.truncation, bound)
                    .input("alpha", a)
                    .input("beta", b)
                    .input("thetas", th2),
            );
        }
    }
    Ok(cases)
}

fn gegenbauer_multi(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let bound = cfg.tolerance("residual")?;
    let bil_bound = cfg.tolerance("bilateral")?;
    let mut cases = Vec::new();
    for (gi, gamma) in [0.75, 1.0, 1.5].into_iter().enumerate() {
        for n in 1..=4 {
            for k in 0..cfg.samples {
                let nu = degree(rng, 0.1, 4.9);
                let th = simplex_angles(rng, n, DEFAULT_MARGIN);
                let spec = FamilySpec::gegenbauer(gamma, points_from_thetas(&th)?)?;
                cases.push(
                    residual_case(format!("g{gi}-n{n}-{k:04}"), spec, nu, cfg.truncation, bound)
                        .input("gamma", gamma)
                        .input("thetas", th),
                );
            }
        }
    }
    for two_g in 1..=3u32 {
        let gamma = f64::from(two_g) / 2.0;
        for k in 0..cfg.samples {
            let n = 1 + k % 3;
            let nu = degree(rng, 0.1, 4.9);
            let th = simplex_angles(rng, n, DEFAULT_MARGIN);
            let spec = FamilySpec::gegenbauer(gamma, points_from_thetas(&th)?)?;
            let t = cfg.truncation;
            cases.push(
                Case::new(format!("bilateral-2g{two_g}-{k:04}"), bil_bound, Check::AtMost, move || {
                    let uni = sampling_sum(&spec, nu, &t)?;
                    let bi = bilateral_sinc_sum(&spec, nu, &t)?;
                    Ok(Outcome::of((uni.value - bi.value).abs())
                        .with("unilateral", uni.value)
                        .with("bilateral", bi.value))
                })
                .input("gamma", gamma)
                .input("nu", nu)
                .input("thetas", th),
            );
        }
    }
    Ok(cases)
}

fn legendre_sinc(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let bound = cfg.tolerance("residual")?;
    let mut cases = Vec::new();
    for n in 1..=4 {
        for k in 0..cfg.samples {
            let nu = degree(rng, 0.1, 4.9);
            let th = simplex_angles(rng, n, DEFAULT_MARGIN);
            let spec = FamilySpec::legendre(points_from_thetas(&th)?)?;
            let t = cfg.truncation;
            cases.push(
                Case::new(format!("n{n}-{k:04}"), bound, Check::AtMost, move || {
                    let exact = family_value(&spec, nu)?;
                    let sum = sampling_sum(&spec, nu, &t)?;
                    let err = (exact - sum.value).abs() / exact.abs().max(1.0);
                    Ok(Outcome::of(err).with("exact", exact).with("sum", sum.value))
                })
                .input("nu", nu)
                .input("thetas", th),
            );
        }
    }
    Ok(cases)
}

fn abel_case(id: String, th: Vec<f64>, bound: f64, outside: bool) -> Case {
    let thetas = th.clone();
    Case::new(id, bound, Check::AtMost, move || {
        let closed = g_closed(0.5, &thetas)?;
        let est = g_abel_extrapolate(0.5, &thetas, &DEFAULT_T_GRID, None)?;
        let measured = match closed {
            GValue::Finite(v) if outside => (est.value - v).abs() / v.abs(),
            GValue::Zero if !outside => est.value.abs(),
            other => return Err(Error::domain(format!("unexpected closed form {other:?}"))),
        };
        Ok(Outcome::of(measured)
            .with("closed", closed.as_f64().unwrap_or(f64::NAN))
            .with("abel", est.value)
            .with("spread", est.spread))
    })
    .input("thetas", th)
}

fn g3_closed(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let rel = cfg.tolerance("relative")?;
    let interior = cfg.tolerance("interior")?;
    let mut cases = Vec::new();
    for k in 0..cfg.samples {
        let th = loop {
            let th = cube_angles(rng, 3);
            if eta3([th[0], th[1], th[2]]) < -0.1 {
                break th;
            }
        };
        let e = eta3([th[0], th[1], th[2]]);
        cases.push(abel_case(format!("outside-{k:04}"), th, rel, true).input("eta3", e));
    }
    for k in 0..cfg.samples {
        let th = simplex_angles(rng, 3, DEFAULT_MARGIN);
        let e = eta3([th[0], th[1], th[2]]);
        cases.push(abel_case(format!("interior-{k:04}"), th, interior, false).input("eta3", e));
    }
    Ok(cases)
}

fn sign_label(s: i8) -> &'static str {
    if s > 0 {
        "p"
    } else {
        "m"
    }
}

fn g4_table2(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let rel = cfg.tolerance("relative")?;
    let swap = cfg.tolerance("swap")?;
    let mut cases = Vec::new();
    for signs in [(1i8, 1i8), (-1, -1), (1, -1), (-1, 1)] {
        let label = format!("{}{}", sign_label(signs.0), sign_label(signs.1));
        let mut k = 0;
        let mut attempts = 0usize;
        while k < cfg.samples {
            attempts += 1;
            if attempts > 1_000_000 {
                return Err(Error::domain(format!("no 4-tuples found in sign case {label}")));
            }
            let th = if signs == (1, 1) {
                simplex_angles(rng, 4, DEFAULT_MARGIN)
            } else {
                cube_angles(rng, 4)
            };
            let arr = [th[0], th[1], th[2], th[3]];
            let (ep, em) = eta4(arr);
            if ep.abs() < 0.1 || em.abs() < 0.1 || (ep > 0.0) != (signs.0 > 0) || (em > 0.0) != (signs.1 > 0) {
                continue;
            }
            let thetas = th.clone();
            cases.push(
                Case::new(format!("{label}-{k:04}"), rel, Check::AtMost, move || {
                    let closed = g_closed(0.5, &thetas)?
                        .as_f64()
                        .ok_or_else(|| Error::domain("closed form is not a number"))?;
                    let est = g_abel_extrapolate(0.5, &thetas, &DEFAULT_T_GRID, None)?;
                    let err = if closed == 0.0 {
                        est.value.abs()
                    } else {
                        (est.value - closed).abs() / closed.abs()
                    };
                    Ok(Outcome::of(err)
                        .with("closed", closed)
                        .with("abel", est.value)
                        .with("spread", est.spread))
                })
                .input("thetas", th.clone())
                .input("eta_plus", ep)
                .input("eta_minus", em),
            );
            if signs == (-1, -1) {
                cases.push(
                    Case::new(format!("{label}-swap-{k:04}"), swap, Check::AtMost, move || {
                        let a = table2_value(ep, em)?.as_f64().unwrap_or(f64::NAN);
                        let b = table2_value(em, ep)?.as_f64().unwrap_or(f64::NAN);
                        Ok(Outcome::of((a - b).abs() / a.abs()).with("value", a).with("swapped", b))
                    })
                    .input("thetas", th)
                    .input("eta_plus", ep)
                    .input("eta_minus", em),
                );
            }
            k += 1;
        }
    }
    Ok(cases)
}

fn table1_sweep(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let tuples: Arc<Vec<[f64; 4]>> = Arc::new(
        (0..cfg.samples)
            .map(|_| {
                let th = cube_angles(rng, 4);
                [th[0], th[1], th[2], th[3]]
            })
            .collect(),
    );
    let n = tuples.len();
    let mut cases = Vec::new();

    let ts = Arc::clone(&tuples);
    cases.push(
        Case::new("abc-pattern-pmp".into(), 0.0, Check::AtMost, move || {
            let mut forbidden = 0usize;
            let mut boundary = 0usize;
            for th in ts.iter() {
                match table1_classify(*th) {
                    Err(_) => forbidden += 1,
                    Ok(Table1Class::Boundary) => boundary += 1,
                    Ok(_) => {}
                }
            }
            Ok(Outcome::of(forbidden as f64).with("boundary_skipped", boundary))
        })
        .input("samples", n),
    );

    let ts = Arc::clone(&tuples);
    cases.push(
        Case::new("b-relation".into(), cfg.tolerance("b_relation")?, Check::AtMost, move || {
            let worst = ts
                .iter()
                .map(|th| {
                    let (_, b, _) = abc_coefficients(*th);
                    let (ep, em) = eta4(*th);
                    (b + ep + em).abs()
                })
                .fold(0.0, f64::max);
            Ok(Outcome::of(worst))
        })
        .input("samples", n),
    );

    let ts = Arc::clone(&tuples);
    cases.push(
        Case::new("discriminant".into(), cfg.tolerance("discriminant")?, Check::AtMost, move || {
            let worst = ts
                .iter()
                .map(|th| {
                    let (a, b, c) = abc_coefficients(*th);
                    let (ep, em) = eta4(*th);
                    ((b * b - 4.0 * a * c) - (ep - em).powi(2)).abs()
                })
                .fold(0.0, f64::max);
            Ok(Outcome::of(worst))
        })
        .input("samples", n),
    );

    let ts = Arc::clone(&tuples);
    cases.push(
        Case::new("b-ge-a-plus-c".into(), cfg.tolerance("b_ge_a_plus_c")?, Check::AtMost, move || {
            let worst = ts
                .iter()
                .map(|th| {
                    let (a, b, c) = abc_coefficients(*th);
                    (a + c - b).max(0.0)
                })
                .fold(0.0, f64::max);
            Ok(Outcome::of(worst))
        })
        .input("samples", n),
    );

    let ts = Arc::clone(&tuples);
    cases.push(
        Case::new("eta-unordered".into(), 0.0, Check::AtMost, move || {
            let mut mismatches = 0usize;
            let mut ordered_mismatches = 0usize;
            for th in ts.iter() {
                if let Ok(class @ Table1Class::Row { .. }) = table1_classify(*th) {
                    if !class.matches_unordered() {
                        mismatches += 1;
                    }
                    if !class.matches_ordered() {
                        ordered_mismatches += 1;
                    }
                }
            }
            Ok(Outcome::of(mismatches as f64).with("ordered_mismatches", ordered_mismatches))
        })
        .input("samples", n),
    );
    Ok(cases)
}

type TestFn = fn(f64) -> f64;

const TEST_FUNCTIONS: [(&str, TestFn); 4] = [
    ("one", |_| 1.0),
    ("x", |x| x),
    ("x2", |x| x * x),
    ("cos", f64::cos),
];

fn delta_smoothing(cfg: &ScenarioConfig) -> Result<Vec<Case>> {
    let norm = cfg.tolerance("normalization")?;
    let limit = cfg.tolerance("limit")?;
    let two = cfg.tolerance("two_factor")?;
    let mut cases = Vec::new();
    for (ti, t) in [-0.9, -0.99, -0.999].into_iter().enumerate() {
        cases.push(
            Case::new(format!("norm-t{ti}"), norm, Check::AtMost, move || {
                let v = delta_pairing(None, &|_| 1.0, t)?;
                Ok(Outcome::of((v - 2.0).abs()).with("pairing", v))
            })
            .input("t", t)
            .input("phi", "one"),
        );
    }
    let t = -0.999;
    for (name, phi) in TEST_FUNCTIONS {
        cases.push(
            Case::new(format!("limit-{name}"), limit, Check::AtMost, move || {
                let v = delta_pairing(None, &phi, t)?;
                let target = 2.0 * phi(-1.0);
                Ok(Outcome::of((v - target).abs()).with("pairing", v).with("target", target))
            })
            .input("t", t)
            .input("phi", name),
        );
    }
    let t = -0.98;
    for (ki, theta) in [0.7, 1.1, 2.0].into_iter().enumerate() {
        let phi: TestFn = |x| x * x;
        cases.push(
            Case::new(format!("two-factor-{ki}"), two, Check::AtMost, move || {
                let v = delta_pairing(Some(theta), &phi, t)?;
                let target = 2.0 * phi(-theta.cos());
                Ok(Outcome::of((v - target).abs()).with("pairing", v).with("target", target))
            })
            .input("t", t)
            .input("theta", theta)
            .input("phi", "x2"),
        );
    }
    Ok(cases)
}

fn hermite_pair(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let bound = cfg.tolerance("residual")?;
    let t = cfg.truncation;
    let mut cases = Vec::new();
    for eps in [0u8, 1] {
        for (xi, x) in [0.5, 1.5].into_iter().enumerate() {
            for k in 0..cfg.samples {
                let nu = degree(rng, 0.1, 3.9);
                let spec = FamilySpec::hermite_single(x, eps)?;
                cases.push(
                    residual_case(format!("single-e{eps}-x{xi}-{k:04}"), spec, nu, t, bound)
                        .input("x", x)
                        .input("epsilon", eps),
                );
            }
        }
    }
    for k in 0..cfg.samples {
        let nu = degree(rng, 0.1, 3.9);
        let (x, y) = loop {
            let x: f64 = rng.random_range(-1.0..2.0);
            let y: f64 = rng.random_range(-1.0..2.0);
            if x + y > 0.2 {
                break (x, y);
            }
        };
        let spec = FamilySpec::hermite_pair(x, y)?;
        cases.push(
            residual_case(format!("pair-{k:04}"), spec, nu, t, bound)
                .input("x", x)
                .input("y", y),
        );
    }
    for (ri, (kk, n, eps)) in [(1u32, 1usize, 0u8), (2, 2, 0), (2, 1, 2), (1, 3, 0)].into_iter().enumerate() {
        cases.push(
            Case::new(format!("reject-{ri}"), 0.0, Check::AtMost, move || {
                let rejected = FamilySpec::hermite(kk, eps, &vec![0.5; n]).is_err();
                Ok(Outcome::of(if rejected { 0.0 } else { 1.0 }))
            })
            .input("k", kk)
            .input("n_points", n)
            .input("epsilon", eps),
        );
    }
    Ok(cases)
}

fn necessity_fail(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let floor = cfg.tolerance("residual_floor")?;
    let p = JacobiParams::new(0.5, 0.0)?;
    let t = cfg.truncation;
    let mut cases = Vec::new();
    for k in 0..cfg.samples {
        let nu = degree(rng, 0.1, 4.9);
        let th = simplex_angles(rng, 3, DEFAULT_MARGIN);
        let spec = FamilySpec::jacobi_product(vec![p; 3], points_from_thetas(&th)?)?;
        cases.push(
            Case::new(format!("n3-{k:04}"), floor, Check::Above, move || {
                let r = residual(&spec, nu, &t)?;
                Ok(Outcome::of(r))
            })
            .input("alpha", 0.5)
            .input("beta", 0.0)
            .input("nu", nu)
            .input("thetas", th),
        );
    }
    Ok(cases)
}

fn outside_domain_fail(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let floor = cfg.tolerance("residual_floor")?;
    let excess = 0.2;
    let t = cfg.truncation;
    let mut cases = Vec::new();
    for k in 0..cfg.samples {
        let nu = degree(rng, 0.1, 4.9);
        let th1: f64 = rng.random_range(0.4..PI - 0.2);
        let th = vec![th1, PI + excess - th1];
        let spec = FamilySpec::legendre(points_from_thetas(&th)?)?;
        let doubled = t.with_n_max(2 * t.n_max);
        cases.push(
            Case::new(format!("n2-{k:04}"), floor, Check::Above, move || {
                let r = residual(&spec, nu, &t)?;
                let r2 = residual(&spec, nu, &doubled)?;
                let stable = r2 >= r * (1.0 - 1e-3);
                Ok(Outcome {
                    pass: Some(r > floor && stable),
                    ..Outcome::of(r).with("residual_doubled", r2)
                })
            })
            .input("nu", nu)
            .input("thetas", th)
            .input("abs_sum", PI + excess),
        );
    }
    Ok(cases)
}
