//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line with the
//! measured quantities to stderr, uncaptured, and then asserts the criterion.

use std::f64::consts::PI;
use std::io::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sampexp::expansion::{family_value, points_from_thetas, residual, sampling_sum, FamilySpec, TruncationConfig};
use sampexp::functions::{gegenbauer_hat, gegenbauer_md, legendre_md, legendre_p, EvalPoint, JacobiParams};
use sampexp::gseries::{abc_coefficients, addition_identity_check, eta4, table1_classify, Table1Class};
use sampexp::harness::sampling::{cube_angles, degree, simplex_angles, DEFAULT_MARGIN};
use sampexp::harness::{run_scenario, ReportRecord, ScenarioConfig, DEFAULT_SEED};

fn verdict(id: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {id:>2} {tag}: {title}; {detail}\n");
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn scenario(name: &str) -> (Vec<ReportRecord>, Duration) {
    let start = Instant::now();
    let records = run_scenario(&ScenarioConfig::new(name).unwrap()).unwrap();
    (records, start.elapsed())
}

fn worst<'a>(records: impl IntoIterator<Item = &'a ReportRecord>) -> f64 {
    records
        .into_iter()
        .map(|r| if r.measured.is_nan() { f64::INFINITY } else { r.measured })
        .fold(0.0, f64::max)
}

fn all_pass<'a>(records: impl IntoIterator<Item = &'a ReportRecord>) -> (usize, usize) {
    records
        .into_iter()
        .fold((0, 0), |(p, n), r| (p + usize::from(r.pass), n + 1))
}

#[test]
fn criterion_01_interpolation_exactness() {
    let start = Instant::now();
    let th = |v: &[f64]| points_from_thetas(v).unwrap();
    let x = |v: f64| EvalPoint::from_theta(v).unwrap();
    let specs = vec![
        FamilySpec::legendre(th(&[0.7])).unwrap(),
        FamilySpec::legendre(th(&[0.4, -1.2, 0.6, 0.3])).unwrap(),
        FamilySpec::gegenbauer(0.75, th(&[1.1, -0.5, 0.8])).unwrap(),
        FamilySpec::gegenbauer(1.5, th(&[0.2, 2.0])).unwrap(),
        FamilySpec::jacobi_single(JacobiParams::new(0.3, -0.2).unwrap(), x(1.3)).unwrap(),
        FamilySpec::jacobi_pair(JacobiParams::new(1.5, 0.5).unwrap(), x(0.9), x(-1.4)).unwrap(),
        FamilySpec::hermite_pair(0.5, 0.8).unwrap(),
        FamilySpec::hermite_single(1.5, 0).unwrap(),
        FamilySpec::hermite_single(0.5, 1).unwrap(),
    ];
    let t = TruncationConfig::default();
    let mut worst_err = 0.0f64;
    for spec in &specs {
        for n in 0..=20 {
            let nu = f64::from(n);
            let f = family_value(spec, nu).unwrap();
            let s = sampling_sum(spec, nu, &t).unwrap().value;
            worst_err = worst_err.max((f - s).abs() / (1.0 + f.abs()));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_err <= 1e-10 && elapsed < Duration::from_secs(10);
    verdict(
        1,
        "interpolation at integer degrees",
        pass,
        &format!("{} specs x 21 degrees, worst |sum - f|/(1+|f|) = {worst_err:.3e} (bound 1e-10), {elapsed:.2?}", specs.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_02_legendre_products() {
    let (records, elapsed) = scenario("legendre_sinc");
    let (p, n) = all_pass(&records);
    let pass = p == n && n == 200 && elapsed < Duration::from_secs(60);
    verdict(
        2,
        "Legendre products N = 1..4",
        pass,
        &format!("{p}/{n} within 1e-6 (abs or rel), worst {:.3e}, {elapsed:.2?}", worst(&records)),
    );
    assert!(pass);
}

#[test]
fn criterion_03_jacobi_single_and_pair() {
    let (records, elapsed) = scenario("prop1_jacobi");
    let (p, n) = all_pass(&records);
    let pass = p == n && n == 180 && elapsed < Duration::from_secs(60);
    verdict(
        3,
        "Jacobi single and swapped pair",
        pass,
        &format!("{p}/{n} residuals <= 1e-5, worst {:.3e}, {elapsed:.2?}", worst(&records)),
    );
    assert!(pass);
}

#[test]
fn criterion_04_gegenbauer_multi_factor() {
    let (records, elapsed) = scenario("gegenbauer_multi");
    let multi: Vec<&ReportRecord> = records
        .iter()
        .filter(|r| r.case_id.contains("-n3-") || r.case_id.contains("-n4-"))
        .collect();
    let bilateral: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.starts_with("bilateral")).collect();
    let (pm, nm) = all_pass(multi.iter().copied());
    let (pb, nb) = all_pass(bilateral.iter().copied());
    let (pa, na) = all_pass(&records);
    let pass = pm == nm && nm >= 30 && pb == nb && nb >= 30 && pa == na;
    verdict(
        4,
        "Gegenbauer N = 3, 4 and bilateral form",
        pass,
        &format!(
            "N in {{3,4}}: {pm}/{nm} <= 1e-5 (worst {:.3e}); bilateral vs unilateral: {pb}/{nb} <= 1e-6 (worst {:.3e}); all records {pa}/{na}; {elapsed:.2?}",
            worst(multi.iter().copied()),
            worst(bilateral.iter().copied())
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_necessity_failure() {
    let cfg = ScenarioConfig::new("necessity_fail").unwrap();
    let (records, _) = scenario("necessity_fail");
    let above = records.iter().filter(|r| r.measured > 1e-2).count();
    let fraction = above as f64 / records.len() as f64;

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let p = JacobiParams::new(0.5, 0.0).unwrap();
    let t = cfg.truncation;
    let mut non_decreasing = 0;
    for _ in 0..records.len() {
        let nu = degree(&mut rng, 0.1, 4.9);
        let th = simplex_angles(&mut rng, 3, DEFAULT_MARGIN);
        let spec = FamilySpec::jacobi_product(vec![p; 3], points_from_thetas(&th).unwrap()).unwrap();
        let r1 = residual(&spec, nu, &t).unwrap();
        let r2 = residual(&spec, nu, &t.with_n_max(2 * t.n_max)).unwrap();
        if r2 >= r1 * (1.0 - 1e-3) {
            non_decreasing += 1;
        }
    }
    let pass = fraction >= 0.9 && non_decreasing == records.len();
    verdict(
        5,
        "three Jacobi factors with (alpha, beta) = (0.5, 0)",
        pass,
        &format!(
            "{above}/{} residuals > 1e-2 (need >= 90%), max residual {:.3e}; non-decreasing under n_max doubling in {non_decreasing}/{}",
            records.len(),
            worst(&records),
            records.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_three_factor_g() {
    let (records, elapsed) = scenario("g3_closed");
    let outside: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.starts_with("outside")).collect();
    let inside: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.starts_with("interior")).collect();
    let (po, no) = all_pass(outside.iter().copied());
    let (pi, ni) = all_pass(inside.iter().copied());
    let pass = po == no && no == 20 && pi == ni && ni == 20;
    verdict(
        6,
        "three-factor closed form vs Abel sum",
        pass,
        &format!(
            "eta3 < 0: {po}/{no} rel <= 1e-2 (worst {:.3e}); interior: {pi}/{ni} |G| <= 1e-3 (worst {:.3e}); {elapsed:.2?}",
            worst(outside.iter().copied()),
            worst(inside.iter().copied())
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_four_factor_sign_cases() {
    let (records, elapsed) = scenario("g4_table2");
    let mut parts = Vec::new();
    let mut pass = true;
    for label in ["pp", "mm", "pm", "mp"] {
        let recs: Vec<&ReportRecord> = records
            .iter()
            .filter(|r| r.case_id.starts_with(&format!("{label}-")) && !r.case_id.contains("swap"))
            .collect();
        let (p, n) = all_pass(recs.iter().copied());
        pass &= p == n && n >= 5;
        parts.push(format!("{label} {p}/{n} (worst {:.3e})", worst(recs.iter().copied())));
    }
    let swaps: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.contains("swap")).collect();
    let (ps, ns) = all_pass(swaps.iter().copied());
    pass &= ps == ns && ns >= 5;
    verdict(
        7,
        "four-factor closed forms in every sign case",
        pass,
        &format!(
            "{}; (-,-) swap {ps}/{ns} <= 1e-9 (worst {:.3e}); {elapsed:.2?}",
            parts.join(", "),
            worst(swaps.iter().copied())
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_08_sign_classification() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut forbidden, mut boundary, mut rows, mut ordered_ok, mut unordered_ok) = (0, 0, 0, 0, 0);
    let (mut b_rel, mut disc, mut b_ge) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100_000 {
        let v = cube_angles(&mut rng, 4);
        let th = [v[0], v[1], v[2], v[3]];
        let (a, b, c) = abc_coefficients(th);
        let (ep, em) = eta4(th);
        b_rel = b_rel.max((b + ep + em).abs());
        disc = disc.max((b * b - 4.0 * a * c - (ep - em).powi(2)).abs());
        b_ge = b_ge.max(a + c - b);
        match table1_classify(th) {
            Err(_) => forbidden += 1,
            Ok(Table1Class::Boundary) => boundary += 1,
            Ok(class) => {
                rows += 1;
                ordered_ok += usize::from(class.matches_ordered());
                unordered_ok += usize::from(class.matches_unordered());
            }
        }
    }
    let elapsed = start.elapsed();
    let checks = [
        forbidden == 0,
        b_rel <= 1e-10,
        disc <= 1e-9,
        b_ge <= 1e-12,
        ordered_ok == rows,
        elapsed < Duration::from_secs(60),
    ];
    let pass = checks.iter().all(|c| *c);
    verdict(
        8,
        "(A, B, C) sign classification over 1e5 tuples",
        pass,
        &format!(
            "(+,-,+) count {forbidden}; max |B + eta+ + eta-| {b_rel:.3e}; max |B^2 - 4AC - (eta+ - eta-)^2| {disc:.3e}; max (A + C - B) {b_ge:.3e}; \
             rows matching listed (eta+, eta-) signs exactly {ordered_ok}/{rows}, up to eta+ <-> eta- {unordered_ok}/{rows}; {boundary} boundary tuples skipped; {elapsed:.2?}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_delta_identities() {
    let (records, elapsed) = scenario("delta_smoothing");
    let norm: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.starts_with("norm")).collect();
    let limit: Vec<&ReportRecord> = records
        .iter()
        .filter(|r| r.case_id.starts_with("limit") && r.case_id != "limit-one")
        .collect();
    let (pn, nn) = all_pass(norm.iter().copied());
    let (pl, nl) = all_pass(limit.iter().copied());
    let (pa, na) = all_pass(&records);
    let pass = pn == nn && nn == 3 && pl == nl && nl == 3 && pa == na;
    verdict(
        9,
        "smoothed delta identities",
        pass,
        &format!(
            "normalization {pn}/{nn} <= 1e-10 (worst {:.3e}); limits for x, x^2, cos x {pl}/{nl} <= 1e-2 (worst {:.3e}); all records {pa}/{na}; {elapsed:.2?}",
            worst(norm.iter().copied()),
            worst(limit.iter().copied())
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_hermite() {
    let (records, elapsed) = scenario("hermite_pair");
    let rejects: Vec<&ReportRecord> = records.iter().filter(|r| r.case_id.starts_with("reject")).collect();
    let sums: Vec<&ReportRecord> = records.iter().filter(|r| !r.case_id.starts_with("reject")).collect();
    let (ps, ns) = all_pass(sums.iter().copied());
    let (pr, nr) = all_pass(rejects.iter().copied());
    let pass = ps == ns && pr == nr && nr > 0;
    verdict(
        10,
        "Hermite single (k = 2) and pair (k = 1)",
        pass,
        &format!(
            "{ps}/{ns} residuals <= 1e-4 (worst {:.3e}); {pr}/{nr} inadmissible (k, N) rejected; {elapsed:.2?}",
            worst(sums.iter().copied())
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_11_oracle_coherence() {
    let start = Instant::now();
    let nus: Vec<f64> = (0..20).map(|i| 0.1 + 4.8 * f64::from(i) / 19.0).collect();
    let thetas: Vec<f64> = (0..20).map(|j| 0.1 + (PI - 0.2) * f64::from(j) / 19.0).collect();
    let mut leg = 0.0f64;
    let mut geg = 0.0f64;
    for &nu in &nus {
        for &th in &thetas {
            let x = EvalPoint::from_theta(th).unwrap();
            leg = leg.max((legendre_p(nu, x).unwrap() - legendre_md(nu, th).unwrap()).abs());
            for gamma in [0.75, 1.0, 1.5] {
                geg = geg.max((gegenbauer_hat(nu, gamma, x).unwrap() - gegenbauer_md(nu, gamma, th).unwrap()).abs());
            }
        }
    }
    let mut add = 0.0f64;
    for gamma in [0.5, 1.0, 1.5] {
        for n in 0..=6 {
            for (a, b) in [(0.4, 1.1), (2.0, 0.7), (1.3, 2.6)] {
                add = add.max(addition_identity_check(n, gamma, a, b).unwrap());
            }
        }
    }
    let pass = leg <= 1e-7 && geg <= 1e-7 && add <= 1e-8;
    verdict(
        11,
        "oracle coherence",
        pass,
        &format!(
            "Legendre vs integral form {leg:.3e} (bound 1e-7); Gegenbauer vs integral form {geg:.3e} (bound 1e-7); addition theorem {add:.3e} (bound 1e-8); {:.2?}",
            start.elapsed()
        ),
    );
    assert!(pass);
}
