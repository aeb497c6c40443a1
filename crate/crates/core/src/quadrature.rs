//! One-dimensional quadrature: tanh-sinh for endpoint singularities and
//! adaptive Gauss-Kronrod for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const MAX_LEVEL: usize = 12;
const MIN_LEVEL: usize = 4;
const MAX_SUBDIVISIONS: usize = 4000;

/// Which ends of the interval carry an integrable singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularEnds {
    None,
    Lower,
    Upper,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSpec {
    pub lower: f64,
    pub upper: f64,
    pub singular_ends: SingularEnds,
    pub abs_tol: f64,
}

impl IntegrandSpec {
    pub fn new(lower: f64, upper: f64, singular_ends: SingularEnds, abs_tol: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower >= upper {
            return Err(Error::domain(format!(
                "integration interval [{lower}, {upper}] must be finite and non-empty"
            )));
        }
        if !(abs_tol > 0.0) {
            return Err(Error::domain("abs_tol must be positive"));
        }
        Ok(Self {
            lower,
            upper,
            singular_ends,
            abs_tol,
        })
    }

    pub fn smooth(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, SingularEnds::None, DEFAULT_ABS_TOL)
    }

    pub fn singular(lower: f64, upper: f64, ends: SingularEnds) -> Result<Self> {
        Self::new(lower, upper, ends, DEFAULT_ABS_TOL)
    }

    pub fn with_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err_est: f64,
}

/// One abscissa of the tanh-sinh rule on (-1, 1), stored for t >= 0.
#[derive(Debug, Clone, Copy)]
struct DeNode {
    /// 1 - x, accurate down to subnormal range
    complement: f64,
    weight: f64,
}

struct DeTable {
    nodes: Vec<DeNode>,
}

const TABLE_STEP_LOG2: usize = MAX_LEVEL;

fn de_table() -> &'static DeTable {
    static TABLE: OnceLock<DeTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let h = (0.5f64).powi(TABLE_STEP_LOG2 as i32);
        let mut nodes = Vec::new();
        for k in 0.. {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            let e = (-2.0 * u).exp();
            let complement = (-u).exp() / u.cosh();
            if complement < 1e-300 || !complement.is_finite() {
                break;
            }
            let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
            nodes.push(DeNode { complement, weight });
        }
        DeTable { nodes }
    })
}

/// Sum of the level-`level` tanh-sinh nodes that are new relative to `level - 1`
/// (all nodes for level 0), scaled by the node weights.
fn de_level_sum<F>(f: &F, lower: f64, upper: f64, level: usize) -> Result<(f64, f64)>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let table = de_table();
    let half = 0.5 * (upper - lower);
    let stride = 1usize << (MAX_LEVEL - level);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut push = |v: f64, w: f64, complement: f64| -> Result<()> {
        if v.is_finite() {
            sum += w * v;
            abs_sum += (w * v).abs();
            Ok(())
        } else if complement < 1e-100 {
            Ok(())
        } else {
            Err(Error::Quadrature {
                reason: "integrand not finite at an interior node".into(),
                estimate: f64::NAN,
                err_est: f64::INFINITY,
            })
        }
    };
    let mut k = 0;
    while k < table.nodes.len() {
        let new_node = level == 0 || (k / stride) % 2 == 1;
        if new_node {
            let node = table.nodes[k];
            let d = half * node.complement;
            let d_other = 2.0 * half - d;
            if k == 0 {
                // centre node
                let x = lower + half;
                push(f(x, half, half), node.weight, node.complement)?;
            } else {
                push(f(upper - d, d_other, d), node.weight, node.complement)?;
                push(f(lower + d, d, d_other), node.weight, node.complement)?;
            }
        }
        k += stride;
    }
    Ok((sum * half, abs_sum * half))
}

/// Successive tanh-sinh estimates for levels 0..=max_level.
pub fn de_level_estimates<F>(f: F, spec: IntegrandSpec, max_level: usize) -> Result<Vec<f64>>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let max_level = max_level.min(MAX_LEVEL);
    let mut out = Vec::with_capacity(max_level + 1);
    let mut acc = 0.0;
    for level in 0..=max_level {
        let h = (0.5f64).powi(level as i32);
        let (s, _) = de_level_sum(&f, spec.lower, spec.upper, level)?;
        // level sums are unweighted by h; rescale the running total
        acc += s;
        out.push(acc * h);
    }
    Ok(out)
}

/// Tanh-sinh quadrature where the integrand also receives the exact distances
/// to both endpoints, `f(x, x - lower, upper - x)`.
pub fn integrate_de_endpoint<F>(f: F, spec: IntegrandSpec) -> Result<Integral>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let mut acc = 0.0;
    let mut abs_acc = 0.0;
    let mut prev = f64::NAN;
    let mut err = f64::INFINITY;
    for level in 0..=MAX_LEVEL {
        let h = (0.5f64).powi(level as i32);
        let (s, a) = de_level_sum(&f, spec.lower, spec.upper, level)?;
        acc += s;
        abs_acc += a;
        let current = acc * h;
        if level > 0 {
            err = (current - prev).abs();
            let floor = 16.0 * f64::EPSILON * abs_acc * h;
            if level >= MIN_LEVEL && err <= spec.abs_tol.max(floor) {
                return Ok(Integral {
                    value: current,
                    err_est: err,
                });
            }
        }
        prev = current;
    }
    Err(Error::Quadrature {
        reason: format!("tanh-sinh did not reach {} by level {MAX_LEVEL}", spec.abs_tol),
        estimate: prev,
        err_est: err,
    })
}

pub fn integrate_de<F>(f: F, spec: IntegrandSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    integrate_de_endpoint(|x, _, _| f(x), spec)
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature.
pub fn integrate_adaptive<F>(f: F, spec: IntegrandSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    let (v, e) = gk15(&f, spec.lower, spec.upper);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a: spec.lower,
        b: spec.upper,
        value: v,
        err: e,
    });
    let mut total = v;
    let mut total_err = e;
    for _ in 0..MAX_SUBDIVISIONS {
        let floor = 32.0 * f64::EPSILON * total.abs();
        if total_err <= spec.abs_tol.max(floor) {
            let value = heap.iter().map(|p| p.value).sum();
            return Ok(Integral {
                value,
                err_est: total_err,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
        if !total.is_finite() {
            break;
        }
    }
    Err(Error::Quadrature {
        reason: format!("adaptive quadrature exceeded {MAX_SUBDIVISIONS} subdivisions"),
        estimate: total,
        err_est: total_err,
    })
}

/// Dispatch on `singular_ends`: tanh-sinh for singular ends, Gauss-Kronrod otherwise.
pub fn integrate<F>(f: F, spec: IntegrandSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    match spec.singular_ends {
        SingularEnds::None => integrate_adaptive(f, spec),
        _ => integrate_de(f, spec),
    }
}
