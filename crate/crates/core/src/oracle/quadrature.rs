//! Adaptive Gauss–Kronrod (10/21-point) integration of complex integrands.
//!
//! The caller supplies initial breakpoints; panels are then bisected
//! worst-first until the summed error estimate meets the tolerance or the
//! evaluation budget runs out. The error estimate is `|K21 − G10|` per panel,
//! without QUADPACK's empirical rescaling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Bisections between exact re-summations of the running totals.
const RESUM_INTERVAL: usize = 512;

/// Integrand evaluations per panel.
pub const POINTS_PER_PANEL: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|`, for judging cancellation.
    pub abs_integral: f64,
    pub points_used: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_integral: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the refinement order
    // is fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;
    let mut kronrod = f_center * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_sum = f_center.norm() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
        abs_integral: abs_sum * half.abs(),
    })
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// Stops when the summed error estimate is below
/// `max(tol.abs, tol.rel · |I|)`. If the budget of `max_points` integrand
/// evaluations is exhausted first, fails with [`Error::Convergence`]
/// carrying the smallest error estimate reached. The initial panels are
/// always evaluated; if they alone exceed the budget that is a failure too.
pub fn integrate<F>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
    max_points: usize,
) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate(|x| Ok(f(x)), breakpoints, tol, max_points)
}

/// [`integrate`] for integrands that can fail; the first error aborts.
pub fn try_integrate<F>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
    max_points: usize,
) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if breakpoints.len() < 2 {
        return Err(Error::invalid("breakpoints", "need at least two"));
    }
    if breakpoints
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
    {
        return Err(Error::invalid("breakpoints", "must be strictly increasing"));
    }

    let mut heap: BinaryHeap<Panel> = breakpoints
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect::<Result<_>>()?;
    let mut points = heap.len() * POINTS_PER_PANEL;

    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter()
            .fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |acc, p| {
                (acc.0 + p.value, acc.1 + p.error, acc.2 + p.abs_integral)
            })
    };

    let (mut value, mut error, mut abs_integral) = totals(&heap);
    let mut best = Estimate {
        value,
        error,
        abs_integral,
        points_used: points,
    };
    if points > max_points {
        return Err(Error::Convergence {
            achieved: error,
            target: tol.abs.max(tol.rel * value.norm()),
            points_used: points,
            max_points,
        });
    }
    let mut steps = 0usize;
    loop {
        let target = tol.abs.max(tol.rel * value.norm());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                abs_integral,
                points_used: points,
            });
        }
        if points + 2 * POINTS_PER_PANEL > max_points {
            return Err(Error::Convergence {
                achieved: best.error,
                target,
                points_used: best.points_used,
                max_points,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel cannot be split further in f64.
            return Err(Error::Convergence {
                achieved: best.error,
                target,
                points_used: best.points_used,
                max_points,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        points += 2 * POINTS_PER_PANEL;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_integral += left.abs_integral + right.abs_integral - worst.abs_integral;
        heap.push(left);
        heap.push(right);
        steps += 1;
        if steps % RESUM_INTERVAL == 0 || error <= tol.abs.max(tol.rel * value.norm()) {
            (value, error, abs_integral) = totals(&heap);
        }
        if error < best.error {
            best = Estimate {
                value,
                error,
                abs_integral,
                points_used: points,
            };
        }
    }
}
