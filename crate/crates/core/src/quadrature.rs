//! Globally adaptive Gauss–Kronrod quadrature (7-point Gauss embedded in a
//! 15-point Kronrod panel).
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate drops below the tolerance. Ties go to the leftmost panel so the
//! refinement sequence, and therefore the result, is deterministic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of panels before giving up.
pub const MAX_PANELS: usize = 10_000;

/// Positive Kronrod abscissae on [-1, 1]; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
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

/// Gauss weights for XGK[1], XGK[3], XGK[5] and the center.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
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
    // Max-heap on error; among equal errors the smaller left endpoint wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn panel<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |t: f64| -> Result<f64> {
        let v = f(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand(t))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut magnitude = WGK[7] * fc.abs();
    for (i, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        kronrod += w * (f1 + f2);
        magnitude += w * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        magnitude: magnitude * half.abs(),
    })
}

const EVALS_PER_PANEL: usize = 15;

/// Integrates `f` from `lo` to `hi` (either orientation) to absolute
/// tolerance `tol`, relaxed to a few ulps of the integrand's magnitude when
/// `tol` is below what binary64 can resolve.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    if lo == hi {
        return Ok(QuadratureResult::zero());
    }
    if lo > hi {
        let r = integrate(f, hi, lo, tol)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }

    let first = panel(&mut f, lo, hi)?;
    let mut evaluations = EVALS_PER_PANEL;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut error = first.error;
    let mut magnitude = first.magnitude;

    loop {
        let target = tol.max(64.0 * f64::EPSILON * magnitude);
        if error <= target {
            break;
        }
        if heap.len() >= MAX_PANELS {
            let partial = summarize(&heap, evaluations);
            return Err(Error::NonConvergence {
                panels: heap.len(),
                partial,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel cannot be split further in binary64.
            heap.push(worst);
            let partial = summarize(&heap, evaluations);
            return Err(Error::NonConvergence {
                panels: heap.len(),
                partial,
            });
        }
        let left = panel(&mut f, worst.a, mid)?;
        let right = panel(&mut f, mid, worst.b)?;
        evaluations += 2 * EVALS_PER_PANEL;
        error += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally so the running totals do not drift.
        if heap.len() % 64 == 0 {
            error = heap.iter().map(|p| p.error).sum();
            magnitude = heap.iter().map(|p| p.magnitude).sum();
        }
    }
    Ok(summarize(&heap, evaluations))
}

fn summarize(heap: &BinaryHeap<Panel>, evaluations: usize) -> QuadratureResult {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    QuadratureResult {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    }
}
