//! Brute-force reference computations used to cross-check the main pipeline.
//!
//! Nothing here shares code with the adaptive quadrature or the jet
//! arithmetic: integrals use the composite trapezoid rule with one Richardson
//! step, derivatives use finite differences with Ridders extrapolation.

use crate::calculus::Interval;
use crate::error::{Error, Result};
use crate::model::FunctionModel;

pub const MIN_LEVELS: u32 = 4;
pub const DEFAULT_LEVELS: u32 = 16;
pub const MAX_DERIVATIVE_ORDER: usize = 4;

fn trapezoid<F: Fn(f64) -> f64>(h: &F, a: f64, b: f64, panels: usize) -> f64 {
    let step = (b - a) / panels as f64;
    let interior: f64 = (1..panels).map(|i| h(a + step * i as f64)).sum();
    step * (0.5 * (h(a) + h(b)) + interior)
}

/// `∫_a^b h` by trapezoid sums on `2^levels` and `2^(levels-1)` panels
/// combined with one Richardson step.
pub fn trapezoid_richardson<F: Fn(f64) -> f64>(h: F, a: f64, b: f64, levels: u32) -> f64 {
    let levels = levels.max(MIN_LEVELS);
    let fine = trapezoid(&h, a, b, 1 << levels);
    let coarse = trapezoid(&h, a, b, 1 << (levels - 1));
    fine + (fine - coarse) / 3.0
}

/// `∫_a^b (t + shift)^weightexp f(t) dt`. Evaluation failures propagate.
pub fn oracle_integral(f: &FunctionModel, weightexp: f64, shift: f64, iv: &Interval, levels: u32) -> Result<f64> {
    if levels < MIN_LEVELS {
        return Err(Error::Config(format!("oracle levels {levels} below {MIN_LEVELS}")));
    }
    for x in [iv.a(), iv.midpoint(), iv.b()] {
        f.eval(x)?;
    }
    let h = |t: f64| (t + shift).powf(weightexp) * f.eval(t).unwrap_or(f64::NAN);
    let v = trapezoid_richardson(h, iv.a(), iv.b(), levels);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand(iv.a()))
    }
}

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// k-th difference quotient with step `h`: central when `central`, forward otherwise.
fn difference<F: Fn(f64) -> f64>(f: &F, x: f64, order: usize, h: f64, central: bool) -> f64 {
    let offset = if central { 0.5 * order as f64 } else { 0.0 };
    let sum: f64 = (0..=order)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let node = x + (order as f64 - j as f64 - offset) * h;
            sign * binomial(order, j) * f(node)
        })
        .sum();
    sum / h.powi(order as i32)
}

const RIDDERS_SHRINK: f64 = 1.4;
const RIDDERS_ROWS: usize = 12;

/// Ridders extrapolation of difference quotients starting from step `h0`.
/// Central quotients have an even error series, forward ones a full series.
fn ridders<F: Fn(f64) -> f64>(f: &F, x: f64, order: usize, h0: f64, central: bool) -> f64 {
    let power = if central { 2 } else { 1 };
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(RIDDERS_ROWS);
    let mut best = f64::NAN;
    let mut best_err = f64::INFINITY;
    let mut h = h0;
    for i in 0..RIDDERS_ROWS {
        let mut row = vec![difference(f, x, order, h, central)];
        for j in 1..=i {
            let fac = RIDDERS_SHRINK.powi((power * j) as i32);
            let v = (row[j - 1] * fac - table[i - 1][j - 1]) / (fac - 1.0);
            let err = (v - row[j - 1]).abs().max((v - table[i - 1][j - 1]).abs());
            if err <= best_err {
                best_err = err;
                best = v;
            }
            row.push(v);
        }
        if i > 0 && (row[i] - table[i - 1][i - 1]).abs() >= 2.0 * best_err {
            break;
        }
        table.push(row);
        h /= RIDDERS_SHRINK;
    }
    best
}

/// Finite-difference derivative of a plain function defined for `t >= 0`.
/// Falls back to forward differences when a central stencil would leave the domain.
pub fn oracle_derivative_fn<F: Fn(f64) -> f64>(f: F, x: f64, order: usize) -> f64 {
    if order == 0 {
        return f(x);
    }
    let half = 0.5 * order as f64;
    let h0 = 0.2 * x.abs().max(1.0);
    if x - half * h0 >= 0.0 {
        ridders(&f, x, order, h0, true)
    } else if x >= half * 0.02 {
        ridders(&f, x, order, x / half, true)
    } else {
        ridders(&f, x, order, 0.1, false)
    }
}

/// `f^(order)(x)` by finite differences, `order <= 4`.
pub fn oracle_derivative(f: &FunctionModel, x: f64, order: usize) -> Result<f64> {
    if order > MAX_DERIVATIVE_ORDER {
        return Err(Error::DerivativeOrder {
            requested: order,
            order: MAX_DERIVATIVE_ORDER,
        });
    }
    f.eval(x)?;
    let v = oracle_derivative_fn(|t| f.eval(t).unwrap_or(f64::NAN), x, order);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::OutsideDomain {
            name: f.name().to_string(),
            x,
        })
    }
}
