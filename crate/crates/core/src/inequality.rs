//! Steffensen/Hayashi, Taylor–Steffensen and Hermite–Hadamard inequality
//! checks for the beta-integral.
//!
//! Every check reports the three terms of its chain `lhs <= mid <= rhs`, the
//! two margins, and the outcome of sampling its monotonicity and sign
//! hypotheses. A chain whose hypotheses hold but whose margins fall below
//! `-MARGIN_SLACK` is reported as violated.

use std::cell::Cell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::calculus::{beta_derivative, integrate_weighted, BetaParam, Interval};
use crate::error::{Error, Result};
use crate::jet::factorial;
use crate::model::FunctionModel;
use crate::taylor::integral_remainder;

/// Default number of interior sample points for hypothesis checks.
pub const DEFAULT_GRID: usize = 257;
pub const MIN_GRID: usize = 16;
/// Slack for monotonicity and sign classification, relative to `max(1, max |f|)`.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Margins above `-MARGIN_SLACK` count as satisfied.
pub const MARGIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Nonincreasing,
    Nondecreasing,
    /// Both nonincreasing and nondecreasing.
    Constant,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Nonnegative,
    Nonpositive,
    /// Both nonnegative and nonpositive.
    Zero,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    HypothesisNotMet,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
            Verdict::Error => "error",
        })
    }
}

/// Sampled monotonicity and sign of a function on an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport {
    pub nonincreasing: bool,
    pub nondecreasing: bool,
    pub nonnegative: bool,
    pub nonpositive: bool,
    /// For a mixed sign, the (argmin, argmax) pair; otherwise, for a
    /// non-monotone function, the first step against the initial trend.
    pub witness: Option<(f64, f64)>,
    pub samples: usize,
    pub min: f64,
    pub max: f64,
}

impl MonotonicityReport {
    pub fn direction(&self) -> Direction {
        match (self.nonincreasing, self.nondecreasing) {
            (true, true) => Direction::Constant,
            (true, false) => Direction::Nonincreasing,
            (false, true) => Direction::Nondecreasing,
            (false, false) => Direction::Neither,
        }
    }

    pub fn sign(&self) -> Sign {
        match (self.nonnegative, self.nonpositive) {
            (true, true) => Sign::Zero,
            (true, false) => Sign::Nonnegative,
            (false, true) => Sign::Nonpositive,
            (false, false) => Sign::Mixed,
        }
    }
}

/// Samples `h` at `grid` interior points plus both endpoints and classifies it.
pub fn sample_monotone_sign<H>(h: H, iv: &Interval, grid: usize) -> Result<MonotonicityReport>
where
    H: Fn(f64) -> Result<f64>,
{
    if grid < MIN_GRID {
        return Err(Error::Config(format!("sampling grid {grid} is below {MIN_GRID}")));
    }
    let count = grid + 2;
    let xs: Vec<f64> = (0..count)
        .map(|i| {
            if i == count - 1 {
                iv.b()
            } else {
                iv.a() + iv.len() * i as f64 / (count - 1) as f64
            }
        })
        .collect();
    let vs = xs.iter().map(|&x| h(x)).collect::<Result<Vec<_>>>()?;
    let scale = vs.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let slack = MONOTONE_SLACK * scale;

    let nonincreasing = vs.windows(2).all(|w| w[1] <= w[0] + slack);
    let nondecreasing = vs.windows(2).all(|w| w[1] >= w[0] - slack);
    let nonnegative = vs.iter().all(|&v| v >= -slack);
    let nonpositive = vs.iter().all(|&v| v <= slack);

    let (imin, imax) = vs.iter().enumerate().fold((0, 0), |(lo, hi), (i, &v)| {
        (if v < vs[lo] { i } else { lo }, if v > vs[hi] { i } else { hi })
    });
    let witness = if !nonnegative && !nonpositive {
        Some((xs[imin], xs[imax]))
    } else if !nonincreasing && !nondecreasing {
        let steps: Vec<f64> = vs.windows(2).map(|w| w[1] - w[0]).collect();
        let trend = steps.iter().copied().find(|d| d.abs() > slack).unwrap_or(0.0);
        steps
            .iter()
            .position(|d| d.abs() > slack && d.signum() != trend.signum())
            .map(|i| (xs[i], xs[i + 1]))
    } else {
        None
    };
    Ok(MonotonicityReport {
        nonincreasing,
        nondecreasing,
        nonnegative,
        nonpositive,
        witness,
        samples: count,
        min: vs[imin],
        max: vs[imax],
    })
}

pub fn check_monotone_sign(f: &FunctionModel, iv: &Interval, grid: usize) -> Result<MonotonicityReport> {
    sample_monotone_sign(|x| f.eval(x), iv, grid)
}

/// A hypothesis of a check and whether sampling confirmed it.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub label: String,
    pub met: bool,
    pub report: MonotonicityReport,
}

impl Hypothesis {
    fn new(label: impl Into<String>, report: MonotonicityReport, met: bool) -> Self {
        Self {
            label: label.into(),
            met,
            report,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
    pub margin_left: f64,
    pub margin_right: f64,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub l_value: Option<f64>,
    pub evaluations: usize,
}

impl InequalityReport {
    fn new(
        name: &str,
        (lhs, mid, rhs): (f64, f64, f64),
        hypotheses: Vec<Hypothesis>,
        l_value: Option<f64>,
        evaluations: usize,
    ) -> Self {
        let margin_left = mid - lhs;
        let margin_right = rhs - mid;
        let verdict = if !hypotheses.iter().all(|h| h.met) {
            Verdict::HypothesisNotMet
        } else if margin_left >= -MARGIN_SLACK && margin_right >= -MARGIN_SLACK {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        Self {
            name: name.to_string(),
            lhs,
            mid,
            rhs,
            margin_left,
            margin_right,
            hypotheses,
            verdict,
            l_value,
            evaluations,
        }
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.met)
    }
}

/// Range hypothesis `0 <= g <= bound` on the sampled grid.
fn range_hypothesis(g: &FunctionModel, iv: &Interval, bound: f64) -> Result<Hypothesis> {
    let report = check_monotone_sign(g, iv, DEFAULT_GRID)?;
    let slack = MONOTONE_SLACK * bound.max(1.0);
    let met = bound > 0.0 && report.nonnegative && report.max <= bound + slack;
    Ok(Hypothesis::new(format!("0 <= {} <= {bound}", g.name()), report, met))
}

fn shift_from_integral(p: &BetaParam, iv: &Interval, bound: f64, integral: f64) -> f64 {
    iv.len() * integral / (bound * p.measure(iv.a(), iv.b()))
}

/// `l = β(b - a) / (M [u(b) - u(a)]) ∫_a^b g d_βt` for `g` with values in `[0, M]`.
pub fn steffensen_l(p: &BetaParam, g: &FunctionModel, iv: &Interval, bound: f64, tol: f64) -> Result<f64> {
    let hyp = range_hypothesis(g, iv, bound)?;
    if !hyp.met {
        return Err(range_error(g, iv, bound, &hyp.report));
    }
    let ig = integrate_weighted(p, |t| g.eval(t), iv.a(), iv.b(), tol)?;
    Ok(shift_from_integral(p, iv, bound, ig.value))
}

fn range_error(g: &FunctionModel, iv: &Interval, bound: f64, report: &MonotonicityReport) -> Error {
    let bad = if report.min < 0.0 { report.min } else { report.max };
    let at = (0..=DEFAULT_GRID + 1)
        .map(|i| iv.a() + iv.len() * i as f64 / (DEFAULT_GRID + 1) as f64)
        .find(|&x| g.eval(x).map(|v| v == bad).unwrap_or(false))
        .unwrap_or(iv.a());
    Error::RangeViolation { bound, at, value: bad }
}

/// `∫_{b-l}^b M d_βt <= ∫_a^b g d_βt <= ∫_a^{a+l} M d_βt`.
pub fn check_lemma_bounds(
    p: &BetaParam,
    g: &FunctionModel,
    iv: &Interval,
    bound: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let hyp = range_hypothesis(g, iv, bound)?;
    if !hyp.met {
        return Err(range_error(g, iv, bound, &hyp.report));
    }
    let ig = integrate_weighted(p, |t| g.eval(t), iv.a(), iv.b(), tol)?;
    let l = shift_from_integral(p, iv, bound, ig.value);
    let lc = l.clamp(0.0, iv.len());
    let lhs = bound * p.measure(iv.b() - lc, iv.b());
    let rhs = bound * p.measure(iv.a(), iv.a() + lc);
    Ok(InequalityReport::new(
        "lemma_bounds",
        (lhs, ig.value, rhs),
        vec![hyp],
        Some(l),
        ig.evaluations,
    ))
}

struct SteffensenTerms {
    head: f64,
    tail: f64,
    product: f64,
    l: f64,
    evaluations: usize,
}

/// `M ∫_a^{a+l} f`, `M ∫_{b-l}^b f` and `∫ f g`, with `l` computed from `g`.
fn steffensen_terms(
    p: &BetaParam,
    f: &FunctionModel,
    g: &FunctionModel,
    iv: &Interval,
    bound: f64,
    tol: f64,
) -> Result<SteffensenTerms> {
    let ig = integrate_weighted(p, |t| g.eval(t), iv.a(), iv.b(), tol)?;
    let l = shift_from_integral(p, iv, bound, ig.value);
    let lc = l.clamp(0.0, iv.len());
    let fv = |t: f64| f.eval(t);
    let head = integrate_weighted(p, fv, iv.a(), iv.a() + lc, tol)?;
    let tail = integrate_weighted(p, fv, iv.b() - lc, iv.b(), tol)?;
    let product = integrate_weighted(p, |t| Ok(f.eval(t)? * g.eval(t)?), iv.a(), iv.b(), tol)?;
    Ok(SteffensenTerms {
        head: bound * head.value,
        tail: bound * tail.value,
        product: product.value,
        l,
        evaluations: ig.evaluations + head.evaluations + tail.evaluations + product.evaluations,
    })
}

/// `M ∫_{b-l}^b f d_β <= ∫_a^b f g d_β <= M ∫_a^{a+l} f d_β` for `f` nonnegative
/// and nonincreasing, `0 <= g <= M`, `l` from `g`.
pub fn check_steffensen(
    p: &BetaParam,
    f: &FunctionModel,
    g: &FunctionModel,
    iv: &Interval,
    bound: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let fr = check_monotone_sign(f, iv, DEFAULT_GRID)?;
    let hyps = vec![
        Hypothesis::new(
            format!("{} nonnegative and nonincreasing", f.name()),
            fr,
            fr.nonnegative && fr.nonincreasing,
        ),
        range_hypothesis(g, iv, bound)?,
    ];
    let terms = steffensen_terms(p, f, g, iv, bound, tol)?;
    Ok(InequalityReport::new(
        "steffensen",
        (terms.tail, terms.product, terms.head),
        hyps,
        Some(terms.l),
        terms.evaluations,
    ))
}

/// The reversed chain `M ∫_a^{a+l} f <= ∫ f g <= M ∫_{b-l}^b f` for `f`
/// nonpositive and nondecreasing.
pub fn check_steffensen_reversed(
    p: &BetaParam,
    f: &FunctionModel,
    g: &FunctionModel,
    iv: &Interval,
    bound: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let fr = check_monotone_sign(f, iv, DEFAULT_GRID)?;
    let hyps = vec![
        Hypothesis::new(
            format!("{} nonpositive and nondecreasing", f.name()),
            fr,
            fr.nonpositive && fr.nondecreasing,
        ),
        range_hypothesis(g, iv, bound)?,
    ];
    let terms = steffensen_terms(p, f, g, iv, bound, tol)?;
    Ok(InequalityReport::new(
        "steffensen_reversed",
        (terms.head, terms.product, terms.tail),
        hyps,
        Some(terms.l),
        terms.evaluations,
    ))
}

fn derivative_report(p: &BetaParam, f: &FunctionModel, k: usize, iv: &Interval) -> Result<MonotonicityReport> {
    sample_monotone_sign(|x| beta_derivative(p, f, k, x), iv, DEFAULT_GRID)
}

struct TaylorSteffensenTerms {
    head: f64,
    tail: f64,
    mid: f64,
    l: f64,
    evaluations: usize,
}

/// `D^{nβ}f(a+l) - D^{nβ}f(a)`, `D^{nβ}f(b) - D^{nβ}f(b-l)` and
/// `(n+1)! β^{n+1} [u(b) - u(a)]^{-n-1} ∫_a^b R_n(a, τ) d_βτ`, `l = (b-a)/(n+2)`.
fn taylor_steffensen_terms(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    n: usize,
    tol: f64,
) -> Result<TaylorSteffensenTerms> {
    let l = iv.len() / (n as f64 + 2.0);
    let d = |x: f64| beta_derivative(p, f, n, x);
    let head = d(iv.a() + l)? - d(iv.a())?;
    let tail = d(iv.b())? - d(iv.b() - l)?;

    let m = n as i32 + 1;
    let scale = factorial(n + 1) * p.beta().powi(m) * p.clock_diff(iv.a(), iv.b()).powi(-m);
    let outer_tol = tol / scale.max(1.0);
    let inner_tol = outer_tol / 10.0;
    let inner_evals = Cell::new(0usize);
    let outer = integrate_weighted(
        p,
        |tau| {
            let r = integral_remainder(p, f, iv.a(), n, tau, inner_tol)?;
            inner_evals.set(inner_evals.get() + r.evaluations);
            Ok(r.value)
        },
        iv.a(),
        iv.b(),
        outer_tol,
    )?;
    Ok(TaylorSteffensenTerms {
        head,
        tail,
        mid: scale * outer.value,
        l,
        evaluations: outer.evaluations + inner_evals.get() + 4,
    })
}

/// `D^{nβ}f(a+l) - D^{nβ}f(a) <= (n+1)! β^{n+1} [u(b)-u(a)]^{-n-1} ∫_a^b R_n(a,τ) d_βτ
/// <= D^{nβ}f(b) - D^{nβ}f(b-l)` when `D^{(n+1)β}f` is nondecreasing and
/// `D^{nβ}f` nonincreasing.
pub fn check_taylor_steffensen(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    n: usize,
    tol: f64,
) -> Result<InequalityReport> {
    let upper = derivative_report(p, f, n + 1, iv)?;
    let lower = derivative_report(p, f, n, iv)?;
    let hyps = vec![
        Hypothesis::new(format!("D^{}β f nondecreasing", n + 1), upper, upper.nondecreasing),
        Hypothesis::new(format!("D^{n}β f nonincreasing"), lower, lower.nonincreasing),
    ];
    let t = taylor_steffensen_terms(p, f, iv, n, tol)?;
    Ok(InequalityReport::new(
        "taylor_steffensen",
        (t.head, t.mid, t.tail),
        hyps,
        Some(t.l),
        t.evaluations,
    ))
}

/// Reversed Taylor–Steffensen chain for `D^{(n+1)β}f` nonincreasing and
/// `D^{nβ}f` nondecreasing.
pub fn check_taylor_steffensen_reversed(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    n: usize,
    tol: f64,
) -> Result<InequalityReport> {
    let upper = derivative_report(p, f, n + 1, iv)?;
    let lower = derivative_report(p, f, n, iv)?;
    let hyps = vec![
        Hypothesis::new(format!("D^{}β f nonincreasing", n + 1), upper, upper.nonincreasing),
        Hypothesis::new(format!("D^{n}β f nondecreasing"), lower, lower.nondecreasing),
    ];
    let t = taylor_steffensen_terms(p, f, iv, n, tol)?;
    Ok(InequalityReport::new(
        "taylor_steffensen_reversed",
        (t.tail, t.mid, t.head),
        hyps,
        Some(t.l),
        t.evaluations,
    ))
}

/// `(f(m), weighted mean of f, f(a) + f(b) - f(m))` with `m` the midpoint.
fn hermite_hadamard_terms(p: &BetaParam, f: &FunctionModel, iv: &Interval, tol: f64) -> Result<(f64, f64, f64, usize)> {
    let fm = f.eval(iv.midpoint())?;
    let ends = f.eval(iv.a())? + f.eval(iv.b())? - fm;
    let integral = integrate_weighted(p, |t| f.eval(t), iv.a(), iv.b(), tol)?;
    let mean = integral.value / p.measure(iv.a(), iv.b());
    Ok((fm, mean, ends, integral.evaluations + 3))
}

/// `f((a+b)/2) <= β/[u(b)-u(a)] ∫_a^b f d_β <= f(a) + f(b) - f((a+b)/2)` when
/// `D^β f` is nondecreasing and `f` nonincreasing.
pub fn check_hermite_hadamard(p: &BetaParam, f: &FunctionModel, iv: &Interval, tol: f64) -> Result<InequalityReport> {
    let dr = derivative_report(p, f, 1, iv)?;
    let fr = check_monotone_sign(f, iv, DEFAULT_GRID)?;
    let hyps = vec![
        Hypothesis::new("D^β f nondecreasing", dr, dr.nondecreasing),
        Hypothesis::new(format!("{} nonincreasing", f.name()), fr, fr.nonincreasing),
    ];
    let (fm, mean, ends, evals) = hermite_hadamard_terms(p, f, iv, tol)?;
    Ok(InequalityReport::new(
        "hermite_hadamard",
        (fm, mean, ends),
        hyps,
        None,
        evals,
    ))
}

/// Reversed Hermite–Hadamard chain for `D^β f` nonincreasing and `f` nondecreasing.
pub fn check_hermite_hadamard_reversed(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    tol: f64,
) -> Result<InequalityReport> {
    let dr = derivative_report(p, f, 1, iv)?;
    let fr = check_monotone_sign(f, iv, DEFAULT_GRID)?;
    let hyps = vec![
        Hypothesis::new("D^β f nonincreasing", dr, dr.nonincreasing),
        Hypothesis::new(format!("{} nondecreasing", f.name()), fr, fr.nondecreasing),
    ];
    let (fm, mean, ends, evals) = hermite_hadamard_terms(p, f, iv, tol)?;
    Ok(InequalityReport::new(
        "hermite_hadamard_reversed",
        (ends, mean, fm),
        hyps,
        None,
        evals,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Expr;

    fn bp(b: f64) -> BetaParam {
        BetaParam::new(b).unwrap()
    }

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn one_minus_t() -> FunctionModel {
        FunctionModel::new("1-t", Expr::constant(1.0) - Expr::var())
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn monotone_sign_classification() {
        let r = check_monotone_sign(&FunctionModel::exp_neg(), &unit(), 64).unwrap();
        assert_eq!(r.direction(), Direction::Nonincreasing);
        assert_eq!(r.sign(), Sign::Nonnegative);
        assert_eq!(r.witness, None);
        assert_eq!(r.samples, 66);

        let shifted = FunctionModel::new("t-0.5", Expr::var() - Expr::constant(0.5));
        let r = check_monotone_sign(&shifted, &unit(), 64).unwrap();
        assert_eq!(r.sign(), Sign::Mixed);
        assert_eq!(r.witness, Some((0.0, 1.0)));
        assert_eq!(r.direction(), Direction::Nondecreasing);

        let r = check_monotone_sign(&FunctionModel::constant(0.0), &unit(), 64).unwrap();
        assert!(r.nonincreasing && r.nondecreasing && r.nonnegative);
        assert_eq!(r.direction(), Direction::Constant);

        let bump = FunctionModel::new("bump", (Expr::var() * Expr::constant(3.0)).sin());
        let r = check_monotone_sign(&bump, &unit(), 64).unwrap();
        assert_eq!(r.direction(), Direction::Neither);
        let (x0, x1) = r.witness.unwrap();
        assert!(x0 < x1 && x0 > 0.45 && x0 < 0.6);

        assert!(check_monotone_sign(&bump, &unit(), 8).is_err());
    }

    #[test]
    fn shift_examples() {
        let iv = Interval::new(0.5, 2.0).unwrap();
        for &b in &[0.2, 0.7, 1.0] {
            let l = steffensen_l(&bp(b), &FunctionModel::constant(2.0), &iv, 2.0, 1e-12).unwrap();
            assert!(close(l, 1.5, 1e-12));
            let l = steffensen_l(&bp(b), &FunctionModel::constant(0.0), &iv, 2.0, 1e-12).unwrap();
            assert_eq!(l, 0.0);
        }
        let l = steffensen_l(&bp(1.0), &FunctionModel::identity(), &unit(), 1.0, 1e-12).unwrap();
        assert!(close(l, 0.5, 1e-13));
        let err = steffensen_l(&bp(1.0), &FunctionModel::identity(), &iv, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::RangeViolation { value, .. } if value == 2.0));
    }

    #[test]
    fn lemma_bounds_examples() {
        let r = check_lemma_bounds(&bp(0.5), &FunctionModel::constant(1.5), &unit(), 1.5, 1e-12).unwrap();
        assert!(close(r.lhs, r.mid, 1e-12) && close(r.mid, r.rhs, 1e-12));
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_lemma_bounds(&bp(1.0), &FunctionModel::identity(), &unit(), 1.0, 1e-12).unwrap();
        for v in [r.lhs, r.mid, r.rhs] {
            assert!(close(v, 0.5, 1e-12));
        }

        let r = check_lemma_bounds(&bp(0.5), &FunctionModel::identity(), &unit(), 1.0, 1e-12).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.margin_left > 1e-3 && r.margin_right > 1e-3);
        let l = r.l_value.unwrap();
        assert!((0.0..=1.0).contains(&l));
    }

    #[test]
    fn steffensen_classical_cell() {
        let r = check_steffensen(
            &bp(1.0),
            &one_minus_t(),
            &FunctionModel::identity(),
            &unit(),
            1.0,
            1e-12,
        )
        .unwrap();
        assert!(close(r.lhs, 0.125, 1e-12));
        assert!(close(r.mid, 1.0 / 6.0, 1e-12));
        assert!(close(r.rhs, 0.375, 1e-12));
        assert_eq!(r.verdict, Verdict::Holds);

        let rev = check_steffensen_reversed(
            &bp(1.0),
            &one_minus_t().negated(),
            &FunctionModel::identity(),
            &unit(),
            1.0,
            1e-12,
        )
        .unwrap();
        assert!(close(rev.lhs, -0.375, 1e-12));
        assert!(close(rev.mid, -1.0 / 6.0, 1e-12));
        assert!(close(rev.rhs, -0.125, 1e-12));
        assert_eq!(rev.verdict, Verdict::Holds);
    }

    #[test]
    fn steffensen_degenerate_weights() {
        let f = FunctionModel::exp_neg();
        let p = bp(0.3);
        let r = check_steffensen(&p, &f, &FunctionModel::constant(2.0), &unit(), 2.0, 1e-12).unwrap();
        assert!(close(r.l_value.unwrap(), 1.0, 1e-12));
        assert!(close(r.lhs, r.mid, 1e-11) && close(r.mid, r.rhs, 1e-11));
        let r = check_steffensen(&p, &f, &FunctionModel::constant(0.0), &unit(), 1.0, 1e-12).unwrap();
        assert_eq!((r.lhs, r.mid, r.rhs), (0.0, 0.0, 0.0));
        let r = check_steffensen_reversed(&p, &FunctionModel::constant(0.0), &f, &unit(), 1.0, 1e-12).unwrap();
        assert_eq!((r.lhs, r.mid, r.rhs), (0.0, 0.0, 0.0));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn steffensen_hypotheses_are_enforced() {
        let r = check_steffensen(
            &bp(1.0),
            &FunctionModel::identity(),
            &FunctionModel::exp_neg(),
            &unit(),
            1.0,
            1e-12,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
        let r = check_steffensen(
            &bp(1.0),
            &FunctionModel::exp_neg(),
            &FunctionModel::identity(),
            &unit(),
            0.5,
            1e-12,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn taylor_steffensen_exp_neg_cell() {
        let r = check_taylor_steffensen(&bp(1.0), &FunctionModel::exp_neg(), &unit(), 0, 1e-12).unwrap();
        let e = std::f64::consts::E;
        assert!(close(r.lhs, (-0.5f64).exp() - 1.0, 1e-12));
        assert!(close(r.mid, -1.0 / e, 1e-11));
        assert!(close(r.rhs, 1.0 / e - (-0.5f64).exp(), 1e-12));
        assert_eq!(r.l_value, Some(0.5));
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_taylor_steffensen(&bp(0.6), &FunctionModel::constant(2.0), &unit(), 2, 1e-12).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.mid.abs() < 1e-15);
    }

    #[test]
    fn taylor_steffensen_reversed_log() {
        let f = FunctionModel::new("log1p", (Expr::constant(1.0) + Expr::var()).ln());
        let r = check_taylor_steffensen_reversed(&bp(1.0), &f, &unit(), 0, 1e-12).unwrap();
        assert!(close(r.lhs, 2f64.ln() - 1.5f64.ln(), 1e-12));
        assert!(close(r.mid, 2.0 * 2f64.ln() - 1.0, 1e-11));
        assert!(close(r.rhs, 1.5f64.ln(), 1e-12));
        assert_eq!(r.verdict, Verdict::Holds);

        let neg = FunctionModel::exp_neg().negated();
        let fwd = check_taylor_steffensen(&bp(1.0), &FunctionModel::exp_neg(), &unit(), 0, 1e-12).unwrap();
        let rev = check_taylor_steffensen_reversed(&bp(1.0), &neg, &unit(), 0, 1e-12).unwrap();
        assert!(close(rev.lhs, -fwd.rhs, 1e-12) && close(rev.mid, -fwd.mid, 1e-12) && close(rev.rhs, -fwd.lhs, 1e-12));
        assert_eq!(rev.verdict, Verdict::Holds);
    }

    #[test]
    fn hermite_hadamard_cells() {
        let r = check_hermite_hadamard(&bp(1.0), &FunctionModel::exp_neg(), &unit(), 1e-12).unwrap();
        let e = std::f64::consts::E;
        let h = (-0.5f64).exp();
        assert!(close(r.lhs, h, 1e-12) && close(r.mid, 1.0 - 1.0 / e, 1e-12) && close(r.rhs, 1.0 + 1.0 / e - h, 1e-12));
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_hermite_hadamard(&bp(0.4), &FunctionModel::constant(1.7), &unit(), 1e-12).unwrap();
        assert!(close(r.lhs, 1.7, 1e-14) && close(r.mid, 1.7, 1e-12) && close(r.rhs, 1.7, 1e-14));

        let f = FunctionModel::new("log1p", (Expr::constant(1.0) + Expr::var()).ln());
        let r = check_hermite_hadamard_reversed(&bp(1.0), &f, &unit(), 1e-12).unwrap();
        assert!(close(r.lhs, 2f64.ln() - 1.5f64.ln(), 1e-12));
        assert!(close(r.mid, 2.0 * 2f64.ln() - 1.0, 1e-12));
        assert!(close(r.rhs, 1.5f64.ln(), 1e-12));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn hermite_hadamard_beta_linear_negated() {
        for &b in &[0.1, 0.5, 0.9] {
            let p = bp(b);
            let f = FunctionModel::shifted_power(p.shift(), b).negated();
            let r = check_hermite_hadamard(&p, &f, &Interval::new(0.5, 2.0).unwrap(), 1e-12).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "beta {b}: {r:?}");
        }
    }
}
