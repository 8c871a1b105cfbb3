//! Beta-Taylor expansions and their remainders.
//!
//! Writing `u(t) = (t + 1/Γ(β))^β`, the degree-`n` expansion of `f` about `s` is
//!
//! ```text
//! P_n(t) = Σ_{k=0..n} β^{-k}/k! [u(t) - u(s)]^k D^{kβ} f(s)
//! R_n(s, t) = β^{-n}/n! ∫_s^t [u(t) - u(τ)]^n D^{(n+1)β} f(τ) d_βτ
//! ```
//!
//! and `f(t) = P_n(t) + R_n(s, t)` for either ordering of `s` and `t`.

use std::cell::Cell;

use crate::calculus::{beta_derivative, beta_derivatives, integrate_weighted, BetaParam, Interval, QuadratureResult};
use crate::error::{Error, Result};
use crate::jet::factorial;
use crate::model::FunctionModel;

/// Number of samples used to bracket a mean value point.
const SCAN_POINTS: usize = 64;
/// Below this spread of sampled values a function is treated as constant.
const FLAT_SPREAD: f64 = 1e-13;

/// Coefficients `β^{-k}/k! D^{kβ} f(s)`, `k = 0..=n`, of the expansion about `s`.
#[derive(Debug, Clone)]
pub struct TaylorExpansion {
    pub p: BetaParam,
    pub f: FunctionModel,
    pub s: f64,
    pub n: usize,
    pub coefficients: Vec<f64>,
}

impl TaylorExpansion {
    pub fn new(p: &BetaParam, f: &FunctionModel, s: f64, n: usize) -> Result<Self> {
        let derivs = beta_derivatives(p, f, n, s)?;
        let coefficients = derivs
            .iter()
            .enumerate()
            .map(|(k, d)| p.beta().powi(-(k as i32)) / factorial(k) * d)
            .collect::<Vec<_>>();
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteJet);
        }
        Ok(Self {
            p: *p,
            f: f.clone(),
            s,
            n,
            coefficients,
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeArgument(t));
        }
        let du = self.p.clock_diff(self.s, t);
        Ok(self.coefficients.iter().rev().fold(0.0, |acc, c| acc * du + c))
    }
}

/// Integral and mean-value forms of a remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderValue {
    pub integral_form: f64,
    pub lagrange_point: Option<f64>,
    pub lagrange_form: Option<f64>,
    pub evaluations: usize,
}

/// The two sides of a remainder-integral identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityPair {
    pub lhs: f64,
    pub rhs: f64,
    pub evaluations: usize,
}

impl IdentityPair {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

pub fn taylor_polynomial(p: &BetaParam, f: &FunctionModel, s: f64, n: usize, t: f64) -> Result<f64> {
    TaylorExpansion::new(p, f, s, n)?.eval(t)
}

/// `R_n(s, t)` by adaptive quadrature; exactly zero when `s == t`.
pub fn integral_remainder(
    p: &BetaParam,
    f: &FunctionModel,
    s: f64,
    n: usize,
    t: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if s < 0.0 || t < 0.0 {
        return Err(Error::NegativeArgument(s.min(t)));
    }
    if s == t {
        return Ok(QuadratureResult::zero());
    }
    let scale = p.beta().powi(-(n as i32)) / factorial(n);
    let r = integrate_weighted(
        p,
        |tau| {
            let d = beta_derivative(p, f, n + 1, tau)?;
            Ok(p.clock_diff(tau, t).powi(n as i32) * d)
        },
        s,
        t,
        tol / scale.max(1.0),
    )?;
    Ok(QuadratureResult {
        value: r.value * scale,
        error_estimate: r.error_estimate * scale,
        evaluations: r.evaluations,
    })
}

/// Locates `c` in `[lo, hi]` with `h(c) = 0` for continuous `h`, bracketing on
/// a uniform scan and then bisecting. Returns `None` when no sign change is
/// found; a flat `h` returns the midpoint.
fn scan_and_bisect<H>(h: H, lo: f64, hi: f64) -> Result<Option<f64>>
where
    H: Fn(f64) -> Result<f64>,
{
    let xs: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let hs = xs.iter().map(|&x| h(x)).collect::<Result<Vec<_>>>()?;
    let (min, max) = hs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let scale = hs.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if max - min < FLAT_SPREAD * scale {
        return Ok(Some(0.5 * (lo + hi)));
    }
    if let Some(i) = hs.iter().position(|&v| v == 0.0) {
        return Ok(Some(xs[i]));
    }
    let Some(i) = (0..SCAN_POINTS - 1).find(|&i| hs[i].signum() != hs[i + 1].signum()) else {
        return Ok(None);
    };
    let (mut a, mut b) = (xs[i], xs[i + 1]);
    let mut ha = hs[i];
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            break;
        }
        let hm = h(m)?;
        if hm == 0.0 {
            return Ok(Some(m));
        }
        if hm.signum() == ha.signum() {
            a = m;
            ha = hm;
        } else {
            b = m;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// The sample of `h` on the scan grid with the smallest magnitude.
fn best_scan_point<H>(h: H, lo: f64, hi: f64) -> Result<(f64, f64)>
where
    H: Fn(f64) -> Result<f64>,
{
    let mut best = (lo, f64::INFINITY);
    for i in 0..SCAN_POINTS {
        let x = lo + (hi - lo) * i as f64 / (SCAN_POINTS - 1) as f64;
        let v = h(x)?.abs();
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// Integral remainder together with its mean-value form
/// `D^{(n+1)β} f(c) · β^{-(n+1)}/(n+1)! · [u(t) - u(s)]^{n+1}`.
pub fn lagrange_remainder(
    p: &BetaParam,
    f: &FunctionModel,
    s: f64,
    n: usize,
    t: f64,
    tol: f64,
) -> Result<RemainderValue> {
    if s == t {
        return Ok(RemainderValue {
            integral_form: 0.0,
            lagrange_point: Some(s),
            lagrange_form: Some(0.0),
            evaluations: 0,
        });
    }
    let r = integral_remainder(p, f, s, n, t, tol)?;
    let m = n as i32 + 1;
    let factor = p.beta().powi(-m) / factorial(n + 1) * p.clock_diff(s, t).powi(m);
    let required = r.value / factor;
    let (lo, hi) = (s.min(t), s.max(t));
    let h = |c: f64| Ok(beta_derivative(p, f, n + 1, c)? - required);

    let c = match scan_and_bisect(h, lo, hi)? {
        Some(c) => c,
        None => {
            let (c, resid) = best_scan_point(h, lo, hi)?;
            if (resid * factor).abs() <= tol {
                c
            } else {
                return Err(Error::NoSignChange { lo, hi });
            }
        }
    };
    let form = beta_derivative(p, f, n + 1, c)? * factor;
    Ok(RemainderValue {
        integral_form: r.value,
        lagrange_point: Some(c),
        lagrange_form: Some(form),
        evaluations: r.evaluations + 2 * SCAN_POINTS,
    })
}

/// Result of the weighted integral mean value search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValue {
    pub point: f64,
    pub integral_fg: f64,
    pub integral_g: f64,
    pub evaluations: usize,
}

impl MeanValue {
    /// `|∫fg d_β - f(c) ∫g d_β|`.
    pub fn residual(&self, f: &FunctionModel) -> Result<f64> {
        Ok((self.integral_fg - f.eval(self.point)? * self.integral_g).abs())
    }
}

/// Finds `c ∈ [a, b]` with `∫fg d_β = f(c) ∫g d_β` for `g >= 0`.
pub fn mean_value_search(
    p: &BetaParam,
    f: &FunctionModel,
    g: &FunctionModel,
    iv: &Interval,
    tol: f64,
) -> Result<MeanValue> {
    let inner = tol * 1e-2;
    let ig = integrate_weighted(p, |t| g.eval(t), iv.a(), iv.b(), inner)?;
    let ifg = integrate_weighted(p, |t| Ok(f.eval(t)? * g.eval(t)?), iv.a(), iv.b(), inner)?;
    let evaluations = ig.evaluations + ifg.evaluations;
    let result = |point| MeanValue {
        point,
        integral_fg: ifg.value,
        integral_g: ig.value,
        evaluations: evaluations + 2 * SCAN_POINTS,
    };
    if ig.value.abs() <= tol {
        return Ok(result(iv.a()));
    }
    let target = ifg.value / ig.value;
    let h = |c: f64| Ok(f.eval(c)? - target);
    if let Some(c) = scan_and_bisect(h, iv.a(), iv.b())? {
        return Ok(result(c));
    }
    let (c, resid) = best_scan_point(h, iv.a(), iv.b())?;
    if resid * ig.value.abs() <= tol * (1.0 + ifg.value.abs()) {
        Ok(result(c))
    } else {
        Err(Error::NoSignChange { lo: iv.a(), hi: iv.b() })
    }
}

pub fn mean_value_point(p: &BetaParam, f: &FunctionModel, g: &FunctionModel, iv: &Interval, tol: f64) -> Result<f64> {
    mean_value_search(p, f, g, iv, tol).map(|m| m.point)
}

/// Both sides of
/// `∫_a^b β^{-n-1}/(n+1)! [u(t) - u(τ)]^{n+1} D^{(n+1)β} f(τ) d_βτ
///   = ∫_a^t R_n(a, τ) d_βτ + ∫_t^b R_n(b, τ) d_βτ`.
///
/// The inner remainders are computed at a tenth of the outer tolerance.
pub fn remainder_integral_identity(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    t: f64,
    n: usize,
    tol: f64,
) -> Result<IdentityPair> {
    if !iv.contains(t) {
        return Err(Error::PointOutsideInterval {
            t,
            a: iv.a(),
            b: iv.b(),
        });
    }
    let m = n as i32 + 1;
    let scale = p.beta().powi(-m) / factorial(n + 1);
    let lhs = integrate_weighted(
        p,
        |tau| Ok(p.clock_diff(tau, t).powi(m) * beta_derivative(p, f, n + 1, tau)?),
        iv.a(),
        iv.b(),
        tol / scale.max(1.0),
    )?;

    let inner_evals = Cell::new(0usize);
    let inner_tol = tol / 10.0;
    let remainder_from = |base: f64| {
        let evals = &inner_evals;
        move |tau: f64| -> Result<f64> {
            let r = integral_remainder(p, f, base, n, tau, inner_tol)?;
            evals.set(evals.get() + r.evaluations);
            Ok(r.value)
        }
    };
    let left = integrate_weighted(p, remainder_from(iv.a()), iv.a(), t, tol)?;
    let right = integrate_weighted(p, remainder_from(iv.b()), t, iv.b(), tol)?;
    Ok(IdentityPair {
        lhs: lhs.value * scale,
        rhs: left.value + right.value,
        evaluations: lhs.evaluations + left.evaluations + right.evaluations + inner_evals.get(),
    })
}

/// The `t = a` and `t = b` specializations of [`remainder_integral_identity`]:
/// the first pair compares the `[u(a) - u(τ)]` form with `∫_a^b R_n(b, τ) d_βτ`,
/// the second the `[u(b) - u(τ)]` form with `∫_a^b R_n(a, τ) d_βτ`.
pub fn corollary_identities(
    p: &BetaParam,
    f: &FunctionModel,
    iv: &Interval,
    n: usize,
    tol: f64,
) -> Result<(IdentityPair, IdentityPair)> {
    Ok((
        remainder_integral_identity(p, f, iv, iv.a(), n, tol)?,
        remainder_integral_identity(p, f, iv, iv.b(), n, tol)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Expr;
    use std::f64::consts::E;

    fn bp(b: f64) -> BetaParam {
        BetaParam::new(b).unwrap()
    }

    fn square() -> FunctionModel {
        FunctionModel::new("t^2", Expr::var() * Expr::var())
    }

    #[test]
    fn classical_polynomial_cases() {
        let p = bp(1.0);
        for &t in &[0.0, 0.3, 1.0, 2.5] {
            assert!((taylor_polynomial(&p, &square(), 0.0, 2, t).unwrap() - t * t).abs() < 1e-14);
        }
        assert_eq!(taylor_polynomial(&p, &square(), 0.0, 1, 1.0).unwrap(), 0.0);
        let r = integral_remainder(&p, &square(), 0.0, 1, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expansion_coefficient_zero_is_f_of_s() {
        let f = FunctionModel::exp_neg();
        let e = TaylorExpansion::new(&bp(0.3), &f, 0.8, 4).unwrap();
        assert_eq!(e.coefficients.len(), 5);
        assert_eq!(e.coefficients[0], f.eval(0.8).unwrap());
    }

    #[test]
    fn beta_linear_function_is_reproduced_by_degree_one() {
        for &b in &[0.1, 0.5, 0.75, 1.0] {
            let p = bp(b);
            let f = FunctionModel::shifted_power(p.shift(), b);
            for &(s, t) in &[(0.0, 1.0), (2.0, 0.5), (1.0, 3.0)] {
                let poly = taylor_polynomial(&p, &f, s, 1, t).unwrap();
                assert!((poly - f.eval(t).unwrap()).abs() <= 1e-12);
                assert!(integral_remainder(&p, &f, s, 1, t, 1e-12).unwrap().value.abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn reconstruction_both_orientations() {
        let p = bp(0.5);
        let f = FunctionModel::exp_neg();
        for &(s, t) in &[(0.0, 1.0), (1.0, 0.0), (0.5, 2.0), (3.0, 1.2)] {
            for n in [0, 2, 5] {
                let poly = taylor_polynomial(&p, &f, s, n, t).unwrap();
                let r = integral_remainder(&p, &f, s, n, t, 1e-12).unwrap();
                assert!((f.eval(t).unwrap() - poly - r.value).abs() < 1e-10, "s={s} t={t} n={n}");
            }
        }
    }

    #[test]
    fn degenerate_expansion_point() {
        let p = bp(0.4);
        let f = FunctionModel::exp_neg();
        let r = lagrange_remainder(&p, &f, 0.7, 3, 0.7, 1e-10).unwrap();
        assert_eq!(r.integral_form, 0.0);
        assert_eq!(r.lagrange_point, Some(0.7));
        assert_eq!(r.lagrange_form, Some(0.0));
    }

    #[test]
    fn lagrange_examples() {
        let r = lagrange_remainder(&bp(1.0), &square(), 0.0, 1, 1.0, 1e-10).unwrap();
        assert!((r.lagrange_form.unwrap() - 1.0).abs() < 1e-13);
        let c = r.lagrange_point.unwrap();
        assert!((0.0..=1.0).contains(&c));

        let r = lagrange_remainder(&bp(1.0), &FunctionModel::exp(), 0.0, 0, 1.0, 1e-12).unwrap();
        assert!((r.lagrange_point.unwrap() - (E - 1.0).ln()).abs() < 1e-10);
        assert!((r.lagrange_form.unwrap() - (E - 1.0)).abs() < 1e-12);

        let p = bp(0.6);
        let f = FunctionModel::shifted_power(p.shift(), 0.6);
        let r = lagrange_remainder(&p, &f, 0.2, 0, 1.4, 1e-12).unwrap();
        let du = p.clock(1.4) - p.clock(0.2);
        assert!((r.lagrange_form.unwrap() - du).abs() < 1e-12);
    }

    #[test]
    fn mean_value_examples() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let c = mean_value_point(
            &bp(1.0),
            &FunctionModel::identity(),
            &FunctionModel::constant(1.0),
            &iv,
            1e-10,
        )
        .unwrap();
        assert!((c - 0.5).abs() < 1e-12);

        let k = FunctionModel::constant(2.5);
        let g = FunctionModel::exp_neg();
        let m = mean_value_search(&bp(0.3), &k, &g, &iv, 1e-10).unwrap();
        assert!(m.residual(&k).unwrap() <= 1e-10);

        let zero = FunctionModel::constant(0.0);
        assert_eq!(mean_value_point(&bp(0.3), &g, &zero, &iv, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn identity_examples() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let pair = remainder_integral_identity(&bp(1.0), &square(), &iv, 0.5, 0, 1e-10).unwrap();
        assert!((pair.lhs + 1.0 / 6.0).abs() < 1e-12);
        assert!(pair.discrepancy() < 1e-9);

        let (at_a, at_b) = corollary_identities(&bp(1.0), &FunctionModel::identity(), &iv, 0, 1e-10).unwrap();
        assert!((at_b.lhs - 0.5).abs() < 1e-12 && (at_b.rhs - 0.5).abs() < 1e-12);
        assert!((at_a.lhs + 0.5).abs() < 1e-12 && (at_a.rhs + 0.5).abs() < 1e-12);

        let (at_a, at_b) = corollary_identities(&bp(0.4), &FunctionModel::constant(3.0), &iv, 1, 1e-10).unwrap();
        for v in [at_a.lhs, at_a.rhs, at_b.lhs, at_b.rhs] {
            assert_eq!(v, 0.0);
        }
        assert!(remainder_integral_identity(&bp(1.0), &square(), &iv, 1.5, 0, 1e-10).is_err());
    }

    #[test]
    fn additivity_base_case() {
        // The degree -1 statement: the beta-integral is additive over [a, t] ∪ [t, b].
        let p = bp(0.45);
        let f = FunctionModel::exp_neg();
        let whole = crate::calculus::beta_integral_between(&p, &f, 0.5, 2.0, 1e-12)
            .unwrap()
            .value;
        let left = crate::calculus::beta_integral_between(&p, &f, 0.5, 1.1, 1e-12)
            .unwrap()
            .value;
        let right = crate::calculus::beta_integral_between(&p, &f, 1.1, 2.0, 1e-12)
            .unwrap()
            .value;
        assert!((whole - left - right).abs() < 1e-12);
    }
}
