//! The beta-derivative and beta-integral.
//!
//! With shift `c = 1/Γ(β)` and weight `w(t) = (t + c)^(β-1)`:
//!
//! * `D^β f(x) = (x + c)^(1-β) f'(x)`
//! * `∫_a^b f(t) d_βt = ∫_a^b w(t) f(t) dt`
//!
//! so that `∫_a^b D^β f d_βt = f(b) - f(a)`. Iterated derivatives are taken on
//! jets, never by nested finite differences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::model::FunctionModel;
use crate::quadrature;
pub use crate::quadrature::QuadratureResult;
use crate::special::gamma;

/// Default absolute tolerance for inner quadratures.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The order `β ∈ (0, 1]` together with its shift `1/Γ(β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BetaParam {
    beta: f64,
    shift: f64,
}

impl BetaParam {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidBeta(beta));
        }
        let shift = 1.0 / gamma(beta)?;
        Ok(Self { beta, shift })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `1/Γ(β)`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `u(t) = (t + c)^β`, the variable in which the beta-calculus is classical.
    pub fn clock(&self, t: f64) -> f64 {
        (t + self.shift).powf(self.beta)
    }

    /// `u(hi) - u(lo)`, evaluated without forming the two powers separately
    /// when the points are close.
    pub fn clock_diff(&self, lo: f64, hi: f64) -> f64 {
        if lo == hi {
            return 0.0;
        }
        let x = lo + self.shift;
        let ratio = (hi - lo) / x;
        if ratio.abs() < 0.5 {
            // (x + h)^β - x^β = x^β (exp(β ln(1 + h/x)) - 1)
            x.powf(self.beta) * (self.beta * ratio.ln_1p()).exp_m1()
        } else {
            self.clock(hi) - self.clock(lo)
        }
    }

    /// `∫_lo^hi 1 d_βt`.
    pub fn measure(&self, lo: f64, hi: f64) -> f64 {
        self.clock_diff(lo, hi) / self.beta
    }
}

impl TryFrom<f64> for BetaParam {
    type Error = Error;
    fn try_from(beta: f64) -> Result<Self> {
        Self::new(beta)
    }
}

impl From<BetaParam> for f64 {
    fn from(p: BetaParam) -> f64 {
        p.beta
    }
}

/// A closed interval `[a, b]` with `0 <= a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a >= 0.0 && a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval(a, b))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.a && t <= self.b
    }

    /// `count` equally spaced interior points.
    pub fn interior_points(&self, count: usize) -> Vec<f64> {
        (1..=count)
            .map(|i| self.a + self.len() * i as f64 / (count + 1) as f64)
            .collect()
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> [f64; 2] {
        [iv.a, iv.b]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

fn check_nonnegative(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeArgument(t))
    }
}

/// `w(t) = (t + 1/Γ(β))^(β-1)`.
pub fn weight(p: &BetaParam, t: f64) -> Result<f64> {
    check_nonnegative(t)?;
    Ok((t + p.shift).powf(p.beta - 1.0))
}

/// Applies `D^β` `k` times to a jet of order at least `k`, returning
/// `[f(x), D^β f(x), ..., D^{kβ} f(x)]`.
pub fn beta_derivatives_of_jet(p: &BetaParam, f: &Jet, k: usize) -> Result<Vec<f64>> {
    if k > f.order() {
        return Err(Error::DerivativeOrder {
            requested: k,
            order: f.order(),
        });
    }
    let x = f.center();
    let mut out = Vec::with_capacity(k + 1);
    out.push(f.value());
    if k == 0 {
        return Ok(out);
    }
    let coweight = Jet::variable(x, k - 1)?.add_scalar(p.shift)?.powf(1.0 - p.beta)?;
    let mut g = f.truncate(k);
    for _ in 0..k {
        let dg = g.differentiate()?;
        g = coweight.truncate(dg.order()).mul(&dg)?;
        out.push(g.value());
    }
    Ok(out)
}

/// `[f(x), D^β f(x), ..., D^{kβ} f(x)]`.
pub fn beta_derivatives(p: &BetaParam, f: &FunctionModel, k: usize, x: f64) -> Result<Vec<f64>> {
    check_nonnegative(x)?;
    let jet = f.jet(x, k)?;
    beta_derivatives_of_jet(p, &jet, k)
}

/// `(D^β)^k f(x)`; `k = 0` returns `f(x)`.
pub fn beta_derivative(p: &BetaParam, f: &FunctionModel, k: usize, x: f64) -> Result<f64> {
    Ok(beta_derivatives(p, f, k, x)?[k])
}

/// `∫_lo^hi g(t) d_βt` for any integrand, in either orientation. Equal
/// limits give exactly zero with no evaluations.
pub fn integrate_weighted<G>(p: &BetaParam, mut g: G, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult>
where
    G: FnMut(f64) -> Result<f64>,
{
    check_nonnegative(lo.min(hi))?;
    let (c, e) = (p.shift, p.beta - 1.0);
    quadrature::integrate(|t| Ok((t + c).powf(e) * g(t)?), lo, hi, tol)
}

/// `∫_lo^hi f(t) d_βt` with orientation; `lo == hi` gives 0 with 0 evaluations.
pub fn beta_integral_between(p: &BetaParam, f: &FunctionModel, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_weighted(p, |t| f.eval(t), lo, hi, tol)
}

/// `∫_a^b f(t) d_βt`.
pub fn beta_integral(p: &BetaParam, f: &FunctionModel, iv: &Interval, tol: f64) -> Result<QuadratureResult> {
    beta_integral_between(p, f, iv.a, iv.b, tol)
}

/// Closed form of `∫_lo^hi [u(t_ref) - u(τ)]^n d_βτ`.
pub fn weighted_integral_of_power_between(p: &BetaParam, t_ref: f64, lo: f64, hi: f64, n: u32) -> f64 {
    let m = n as i32 + 1;
    let at_lo = p.clock_diff(lo, t_ref).powi(m);
    let at_hi = p.clock_diff(hi, t_ref).powi(m);
    (at_lo - at_hi) / (f64::from(m) * p.beta)
}

pub fn weighted_integral_of_power(p: &BetaParam, t_ref: f64, iv: &Interval, n: u32) -> f64 {
    weighted_integral_of_power_between(p, t_ref, iv.a, iv.b, n)
}
