//! Function models: expression trees that evaluate either to a plain `f64`
//! or to a [`Jet`] of any order, built from polynomials, `exp`, `log`,
//! `sin`, `cos`, reciprocals and real powers.

use std::fmt;
use std::ops;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Elementary, Jet};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Apply(Elementary, Box<Expr>),
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn powf(self, p: f64) -> Expr {
        Expr::Pow(Box::new(self), p)
    }

    pub fn exp(self) -> Expr {
        Expr::Apply(Elementary::Exp, Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Apply(Elementary::Log, Box::new(self))
    }

    pub fn sin(self) -> Expr {
        Expr::Apply(Elementary::Sin, Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Apply(Elementary::Cos, Box::new(self))
    }

    pub fn recip(self) -> Expr {
        Expr::Apply(Elementary::Reciprocal, Box::new(self))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Pow(a, p) => {
                let base = a.eval(x);
                if base > 0.0 {
                    base.powf(*p)
                } else {
                    f64::NAN
                }
            }
            Expr::Apply(kind, a) => {
                let v = a.eval(x);
                match kind {
                    Elementary::Exp => v.exp(),
                    Elementary::Log if v > 0.0 => v.ln(),
                    Elementary::Log => f64::NAN,
                    Elementary::Sin => v.sin(),
                    Elementary::Cos => v.cos(),
                    Elementary::Negate => -v,
                    Elementary::Reciprocal => 1.0 / v,
                }
            }
        }
    }

    pub fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        match self {
            Expr::Const(c) => Jet::constant(x, *c, order),
            Expr::Var => Jet::variable(x, order),
            Expr::Add(a, b) => a.jet(x, order)?.add(&b.jet(x, order)?),
            Expr::Sub(a, b) => a.jet(x, order)?.sub(&b.jet(x, order)?),
            Expr::Mul(a, b) => a.jet(x, order)?.mul(&b.jet(x, order)?),
            Expr::Pow(a, p) => a.jet(x, order)?.powf(*p),
            Expr::Apply(kind, a) => a.jet(x, order)?.compose(*kind),
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Apply(Elementary::Negate, Box::new(self))
    }
}

/// A named scalar function on `[0, ∞)` (or a sub-range of it) able to produce
/// jets of any supported order.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionModel {
    name: String,
    expr: Arc<Expr>,
    domain: Option<(f64, f64)>,
}

impl FunctionModel {
    pub fn new(name: impl Into<String>, expr: Expr) -> Self {
        Self {
            name: name.into(),
            expr: Arc::new(expr),
            domain: None,
        }
    }

    /// Restricts evaluation to the closed range `[lo, hi]`.
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        self.domain
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::NegativeArgument(x));
        }
        if let Some((lo, hi)) = self.domain {
            if x < lo || x > hi {
                return Err(Error::OutsideDomain {
                    name: self.name.clone(),
                    x,
                });
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        let v = self.expr.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::OutsideDomain {
                name: self.name.clone(),
                x,
            })
        }
    }

    pub fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        self.check_point(x)?;
        self.expr.jet(x, order).map_err(|e| match e {
            Error::JetDomain { .. } | Error::NonFiniteJet => Error::OutsideDomain {
                name: self.name.clone(),
                x,
            },
            other => other,
        })
    }

    /// `-f`, named `neg(name)`.
    pub fn negated(&self) -> FunctionModel {
        FunctionModel {
            name: format!("neg({})", self.name),
            expr: Arc::new(-(*self.expr).clone()),
            domain: self.domain,
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(format!("const({value})"), Expr::Const(value))
    }

    pub fn identity() -> Self {
        Self::new("t", Expr::Var)
    }

    pub fn exp() -> Self {
        Self::new("exp", Expr::Var.exp())
    }

    pub fn exp_neg() -> Self {
        Self::new("exp_neg", (-Expr::Var).exp())
    }

    /// `(t + shift)^p`.
    pub fn shifted_power(shift: f64, p: f64) -> Self {
        Self::new(format!("(t+{shift})^{p}"), (Expr::Var + Expr::Const(shift)).powf(p))
    }
}

impl fmt::Display for FunctionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
