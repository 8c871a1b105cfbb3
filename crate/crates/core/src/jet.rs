//! Truncated Taylor series ("jets") in one variable.
//!
//! A [`Jet`] of order `m` at `x0` stores the scaled coefficients
//! `f(x0), f'(x0), f''(x0)/2!, ..., f^(m)(x0)/m!`. Arithmetic and elementary
//! composition use the usual power-series recurrences, so derivatives of any
//! order come out exact up to rounding.

use crate::error::{Error, Result};

/// Highest jet order accepted by the constructors.
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: f64,
    coeffs: Vec<f64>,
}

/// Elementary functions that can be composed with a jet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log,
    Sin,
    Cos,
    Negate,
    Reciprocal,
}

impl Jet {
    pub fn new(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DerivativeOrder { requested: 0, order: 0 });
        }
        if coeffs.len() - 1 > MAX_ORDER {
            return Err(Error::JetOrderTooHigh(coeffs.len() - 1));
        }
        if !center.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteJet);
        }
        Ok(Self { center, coeffs })
    }

    fn checked(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteJet);
        }
        Ok(Self { center, coeffs })
    }

    fn check_order(order: usize) -> Result<()> {
        if order > MAX_ORDER {
            Err(Error::JetOrderTooHigh(order))
        } else {
            Ok(())
        }
    }

    /// The jet of a constant function.
    pub fn constant(center: f64, value: f64, order: usize) -> Result<Self> {
        Self::check_order(order)?;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self::new(center, coeffs)
    }

    /// The jet of the identity `x -> x` at `center`.
    pub fn variable(center: f64, order: usize) -> Result<Self> {
        Self::check_order(order)?;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = center;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Self::new(center, coeffs)
    }

    pub fn zero(center: f64, order: usize) -> Result<Self> {
        Self::constant(center, 0.0, order)
    }

    pub fn one(center: f64, order: usize) -> Result<Self> {
        Self::constant(center, 1.0, order)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn compatible(&self, other: &Jet) -> Result<()> {
        if self.center != other.center || self.order() != other.order() {
            return Err(Error::JetMismatch {
                left_center: self.center,
                left_order: self.order(),
                right_center: other.center,
                right_order: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self::checked(self.center, coeffs)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self::checked(self.center, coeffs)
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..a.len()).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect();
        Self::checked(self.center, coeffs)
    }

    pub fn scale(&self, factor: f64) -> Result<Jet> {
        Self::checked(self.center, self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add_scalar(&self, value: f64) -> Result<Jet> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += value;
        Self::checked(self.center, coeffs)
    }

    /// `a(x)^p` for a strictly positive leading coefficient.
    ///
    /// With `b = a^p`, `a b' = p a' b` gives
    /// `b_k = 1/(k a_0) * sum_{j=1..k} ((p + 1) j - k) a_j b_{k-j}`.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0] <= 0.0 {
            return Err(Error::JetDomain {
                op: "real power",
                value: a[0],
            });
        }
        if p == 0.0 {
            return Self::one(self.center, self.order());
        }
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].powf(p);
        for k in 1..a.len() {
            let kf = k as f64;
            let s: f64 = (1..=k).map(|j| ((p + 1.0) * j as f64 - kf) * a[j] * b[k - j]).sum();
            b[k] = s / (kf * a[0]);
        }
        Self::checked(self.center, b)
    }

    pub fn compose(&self, kind: Elementary) -> Result<Jet> {
        let a = &self.coeffs;
        let n = a.len();
        let coeffs = match kind {
            Elementary::Negate => a.iter().map(|c| -c).collect(),
            Elementary::Exp => {
                let mut b = vec![0.0; n];
                b[0] = a[0].exp();
                for k in 1..n {
                    let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
                    b[k] = s / k as f64;
                }
                b
            }
            Elementary::Log => {
                if a[0] <= 0.0 {
                    return Err(Error::JetDomain { op: "log", value: a[0] });
                }
                let mut b = vec![0.0; n];
                b[0] = a[0].ln();
                for k in 1..n {
                    let s: f64 = (1..k).map(|j| j as f64 * b[j] * a[k - j]).sum();
                    b[k] = (a[k] - s / k as f64) / a[0];
                }
                b
            }
            Elementary::Sin | Elementary::Cos => {
                let mut s = vec![0.0; n];
                let mut c = vec![0.0; n];
                s[0] = a[0].sin();
                c[0] = a[0].cos();
                for k in 1..n {
                    let kf = k as f64;
                    s[k] = (1..=k).map(|j| j as f64 * a[j] * c[k - j]).sum::<f64>() / kf;
                    c[k] = -(1..=k).map(|j| j as f64 * a[j] * s[k - j]).sum::<f64>() / kf;
                }
                if kind == Elementary::Sin {
                    s
                } else {
                    c
                }
            }
            Elementary::Reciprocal => {
                if a[0] == 0.0 {
                    return Err(Error::JetDomain {
                        op: "reciprocal",
                        value: a[0],
                    });
                }
                let mut b = vec![0.0; n];
                b[0] = 1.0 / a[0];
                for k in 1..n {
                    let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
                    b[k] = -s / a[0];
                }
                b
            }
        };
        Self::checked(self.center, coeffs)
    }

    /// `f^(j)(center) = j! * coeffs[j]`.
    pub fn derivative(&self, j: usize) -> Result<f64> {
        if j > self.order() {
            return Err(Error::DerivativeOrder {
                requested: j,
                order: self.order(),
            });
        }
        Ok(factorial(j) * self.coeffs[j])
    }

    /// The jet of `f'`, one order lower.
    pub fn differentiate(&self) -> Result<Jet> {
        if self.order() == 0 {
            return Err(Error::DerivativeOrder { requested: 1, order: 0 });
        }
        let coeffs = (1..self.coeffs.len()).map(|j| j as f64 * self.coeffs[j]).collect();
        Self::checked(self.center, coeffs)
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        let keep = order.min(self.order()) + 1;
        Jet {
            center: self.center,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Evaluates the truncated series at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let h = x - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn jet_add(a: &Jet, b: &Jet) -> Result<Jet> {
    a.add(b)
}

pub fn jet_mul(a: &Jet, b: &Jet) -> Result<Jet> {
    a.mul(b)
}

pub fn jet_pow_real(a: &Jet, p: f64) -> Result<Jet> {
    a.powf(p)
}

pub fn jet_compose_elementary(kind: Elementary, a: &Jet) -> Result<Jet> {
    a.compose(kind)
}

pub fn derivative_from_jet(a: &Jet, j: usize) -> Result<f64> {
    a.derivative(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jet(c: &[f64]) -> Jet {
        Jet::new(0.0, c.to_vec()).unwrap()
    }

    fn assert_coeffs(j: &Jet, expected: &[f64], tol: f64) {
        assert_eq!(j.coeffs().len(), expected.len());
        for (a, b) in j.coeffs().iter().zip(expected) {
            assert!(
                (a - b).abs() <= tol * (1.0 + b.abs()),
                "{:?} vs {:?}",
                j.coeffs(),
                expected
            );
        }
    }

    #[test]
    fn addition() {
        assert_eq!(jet(&[1.0, 2.0]).add(&jet(&[3.0, 4.0])).unwrap().coeffs(), &[4.0, 6.0]);
        let j = jet(&[1.5, -2.0, 0.25]);
        assert_eq!(j.add(&Jet::zero(0.0, 2).unwrap()).unwrap(), j);
        let s = jet(&[1.0, 1.0, 0.5]).add(&jet(&[-1.0, -1.0, -0.5])).unwrap();
        assert_eq!(s.coeffs(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn mismatched_jets_are_rejected() {
        let a = Jet::new(0.0, vec![1.0, 2.0]).unwrap();
        let b = Jet::new(1.0, vec![1.0, 2.0]).unwrap();
        assert!(matches!(a.add(&b), Err(Error::JetMismatch { .. })));
        assert!(matches!(a.mul(&jet(&[1.0, 2.0, 3.0])), Err(Error::JetMismatch { .. })));
    }

    #[test]
    fn constructor_invariants() {
        assert_eq!(Jet::new(0.0, vec![f64::NAN]), Err(Error::NonFiniteJet));
        assert_eq!(Jet::new(0.0, vec![0.0; 14]), Err(Error::JetOrderTooHigh(13)));
        assert!(Jet::new(0.0, vec![0.0; 13]).is_ok());
        assert!(Jet::new(0.0, vec![]).is_err());
    }

    #[test]
    fn multiplication() {
        let x1 = jet(&[1.0, 1.0, 0.0]);
        assert_eq!(x1.mul(&x1).unwrap().coeffs(), &[1.0, 2.0, 1.0]);
        let j = jet(&[0.3, -1.0, 2.0]);
        assert_eq!(j.mul(&Jet::one(0.0, 2).unwrap()).unwrap(), j);
        let e = Jet::variable(0.0, 3).unwrap().compose(Elementary::Exp).unwrap();
        assert_coeffs(&e.mul(&e).unwrap(), &[1.0, 2.0, 2.0, 4.0 / 3.0], 1e-15);
    }

    #[test]
    fn real_powers() {
        let x1 = jet(&[1.0, 1.0, 0.0]);
        assert_coeffs(&x1.powf(2.0).unwrap(), &[1.0, 2.0, 1.0], 1e-15);
        assert_eq!(jet(&[2.0, 3.0, 4.0]).powf(0.0).unwrap().coeffs(), &[1.0, 0.0, 0.0]);
        // (c + x)^(1/2) with c = 1/Γ(1/2) = 1/√π.
        let c = 1.0 / std::f64::consts::PI.sqrt();
        let r = jet(&[c, 1.0]).powf(0.5).unwrap();
        assert_coeffs(&r, &[0.751_125_544_464_942_5, 0.665_667_681_900_194_9], 1e-14);
        assert!(matches!(jet(&[0.0, 1.0]).powf(0.5), Err(Error::JetDomain { .. })));
        assert!(jet(&[-1.0, 1.0]).powf(2.0).is_err());
    }

    #[test]
    fn elementary_compositions() {
        let e = Jet::zero(0.0, 2).unwrap().compose(Elementary::Exp).unwrap();
        assert_eq!(e.coeffs(), &[1.0, 0.0, 0.0]);
        let e = Jet::variable(0.0, 2).unwrap().compose(Elementary::Exp).unwrap();
        assert_coeffs(&e, &[1.0, 1.0, 0.5], 1e-15);
        let l = jet(&[1.0, 1.0, 0.0]).compose(Elementary::Log).unwrap();
        assert_coeffs(&l, &[0.0, 1.0, -0.5], 1e-15);
        let r = jet(&[2.0, 1.0]).compose(Elementary::Reciprocal).unwrap();
        assert_coeffs(&r, &[0.5, -0.25], 1e-15);
        let s = Jet::variable(0.0, 5).unwrap().compose(Elementary::Sin).unwrap();
        assert_coeffs(&s, &[0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0], 1e-15);
        let c = Jet::variable(0.0, 4).unwrap().compose(Elementary::Cos).unwrap();
        assert_coeffs(&c, &[1.0, 0.0, -0.5, 0.0, 1.0 / 24.0], 1e-15);
        assert_eq!(
            jet(&[-2.0, 1.0]).compose(Elementary::Negate).unwrap().coeffs(),
            &[2.0, -1.0]
        );
        assert!(jet(&[0.0, 1.0]).compose(Elementary::Log).is_err());
        assert!(jet(&[0.0, 1.0]).compose(Elementary::Reciprocal).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(jet(&[1.0, 2.0, 1.0]).derivative(2).unwrap(), 2.0);
        assert_eq!(jet(&[0.7, 2.0]).derivative(0).unwrap(), 0.7);
        let e = Jet::variable(0.0, 4).unwrap().compose(Elementary::Exp).unwrap();
        assert!((e.derivative(4).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(e.derivative(5), Err(Error::DerivativeOrder { .. })));
        assert_eq!(jet(&[1.0, 2.0, 3.0]).differentiate().unwrap().coeffs(), &[2.0, 6.0]);
        assert!(jet(&[1.0]).differentiate().is_err());
    }

    fn ulp_close(a: f64, b: f64, ulps: f64) -> bool {
        (a - b).abs() <= ulps * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
            || (a - b).abs() <= ulps * f64::EPSILON
    }

    fn arb_jet() -> impl Strategy<Value = Jet> {
        prop::collection::vec(-1e3..1e3f64, 4).prop_map(|c| Jet::new(0.25, c).unwrap())
    }

    proptest! {
        #[test]
        fn add_commutes_and_associates(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
            let ab = a.add(&b).unwrap();
            prop_assert_eq!(&ab, &b.add(&a).unwrap());
            let l = ab.add(&c).unwrap();
            let r = a.add(&b.add(&c).unwrap()).unwrap();
            for (x, y) in l.coeffs().iter().zip(r.coeffs()) {
                prop_assert!((x - y).abs() <= 8.0 * f64::EPSILON * 3e3);
            }
        }

        #[test]
        fn mul_commutes_and_associates(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
            let ab = a.mul(&b).unwrap();
            let ba = b.mul(&a).unwrap();
            // Summation order differs, so compare against the size of the terms.
            for (x, y) in ab.coeffs().iter().zip(ba.coeffs()) {
                prop_assert!(ulp_close(*x, *y, 8.0) || (x - y).abs() <= 8.0 * f64::EPSILON * 4e6);
            }
            let l = ab.mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            // Products of terms up to 1e3 cube to 1e9; compare against the term scale.
            let scale: f64 = 1e9 * 10.0;
            for (x, y) in l.coeffs().iter().zip(r.coeffs()) {
                prop_assert!((x - y).abs() <= 8.0 * f64::EPSILON * scale);
            }
        }

        #[test]
        fn power_exponents_add(
            a0 in 0.2..5.0f64,
            rest in prop::collection::vec(-2.0..2.0f64, 4),
            p in -2.5..2.5f64,
            q in -2.5..2.5f64,
        ) {
            let mut c = vec![a0];
            c.extend(rest);
            let a = Jet::new(0.0, c).unwrap();
            let lhs = a.powf(p + q).unwrap();
            let rhs = a.powf(p).unwrap().mul(&a.powf(q).unwrap()).unwrap();
            let scale = lhs.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((x - y).abs() <= 1e-12 * scale.max(x.abs()), "{} vs {}", x, y);
            }
        }
    }
}
