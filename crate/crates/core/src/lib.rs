//! Numerical beta-fractional calculus.
//!
//! * [`special`]: gamma function for the shift `1/Γ(β)`.
//! * [`jet`] and [`model`]: truncated Taylor arithmetic and the function
//!   models built on it.
//! * [`calculus`]: the beta-derivative, beta-integral and weight.
//! * [`taylor`]: beta-Taylor polynomials, remainders and remainder identities.
//! * [`inequality`]: Steffensen/Hayashi, Taylor–Steffensen and
//!   Hermite–Hadamard checks with hypothesis verification.
//! * [`harness`]: corpus, independent oracles, grid runner and reports.
//!
//! ```
//! use betafrac::{beta_derivative, beta_integral, check_hermite_hadamard, BetaParam, FunctionModel, Interval};
//!
//! let p = BetaParam::new(0.5)?;
//! let f = FunctionModel::exp_neg();
//! let iv = Interval::new(0.0, 1.0)?;
//!
//! let d = beta_derivative(&p, &f, 2, 0.3)?;
//! let q = beta_integral(&p, &f, &iv, 1e-10)?;
//! let hh = check_hermite_hadamard(&p, &f.negated(), &iv, 1e-10)?;
//! assert!(d.is_finite() && q.value > 0.0);
//! assert_ne!(hh.verdict, betafrac::Verdict::Violated);
//! # Ok::<(), betafrac::Error>(())
//! ```

pub mod calculus;
pub mod error;
pub mod harness;
pub mod inequality;
pub mod jet;
pub mod model;
pub mod quadrature;
pub mod special;
pub mod taylor;

pub use calculus::{
    beta_derivative, beta_derivatives, beta_integral, beta_integral_between, integrate_weighted, weight,
    weighted_integral_of_power, BetaParam, Interval, QuadratureResult, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use inequality::{
    check_hermite_hadamard, check_hermite_hadamard_reversed, check_lemma_bounds, check_monotone_sign, check_steffensen,
    check_steffensen_reversed, check_taylor_steffensen, check_taylor_steffensen_reversed, steffensen_l, Direction,
    InequalityReport, MonotonicityReport, Sign, Verdict,
};
pub use jet::{Elementary, Jet};
pub use model::{Expr, FunctionModel};
pub use special::{gamma, ln_gamma};
pub use taylor::{
    corollary_identities, integral_remainder, lagrange_remainder, mean_value_point, remainder_integral_identity,
    taylor_polynomial, IdentityPair, RemainderValue, TaylorExpansion,
};
