use thiserror::Error;

use crate::quadrature::QuadratureResult;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} outside the domain of the gamma function")]
    GammaDomain(f64),
    #[error("gamma({0}) overflows binary64")]
    GammaOverflow(f64),

    #[error("jets differ in center or order ({left_center}/{left_order} vs {right_center}/{right_order})")]
    JetMismatch {
        left_center: f64,
        left_order: usize,
        right_center: f64,
        right_order: usize,
    },
    #[error("jet order {0} exceeds the supported maximum of {max}", max = crate::jet::MAX_ORDER)]
    JetOrderTooHigh(usize),
    #[error("jet coefficient is not finite")]
    NonFiniteJet,
    #[error("derivative order {requested} out of range for a jet of order {order}")]
    DerivativeOrder { requested: usize, order: usize },
    #[error("{op} undefined at leading coefficient {value}")]
    JetDomain { op: &'static str, value: f64 },

    #[error("beta = {0} is outside (0, 1]")]
    InvalidBeta(f64),
    #[error("invalid interval [{0}, {1}]: need 0 <= a < b")]
    InvalidInterval(f64, f64),
    #[error("point {0} lies outside [0, inf)")]
    NegativeArgument(f64),
    #[error("function {name} is not defined at {x}")]
    OutsideDomain { name: String, x: f64 },
    #[error("point {t} lies outside [{a}, {b}]")]
    PointOutsideInterval { t: f64, a: f64, b: f64 },
    #[error("integrand is not finite at t = {0}")]
    NonFiniteIntegrand(f64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("adaptive quadrature did not converge after {panels} panels (estimate {partial:?})")]
    NonConvergence { panels: usize, partial: QuadratureResult },
    #[error("no sign change found for the mean value search on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("bounded function leaves [0, {bound}] at t = {at} (value {value})")]
    RangeViolation { bound: f64, at: f64, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown corpus function {0:?}")]
    UnknownFunction(String),
    #[error("corpus entry {name}: declared tag does not hold on [{a}, {b}]: {detail}")]
    TagMismatch {
        name: String,
        a: f64,
        b: f64,
        detail: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
