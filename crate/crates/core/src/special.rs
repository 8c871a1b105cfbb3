//! Gamma function for positive real arguments.
//!
//! Lanczos approximation with g = 7 and nine coefficients on `[0.5, 10)`,
//! the Stirling series from 10 upwards; smaller arguments are shifted up
//! with `Γ(x) = Γ(x + 1) / x`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Start of the Stirling branch.
const STIRLING_FROM: f64 = 10.0;

/// Coefficients `B_2k / (2k (2k - 1))` of the Stirling correction series.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Largest argument whose gamma value is representable in binary64.
pub const GAMMA_MAX_ARG: f64 = 171.6;

/// A strictly positive gamma argument.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GammaArg(f64);

impl GammaArg {
    pub fn new(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Self(x))
        } else {
            Err(Error::GammaDomain(x))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Lanczos series sum and the shifted base `t = x - 1 + g + 1/2`, for `x >= 0.5`.
fn lanczos_parts(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    (sum, z + LANCZOS_G + 0.5)
}

/// `ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)]` for `x >= STIRLING_FROM`.
fn stirling_correction(x: f64) -> f64 {
    let r = 1.0 / (x * x);
    STIRLING_COEFFS.iter().rev().fold(0.0, |acc, c| acc * r + c) / x
}

/// Γ(x) for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    let x = GammaArg::new(x)?.get();
    if x > GAMMA_MAX_ARG {
        return Err(Error::GammaOverflow(x));
    }
    if x < 0.5 {
        return Ok(gamma(x + 1.0)? / x);
    }
    if x >= STIRLING_FROM {
        let half = x.powf(0.5 * (x - 0.5));
        return Ok((2.0 * PI).sqrt() * half * (stirling_correction(x) - x).exp() * half);
    }
    let (sum, t) = lanczos_parts(x);
    // t^(x - 1/2) is split in two halves so the product does not overflow near the top of the range.
    let half = t.powf(0.5 * (x - 0.5));
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * sum)
}

/// ln Γ(x) for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    let x = GammaArg::new(x)?.get();
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    if x >= STIRLING_FROM {
        return Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * x.ln() - x + stirling_correction(x));
    }
    let (sum, t) = lanczos_parts(x);
    Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + sum.ln())
}
