//! Run configuration and the registered check names.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calculus::{BetaParam, Interval};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Corollary,
    FundamentalTheorem,
    HermiteHadamard,
    HermiteHadamardReversed,
    LagrangeRemainder,
    MeanValue,
    OracleAgreement,
    RemainderIdentity,
    Steffensen,
    SteffensenLemma,
    SteffensenReversed,
    TaylorReconstruction,
    TaylorSteffensen,
    TaylorSteffensenReversed,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Corollary,
        Check::FundamentalTheorem,
        Check::HermiteHadamard,
        Check::HermiteHadamardReversed,
        Check::LagrangeRemainder,
        Check::MeanValue,
        Check::OracleAgreement,
        Check::RemainderIdentity,
        Check::Steffensen,
        Check::SteffensenLemma,
        Check::SteffensenReversed,
        Check::TaylorReconstruction,
        Check::TaylorSteffensen,
        Check::TaylorSteffensenReversed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Corollary => "corollary",
            Check::FundamentalTheorem => "fundamental_theorem",
            Check::HermiteHadamard => "hermite_hadamard",
            Check::HermiteHadamardReversed => "hermite_hadamard_reversed",
            Check::LagrangeRemainder => "lagrange_remainder",
            Check::MeanValue => "mean_value",
            Check::OracleAgreement => "oracle_agreement",
            Check::RemainderIdentity => "remainder_identity",
            Check::Steffensen => "steffensen",
            Check::SteffensenLemma => "steffensen_lemma",
            Check::SteffensenReversed => "steffensen_reversed",
            Check::TaylorReconstruction => "taylor_reconstruction",
            Check::TaylorSteffensen => "taylor_steffensen",
            Check::TaylorSteffensenReversed => "taylor_steffensen_reversed",
        }
    }

    /// Whether the check takes a degree `n`.
    pub fn uses_degree(self) -> bool {
        matches!(
            self,
            Check::Corollary
                | Check::LagrangeRemainder
                | Check::RemainderIdentity
                | Check::TaylorReconstruction
                | Check::TaylorSteffensen
                | Check::TaylorSteffensenReversed
        )
    }

    /// Whether the check runs over pairs `(f, g)`.
    pub fn uses_pairs(self) -> bool {
        matches!(self, Check::MeanValue | Check::Steffensen | Check::SteffensenReversed)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

/// Degrees above this are skipped by the identity checks built on nested quadrature.
pub const IDENTITY_MAX_DEGREE: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub betas: Vec<f64>,
    pub intervals: Vec<Interval>,
    pub degrees: Vec<usize>,
    pub tol: f64,
    pub checks: Vec<Check>,
    pub output_path: Option<PathBuf>,
    pub parallel: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            betas: vec![0.1, 0.25, 0.5, 0.75, 0.9, 1.0],
            intervals: crate::harness::corpus::canonical_intervals(),
            degrees: vec![0, 1, 2, 4, 6],
            tol: 1e-8,
            checks: Check::ALL.to_vec(),
            output_path: None,
            parallel: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.betas.is_empty() {
            return Err(Error::Config("betas is empty".into()));
        }
        for &b in &self.betas {
            BetaParam::new(b)?;
        }
        if self.intervals.is_empty() {
            return Err(Error::Config("intervals is empty".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("checks is empty".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidTolerance(self.tol));
        }
        if self.parallel == 0 {
            return Err(Error::Config("parallel must be at least 1".into()));
        }
        if let Some(&n) = self.degrees.iter().find(|&&n| n + 2 > crate::jet::MAX_ORDER) {
            return Err(Error::JetOrderTooHigh(n + 2));
        }
        Ok(())
    }

    /// Tolerance handed to the quadratures inside each check.
    pub fn inner_tol(&self) -> f64 {
        self.tol / 100.0
    }

    /// The result-determining part of the configuration, echoed in reports.
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            betas: self.betas.clone(),
            intervals: self.intervals.clone(),
            degrees: self.degrees.clone(),
            tol: self.tol,
            checks: self.checks.clone(),
        }
    }
}

/// Configuration fields that influence results. Worker count and output
/// path are left out so reports do not depend on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub betas: Vec<f64>,
    pub intervals: Vec<Interval>,
    pub degrees: Vec<usize>,
    pub tol: f64,
    pub checks: Vec<Check>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.betas.len(), 6);
        assert_eq!(cfg.intervals.len(), 3);
        assert_eq!(cfg.degrees, vec![0, 1, 2, 4, 6]);
        assert_eq!(cfg.checks.len(), Check::ALL.len());
        assert!((cfg.inner_tol() - 1e-10).abs() < 1e-25);
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("bogus".parse::<Check>().is_err());
        let mut sorted = Check::ALL.to_vec();
        sorted.sort_by_key(|c| c.name());
        assert_eq!(sorted, Check::ALL.to_vec());
    }

    #[test]
    fn json_config() {
        let cfg = RunConfig::from_json(
            r#"{"betas":[0.5],"intervals":[[0,1]],"degrees":[1],"tol":1e-9,"checks":["steffensen"],"output_path":"r.json","parallel":2}"#,
        )
        .unwrap();
        assert_eq!(cfg.betas, vec![0.5]);
        assert_eq!(cfg.intervals, vec![Interval::new(0.0, 1.0).unwrap()]);
        assert_eq!(cfg.checks, vec![Check::Steffensen]);
        assert_eq!(cfg.output_path, Some(PathBuf::from("r.json")));
        assert_eq!(cfg.parallel, 2);

        let partial = RunConfig::from_json(r#"{"betas":[1.0]}"#).unwrap();
        assert_eq!(partial.intervals.len(), 3);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for text in [
            r#"{"checks":[]}"#,
            r#"{"betas":[]}"#,
            r#"{"betas":[1.5]}"#,
            r#"{"intervals":[]}"#,
            r#"{"intervals":[[2,1]]}"#,
            r#"{"tol":0}"#,
            r#"{"parallel":0}"#,
            r#"{"checks":["nope"]}"#,
            r#"{"degrees":[11]}"#,
            r#"{"colour":"blue"}"#,
        ] {
            assert!(RunConfig::from_json(text).is_err(), "{text}");
        }
    }
}
