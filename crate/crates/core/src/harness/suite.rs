//! Grid runner: every enabled check over (function, β, interval, degree).

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::calculus::{beta_derivative, beta_integral, integrate_weighted, BetaParam, Interval};
use crate::error::{Error, Result};
use crate::harness::config::{Check, RunConfig, IDENTITY_MAX_DEGREE};
use crate::harness::corpus::{CorpusEntry, Tags};
use crate::harness::oracle::{oracle_integral, DEFAULT_LEVELS};
use crate::harness::report::{Record, RunReport};
use crate::inequality::{
    check_hermite_hadamard, check_hermite_hadamard_reversed, check_lemma_bounds, check_monotone_sign, check_steffensen,
    check_steffensen_reversed, check_taylor_steffensen, check_taylor_steffensen_reversed, InequalityReport, Verdict,
    DEFAULT_GRID,
};
use crate::model::FunctionModel;
use crate::taylor::{
    corollary_identities, integral_remainder, lagrange_remainder, mean_value_search, remainder_integral_identity,
    TaylorExpansion,
};

/// Agreement threshold of the fundamental-theorem check.
pub const FUNDAMENTAL_THRESHOLD: f64 = 1e-8;
/// Agreement threshold of the Taylor identity checks.
pub const IDENTITY_THRESHOLD: f64 = 1e-7;
/// Floor of the oracle agreement threshold.
pub const ORACLE_THRESHOLD: f64 = 1e-8;
/// Interior points per interval in the reconstruction check.
pub const RECONSTRUCTION_POINTS: usize = 5;

/// One unit of work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub check: Check,
    pub f: usize,
    pub g: Option<usize>,
    pub beta: f64,
    pub interval: Interval,
    pub n: Option<usize>,
}

fn degrees_for(check: Check, degrees: &[usize]) -> Vec<Option<usize>> {
    if !check.uses_degree() {
        return vec![None];
    }
    let capped = matches!(check, Check::RemainderIdentity | Check::Corollary);
    degrees
        .iter()
        .filter(|&&n| !capped || n <= IDENTITY_MAX_DEGREE)
        .map(|&n| Some(n))
        .collect()
}

/// All cells of the grid, in enumeration order.
pub fn cells(cfg: &RunConfig, corpus: &[CorpusEntry]) -> Vec<Cell> {
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut out = Vec::new();
    for check in checks {
        let pairs: Vec<(usize, Option<usize>)> = if check.uses_pairs() {
            (0..corpus.len())
                .flat_map(|f| (0..corpus.len()).map(move |g| (f, Some(g))))
                .collect()
        } else {
            (0..corpus.len()).map(|f| (f, None)).collect()
        };
        for &(f, g) in &pairs {
            for &beta in &cfg.betas {
                for &interval in &cfg.intervals {
                    for n in degrees_for(check, &cfg.degrees) {
                        out.push(Cell {
                            check,
                            f,
                            g,
                            beta,
                            interval,
                            n,
                        });
                    }
                }
            }
        }
    }
    out
}

fn label(cell: &Cell, corpus: &[CorpusEntry]) -> String {
    let f = corpus[cell.f].name();
    let f = if cell.check == Check::SteffensenReversed {
        format!("neg({f})")
    } else {
        f.to_string()
    };
    match cell.g {
        Some(g) => format!("{f}/{}", corpus[g].name()),
        None => f,
    }
}

/// Values of a finished cell.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Outcome {
    lhs: Option<f64>,
    mid: Option<f64>,
    rhs: Option<f64>,
    margin_left: Option<f64>,
    margin_right: Option<f64>,
    verdict: Verdict,
    evals: usize,
}

impl Outcome {
    /// Two-sided agreement `|lhs - rhs| <= threshold`; both margins are `threshold - |lhs - rhs|`.
    fn pair(lhs: f64, rhs: f64, threshold: f64, evals: usize) -> Result<Self> {
        if !(lhs.is_finite() && rhs.is_finite()) {
            return Err(Error::NonFiniteIntegrand(lhs));
        }
        let margin = threshold - (lhs - rhs).abs();
        Ok(Self {
            lhs: Some(lhs),
            mid: None,
            rhs: Some(rhs),
            margin_left: Some(margin),
            margin_right: Some(margin),
            verdict: if margin >= 0.0 {
                Verdict::Holds
            } else {
                Verdict::Violated
            },
            evals,
        })
    }

    fn chain(r: &InequalityReport) -> Self {
        Self {
            lhs: Some(r.lhs),
            mid: Some(r.mid),
            rhs: Some(r.rhs),
            margin_left: Some(r.margin_left),
            margin_right: Some(r.margin_right),
            verdict: r.verdict,
            evals: r.evaluations,
        }
    }

    fn not_met() -> Self {
        Self {
            lhs: None,
            mid: None,
            rhs: None,
            margin_left: None,
            margin_right: None,
            verdict: Verdict::HypothesisNotMet,
            evals: 0,
        }
    }

    fn error() -> Self {
        Self {
            verdict: Verdict::Error,
            ..Self::not_met()
        }
    }
}

/// Keeps the pair with the larger discrepancy.
fn worst(acc: Option<(f64, f64)>, next: (f64, f64)) -> Option<(f64, f64)> {
    match acc {
        Some(prev) if (prev.0 - prev.1).abs() >= (next.0 - next.1).abs() => Some(prev),
        _ => Some(next),
    }
}

fn sampled_max(g: &FunctionModel, iv: &Interval) -> Result<f64> {
    let r = check_monotone_sign(g, iv, DEFAULT_GRID)?;
    Ok(if r.max > 0.0 { r.max } else { 1.0 })
}

struct Context<'a> {
    cfg: &'a RunConfig,
    corpus: &'a [CorpusEntry],
}

impl Context<'_> {
    fn tags(&self, index: usize, p: &BetaParam, iv: &Interval) -> Result<Tags> {
        self.corpus[index].tags_or_sampled(p, iv)
    }

    fn run(&self, cell: &Cell) -> Result<Outcome> {
        let tol = self.cfg.inner_tol();
        let p = BetaParam::new(cell.beta)?;
        let iv = &cell.interval;
        let f = self.corpus[cell.f].model(&p);
        let g = cell.g.map(|g| self.corpus[g].model(&p));
        let n = cell.n.unwrap_or(0);
        match cell.check {
            Check::FundamentalTheorem => {
                let lhs = integrate_weighted(&p, |t| beta_derivative(&p, &f, 1, t), iv.a(), iv.b(), tol)?;
                let rhs = f.eval(iv.b())? - f.eval(iv.a())?;
                Outcome::pair(lhs.value, rhs, FUNDAMENTAL_THRESHOLD, lhs.evaluations + 2)
            }
            Check::TaylorReconstruction => {
                let mut acc = None;
                let mut evals = 0;
                for s in [iv.a(), iv.b()] {
                    let poly = TaylorExpansion::new(&p, &f, s, n)?;
                    for t in iv.interior_points(RECONSTRUCTION_POINTS) {
                        let r = integral_remainder(&p, &f, s, n, t, tol)?;
                        evals += r.evaluations + 1;
                        acc = worst(acc, (f.eval(t)?, poly.eval(t)? + r.value));
                    }
                }
                let (lhs, rhs) = acc.expect("interior points");
                Outcome::pair(lhs, rhs, IDENTITY_THRESHOLD, evals)
            }
            Check::LagrangeRemainder => {
                let mut acc = None;
                let mut evals = 0;
                let mut outside = false;
                for (s, t) in [(iv.a(), iv.b()), (iv.b(), iv.a())] {
                    let r = lagrange_remainder(&p, &f, s, n, t, tol)?;
                    let c = r.lagrange_point.expect("point for distinct s, t");
                    outside |= !(iv.a() <= c && c <= iv.b());
                    evals += r.evaluations;
                    acc = worst(acc, (r.integral_form, r.lagrange_form.expect("form for distinct s, t")));
                }
                let (lhs, rhs) = acc.expect("two orientations");
                let mut out = Outcome::pair(lhs, rhs, IDENTITY_THRESHOLD, evals)?;
                if outside {
                    out.verdict = Verdict::Violated;
                }
                Ok(out)
            }
            Check::RemainderIdentity => {
                let r = remainder_integral_identity(&p, &f, iv, iv.midpoint(), n, tol)?;
                Outcome::pair(r.lhs, r.rhs, IDENTITY_THRESHOLD, r.evaluations)
            }
            Check::Corollary => {
                let (at_a, at_b) = corollary_identities(&p, &f, iv, n, tol)?;
                let (lhs, rhs) = worst(Some((at_a.lhs, at_a.rhs)), (at_b.lhs, at_b.rhs)).expect("two forms");
                Outcome::pair(lhs, rhs, IDENTITY_THRESHOLD, at_a.evaluations + at_b.evaluations)
            }
            Check::SteffensenLemma => {
                if !self.tags(cell.f, &p, iv)?.nonnegative() {
                    return Ok(Outcome::not_met());
                }
                let r = check_lemma_bounds(&p, &f, iv, sampled_max(&f, iv)?, tol)?;
                Ok(Outcome::chain(&r))
            }
            Check::Steffensen | Check::SteffensenReversed => {
                let g = g.expect("pair cell");
                let bound = sampled_max(&g, iv)?;
                let r = if cell.check == Check::Steffensen {
                    check_steffensen(&p, &f, &g, iv, bound, tol)?
                } else {
                    check_steffensen_reversed(&p, &f.negated(), &g, iv, bound, tol)?
                };
                Ok(Outcome::chain(&r))
            }
            Check::MeanValue => {
                let g = g.expect("pair cell");
                if !self.tags(cell.g.expect("pair cell"), &p, iv)?.nonnegative() {
                    return Ok(Outcome::not_met());
                }
                let m = mean_value_search(&p, &f, &g, iv, tol)?;
                let rhs = f.eval(m.point)? * m.integral_g;
                let threshold = self.cfg.tol * (1.0 + m.integral_fg.abs());
                let mut out = Outcome::pair(m.integral_fg, rhs, threshold, m.evaluations)?;
                if !iv.contains(m.point) {
                    out.verdict = Verdict::Violated;
                }
                Ok(out)
            }
            Check::TaylorSteffensen => Ok(Outcome::chain(&check_taylor_steffensen(&p, &f, iv, n, tol)?)),
            Check::TaylorSteffensenReversed => {
                Ok(Outcome::chain(&check_taylor_steffensen_reversed(&p, &f, iv, n, tol)?))
            }
            Check::HermiteHadamard => Ok(Outcome::chain(&check_hermite_hadamard(&p, &f, iv, tol)?)),
            Check::HermiteHadamardReversed => Ok(Outcome::chain(&check_hermite_hadamard_reversed(&p, &f, iv, tol)?)),
            Check::OracleAgreement => {
                let q = beta_integral(&p, &f, iv, tol)?;
                let o = oracle_integral(&f, p.beta() - 1.0, p.shift(), iv, DEFAULT_LEVELS)?;
                let threshold = ORACLE_THRESHOLD.max(3.0 * q.error_estimate);
                Outcome::pair(q.value, o, threshold, q.evaluations + (1 << DEFAULT_LEVELS) + 1)
            }
        }
    }
}

fn record_order(x: &Record, y: &Record) -> std::cmp::Ordering {
    x.check
        .cmp(&y.check)
        .then_with(|| x.function.cmp(&y.function))
        .then_with(|| x.beta.total_cmp(&y.beta))
        .then_with(|| x.a.total_cmp(&y.a))
        .then_with(|| x.b.total_cmp(&y.b))
        .then_with(|| x.n.cmp(&y.n))
}

/// Runs every enabled check on the grid. Cell failures become `error`
/// records; only invalid configuration or a tag mismatch aborts the run.
pub fn run_suite(cfg: &RunConfig, corpus: &[CorpusEntry]) -> Result<RunReport> {
    cfg.validate()?;
    for entry in corpus {
        entry.verify_tags(&cfg.betas)?;
    }
    let ctx = Context { cfg, corpus };
    let grid = cells(cfg, corpus);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<(Record, Option<String>)> = pool.install(|| {
        grid.par_iter()
            .map(|cell| {
                let start = Instant::now();
                let result = ctx.run(cell);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let function = label(cell, corpus);
                let (out, diagnostic) = match result {
                    Ok(out) => (out, None),
                    Err(e) => (
                        Outcome::error(),
                        Some(format!(
                            "{} {} beta={} {} n={:?}: {e}",
                            cell.check, function, cell.beta, cell.interval, cell.n
                        )),
                    ),
                };
                let record = Record {
                    check: cell.check,
                    function,
                    beta: cell.beta,
                    a: cell.interval.a(),
                    b: cell.interval.b(),
                    n: cell.n,
                    lhs: out.lhs,
                    mid: out.mid,
                    rhs: out.rhs,
                    margin_left: out.margin_left,
                    margin_right: out.margin_right,
                    verdict: out.verdict,
                    evals: out.evals,
                    ms,
                };
                (record, diagnostic)
            })
            .collect()
    });
    let mut results = results;
    results.sort_by(|x, y| record_order(&x.0, &y.0));
    let diagnostics = results.iter().filter_map(|(_, d)| d.clone()).collect();
    let records = results.into_iter().map(|(r, _)| r).collect();
    Ok(RunReport::new(cfg.echo(), records, diagnostics))
}

/// Number of `hypothesis_not_met` records implied by the corpus tags, for the
/// checks whose hypotheses are statements about `f` and `g` themselves.
pub fn expected_hypothesis_failures(cfg: &RunConfig, corpus: &[CorpusEntry]) -> Result<BTreeMap<Check, usize>> {
    let mut out = BTreeMap::new();
    for cell in cells(cfg, corpus) {
        let p = BetaParam::new(cell.beta)?;
        let iv = &cell.interval;
        let tags = |i: usize| corpus[i].tags_or_sampled(&p, iv);
        let fails = match cell.check {
            Check::SteffensenLemma => !tags(cell.f)?.nonnegative(),
            Check::Steffensen | Check::SteffensenReversed => {
                let tf = tags(cell.f)?;
                let tg = tags(cell.g.expect("pair cell"))?;
                !(tf.nonnegative() && tf.nonincreasing() && tg.nonnegative())
            }
            Check::MeanValue => !tags(cell.g.expect("pair cell"))?.nonnegative(),
            _ => continue,
        };
        *out.entry(cell.check).or_insert(0) += usize::from(fails);
    }
    Ok(out)
}
