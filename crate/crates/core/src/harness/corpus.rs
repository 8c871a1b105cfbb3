//! The default function corpus with declared monotonicity and sign tags.

use std::fmt;

use crate::calculus::{BetaParam, Interval};
use crate::error::{Error, Result};
use crate::inequality::{check_monotone_sign, Direction, Sign, DEFAULT_GRID};
use crate::model::{Expr, FunctionModel};

/// Declared behaviour of an entry on one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tags {
    pub interval: Interval,
    pub direction: Direction,
    pub sign: Sign,
}

impl Tags {
    pub fn nonincreasing(&self) -> bool {
        matches!(self.direction, Direction::Nonincreasing | Direction::Constant)
    }

    pub fn nondecreasing(&self) -> bool {
        matches!(self.direction, Direction::Nondecreasing | Direction::Constant)
    }

    pub fn nonnegative(&self) -> bool {
        matches!(self.sign, Sign::Nonnegative | Sign::Zero)
    }

    pub fn nonpositive(&self) -> bool {
        matches!(self.sign, Sign::Nonpositive | Sign::Zero)
    }
}

#[derive(Clone)]
enum Builder {
    Fixed(FunctionModel),
    PerBeta(fn(&BetaParam) -> FunctionModel),
}

/// Closed form of `∫_a^b f d_βt` where one is known.
pub type ClosedForm = fn(&BetaParam, &Interval) -> Option<f64>;

#[derive(Clone)]
pub struct CorpusEntry {
    name: &'static str,
    builder: Builder,
    known_properties: Vec<Tags>,
    closed_form: Option<ClosedForm>,
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("name", &self.name)
            .field("known_properties", &self.known_properties)
            .finish()
    }
}

impl CorpusEntry {
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// The model for a given β; only some entries depend on it.
    pub fn model(&self, p: &BetaParam) -> FunctionModel {
        match &self.builder {
            Builder::Fixed(m) => m.clone(),
            Builder::PerBeta(build) => build(p),
        }
    }

    pub fn depends_on_beta(&self) -> bool {
        matches!(self.builder, Builder::PerBeta(_))
    }

    pub fn known_properties(&self) -> &[Tags] {
        &self.known_properties
    }

    pub fn tags_for(&self, iv: &Interval) -> Option<&Tags> {
        self.known_properties.iter().find(|t| t.interval == *iv)
    }

    pub fn closed_form(&self, p: &BetaParam, iv: &Interval) -> Option<f64> {
        self.closed_form.and_then(|cf| cf(p, iv))
    }

    /// Tags on `iv`: the declared ones, or sampled ones off the canonical intervals.
    pub fn tags_or_sampled(&self, p: &BetaParam, iv: &Interval) -> Result<Tags> {
        if let Some(t) = self.tags_for(iv) {
            return Ok(*t);
        }
        let r = check_monotone_sign(&self.model(p), iv, DEFAULT_GRID)?;
        Ok(Tags {
            interval: *iv,
            direction: r.direction(),
            sign: r.sign(),
        })
    }

    /// Re-samples every declared tag for each β in `betas`.
    pub fn verify_tags(&self, betas: &[f64]) -> Result<()> {
        let params: Vec<BetaParam> = if self.depends_on_beta() {
            betas.iter().map(|&b| BetaParam::new(b)).collect::<Result<_>>()?
        } else {
            vec![BetaParam::new(1.0)?]
        };
        for p in &params {
            let model = self.model(p);
            for tag in &self.known_properties {
                let r = check_monotone_sign(&model, &tag.interval, DEFAULT_GRID)?;
                if r.direction() != tag.direction || r.sign() != tag.sign {
                    return Err(Error::TagMismatch {
                        name: self.name.to_string(),
                        a: tag.interval.a(),
                        b: tag.interval.b(),
                        detail: format!(
                            "declared {:?}/{:?}, sampled {:?}/{:?} at beta {}",
                            tag.direction,
                            tag.sign,
                            r.direction(),
                            r.sign(),
                            p.beta()
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The intervals carrying declared tags.
pub fn canonical_intervals() -> Vec<Interval> {
    [(0.0, 1.0), (0.5, 2.0), (1.0, 3.0)]
        .iter()
        .map(|&(a, b)| Interval::new(a, b).expect("canonical interval"))
        .collect()
}

fn uniform(direction: Direction, sign: Sign) -> Vec<Tags> {
    canonical_intervals()
        .into_iter()
        .map(|interval| Tags {
            interval,
            direction,
            sign,
        })
        .collect()
}

/// `∫_a^b (t + c)^k d_βt` in the clock variable `x = t + c`.
fn moment(p: &BetaParam, iv: &Interval, k: f64) -> f64 {
    let e = p.beta() + k;
    let c = p.shift();
    ((iv.b() + c).powf(e) - (iv.a() + c).powf(e)) / e
}

fn cf_one(p: &BetaParam, iv: &Interval) -> Option<f64> {
    Some(p.measure(iv.a(), iv.b()))
}

fn cf_t(p: &BetaParam, iv: &Interval) -> Option<f64> {
    Some(moment(p, iv, 1.0) - p.shift() * moment(p, iv, 0.0))
}

fn cf_t2(p: &BetaParam, iv: &Interval) -> Option<f64> {
    let c = p.shift();
    Some(moment(p, iv, 2.0) - 2.0 * c * moment(p, iv, 1.0) + c * c * moment(p, iv, 0.0))
}

fn cf_one_minus_t(p: &BetaParam, iv: &Interval) -> Option<f64> {
    Some(cf_one(p, iv)? - cf_t(p, iv)?)
}

fn cf_exp_neg(p: &BetaParam, iv: &Interval) -> Option<f64> {
    (p.beta() == 1.0).then(|| (-iv.a()).exp() - (-iv.b()).exp())
}

fn cf_log1p(p: &BetaParam, iv: &Interval) -> Option<f64> {
    let anti = |t: f64| (1.0 + t) * (1.0 + t).ln() - t;
    (p.beta() == 1.0).then(|| anti(iv.b()) - anti(iv.a()))
}

fn cf_recip1p(p: &BetaParam, iv: &Interval) -> Option<f64> {
    (p.beta() == 1.0).then(|| ((1.0 + iv.b()) / (1.0 + iv.a())).ln())
}

fn cf_beta_linear(p: &BetaParam, iv: &Interval) -> Option<f64> {
    Some(moment(p, iv, p.beta()))
}

fn beta_linear(p: &BetaParam) -> FunctionModel {
    FunctionModel::new("beta_linear", (Expr::var() + Expr::constant(p.shift())).powf(p.beta()))
}

/// The eight default entries.
pub fn default_corpus() -> Vec<CorpusEntry> {
    use Direction::*;
    use Sign::*;
    let fixed = |name: &'static str, expr: Expr| Builder::Fixed(FunctionModel::new(name, expr));
    let [unit, mid, right]: [Interval; 3] = canonical_intervals().try_into().expect("three intervals");
    vec![
        CorpusEntry {
            name: "one",
            builder: fixed("one", Expr::constant(1.0)),
            known_properties: uniform(Constant, Nonnegative),
            closed_form: Some(cf_one),
        },
        CorpusEntry {
            name: "t",
            builder: fixed("t", Expr::var()),
            known_properties: uniform(Nondecreasing, Nonnegative),
            closed_form: Some(cf_t),
        },
        CorpusEntry {
            name: "t2",
            builder: fixed("t2", Expr::var() * Expr::var()),
            known_properties: uniform(Nondecreasing, Nonnegative),
            closed_form: Some(cf_t2),
        },
        CorpusEntry {
            name: "exp_neg",
            builder: fixed("exp_neg", (-Expr::var()).exp()),
            known_properties: uniform(Nonincreasing, Nonnegative),
            closed_form: Some(cf_exp_neg),
        },
        CorpusEntry {
            name: "log1p",
            builder: fixed("log1p", (Expr::constant(1.0) + Expr::var()).ln()),
            known_properties: uniform(Nondecreasing, Nonnegative),
            closed_form: Some(cf_log1p),
        },
        CorpusEntry {
            name: "recip1p",
            builder: fixed("recip1p", (Expr::constant(1.0) + Expr::var()).recip()),
            known_properties: uniform(Nonincreasing, Nonnegative),
            closed_form: Some(cf_recip1p),
        },
        CorpusEntry {
            name: "beta_linear",
            builder: Builder::PerBeta(beta_linear),
            known_properties: uniform(Nondecreasing, Nonnegative),
            closed_form: Some(cf_beta_linear),
        },
        CorpusEntry {
            name: "one_minus_t",
            builder: fixed("one_minus_t", Expr::constant(1.0) - Expr::var()),
            known_properties: vec![
                Tags {
                    interval: unit,
                    direction: Nonincreasing,
                    sign: Nonnegative,
                },
                Tags {
                    interval: mid,
                    direction: Nonincreasing,
                    sign: Mixed,
                },
                Tags {
                    interval: right,
                    direction: Nonincreasing,
                    sign: Nonpositive,
                },
            ],
            closed_form: Some(cf_one_minus_t),
        },
    ]
}

/// Looks an entry up by name.
pub fn find<'a>(corpus: &'a [CorpusEntry], name: &str) -> Result<&'a CorpusEntry> {
    corpus
        .iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::UnknownFunction(name.to_string()))
}
