//! Randomized checks of the rank-one commutator identities in `SL₂`, `SU₃`
//! and `SL₃`, with exact truncated Laurent-series arithmetic.
//!
//! Every comparison records its precision margin (joint precision minus
//! the valuation at which the sides were compared).  A trial fails when two
//! sides differ or when a margin drops below [`MIN_MARGIN`].

mod matrix;
mod sl2;
mod su3;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_field::{Comparison, LocalModel, Series, EXACT};

pub use matrix::{commutator, Mat};
pub use sl2::{sl2_minus, sl2_plus, sl2_torus};
pub use su3::{su3_minus, su3_plus, su3_torus, OppositeParams};

/// Smallest precision margin accepted by a comparison.
pub const MIN_MARGIN: i64 = 4;

/// Retries allowed for one trial when a draw is degenerate.
const MAX_RESAMPLES: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Sl2Torus,
    Sl2Opposite,
    Sl2Frattini,
    Su3Opposite,
    Su3Torus,
    Su3SameRoot,
    Su3Inversion,
    StructureConstants,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Sl2Torus,
        Suite::Sl2Opposite,
        Suite::Sl2Frattini,
        Suite::Su3Opposite,
        Suite::Su3Torus,
        Suite::Su3SameRoot,
        Suite::Su3Inversion,
        Suite::StructureConstants,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Sl2Torus => "sl2-torus",
            Suite::Sl2Opposite => "sl2-opposite",
            Suite::Sl2Frattini => "sl2-frattini",
            Suite::Su3Opposite => "su3-opposite",
            Suite::Su3Torus => "su3-torus",
            Suite::Su3SameRoot => "su3-same-root",
            Suite::Su3Inversion => "su3-inversion",
            Suite::StructureConstants => "structure-constants",
        }
    }

    /// Rejects residue characteristics outside the range the identities
    /// are claimed for.
    pub fn check_hypotheses(self, p: u32, ramified: bool) -> Result<()> {
        if p == 2 {
            return Err(Error::Hypothesis("residue characteristic 2".into()));
        }
        let need5 = match self {
            Suite::Su3Inversion => true,
            Suite::Su3Torus => ramified,
            _ => false,
        };
        if need5 && p < 5 {
            return Err(Error::Hypothesis(format!("{} needs p ≥ 5", self.id())));
        }
        Ok(())
    }

    fn trial(self) -> TrialFn {
        match self {
            Suite::Sl2Torus => sl2::torus_trial,
            Suite::Sl2Opposite => sl2::opposite_trial,
            Suite::Sl2Frattini => sl2::frattini_trial,
            Suite::StructureConstants => sl2::structure_trial,
            Suite::Su3Opposite => su3::opposite_trial,
            Suite::Su3Torus => su3::torus_trial,
            Suite::Su3SameRoot => su3::same_root_trial,
            Suite::Su3Inversion => su3::inversion_trial,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub p: u32,
    pub ramified: bool,
    pub precision: i64,
    pub trials: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(p: u32, ramified: bool) -> SuiteConfig {
        SuiteConfig {
            p,
            ramified,
            precision: crate::local_field::DEFAULT_PREC,
            trials: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub lemma_id: String,
    pub config: SuiteConfig,
    pub trials: u64,
    pub failures: u64,
    pub resampled: u64,
    /// `None` when every comparison was exact
    pub worst_precision_margin: Option<i64>,
    pub first_failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: u64,
    pub message: String,
}

impl TrialReport {
    fn empty(suite: Suite, config: &SuiteConfig) -> TrialReport {
        TrialReport {
            lemma_id: suite.id().into(),
            config: config.clone(),
            trials: 0,
            failures: 0,
            resampled: 0,
            worst_precision_margin: None,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Combine reports of disjoint trial ranges of the same suite.
    pub fn merge(mut self, other: TrialReport) -> TrialReport {
        self.trials += other.trials;
        self.failures += other.failures;
        self.resampled += other.resampled;
        self.worst_precision_margin = match (self.worst_precision_margin, other.worst_precision_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.trial <= b.trial { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Collects comparisons made during one trial.
#[derive(Debug, Default)]
pub struct Checker {
    margin: Option<i64>,
    failure: Option<String>,
}

impl Checker {
    pub fn new() -> Checker {
        Checker::default()
    }

    fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    pub fn record(&mut self, label: &str, c: Comparison) {
        if c.margin < EXACT {
            self.margin = Some(self.margin.map_or(c.margin, |m| m.min(c.margin)));
        }
        if !c.equal {
            self.fail(format!("{label}: sides differ"));
        } else if c.margin < MIN_MARGIN {
            self.fail(format!("{label}: precision margin {} below {MIN_MARGIN}", c.margin));
        }
    }

    pub fn series(&mut self, label: &str, a: &Series, b: &Series) {
        self.record(label, a.compare(b));
    }

    pub fn mat(&mut self, label: &str, a: &Mat, b: &Mat) {
        self.record(label, a.compare(b));
    }

    pub fn holds(&mut self, label: &str, cond: bool) {
        if !cond {
            self.fail(format!("{label}: does not hold"));
        }
    }

    pub fn margin(&self) -> Option<i64> {
        self.margin
    }

    pub fn failure(&self) -> Option<&str> {
        self.failure.as_deref()
    }
}

/// Result of one draw: checked, or degenerate and to be redrawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Draw {
    Done,
    Degenerate,
}

type TrialFn = fn(&LocalModel, &mut ChaCha8Rng, &mut Checker) -> Result<Draw>;

fn run_one(suite: Suite, m: &LocalModel, cfg: &SuiteConfig, i: u64) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(i);
    let mut rep = TrialReport::empty(suite, cfg);
    rep.trials = 1;
    let f = suite.trial();
    for _ in 0..MAX_RESAMPLES {
        let mut ck = Checker::new();
        match f(m, &mut rng, &mut ck) {
            Ok(Draw::Degenerate) => rep.resampled += 1,
            Ok(Draw::Done) => {
                rep.worst_precision_margin = ck.margin;
                if let Some(msg) = ck.failure {
                    rep.failures = 1;
                    rep.first_failure = Some(Failure { trial: i, message: msg });
                }
                return rep;
            }
            Err(e) => {
                rep.failures = 1;
                rep.first_failure = Some(Failure {
                    trial: i,
                    message: e.to_string(),
                });
                return rep;
            }
        }
    }
    rep.failures = 1;
    rep.first_failure = Some(Failure {
        trial: i,
        message: "too many degenerate draws".into(),
    });
    rep
}

/// Run `cfg.trials` seeded trials of `suite` in parallel.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<TrialReport> {
    suite.check_hypotheses(cfg.p, cfg.ramified)?;
    let m = LocalModel::quadratic(cfg.p, cfg.ramified, cfg.precision)?;
    let empty = TrialReport::empty(suite, cfg);
    Ok((0..cfg.trials)
        .into_par_iter()
        .map(|i| run_one(suite, &m, cfg, i))
        .reduce(|| empty.clone(), TrialReport::merge))
}
