//! The lemma registry and the parallel instance runner.

use std::time::Instant;

use forcing_core::{Budget, Error};
use rayon::prelude::*;
use thiserror::Error as ThisError;

use crate::lemmas as defs;
use crate::report::{Counterexample, LemmaReport};

#[derive(Debug, ThisError)]
pub enum HarnessError {
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("lemma `{id}` accepts max_n up to {limit}, got {requested}")]
    SizeLimit {
        id: String,
        requested: usize,
        limit: usize,
    },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub workers: usize,
    /// Node budget for each solver query.
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            workers: 1,
            budget: Budget::DEFAULT_LIMIT,
        }
    }
}

pub struct Lemma {
    pub id: &'static str,
    pub statement: &'static str,
    /// Size used when none is given. Its meaning (graph order, number of
    /// variables, Latin square order, ...) is part of the statement.
    pub default_max_n: usize,
    pub limit_max_n: usize,
    pub(crate) run: fn(&mut Ctx) -> Result<(), Error>,
}

pub(crate) enum Outcome {
    Pass,
    /// A batch of this many instances all passed.
    PassMany(u64),
    /// The premise does not hold; the instance is not counted.
    Skip,
    Fail { expected: String, actual: String },
}

impl Outcome {
    pub(crate) fn fail(expected: impl ToString, actual: impl ToString) -> Self {
        Outcome::Fail {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub(crate) fn expect_eq<T: PartialEq + std::fmt::Display>(expected: T, actual: T) -> Self {
        if expected == actual {
            Outcome::Pass
        } else {
            Outcome::fail(expected, actual)
        }
    }
}

/// Return a failure from the enclosing check unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $expected:expr, $actual:expr) => {
        if !$cond {
            return Ok($crate::registry::Outcome::fail($expected, $actual));
        }
    };
}
pub(crate) use ensure;

pub(crate) struct Ctx {
    pub max_n: usize,
    pub seed: u64,
    budget: u64,
    pool: rayon::ThreadPool,
    checked: u64,
    counterexamples: Vec<Counterexample>,
    budget_exhausted: bool,
}

impl Ctx {
    /// Check every item in parallel and fold the outcomes in item order.
    pub(crate) fn run<T, E, C>(&mut self, items: &[T], encode: E, check: C)
    where
        T: Sync,
        E: Fn(&T) -> String,
        C: Fn(&T, &mut Budget) -> Result<Outcome, Error> + Sync,
    {
        let limit = self.budget;
        let results: Vec<Result<Outcome, Error>> = self.pool.install(|| {
            items
                .par_iter()
                .map(|item| check(item, &mut Budget::new(limit)))
                .collect()
        });
        for (item, r) in items.iter().zip(results) {
            match r {
                Ok(Outcome::Pass) => self.checked += 1,
                Ok(Outcome::PassMany(k)) => self.checked += k,
                Ok(Outcome::Skip) => {}
                Ok(Outcome::Fail { expected, actual }) => {
                    self.checked += 1;
                    self.counterexamples.push(Counterexample {
                        instance: encode(item),
                        expected,
                        actual,
                    });
                }
                Err(e) if e.is_budget() => self.budget_exhausted = true,
                Err(e) => {
                    self.checked += 1;
                    self.counterexamples.push(Counterexample {
                        instance: encode(item),
                        expected: "no error".into(),
                        actual: e.to_string(),
                    });
                }
            }
        }
    }
}

static LEMMAS: &[Lemma] = &[
    defs::products::CHIOFCHART,
    defs::products::CHIOFCAT,
    defs::products::PROP23_AND,
    defs::products::PROP23_OR,
    defs::products::GRLO,
    defs::products::C1,
    defs::products::C2,
    defs::forcing::GOLDEN,
    defs::forcing::BASIC_BOUNDS,
    defs::forcing::BASIC_ITEM2,
    defs::forcing::GK_FAMILY,
    defs::forcing::FCRECOGN,
    defs::forcing::BIPARTITE_COMPONENTS,
    defs::forcing::RED1,
    defs::forcing::RED2,
    defs::forcing::PROOF1,
    defs::forcing::F2_TRANSFORM,
    defs::forcing::B,
    defs::forcing::PROOF2,
    defs::forcing::HAJ,
    defs::npopt::UOVSF,
    defs::npopt::DTT_IFF,
    defs::npopt::CHI_ENCODING,
    defs::npopt::FORCE_SET_ORACLE,
    defs::npopt::UOTAU,
    defs::npopt::REDUCTION_AB,
    defs::npopt::PLUS1_OMEGA,
    defs::npopt::PLUS1_GAMMA,
    defs::sat::GS3TOOM,
    defs::sat::UOOM,
    defs::sat::SAT_TO_3SAT,
    defs::sat::USAND,
    defs::latin::LATIN_CORRESPONDENCE,
    defs::latin::LATIN_CRITICAL,
];

pub fn lemmas() -> &'static [Lemma] {
    LEMMAS
}

pub fn lemma(id: &str) -> Option<&'static Lemma> {
    LEMMAS.iter().find(|l| l.id == id)
}

/// Check one lemma over its family at size `max_n` (the registry default
/// when `None`). Equal arguments give equal reports, whatever the worker
/// count, apart from `elapsed`.
pub fn verify(
    id: &str,
    max_n: Option<usize>,
    seed: u64,
    opts: &Options,
) -> Result<LemmaReport, HarnessError> {
    let lemma = lemma(id).ok_or_else(|| HarnessError::UnknownLemma(id.to_string()))?;
    let max_n = max_n.unwrap_or(lemma.default_max_n);
    if max_n > lemma.limit_max_n {
        return Err(HarnessError::SizeLimit {
            id: id.to_string(),
            requested: max_n,
            limit: lemma.limit_max_n,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let start = Instant::now();
    let mut ctx = Ctx {
        max_n,
        seed,
        budget: opts.budget,
        pool,
        checked: 0,
        counterexamples: Vec::new(),
        budget_exhausted: false,
    };
    (lemma.run)(&mut ctx)?;
    Ok(LemmaReport {
        lemma_id: id.to_string(),
        max_n,
        seed,
        instances_checked: ctx.checked,
        counterexamples: ctx.counterexamples,
        budget_exhausted: ctx.budget_exhausted,
        elapsed: start.elapsed(),
    })
}

/// Every registered lemma at its default size, in registry order.
pub fn verify_all(seed: u64, opts: &Options) -> Result<Vec<LemmaReport>, HarnessError> {
    LEMMAS.iter().map(|l| verify(l.id, None, seed, opts)).collect()
}
