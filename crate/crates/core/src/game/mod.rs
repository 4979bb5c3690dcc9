//! The learner/adversary round engine.
//!
//! Each round the adversary names a point, the learner predicts a bit, and
//! the adversary answers with a label together with a function that must
//! agree with every label revealed so far. The formally infinite game is
//! cut off by a round cap, by the adversary running out of points, or by
//! the learner halting.

mod record;

pub use record::{read_transcript, write_transcript, Record};

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypotheses::{Hypothesis, Point, Sample};
use crate::littlestone::ldim_of;

/// Revealed-function count above which the dimension check is skipped.
pub const LDIM_VALIDATION_LIMIT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("round {round}: adversary function `{f_id}` disagrees with the revealed labels")]
    IllegalAdversaryFunction { round: usize, f_id: String },
    #[error("round {round}: revealed functions have Littlestone dimension {ldim} > {bound}")]
    DimensionViolation { round: usize, ldim: u32, bound: u32 },
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),
    #[error("transcript: {0}")]
    Transcript(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub label: bool,
    /// Number of voters (`2^k`), or 0 when the learner does not vote.
    pub vote_width: u64,
}

/// Active-list changes made by a learner in one round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LearnerUpdate {
    pub appended: Vec<String>,
    pub deleted: Vec<String>,
}

pub trait Learner: Send {
    fn name(&self) -> String;

    fn predict(&mut self, x: Point) -> crate::Result<Prediction>;

    /// Called once per round with the adversary's label and function.
    fn observe(
        &mut self,
        x: Point,
        prediction: bool,
        label: bool,
        revealed: &Arc<Hypothesis>,
    ) -> crate::Result<LearnerUpdate>;

    fn active_count(&self) -> usize {
        0
    }

    /// A halted learner ends the game.
    fn halted(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone)]
pub struct Reply {
    pub label: bool,
    pub function: Arc<Hypothesis>,
}

pub trait Adversary: Send {
    fn name(&self) -> String;

    /// `None` once the adversary has nothing left to play.
    fn next_point(&mut self) -> Option<Point>;

    fn respond(&mut self, x: Point, prediction: bool) -> crate::Result<Reply>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validation {
    /// Every revealed function is checked against the full history.
    Consistency,
    /// Additionally bounds the dimension of the revealed functions.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    /// Declared dimension bound; `None` for unconstrained play.
    pub dimension: Option<u32>,
    pub round_cap: usize,
    pub seed: u64,
    pub validation: Validation,
}

impl GameConfig {
    pub fn new(dimension: Option<u32>, round_cap: usize) -> Self {
        GameConfig {
            dimension,
            round_cap,
            seed: 0,
            validation: Validation::Consistency,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_validation(mut self, validation: Validation) -> Self {
        self.validation = validation;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub index: usize,
    pub x: Point,
    pub y_hat: bool,
    pub y: bool,
    pub mistake: bool,
    pub f_id: String,
    pub vote_width: u64,
    pub active_count: usize,
    pub appended: Vec<String>,
    pub deleted: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    AdversaryDone,
    LearnerHalted,
    RoundCapReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdimStatus {
    NotRequested,
    Passed,
    /// Too many distinct revealed functions; checked up to this round only.
    SkippedSizeGuard { from_round: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptHeader {
    pub learner: String,
    pub adversary: String,
    pub dimension: Option<u32>,
    pub round_cap: usize,
    pub seed: u64,
    pub validation: Validation,
}

#[derive(Debug, Clone)]
pub struct Transcript {
    pub header: TranscriptHeader,
    pub rounds: Vec<Round>,
    /// The function revealed in each round.
    pub functions: Vec<Arc<Hypothesis>>,
    pub mistake_count: usize,
    pub termination: Termination,
    pub ldim_status: LdimStatus,
}

impl Transcript {
    pub fn recount_mistakes(&self) -> usize {
        self.rounds.iter().filter(|r| r.mistake).count()
    }

    pub fn history(&self) -> Sample {
        self.rounds.iter().map(|r| (r.x, r.y)).collect()
    }

    /// Revealed functions without extensional duplicates, first occurrence
    /// first.
    pub fn distinct_functions(&self) -> Vec<Hypothesis> {
        let mut seen = HashSet::new();
        self.functions
            .iter()
            .filter(|f| seen.insert(Arc::clone(f)))
            .map(|f| (**f).clone())
            .collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        write_transcript(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 json")
    }
}

/// Labels revealed so far, one entry per distinct point.
#[derive(Default)]
struct Assignments {
    labels: HashMap<Point, bool>,
    order: Vec<(Point, bool)>,
}

impl Assignments {
    /// Records `(x, y)`; false if `x` already carries the other label.
    fn add(&mut self, x: Point, y: bool) -> bool {
        match self.labels.get(&x) {
            Some(&prev) => prev == y,
            None => {
                self.labels.insert(x, y);
                self.order.push((x, y));
                true
            }
        }
    }

    fn agrees(&self, f: &Hypothesis) -> bool {
        self.order.iter().all(|&(x, y)| f.evaluate(x) == y)
    }
}

/// Tracks the distinct revealed functions and their dimension.
struct DimensionGuard {
    bound: Option<u32>,
    seen: HashSet<Arc<Hypothesis>>,
    distinct: Vec<Hypothesis>,
    status: LdimStatus,
}

impl DimensionGuard {
    fn new(bound: Option<u32>, enabled: bool) -> Self {
        DimensionGuard {
            bound: bound.filter(|_| enabled),
            seen: HashSet::new(),
            distinct: Vec::new(),
            status: if enabled && bound.is_some() {
                LdimStatus::Passed
            } else {
                LdimStatus::NotRequested
            },
        }
    }

    fn add(&mut self, round: usize, f: &Arc<Hypothesis>) -> Result<(), GameError> {
        let Some(bound) = self.bound else {
            return Ok(());
        };
        if matches!(self.status, LdimStatus::SkippedSizeGuard { .. }) || !self.seen.insert(Arc::clone(f)) {
            return Ok(());
        }
        self.distinct.push((**f).clone());
        if self.distinct.len() > LDIM_VALIDATION_LIMIT {
            self.status = LdimStatus::SkippedSizeGuard { from_round: round };
            self.distinct.clear();
            return Ok(());
        }
        let ldim = ldim_of(&self.distinct).expect("at least one revealed function");
        if ldim > bound {
            return Err(GameError::DimensionViolation { round, ldim, bound });
        }
        Ok(())
    }
}

/// Plays `learner` against `adversary` until one of them stops or the
/// round cap is hit.
pub fn run_game(
    learner: &mut dyn Learner,
    adversary: &mut dyn Adversary,
    config: &GameConfig,
) -> crate::Result<Transcript> {
    if config.round_cap == 0 {
        return Err(GameError::InvalidConfig("round cap must be at least 1".into()).into());
    }
    let header = TranscriptHeader {
        learner: learner.name(),
        adversary: adversary.name(),
        dimension: config.dimension,
        round_cap: config.round_cap,
        seed: config.seed,
        validation: config.validation,
    };
    let mut rounds = Vec::new();
    let mut functions: Vec<Arc<Hypothesis>> = Vec::new();
    let mut assignments = Assignments::default();
    let mut guard = DimensionGuard::new(config.dimension, config.validation == Validation::Full);
    let mut mistake_count = 0;

    let termination = loop {
        if rounds.len() >= config.round_cap {
            break Termination::RoundCapReached;
        }
        if learner.halted() {
            break Termination::LearnerHalted;
        }
        let Some(x) = adversary.next_point() else {
            break Termination::AdversaryDone;
        };
        let index = rounds.len();
        let prediction = learner.predict(x)?;
        let reply = adversary.respond(x, prediction.label)?;
        let illegal = || GameError::IllegalAdversaryFunction {
            round: index,
            f_id: reply.function.id().to_string(),
        };
        if !assignments.add(x, reply.label) {
            return Err(illegal().into());
        }
        let unchanged = functions.last().is_some_and(|prev| Arc::ptr_eq(prev, &reply.function));
        let legal = if unchanged {
            reply.function.evaluate(x) == reply.label
        } else {
            assignments.agrees(&reply.function)
        };
        if !legal {
            return Err(illegal().into());
        }
        guard.add(index, &reply.function)?;

        let update = learner.observe(x, prediction.label, reply.label, &reply.function)?;
        let mistake = prediction.label != reply.label;
        mistake_count += usize::from(mistake);
        rounds.push(Round {
            index,
            x,
            y_hat: prediction.label,
            y: reply.label,
            mistake,
            f_id: reply.function.id().to_string(),
            vote_width: prediction.vote_width,
            active_count: learner.active_count(),
            appended: update.appended,
            deleted: update.deleted,
        });
        functions.push(reply.function);
    };

    Ok(Transcript {
        header,
        rounds,
        functions,
        mistake_count,
        termination,
        ldim_status: guard.status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ContradictoryLabels { round: usize, x: Point },
    InconsistentFunction { round: usize, f_id: String },
    MistakeFlag { round: usize },
    MistakeCount { stored: usize, actual: usize },
    DimensionExceeded { round: usize, ldim: u32, bound: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub first_violation: Option<Violation>,
    pub ldim: LdimStatus,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Offline re-check of a stored transcript: per-round consistency, mistake
/// accounting and, when at most [`LDIM_VALIDATION_LIMIT`] distinct
/// functions were revealed, the dimension bound `d`.
pub fn validate_transcript(t: &Transcript, d: Option<u32>) -> ValidationReport {
    let fail = |v: Violation, ldim: LdimStatus| ValidationReport {
        first_violation: Some(v),
        ldim,
    };
    let mut assignments = Assignments::default();
    for (round, f) in t.rounds.iter().zip(&t.functions) {
        if !assignments.add(round.x, round.y) {
            return fail(
                Violation::ContradictoryLabels {
                    round: round.index,
                    x: round.x,
                },
                LdimStatus::NotRequested,
            );
        }
        if !assignments.agrees(f) {
            return fail(
                Violation::InconsistentFunction {
                    round: round.index,
                    f_id: round.f_id.clone(),
                },
                LdimStatus::NotRequested,
            );
        }
        if round.mistake != (round.y_hat != round.y) {
            return fail(Violation::MistakeFlag { round: round.index }, LdimStatus::NotRequested);
        }
    }
    let actual = t.recount_mistakes();
    if actual != t.mistake_count {
        return fail(
            Violation::MistakeCount {
                stored: t.mistake_count,
                actual,
            },
            LdimStatus::NotRequested,
        );
    }
    let Some(bound) = d else {
        return ValidationReport {
            first_violation: None,
            ldim: LdimStatus::NotRequested,
        };
    };
    let mut guard = DimensionGuard::new(Some(bound), true);
    for (round, f) in t.rounds.iter().zip(&t.functions) {
        match guard.add(round.index, f) {
            Ok(()) => {}
            Err(GameError::DimensionViolation { round, ldim, bound }) => {
                return fail(
                    Violation::DimensionExceeded { round, ldim, bound },
                    LdimStatus::Passed,
                );
            }
            Err(_) => unreachable!("dimension guard only reports violations"),
        }
    }
    ValidationReport {
        first_violation: None,
        ldim: guard.status,
    }
}
