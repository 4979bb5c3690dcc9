//! The majority-vote learner that only sees the class through a consistent
//! oracle.
//!
//! The learner keeps an ordered, repetition-free list of oracle answers
//! (the active functions) and a sample `S` with one pair per mistake. A
//! `VoteAndUpdate(k)` step predicts by majority over the last `2^k` active
//! functions and, after its single mistake, either appends a fresh oracle
//! answer (`k = 0`) or halves the voting window. `CreateAdvanced(k)` nests
//! these steps; [`ProcedureSchedule::predict`] flattens all of them into a
//! single dimension-independent sequence.

mod active;
mod advanced;
mod consistent;
mod schedule;
mod state;

pub use active::ActiveList;
pub use advanced::{
    check_advanced, create_advanced_gamma, AdvancedReport, Gamma, SubsetMode, EXACT_SUBSET_LIMIT,
};
pub use consistent::ConsistentLearner;
pub use schedule::{create_advanced_flattening, procedure_width, ProcedureSchedule};
pub use state::{
    create_advanced, predict_learner, vote_and_update, Flow, LearnerState, OracleSource,
    RoundSource,
};

use thiserror::Error;

use crate::hypotheses::HypothesisError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LearnerError {
    #[error("consistent oracle failed on the mistake sample: {0}")]
    OracleFailure(HypothesisError),
    #[error("VoteAndUpdate({k}): only {agreeing} voters agree with the prediction")]
    InsufficientAgreement { k: u32, agreeing: usize },
    #[error("VoteAndUpdate({k}) entered with {active} active functions (< 2^{k})")]
    ScheduleViolation { k: u32, active: usize },
    #[error("active function `{id}` would repeat an existing active function")]
    RepeatedActiveFunction { id: String },
    #[error("voting width 2^{0} is too large")]
    WidthTooLarge(u32),
    #[error("the learner has halted")]
    Halted,
    #[error("set contains extensionally equal hypotheses; deduplicate first")]
    DuplicateHypotheses,
    #[error("set of hypotheses is empty")]
    EmptySet,
    #[error("exact subset enumeration over {size} hypotheses exceeds the limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
}

/// `R_k`: mistakes after which `CreateAdvanced(k)` halts,
/// `16 + 16^2 + ... + 16^{k+1}`.
pub fn mistakes_to_halt(k: u32) -> u128 {
    (0..=k).fold(0u128, |r, _| 16 * (r + 1))
}

/// `R_{2d-1}`: the learner makes fewer mistakes than this against any
/// adversary of dimension `d ≥ 1`.
pub fn mistake_budget(d: u32) -> u128 {
    assert!(d >= 1, "dimension bound must be at least 1");
    mistakes_to_halt(2 * d - 1)
}

/// `2 · 8^{k+1}`: net number of active functions `CreateAdvanced(k)` adds.
pub fn appended_functions(k: u32) -> u128 {
    2 * 8u128.pow(k + 1)
}
