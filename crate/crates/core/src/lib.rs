//! Online learning in the consistent-oracle model.
//!
//! The crate contains
//!
//! * an extensional data model for hypotheses, classes and samples, with
//!   consistent oracles over them ([`hypotheses`]);
//! * exact Littlestone-dimension machinery: memoized dimension search,
//!   shattered-tree certificates, the mistake game's minimax value and the
//!   Standard Optimal Algorithm ([`littlestone`]);
//! * the majority-vote learner that only talks to a consistent oracle,
//!   driven either by a fixed `CreateAdvanced(k)` plan or by the
//!   dimension-independent schedule ([`learner`]);
//! * adversaries that force `2^{d+1} - 1` and `3^d` mistakes, the
//!   class-constrained adversaries used for upper-bound testing, and the
//!   `d`-mistake learner for the ternary class ([`adversary`]);
//! * a round engine that enforces legality and records transcripts
//!   ([`game`]), and the command-line front end ([`cli`]).

pub mod adversary;
pub mod cli;
pub mod game;
pub mod hypotheses;
pub mod learner;
pub mod littlestone;

use thiserror::Error;

pub use num_rational::Ratio;

/// Exact rational advancement parameter.
pub type ExactGamma = Ratio<i64>;
/// Floating-point advancement parameter (compared with a small tolerance).
pub type FloatGamma = f64;

pub use adversary::{
    ClassGreedyAdversary, ClassRandomAdversary, FloodAdversary, FreeAdversary,
    InformativeLearner, TargetAdversary, TernaryAdversary,
};
pub use game::{run_game, Adversary, GameConfig, Learner, Transcript, Validation};
pub use hypotheses::{Hypothesis, HypothesisClass, Point, Sample};
pub use learner::{check_advanced, ConsistentLearner, ProcedureSchedule};
pub use littlestone::{find_shattered_tree, ldim, LabeledTree, SoaLearner, VersionSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Hypothesis(#[from] hypotheses::HypothesisError),
    #[error(transparent)]
    Ldim(#[from] littlestone::LdimError),
    #[error(transparent)]
    Learner(#[from] learner::LearnerError),
    #[error(transparent)]
    Adversary(#[from] adversary::AdversaryError),
    #[error(transparent)]
    Game(#[from] game::GameError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
