//! Adversary strategies and the `d`-mistake learner for the ternary class.

mod class;
mod flood;
mod informative;
mod ternary;

pub use class::{ClassGreedyAdversary, ClassRandomAdversary, TargetAdversary};
pub use flood::{FloodAdversary, FreeAdversary};
pub use informative::{InformativeLearner, InformativeState};
pub use ternary::{ternary_function, ternary_value, TernaryAdversary, TernaryExpansion};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdversaryError {
    #[error("observed labels contradict every function of the ternary class")]
    InconsistentOracleClass,
    #[error("history is not realizable in the adversary's class")]
    NonRealizable,
    #[error("invalid adversary parameter: {0}")]
    InvalidParameter(String),
    #[error("label sequence has {got} entries, need {need}")]
    ShortLabels { got: usize, need: usize },
}

/// `3^d`, checked.
pub fn pow3(d: u32) -> Result<u64, AdversaryError> {
    3u64.checked_pow(d)
        .ok_or_else(|| AdversaryError::InvalidParameter(format!("3^{d} overflows")))
}
