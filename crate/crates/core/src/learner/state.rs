use std::sync::Arc;

use crate::game::{Adversary, LearnerUpdate, Prediction};
use crate::hypotheses::{ConsistentOracle, HypothesisError, Hypothesis, Point, Sample};

use super::{procedure_width, ActiveList, LearnerError};

/// Where fresh active functions come from.
#[derive(Clone, Default)]
pub enum OracleSource {
    /// The function the adversary revealed in the mistaken round. It agrees
    /// with the whole history, hence with the mistake sample.
    #[default]
    Revealed,
    External(Arc<dyn ConsistentOracle>),
}

impl std::fmt::Debug for OracleSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleSource::Revealed => f.write_str("Revealed"),
            OracleSource::External(_) => f.write_str("External(..)"),
        }
    }
}

/// Active functions plus the mistake sample `S`.
#[derive(Debug, Clone, Default)]
pub struct LearnerState {
    active: ActiveList,
    mistakes: Sample,
    oracle: OracleSource,
}

fn window(k: u32) -> Result<usize, LearnerError> {
    if k >= usize::BITS - 1 {
        return Err(LearnerError::WidthTooLarge(k));
    }
    Ok(1usize << k)
}

impl LearnerState {
    pub fn new(oracle: OracleSource) -> Self {
        LearnerState {
            oracle,
            ..LearnerState::default()
        }
    }

    pub fn active(&self) -> &ActiveList {
        &self.active
    }

    pub fn mistakes(&self) -> &Sample {
        &self.mistakes
    }

    pub fn mistake_count(&self) -> usize {
        self.mistakes.len()
    }

    /// Majority of the last `2^k` active functions at `x` (ties predict 1),
    /// or 0 when fewer than `2^k` are active.
    pub fn vote(&self, x: Point, k: u32) -> Result<Prediction, LearnerError> {
        let width = window(k)?;
        let l = self.active.len();
        if l < width {
            return Ok(Prediction {
                label: false,
                vote_width: 0,
            });
        }
        let ones = self.active.as_slice()[l - width..]
            .iter()
            .filter(|g| g.evaluate(x))
            .count();
        Ok(Prediction {
            label: 2 * ones >= width,
            vote_width: width as u64,
        })
    }

    fn query(&self, revealed: Option<&Arc<Hypothesis>>) -> Result<Arc<Hypothesis>, LearnerError> {
        match (&self.oracle, revealed) {
            (OracleSource::External(oracle), _) => oracle
                .query(&self.mistakes)
                .map(Arc::new)
                .map_err(LearnerError::OracleFailure),
            (OracleSource::Revealed, Some(f)) if f.is_consistent(&self.mistakes) => Ok(Arc::clone(f)),
            (OracleSource::Revealed, _) => {
                Err(LearnerError::OracleFailure(HypothesisError::NonRealizable))
            }
        }
    }

    /// The update after `VoteAndUpdate(k)` predicted `y_hat` at `x` and the
    /// label was `y != y_hat`.
    pub fn apply_mistake(
        &mut self,
        k: u32,
        x: Point,
        y_hat: bool,
        y: bool,
        revealed: Option<&Arc<Hypothesis>>,
    ) -> Result<LearnerUpdate, LearnerError> {
        debug_assert_ne!(y_hat, y);
        let width = window(k)?;
        self.mistakes.push(x, y);
        let l = self.active.len();
        let mut update = LearnerUpdate::default();
        if k == 0 || l < width {
            let f = self.query(revealed)?;
            update.appended.push(f.id().to_string());
            self.active.push(f)?;
        } else {
            let start = l - width;
            let half = width / 2;
            let agreeing: Vec<usize> = (start..l)
                .filter(|&i| self.active.get(i).evaluate(x) == y_hat)
                .collect();
            if agreeing.len() < half {
                return Err(LearnerError::InsufficientAgreement {
                    k,
                    agreeing: agreeing.len(),
                });
            }
            // keep the earliest `half` agreeing voters
            let kept = &agreeing[..half];
            let doomed: Vec<usize> = (start..l).filter(|i| !kept.contains(i)).collect();
            update.deleted = self
                .active
                .remove_indices(&doomed)
                .iter()
                .map(|f| f.id().to_string())
                .collect();
        }
        Ok(update)
    }
}

/// Pull-style access to a game: the learner asks for points and hands over
/// predictions.
pub trait RoundSource {
    fn next_point(&mut self) -> Option<Point>;

    /// Label and revealed function for the prediction at `x`.
    fn reveal(&mut self, x: Point, prediction: bool) -> crate::Result<(bool, Arc<Hypothesis>)>;
}

impl<A: Adversary + ?Sized> RoundSource for A {
    fn next_point(&mut self) -> Option<Point> {
        Adversary::next_point(self)
    }

    fn reveal(&mut self, x: Point, prediction: bool) -> crate::Result<(bool, Arc<Hypothesis>)> {
        let reply = self.respond(x, prediction)?;
        Ok((reply.label, reply.function))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Completed,
    /// The round source ran dry before the procedure finished.
    Stopped,
}

/// Runs `VoteAndUpdate(k)` until its single mistake.
pub fn vote_and_update(
    state: &mut LearnerState,
    k: u32,
    rounds: &mut (impl RoundSource + ?Sized),
) -> crate::Result<Flow> {
    loop {
        let Some(x) = rounds.next_point() else {
            return Ok(Flow::Stopped);
        };
        let y_hat = state.vote(x, k)?.label;
        let (y, f) = rounds.reveal(x, y_hat)?;
        if y != y_hat {
            state.apply_mistake(k, x, y_hat, y, Some(&f))?;
            return Ok(Flow::Completed);
        }
    }
}

/// `CreateAdvanced(k)`: sixteen `VoteAndUpdate(0)` calls for `k = 0`;
/// otherwise sixteen rounds of `CreateAdvanced(k - 1)` followed by
/// `VoteAndUpdate(3k + 1)`.
pub fn create_advanced(
    state: &mut LearnerState,
    k: u32,
    rounds: &mut (impl RoundSource + ?Sized),
) -> crate::Result<Flow> {
    for _ in 0..16 {
        let flow = if k == 0 {
            vote_and_update(state, 0, rounds)?
        } else {
            match create_advanced(state, k - 1, rounds)? {
                Flow::Completed => vote_and_update(state, 3 * k + 1, rounds)?,
                Flow::Stopped => Flow::Stopped,
            }
        };
        if flow == Flow::Stopped {
            return Ok(Flow::Stopped);
        }
    }
    Ok(Flow::Completed)
}

/// The dimension-independent learner. Returns only when the round source
/// is exhausted.
pub fn predict_learner(
    state: &mut LearnerState,
    rounds: &mut (impl RoundSource + ?Sized),
) -> crate::Result<()> {
    let mut n: u64 = 1;
    loop {
        let mut rest = n;
        let mut i = 0;
        while rest.is_multiple_of(16) {
            rest /= 16;
            i += 1;
        }
        for j in 0..=i {
            let k = procedure_width(j);
            if k >= 1 && state.active().len() < 1 << k {
                return Err(LearnerError::ScheduleViolation {
                    k,
                    active: state.active().len(),
                }
                .into());
            }
            if vote_and_update(state, k, rounds)? == Flow::Stopped {
                return Ok(());
            }
        }
        n += 1;
    }
}
