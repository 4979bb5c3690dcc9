use std::sync::Arc;

use crate::game::{Learner, LearnerUpdate, Prediction};
use crate::hypotheses::{Hypothesis, Point};

use super::{LearnerError, LearnerState, OracleSource, ProcedureSchedule};

/// Game-driven form of the learner: runs `VoteAndUpdate` procedures in
/// schedule order, switching procedure after every mistake.
#[derive(Debug, Clone)]
pub struct ConsistentLearner {
    state: LearnerState,
    schedule: ProcedureSchedule,
    current: Option<u32>,
    executed: Vec<u32>,
}

impl ConsistentLearner {
    pub fn new(schedule: ProcedureSchedule, oracle: OracleSource) -> Result<Self, LearnerError> {
        let mut learner = ConsistentLearner {
            state: LearnerState::new(oracle),
            schedule,
            current: None,
            executed: Vec::new(),
        };
        learner.enter_next()?;
        Ok(learner)
    }

    /// The dimension-independent learner.
    pub fn predict() -> Self {
        ConsistentLearner::new(ProcedureSchedule::predict(), OracleSource::Revealed)
            .expect("first procedure has width 0")
    }

    /// `CreateAdvanced(k)`; halts after its last procedure.
    pub fn create_advanced(k: u32) -> Self {
        ConsistentLearner::new(ProcedureSchedule::create_advanced(k), OracleSource::Revealed)
            .expect("first procedure has width 0")
    }

    pub fn state(&self) -> &LearnerState {
        &self.state
    }

    /// Parameters of the procedures finished so far.
    pub fn executed(&self) -> &[u32] {
        &self.executed
    }

    pub fn current_procedure(&self) -> Option<u32> {
        self.current
    }

    fn enter_next(&mut self) -> Result<(), LearnerError> {
        self.current = self.schedule.next();
        if let Some(k) = self.current {
            let active = self.state.active().len();
            if k >= 1 && (k >= usize::BITS - 1 || active < 1 << k) {
                return Err(LearnerError::ScheduleViolation { k, active });
            }
        }
        Ok(())
    }
}

impl Learner for ConsistentLearner {
    fn name(&self) -> String {
        self.schedule.name().to_string()
    }

    fn predict(&mut self, x: Point) -> crate::Result<Prediction> {
        let k = self.current.ok_or(LearnerError::Halted)?;
        Ok(self.state.vote(x, k)?)
    }

    fn observe(
        &mut self,
        x: Point,
        prediction: bool,
        label: bool,
        revealed: &Arc<Hypothesis>,
    ) -> crate::Result<LearnerUpdate> {
        if prediction == label {
            return Ok(LearnerUpdate::default());
        }
        let k = self.current.ok_or(LearnerError::Halted)?;
        let update = self
            .state
            .apply_mistake(k, x, prediction, label, Some(revealed))?;
        self.executed.push(k);
        self.enter_next()?;
        Ok(update)
    }

    fn active_count(&self) -> usize {
        self.state.active().len()
    }

    fn halted(&self) -> bool {
        self.current.is_none()
    }
}
