//! A learner for `H = {f_0, ..., f_{3^d - 1}}` making at most `d` mistakes.
//!
//! A point `x` is ℓ-informative for the hidden index `r` when the top
//! `ℓ - 1` ternary digits of `x` and `r` agree and `f_r(x) != y_x`. After
//! each mistake the learner holds a witness one level more informative; a
//! `d`-informative witness pins `r` down completely.

use std::sync::Arc;

use crate::game::{Learner, LearnerUpdate, Prediction};
use crate::hypotheses::{Hypothesis, Point};

use super::ternary::{digit, ternary_value};
use super::{pow3, AdversaryError};

/// What a mistake on the pending prediction teaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OnMistake {
    /// The prediction was forced; a mistake means the class is wrong.
    Impossible,
    /// The queried point becomes the next witness.
    AdoptQuery(u64),
    /// The current witness is one level more informative.
    KeepWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformativeState {
    /// Informativeness of `witness` (0 before the first mistake).
    pub level: u32,
    pub witness: Option<u64>,
    pub recovered: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct InformativeLearner {
    d: u32,
    n: u64,
    labels: Vec<bool>,
    state: InformativeState,
    pending: OnMistake,
}

impl InformativeLearner {
    /// `labels` are `y_0, ..., y_{3^d - 1}`, which define the class.
    pub fn new(d: u32, labels: Vec<bool>) -> Result<Self, AdversaryError> {
        if d == 0 {
            return Err(AdversaryError::InvalidParameter("d must be at least 1".into()));
        }
        let n = pow3(d)?;
        if (labels.len() as u64) < n {
            return Err(AdversaryError::ShortLabels {
                got: labels.len(),
                need: n as usize,
            });
        }
        Ok(InformativeLearner {
            d,
            n,
            labels,
            state: InformativeState {
                level: 0,
                witness: None,
                recovered: None,
            },
            pending: OnMistake::Impossible,
        })
    }

    pub fn state(&self) -> &InformativeState {
        &self.state
    }

    fn label(&self, x: u64) -> bool {
        self.labels[x as usize]
    }

    /// Raises the level; at level `d` the index is read off the witness.
    fn promote(&mut self) -> Result<(), AdversaryError> {
        self.state.level += 1;
        if self.state.level < self.d {
            return Ok(());
        }
        let x = self.state.witness.expect("promoted without a witness");
        let last = digit(x, 0);
        let r0 = match last {
            1 => 0,
            2 => u64::from(!self.label(x)),
            _ => return Err(AdversaryError::InconsistentOracleClass),
        };
        self.state.recovered = Some(x - u64::from(last) + r0);
        Ok(())
    }

    pub fn predict_label(&mut self, z: u64) -> Result<bool, AdversaryError> {
        if z >= self.n {
            self.pending = OnMistake::Impossible;
            return Ok(false);
        }
        loop {
            if let Some(r) = self.state.recovered {
                self.pending = OnMistake::Impossible;
                return Ok(ternary_value(r, self.d, &self.labels, z));
            }
            let Some(x) = self.state.witness else {
                self.pending = OnMistake::AdoptQuery(z);
                return Ok(self.label(z));
            };
            let level = self.state.level;
            // the top level-1 digits of x are those of r
            let known = (self.d - level + 1..self.d).rev();
            if let Some(i) = known.clone().find(|&i| digit(z, i) != digit(x, i)) {
                self.pending = OnMistake::Impossible;
                return Ok(if digit(z, i) < digit(x, i) {
                    self.label(z)
                } else {
                    digit(x, i) == 1
                });
            }
            let pos = self.d - level;
            let (a, b) = (digit(x, pos), digit(z, pos));
            if a == 0 {
                self.promote()?;
                continue;
            }
            if b == 0 {
                self.pending = OnMistake::AdoptQuery(z);
                return Ok(self.label(z));
            }
            if a <= b {
                self.pending = OnMistake::KeepWitness;
                return Ok(!self.label(x));
            }
            // a = 2, b = 1
            if !self.label(x) {
                self.pending = OnMistake::AdoptQuery(z);
                return Ok(self.label(z));
            }
            self.pending = OnMistake::KeepWitness;
            return Ok(false);
        }
    }

    /// Feedback for the last prediction.
    pub fn update(&mut self, prediction: bool, label: bool) -> Result<(), AdversaryError> {
        if prediction == label {
            return Ok(());
        }
        match self.pending {
            OnMistake::Impossible => return Err(AdversaryError::InconsistentOracleClass),
            OnMistake::AdoptQuery(z) => self.state.witness = Some(z),
            OnMistake::KeepWitness => {}
        }
        self.pending = OnMistake::Impossible;
        self.promote()
    }
}

impl Learner for InformativeLearner {
    fn name(&self) -> String {
        format!("informative:{}", self.d)
    }

    fn predict(&mut self, x: Point) -> crate::Result<Prediction> {
        Ok(Prediction {
            label: self.predict_label(x.0)?,
            vote_width: 0,
        })
    }

    fn observe(
        &mut self,
        _x: Point,
        prediction: bool,
        label: bool,
        _revealed: &Arc<Hypothesis>,
    ) -> crate::Result<LearnerUpdate> {
        self.update(prediction, label)?;
        Ok(LearnerUpdate::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::ternary_function;

    /// Plays every f_r on the given order and returns the worst mistake count.
    fn worst_case(d: u32, labels: &[bool], order: &[u64]) -> usize {
        let n = 3u64.pow(d);
        (0..n)
            .map(|r| {
                let f = ternary_function(r, d, labels).unwrap();
                let mut l = InformativeLearner::new(d, labels.to_vec()).unwrap();
                order
                    .iter()
                    .filter(|&&z| {
                        let p = l.predict_label(z).unwrap();
                        let y = f.evaluate(Point(z));
                        l.update(p, y).unwrap();
                        p != y
                    })
                    .count()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn recovers_last_digit_one() {
        // d = 1, witness x = 1 (a = 1) -> r = 0
        let labels = vec![true, true, true];
        let mut l = InformativeLearner::new(1, labels).unwrap();
        let p = l.predict_label(1).unwrap();
        l.update(p, !p).unwrap();
        assert_eq!(l.state().recovered, Some(0));
    }

    #[test]
    fn recovers_last_digit_two() {
        // d = 1, witness x = 2 (a = 2), y_2 = 1 -> r_0 = 0; y_2 = 0 -> r_0 = 1
        for (y2, expect) in [(true, 0), (false, 1)] {
            let labels = vec![true, false, y2];
            let mut l = InformativeLearner::new(1, labels).unwrap();
            let p = l.predict_label(2).unwrap();
            l.update(p, !p).unwrap();
            assert_eq!(l.state().recovered, Some(expect));
        }
    }

    #[test]
    fn at_most_d_mistakes_in_natural_orders() {
        for d in 1..=3 {
            let n = 3u64.pow(d);
            for pattern in 0..4u64 {
                let labels: Vec<bool> = (0..n).map(|i| (i * (pattern + 1) + pattern) % 3 == 0).collect();
                let up: Vec<u64> = (0..n + 2).collect();
                let down: Vec<u64> = (0..n + 2).rev().collect();
                assert!(worst_case(d, &labels, &up) <= d as usize);
                assert!(worst_case(d, &labels, &down) <= d as usize);
            }
        }
    }

    #[test]
    fn out_of_range_is_zero() {
        let mut l = InformativeLearner::new(2, vec![true; 9]).unwrap();
        assert!(!l.predict_label(9).unwrap());
        assert_eq!(l.update(false, true), Err(AdversaryError::InconsistentOracleClass));
    }
}
