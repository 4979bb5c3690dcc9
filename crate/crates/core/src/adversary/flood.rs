use std::sync::Arc;

use crate::game::{Adversary, Reply};
use crate::hypotheses::{Hypothesis, Point};

use super::AdversaryError;

/// The history on fresh increasing points; its minimal extension is the
/// table itself.
#[derive(Debug, Clone, Default)]
struct History {
    points: Vec<Point>,
    labels: Vec<bool>,
}

impl History {
    fn len(&self) -> usize {
        self.points.len()
    }

    /// Records `(x, !prediction)` and reveals the minimal extension.
    fn contradict(&mut self, prefix: &str, x: Point, prediction: bool) -> crate::Result<Reply> {
        if self.points.last().is_some_and(|&p| p >= x) {
            return Err(AdversaryError::InvalidParameter(format!("point {x} is not fresh")).into());
        }
        let label = !prediction;
        let r = self.len();
        self.points.push(x);
        self.labels.push(label);
        let f = Hypothesis::new(format!("{prefix}{r}"), self.points.clone(), self.labels.clone())?;
        Ok(Reply {
            label,
            function: Arc::new(f),
        })
    }
}

/// Contradicts every prediction on the points `0, ..., 2^{d+1} - 2`.
///
/// Fewer than `2^{d+1}` functions are revealed, so their dimension stays at
/// most `d`.
#[derive(Debug, Clone)]
pub struct FloodAdversary {
    d: u32,
    n: u64,
    history: History,
}

impl FloodAdversary {
    pub fn new(d: u32) -> Result<Self, AdversaryError> {
        if d == 0 || d > 62 {
            return Err(AdversaryError::InvalidParameter(format!(
                "flood dimension {d} outside 1..=62"
            )));
        }
        Ok(FloodAdversary {
            d,
            n: (1u64 << (d + 1)) - 1,
            history: History::default(),
        })
    }

    pub fn points(&self) -> u64 {
        self.n
    }
}

impl Adversary for FloodAdversary {
    fn name(&self) -> String {
        format!("flood:{}", self.d)
    }

    fn next_point(&mut self) -> Option<Point> {
        let r = self.history.len() as u64;
        (r < self.n).then_some(Point(r))
    }

    fn respond(&mut self, x: Point, prediction: bool) -> crate::Result<Reply> {
        self.history.contradict("flood", x, prediction)
    }
}

/// Unconstrained: fresh points `0, 1, 2, ...`, every prediction
/// contradicted, the minimal extension of the history revealed.
#[derive(Debug, Clone, Default)]
pub struct FreeAdversary {
    history: History,
}

impl FreeAdversary {
    pub fn new() -> Self {
        FreeAdversary::default()
    }
}

impl Adversary for FreeAdversary {
    fn name(&self) -> String {
        "free".into()
    }

    fn next_point(&mut self) -> Option<Point> {
        Some(Point(self.history.len() as u64))
    }

    fn respond(&mut self, x: Point, prediction: bool) -> crate::Result<Reply> {
        self.history.contradict("free", x, prediction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_first_round() {
        let mut adv = FreeAdversary::new();
        let x = adv.next_point().unwrap();
        assert_eq!(x, Point(0));
        let reply = adv.respond(x, false).unwrap();
        assert!(reply.label);
        let ext = crate::hypotheses::minimal_extension_oracle(&[(0, true)].to_vec().into()).unwrap();
        assert_eq!(*reply.function, ext);
        assert_eq!(
            *reply.function,
            crate::hypotheses::Hypothesis::indicator("e", [], &[Point(0)])
        );
        assert_eq!(adv.next_point(), Some(Point(1)));
    }

    #[test]
    fn flood_runs_out() {
        let mut adv = FloodAdversary::new(1).unwrap();
        for r in 0..3 {
            let x = adv.next_point().unwrap();
            assert_eq!(x, Point(r));
            adv.respond(x, true).unwrap();
        }
        assert_eq!(adv.next_point(), None);
        assert!(FloodAdversary::new(0).is_err());
    }
}
