use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Adversary, Reply};
use crate::hypotheses::{Hypothesis, HypothesisClass, Point};

use super::AdversaryError;

/// Class members still consistent with the labels played, in class order.
#[derive(Debug, Clone)]
struct ClassState {
    members: Vec<Arc<Hypothesis>>,
    domain: Vec<Point>,
    version: Vec<usize>,
}

impl ClassState {
    fn new(class: &HypothesisClass) -> Self {
        ClassState {
            members: class.hypotheses().iter().cloned().map(Arc::new).collect(),
            domain: class.domain().to_vec(),
            version: (0..class.len()).collect(),
        }
    }

    fn realizable(&self, x: Point, y: bool) -> bool {
        self.version.iter().any(|&i| self.members[i].evaluate(x) == y)
    }

    fn splits(&self, x: Point) -> bool {
        self.realizable(x, false) && self.realizable(x, true)
    }

    /// Restricts to `f(x) = y` and returns the first survivor.
    fn commit(&mut self, x: Point, y: bool) -> Result<Arc<Hypothesis>, AdversaryError> {
        let members = &self.members;
        self.version.retain(|&i| members[i].evaluate(x) == y);
        self.version
            .first()
            .map(|&i| Arc::clone(&self.members[i]))
            .ok_or(AdversaryError::NonRealizable)
    }
}

/// Flips the prediction whenever the flipped label is still realizable in
/// the class, and reveals the first consistent member.
///
/// Points cycle through the class domain; from the cursor onwards the first
/// point that splits the version space is preferred.
#[derive(Debug, Clone)]
pub struct ClassGreedyAdversary {
    name: String,
    state: ClassState,
    cursor: usize,
}

impl ClassGreedyAdversary {
    pub fn new(class: &HypothesisClass) -> Self {
        ClassGreedyAdversary::named("class-greedy", class)
    }

    pub fn named(name: impl Into<String>, class: &HypothesisClass) -> Self {
        ClassGreedyAdversary {
            name: name.into(),
            state: ClassState::new(class),
            cursor: 0,
        }
    }

    pub fn version_size(&self) -> usize {
        self.state.version.len()
    }
}

impl Adversary for ClassGreedyAdversary {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_point(&mut self) -> Option<Point> {
        let n = self.state.domain.len();
        if n == 0 {
            return Some(Point(0));
        }
        let pick = (0..n)
            .map(|off| (self.cursor + off) % n)
            .find(|&i| self.state.splits(self.state.domain[i]))
            .unwrap_or(self.cursor % n);
        self.cursor = (pick + 1) % n;
        Some(self.state.domain[pick])
    }

    fn respond(&mut self, x: Point, prediction: bool) -> crate::Result<Reply> {
        let label = if self.state.realizable(x, !prediction) {
            !prediction
        } else {
            prediction
        };
        let function = self.state.commit(x, label)?;
        Ok(Reply { label, function })
    }
}

/// Random points from the class domain, a random realizable label, and a
/// random consistent member.
#[derive(Debug, Clone)]
pub struct ClassRandomAdversary {
    name: String,
    state: ClassState,
    rng: ChaCha8Rng,
}

impl ClassRandomAdversary {
    pub fn new(class: &HypothesisClass, seed: u64) -> Self {
        ClassRandomAdversary {
            name: "class-random".into(),
            state: ClassState::new(class),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl Adversary for ClassRandomAdversary {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_point(&mut self) -> Option<Point> {
        Some(self.state.domain.choose(&mut self.rng).copied().unwrap_or(Point(0)))
    }

    fn respond(&mut self, x: Point, _prediction: bool) -> crate::Result<Reply> {
        let options: Vec<bool> = [false, true]
            .into_iter()
            .filter(|&y| self.state.realizable(x, y))
            .collect();
        let label = *options.choose(&mut self.rng).ok_or(AdversaryError::NonRealizable)?;
        self.state.commit(x, label)?;
        let pick = self.rng.gen_range(0..self.state.version.len());
        let function = Arc::clone(&self.state.members[self.state.version[pick]]);
        Ok(Reply { label, function })
    }
}

/// Answers with a fixed objective function on a fixed query sequence.
#[derive(Debug, Clone)]
pub struct TargetAdversary {
    target: Arc<Hypothesis>,
    queries: Vec<Point>,
    pos: usize,
}

impl TargetAdversary {
    pub fn new(target: Hypothesis, queries: Vec<Point>) -> Self {
        TargetAdversary {
            target: Arc::new(target),
            queries,
            pos: 0,
        }
    }
}

impl Adversary for TargetAdversary {
    fn name(&self) -> String {
        format!("target:{}", self.target.id())
    }

    fn next_point(&mut self) -> Option<Point> {
        let x = self.queries.get(self.pos).copied();
        self.pos += 1;
        x
    }

    fn respond(&mut self, x: Point, _prediction: bool) -> crate::Result<Reply> {
        Ok(Reply {
            label: self.target.evaluate(x),
            function: Arc::clone(&self.target),
        })
    }
}
