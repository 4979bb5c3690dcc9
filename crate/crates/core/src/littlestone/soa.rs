use std::sync::Arc;

use crate::game::{Learner, LearnerUpdate, Prediction};
use crate::hypotheses::{Hypothesis, HypothesisClass, Point};

use super::{ldim_of, HypSet, LdimError, LdimSolver};

/// The members of a class still consistent with the play so far.
#[derive(Debug, Clone, PartialEq)]
pub struct VersionSpace {
    members: Vec<Hypothesis>,
}

impl VersionSpace {
    pub fn new(members: Vec<Hypothesis>) -> Self {
        VersionSpace { members }
    }

    pub fn of_class(class: &HypothesisClass) -> Self {
        VersionSpace::new(class.hypotheses().to_vec())
    }

    pub fn members(&self) -> &[Hypothesis] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn restrict(&self, x: Point, y: bool) -> VersionSpace {
        VersionSpace::new(
            self.members
                .iter()
                .filter(|h| h.evaluate(x) == y)
                .cloned()
                .collect(),
        )
    }
}

fn score(v: &VersionSpace) -> i64 {
    if v.is_empty() {
        -1
    } else {
        ldim_of(v.members()).map(i64::from).unwrap_or(-1)
    }
}

/// Label whose restriction has the larger dimension; ties go to 0.
pub fn soa_predict(v: &VersionSpace, x: Point) -> Result<bool, LdimError> {
    if v.is_empty() {
        return Err(LdimError::EmptyVersionSpace);
    }
    Ok(score(&v.restrict(x, true)) > score(&v.restrict(x, false)))
}

pub fn soa_update(v: &VersionSpace, x: Point, y: bool) -> Result<VersionSpace, LdimError> {
    let next = v.restrict(x, y);
    if next.is_empty() {
        return Err(LdimError::IllegalLabel { point: x, label: y });
    }
    Ok(next)
}

/// SOA as a game player. Keeps one solver for the whole class so the
/// dimension memo is shared across rounds.
pub struct SoaLearner {
    solver: LdimSolver,
    version: HypSet,
}

impl SoaLearner {
    pub fn new(class: &HypothesisClass) -> Result<Self, LdimError> {
        if class.is_empty() {
            return Err(LdimError::EmptyClass);
        }
        let solver = LdimSolver::new(class);
        let version = solver.full_set();
        Ok(SoaLearner { solver, version })
    }

    pub fn version_size(&self) -> usize {
        self.version.len()
    }

    fn side_score(&mut self, side: &HypSet) -> i64 {
        if side.is_empty() {
            -1
        } else {
            i64::from(self.solver.ldim(side))
        }
    }
}

impl Learner for SoaLearner {
    fn name(&self) -> String {
        "soa".into()
    }

    fn predict(&mut self, x: Point) -> crate::Result<Prediction> {
        if self.version.is_empty() {
            return Err(LdimError::EmptyVersionSpace.into());
        }
        let (zeros, ones) = self.solver.split_at(&self.version, x);
        let label = self.side_score(&ones) > self.side_score(&zeros);
        Ok(Prediction {
            label,
            vote_width: 0,
        })
    }

    fn observe(
        &mut self,
        x: Point,
        _prediction: bool,
        label: bool,
        _revealed: &Arc<Hypothesis>,
    ) -> crate::Result<LearnerUpdate> {
        let (zeros, ones) = self.solver.split_at(&self.version, x);
        let next = if label { ones } else { zeros };
        if next.is_empty() {
            return Err(LdimError::IllegalLabel { point: x, label }.into());
        }
        self.version = next;
        Ok(LearnerUpdate::default())
    }

    fn active_count(&self) -> usize {
        self.version.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::littlestone::tests::all_functions_on;

    #[test]
    fn predictions() {
        let all4 = VersionSpace::of_class(&all_functions_on(2));
        assert_eq!(soa_predict(&all4, Point(0)), Ok(false));
        let pair = VersionSpace::new(vec![
            Hypothesis::zero("z"),
            Hypothesis::indicator("o", [Point(0), Point(1)], &[Point(0), Point(1)]),
        ]);
        assert_eq!(soa_predict(&pair, Point(0)), Ok(false));
        let single = VersionSpace::new(vec![Hypothesis::zero("z")]);
        assert_eq!(soa_predict(&single, Point(3)), Ok(false));
        let single_one = VersionSpace::new(vec![Hypothesis::indicator("o", [], &[Point(3)])]);
        assert_eq!(soa_predict(&single_one, Point(3)), Ok(true));
        assert_eq!(
            soa_predict(&VersionSpace::new(vec![]), Point(0)),
            Err(LdimError::EmptyVersionSpace)
        );
    }

    #[test]
    fn updates() {
        let all4 = VersionSpace::of_class(&all_functions_on(2));
        let next = soa_update(&all4, Point(0), true).unwrap();
        assert_eq!(next.len(), 2);
        assert!(next.members().iter().all(|h| h.evaluate(Point(0))));
        let zero = VersionSpace::new(vec![Hypothesis::zero("z")]);
        assert_eq!(soa_update(&zero, Point(5), false).unwrap().len(), 1);
        assert_eq!(
            soa_update(&zero, Point(5), true),
            Err(LdimError::IllegalLabel {
                point: Point(5),
                label: true
            })
        );
    }

    #[test]
    fn learner_matches_free_functions() {
        let class = HypothesisClass::thresholds(6);
        let mut learner = SoaLearner::new(&class).unwrap();
        let mut v = VersionSpace::of_class(&class);
        let f = Arc::new(class.hypotheses()[2].clone());
        for x in [3u64, 1, 5, 2, 0] {
            let x = Point(x);
            let p = learner.predict(x).unwrap().label;
            assert_eq!(p, soa_predict(&v, x).unwrap());
            let y = f.evaluate(x);
            learner.observe(x, p, y, &f).unwrap();
            v = soa_update(&v, x, y).unwrap();
            assert_eq!(learner.version_size(), v.len());
        }
    }
}
