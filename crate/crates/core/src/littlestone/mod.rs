//! Exact Littlestone dimension, shattered-tree certificates, the mistake
//! game's minimax value and the Standard Optimal Algorithm.

mod minimax;
mod soa;
mod solver;
mod tree;

pub use minimax::{minimax_adversary_value, MINIMAX_MAX_HYPOTHESES, MINIMAX_MAX_POINTS};
pub use soa::{soa_predict, soa_update, SoaLearner, VersionSpace};
pub use solver::{HypSet, LdimSolver};
pub use tree::LabeledTree;

use thiserror::Error;

use crate::hypotheses::{Hypothesis, HypothesisClass, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LdimError {
    #[error("the Littlestone dimension of an empty class is undefined")]
    EmptyClass,
    #[error("version space is empty")]
    EmptyVersionSpace,
    #[error("no hypothesis in the version space labels {point} with {}", *label as u8)]
    IllegalLabel { point: Point, label: bool },
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("tree depth must be at least 1")]
    InvalidDepth,
}

/// Exact Littlestone dimension of a class (duplicates are ignored).
pub fn ldim(class: &HypothesisClass) -> Result<u32, LdimError> {
    if class.is_empty() {
        return Err(LdimError::EmptyClass);
    }
    let mut solver = LdimSolver::new(class);
    let full = solver.full_set();
    Ok(solver.ldim(&full))
}

/// Dimension of a bare list of hypotheses, over the union of their domains.
pub fn ldim_of(hypotheses: &[Hypothesis]) -> Result<u32, LdimError> {
    let class =
        HypothesisClass::from_hypotheses(hypotheses.to_vec()).map_err(|_| LdimError::EmptyClass)?;
    ldim(&class)
}

/// A depth-`depth` labeled tree shattered by `class`, if there is one.
pub fn find_shattered_tree(
    class: &HypothesisClass,
    depth: u32,
) -> Result<Option<LabeledTree>, LdimError> {
    if class.is_empty() {
        return Err(LdimError::EmptyClass);
    }
    if depth == 0 {
        return Err(LdimError::InvalidDepth);
    }
    let mut solver = LdimSolver::new(class);
    let full = solver.full_set();
    Ok(solver.shattered_tree(&full, depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::HypothesisError;

    pub(crate) fn all_functions_on(n: u64) -> HypothesisClass {
        let domain: Vec<Point> = (0..n).map(Point).collect();
        let hyps = (0..1u64 << n)
            .map(|mask| {
                let values = (0..n).map(|i| mask >> i & 1 == 1).collect();
                Hypothesis::new(format!("f{mask}"), domain.clone(), values).unwrap()
            })
            .collect();
        HypothesisClass::new(domain, hyps).unwrap()
    }

    #[test]
    fn small_dimensions() {
        let single = HypothesisClass::new(vec![Point(0)], vec![Hypothesis::zero("z")]).unwrap();
        assert_eq!(ldim(&single), Ok(0));
        let two = HypothesisClass::from_hypotheses(vec![
            Hypothesis::zero("a"),
            Hypothesis::indicator("b", [], &[Point(4)]),
        ])
        .unwrap();
        assert_eq!(ldim(&two), Ok(1));
        assert_eq!(ldim(&all_functions_on(2)), Ok(2));
        assert_eq!(ldim(&all_functions_on(3)), Ok(3));
        // thresholds on n points have dimension floor(log2(n + 1))
        assert_eq!(ldim(&HypothesisClass::thresholds(8)), Ok(3));
        assert_eq!(ldim(&HypothesisClass::thresholds(6)), Ok(2));
    }

    #[test]
    fn duplicates_do_not_change_dimension() {
        let c = HypothesisClass::new(
            vec![Point(0)],
            vec![Hypothesis::zero("a"), Hypothesis::zero("b"), Hypothesis::zero("c")],
        )
        .unwrap();
        assert_eq!(ldim(&c), Ok(0));
    }

    #[test]
    fn empty_class_errors() {
        assert_eq!(
            HypothesisClass::new(vec![], vec![]).unwrap_err(),
            HypothesisError::EmptyClass
        );
        assert_eq!(ldim_of(&[]), Err(LdimError::EmptyClass));
    }

    #[test]
    fn certificate_for_all_functions_on_two_points() {
        let c = all_functions_on(2);
        let t = find_shattered_tree(&c, 2).unwrap().expect("depth-2 tree");
        assert_eq!(t.depth(), 2);
        assert!(t.is_shattered_by(c.hypotheses()));
        assert_eq!(find_shattered_tree(&c, 3).unwrap(), None);
    }

    #[test]
    fn certificate_edge_cases() {
        let single = HypothesisClass::new(vec![Point(0)], vec![Hypothesis::zero("z")]).unwrap();
        assert_eq!(find_shattered_tree(&single, 1).unwrap(), None);
        assert_eq!(find_shattered_tree(&single, 0), Err(LdimError::InvalidDepth));
        // 5 distinct hypotheses cannot shatter depth 3 > log2(5)
        let c = HypothesisClass::thresholds(4);
        assert_eq!(find_shattered_tree(&c, 3).unwrap(), None);
    }
}
