use std::collections::HashMap;

use crate::hypotheses::HypothesisClass;

use super::LdimError;

pub const MINIMAX_MAX_HYPOTHESES: usize = 6;
pub const MINIMAX_MAX_POINTS: usize = 5;

/// Value of the mistake game on `class`, by explicit minimax over the
/// adversary's point, the learner's prediction and the adversary's label.
///
/// The state is the version space. Points that do not split it leave the
/// state unchanged and cannot raise the value, so only splitting points are
/// expanded.
pub fn minimax_adversary_value(class: &HypothesisClass) -> Result<u32, LdimError> {
    if class.is_empty() {
        return Err(LdimError::EmptyClass);
    }
    let class = class.deduplicated();
    if class.len() > MINIMAX_MAX_HYPOTHESES {
        return Err(LdimError::SizeLimitExceeded {
            what: "minimax hypotheses",
            size: class.len(),
            limit: MINIMAX_MAX_HYPOTHESES,
        });
    }
    if class.domain().len() > MINIMAX_MAX_POINTS {
        return Err(LdimError::SizeLimitExceeded {
            what: "minimax points",
            size: class.domain().len(),
            limit: MINIMAX_MAX_POINTS,
        });
    }
    // column masks: bit i set when hypothesis i is 1 at the point
    let columns: Vec<u64> = class
        .domain()
        .iter()
        .map(|&x| {
            class
                .hypotheses()
                .iter()
                .enumerate()
                .filter(|(_, h)| h.evaluate(x))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = (1u64 << class.len()) - 1;
    let mut memo = HashMap::new();
    Ok(game_value(full, &columns, &mut memo))
}

fn game_value(version: u64, columns: &[u64], memo: &mut HashMap<u64, u32>) -> u32 {
    if version.count_ones() <= 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&version) {
        return v;
    }
    let mut best = 0;
    for &col in columns {
        let ones = version & col;
        let zeros = version & !col;
        if ones == 0 || zeros == 0 {
            continue;
        }
        let after = [
            game_value(zeros, columns, memo),
            game_value(ones, columns, memo),
        ];
        // learner predicts `p`, adversary answers whichever label hurts more
        let outcome = |p: usize| {
            (0..2)
                .map(|y| after[y] + u32::from(y != p))
                .max()
                .expect("two labels")
        };
        best = best.max(outcome(0).min(outcome(1)));
    }
    memo.insert(version, best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::{Hypothesis, Point};

    #[test]
    fn small_values() {
        let single = HypothesisClass::new(vec![Point(0)], vec![Hypothesis::zero("z")]).unwrap();
        assert_eq!(minimax_adversary_value(&single), Ok(0));
        let two = HypothesisClass::from_hypotheses(vec![
            Hypothesis::zero("a"),
            Hypothesis::indicator("b", [], &[Point(1)]),
        ])
        .unwrap();
        assert_eq!(minimax_adversary_value(&two), Ok(1));
        let four = crate::littlestone::tests::all_functions_on(2);
        assert_eq!(minimax_adversary_value(&four), Ok(2));
    }

    #[test]
    fn guard() {
        let c = HypothesisClass::thresholds(6);
        assert!(matches!(
            minimax_adversary_value(&c),
            Err(LdimError::SizeLimitExceeded { .. })
        ));
    }
}
