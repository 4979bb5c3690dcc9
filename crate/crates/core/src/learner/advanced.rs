//! Checker for γ-advanced sets: `T` is γ-advanced when every non-empty
//! `A ⊆ T` has `ldim(A) ≥ γ + log_16(|A| / |T|)`.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypotheses::{Hypothesis, HypothesisClass};
use crate::littlestone::{HypSet, LdimSolver};

use super::LearnerError;

/// Exact enumeration covers at most this many hypotheses (65535 subsets).
pub const EXACT_SUBSET_LIMIT: usize = 16;

/// An advancement parameter γ.
pub trait Gamma {
    /// Smallest integer `l ≥ 0` with `l ≥ γ + log_16(subset / total)`.
    fn required_ldim(&self, subset: usize, total: usize) -> u32;
}

impl Gamma for Ratio<i64> {
    fn required_ldim(&self, subset: usize, total: usize) -> u32 {
        assert!(subset >= 1 && subset <= total);
        let (p, q) = (*self.numer(), *self.denom());
        debug_assert!(q.is_positive());
        let a_q = BigUint::from(subset).pow(q as u32);
        let t_q = BigUint::from(total).pow(q as u32);
        let sixteen = BigUint::from(16u32);
        // l ≥ p/q + log16(a/T)  <=>  16^(l q - p) · T^q ≥ a^q
        (0u32..)
            .find(|&l| {
                let e = i64::from(l) * q - p;
                if e >= 0 {
                    sixteen.pow(e as u32) * &t_q >= a_q
                } else {
                    t_q >= &a_q * sixteen.pow((-e) as u32)
                }
            })
            .expect("l = ceil(γ) always qualifies")
    }
}

impl Gamma for f64 {
    fn required_ldim(&self, subset: usize, total: usize) -> u32 {
        assert!(subset >= 1 && subset <= total);
        let bound = self + (subset as f64 / total as f64).ln() / 16f64.ln();
        (bound - 1e-9).ceil().max(0.0) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// Every non-empty subset.
    Exact,
    /// The full set plus `count` pseudo-random non-empty subsets.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdvancedReport {
    pub holds: bool,
    pub subsets_checked: usize,
    /// Indices into the checked list of a violating subset.
    pub counterexample: Option<Vec<usize>>,
}

pub fn check_advanced<G: Gamma>(
    set: &[Hypothesis],
    gamma: &G,
    mode: SubsetMode,
) -> Result<AdvancedReport, LearnerError> {
    if set.is_empty() {
        return Err(LearnerError::EmptySet);
    }
    if set.iter().collect::<HashSet<_>>().len() != set.len() {
        return Err(LearnerError::DuplicateHypotheses);
    }
    let n = set.len();
    let class = HypothesisClass::from_hypotheses(set.to_vec()).map_err(|_| LearnerError::EmptySet)?;
    let mut solver = LdimSolver::new(&class);
    let mut checked = 0;
    let mut check = |members: Vec<usize>, solver: &mut LdimSolver| {
        checked += 1;
        let need = gamma.required_ldim(members.len(), n);
        let subset = HypSet::from_indices(n, members.iter().copied());
        (!solver.at_least(&subset, need)).then_some(members)
    };
    let violation = match mode {
        SubsetMode::Exact => {
            if n > EXACT_SUBSET_LIMIT {
                return Err(LearnerError::SizeLimitExceeded {
                    size: n,
                    limit: EXACT_SUBSET_LIMIT,
                });
            }
            (1u32..1 << n).find_map(|mask| {
                let members = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                check(members, &mut solver)
            })
        }
        SubsetMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            std::iter::once((0..n).collect::<Vec<_>>())
                .chain((0..count).map(|_| {
                    let size = rng.gen_range(1..=n);
                    let mut members = index::sample(&mut rng, n, size).into_vec();
                    members.sort_unstable();
                    members
                }))
                .collect::<Vec<_>>()
                .into_iter()
                .find_map(|members| check(members, &mut solver))
        }
    };
    Ok(AdvancedReport {
        holds: violation.is_none(),
        subsets_checked: checked,
        counterexample: violation,
    })
}

/// `1 + k/2`, the advancement `CreateAdvanced(k)` guarantees on halting.
pub fn create_advanced_gamma(k: u32) -> Ratio<i64> {
    Ratio::one() + Ratio::new(i64::from(k), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::Point;

    fn distinct(n: u64) -> Vec<Hypothesis> {
        (0..n)
            .map(|i| Hypothesis::indicator(format!("e{i}"), [], &[Point(i)]))
            .collect()
    }

    #[test]
    fn exact_threshold_matches_float() {
        let gammas = [Ratio::new(1, 1), Ratio::new(3, 2), Ratio::new(2, 1), Ratio::new(5, 2)];
        for g in gammas {
            let gf = *g.numer() as f64 / *g.denom() as f64;
            for total in [1usize, 2, 16, 128, 1024] {
                for subset in [1, 2, 3, 8, 16, 64, 100, 128, 512, 1024] {
                    if subset > total {
                        continue;
                    }
                    assert_eq!(
                        g.required_ldim(subset, total),
                        gf.required_ldim(subset, total),
                        "γ={g} a={subset} T={total}"
                    );
                }
            }
        }
    }

    #[test]
    fn exact_boundaries() {
        let one = Ratio::new(1, 1);
        // |A| = 1 of 16: 1 + log16(1/16) = 0
        assert_eq!(one.required_ldim(1, 16), 0);
        assert_eq!(one.required_ldim(2, 16), 1);
        assert_eq!(one.required_ldim(16, 16), 1);
        let three_halves = Ratio::new(3, 2);
        assert_eq!(three_halves.required_ldim(128, 128), 2);
        // 1.5 + log16(2/128) = 0 exactly
        assert_eq!(three_halves.required_ldim(2, 128), 0);
        assert_eq!(three_halves.required_ldim(3, 128), 1);
        assert_eq!(create_advanced_gamma(1), three_halves);
    }

    #[test]
    fn sixteen_distinct_functions_are_one_advanced() {
        let report = check_advanced(&distinct(16), &Ratio::new(1, 1), SubsetMode::Exact).unwrap();
        assert!(report.holds);
        assert_eq!(report.subsets_checked, 65535);
    }

    #[test]
    fn singleton_is_not_one_advanced() {
        let report = check_advanced(&distinct(1), &Ratio::new(1, 1), SubsetMode::Exact).unwrap();
        assert!(!report.holds);
        assert_eq!(report.counterexample, Some(vec![0]));
    }

    #[test]
    fn preconditions() {
        let mut dup = distinct(15);
        dup.push(dup[3].clone().with_id("copy"));
        assert_eq!(
            check_advanced(&dup, &Ratio::new(1, 1), SubsetMode::Exact),
            Err(LearnerError::DuplicateHypotheses)
        );
        assert_eq!(
            check_advanced(&[], &Ratio::new(1, 1), SubsetMode::Exact),
            Err(LearnerError::EmptySet)
        );
        assert!(matches!(
            check_advanced(&distinct(17), &Ratio::new(1, 1), SubsetMode::Exact),
            Err(LearnerError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let set = distinct(40);
        let g = Ratio::new(1, 1);
        let a = check_advanced(&set, &g, SubsetMode::Sampled { count: 50, seed: 3 }).unwrap();
        assert!(a.holds);
        assert_eq!(a.subsets_checked, 51);
        // 40 distinct indicators have dimension 1, below γ = 2 on the full set
        let b = check_advanced(&set, &Ratio::new(2, 1), SubsetMode::Sampled { count: 5, seed: 3 })
            .unwrap();
        assert!(!b.holds);
        assert_eq!(b.counterexample.map(|c| c.len()), Some(40));
    }
}
