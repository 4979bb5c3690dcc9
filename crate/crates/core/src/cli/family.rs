//! Enumerated class families used by the upper-bound suite and the bench.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypotheses::{Hypothesis, HypothesisClass, Point};
use crate::littlestone::ldim;

/// Every sub-family of the threshold functions on `n` points whose
/// dimension is exactly `d`, in subset-mask order.
pub fn threshold_family(n: u64, d: u32) -> Vec<HypothesisClass> {
    let all = HypothesisClass::thresholds(n);
    let members = all.hypotheses();
    (1u32..1 << members.len())
        .filter_map(|mask| {
            let picked: Vec<Hypothesis> = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, h)| h.clone())
                .collect();
            let class = HypothesisClass::new(all.domain().to_vec(), picked).expect("non-empty");
            (ldim(&class).expect("non-empty") == d).then_some(class)
        })
        .collect()
}

/// `count` seeded random classes (at most 10 hypotheses on at most 8
/// points) whose dimension is exactly `d`.
pub fn random_classes_with_ldim(count: usize, d: u32, seed: u64) -> Vec<HypothesisClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let class = HypothesisClass::random(&mut rng, 10, 8);
        if ldim(&class).expect("non-empty") == d {
            out.push(class);
        }
    }
    out
}

/// The dimension-1 family: threshold sub-families on 8 points and 100
/// seeded random classes.
pub fn ldim_one_family(seed: u64) -> Vec<HypothesisClass> {
    let mut family = threshold_family(8, 1);
    family.extend(random_classes_with_ldim(100, 1, seed));
    family
}

/// Classes of dimension exactly `d` for `d ≥ 2`: thresholds on `2^d - 1`
/// points and all functions on `d` points.
pub fn ldim_family(d: u32, seed: u64) -> Vec<HypothesisClass> {
    if d == 1 {
        return ldim_one_family(seed);
    }
    let n = u64::from(d);
    let domain: Vec<Point> = (0..n).map(Point).collect();
    let cube = (0..1u64 << n)
        .map(|mask| {
            let values = (0..n).map(|i| mask >> i & 1 == 1).collect();
            Hypothesis::new(format!("c{mask}"), domain.clone(), values).expect("aligned")
        })
        .collect();
    let mut family = vec![
        HypothesisClass::thresholds((1 << d) - 1),
        HypothesisClass::new(domain, cube).expect("non-empty"),
    ];
    family.extend(random_classes_with_ldim(8, d, seed));
    family
}
