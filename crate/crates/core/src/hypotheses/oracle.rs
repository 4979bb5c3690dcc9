use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Hypothesis, HypothesisClass, HypothesisError, Point, Sample};

/// Given a sample, returns a hypothesis consistent with every pair.
///
/// Implementations report non-realizable samples as an error instead of
/// diverging.
pub trait ConsistentOracle: Send + Sync {
    fn query(&self, sample: &Sample) -> Result<Hypothesis, HypothesisError>;
}

/// First consistent member of `class`, in class order.
pub fn table_oracle(class: &HypothesisClass, sample: &Sample) -> Result<Hypothesis, HypothesisError> {
    class
        .hypotheses()
        .iter()
        .find(|h| h.is_consistent(sample))
        .cloned()
        .ok_or(HypothesisError::NonRealizable)
}

/// The hypothesis declared exactly on the sample's points, with the sample's
/// labels, and 0 everywhere else.
pub fn minimal_extension_oracle(sample: &Sample) -> Result<Hypothesis, HypothesisError> {
    let mut table = BTreeMap::new();
    for &(x, y) in sample.pairs() {
        if let Some(prev) = table.insert(x, y) {
            if prev != y {
                return Err(HypothesisError::ContradictorySample(x));
            }
        }
    }
    let (points, values): (Vec<Point>, Vec<bool>) = table.into_iter().unzip();
    Hypothesis::new(format!("ext{}", sample.len()), points, values)
}

#[derive(Debug, Clone)]
pub struct TableOracle {
    class: HypothesisClass,
}

impl TableOracle {
    pub fn new(class: HypothesisClass) -> Self {
        TableOracle { class }
    }
}

impl ConsistentOracle for TableOracle {
    fn query(&self, sample: &Sample) -> Result<Hypothesis, HypothesisError> {
        table_oracle(&self.class, sample)
    }
}

/// Picks among the consistent members pseudo-randomly. The choice is a pure
/// function of `(seed, sample)`.
#[derive(Debug, Clone)]
pub struct SeededTableOracle {
    class: HypothesisClass,
    seed: u64,
}

impl SeededTableOracle {
    pub fn new(class: HypothesisClass, seed: u64) -> Self {
        SeededTableOracle { class, seed }
    }
}

fn sample_digest(seed: u64, sample: &Sample) -> u64 {
    // splitmix64 folded over the pairs; stable across platforms.
    let mut state = seed;
    let mut mix = |v: u64| {
        state = state.wrapping_add(v).wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        state = z ^ (z >> 31);
    };
    for &(x, y) in sample.pairs() {
        mix(x.0);
        mix(y as u64);
    }
    state
}

impl ConsistentOracle for SeededTableOracle {
    fn query(&self, sample: &Sample) -> Result<Hypothesis, HypothesisError> {
        let candidates = self.class.consistent_with(sample);
        if candidates.is_empty() {
            return Err(HypothesisError::NonRealizable);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(sample_digest(self.seed, sample));
        Ok(candidates[rng.gen_range(0..candidates.len())].clone())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MinimalExtensionOracle;

impl ConsistentOracle for MinimalExtensionOracle {
    fn query(&self, sample: &Sample) -> Result<Hypothesis, HypothesisError> {
        minimal_extension_oracle(sample)
    }
}
