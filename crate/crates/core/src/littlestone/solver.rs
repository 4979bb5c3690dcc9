//! Memoized exact Littlestone-dimension search over subsets of a fixed
//! hypothesis table.

use std::collections::HashMap;

use crate::hypotheses::{Hypothesis, HypothesisClass, Point};

use super::tree::LabeledTree;

/// A subset of the solver's distinct hypotheses, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypSet {
    words: Vec<u64>,
}

impl HypSet {
    pub fn empty(n: usize) -> Self {
        HypSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = HypSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = HypSet::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &HypSet) -> HypSet {
        HypSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn and_not(&self, other: &HypSet) -> HypSet {
        HypSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    lo: u32,
    hi: u32,
}

pub(crate) fn floor_log2(n: usize) -> u32 {
    debug_assert!(n > 0);
    usize::BITS - 1 - n.leading_zeros()
}

/// Exact dimension engine for one table of hypotheses.
///
/// Hypotheses are deduplicated on construction; all sets handed to the
/// solver index the distinct hypotheses. The memo stores proven lower and
/// upper bounds per subset and lives as long as the solver.
pub struct LdimSolver {
    distinct: Vec<Hypothesis>,
    /// Original index -> distinct index.
    index_map: Vec<usize>,
    /// One representative point per distinct split of the full set.
    splits: Vec<(Point, HypSet)>,
    memo: HashMap<HypSet, Bounds>,
}

impl LdimSolver {
    pub fn new(class: &HypothesisClass) -> Self {
        LdimSolver::from_parts(class.domain(), class.hypotheses())
    }

    /// `domain` must cover every point where some hypothesis is 1.
    pub fn from_parts(domain: &[Point], hypotheses: &[Hypothesis]) -> Self {
        let mut distinct: Vec<Hypothesis> = Vec::new();
        let mut lookup: HashMap<&Hypothesis, usize> = HashMap::new();
        let mut index_map = Vec::with_capacity(hypotheses.len());
        for h in hypotheses {
            let idx = *lookup.entry(h).or_insert_with(|| {
                distinct.push(h.clone());
                distinct.len() - 1
            });
            index_map.push(idx);
        }
        let n = distinct.len();
        let full = HypSet::full(n);
        let mut seen = std::collections::HashSet::new();
        let mut splits = Vec::new();
        for &x in domain {
            let ones = HypSet::from_indices(n, (0..n).filter(|&i| distinct[i].evaluate(x)));
            let count = ones.len();
            if count == 0 || count == n {
                continue;
            }
            // A column and its complement induce the same split.
            let complement = full.and_not(&ones);
            let canonical = if ones.contains(0) { complement } else { ones.clone() };
            if seen.insert(canonical) {
                splits.push((x, ones));
            }
        }
        LdimSolver {
            distinct,
            index_map,
            splits,
            memo: HashMap::new(),
        }
    }

    pub fn distinct(&self) -> &[Hypothesis] {
        &self.distinct
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }

    pub fn full_set(&self) -> HypSet {
        HypSet::full(self.distinct.len())
    }

    /// Set of distinct hypotheses reached by the given original indices.
    pub fn set_of(&self, original: impl IntoIterator<Item = usize>) -> HypSet {
        HypSet::from_indices(
            self.distinct.len(),
            original.into_iter().map(|i| self.index_map[i]),
        )
    }

    /// Splits `set` at `x` into (members with f(x)=0, members with f(x)=1).
    pub fn split_at(&self, set: &HypSet, x: Point) -> (HypSet, HypSet) {
        let n = self.distinct.len();
        let ones = HypSet::from_indices(n, set.iter().filter(|&i| self.distinct[i].evaluate(x)));
        (set.and_not(&ones), ones)
    }

    /// Does `set` shatter some complete labeled tree of depth `t`?
    pub fn at_least(&mut self, set: &HypSet, t: u32) -> bool {
        if t == 0 {
            return true;
        }
        let n = set.len();
        if n < 2 || floor_log2(n) < t {
            return false;
        }
        if let Some(b) = self.memo.get(set) {
            if b.lo >= t {
                return true;
            }
            if b.hi < t {
                return false;
            }
        }
        let found = self.find_split(set, t).is_some();
        let entry = self.memo.entry(set.clone()).or_insert(Bounds {
            lo: 1,
            hi: floor_log2(n),
        });
        if found {
            entry.lo = entry.lo.max(t);
        } else {
            entry.hi = entry.hi.min(t - 1);
        }
        found
    }

    /// A point whose two restrictions of `set` both reach dimension `t - 1`.
    fn find_split(&mut self, set: &HypSet, t: u32) -> Option<Point> {
        let need = 1usize << (t - 1);
        let n = set.len();
        for si in 0..self.splits.len() {
            let (x, ones) = {
                let (x, col) = &self.splits[si];
                (*x, set.and(col))
            };
            let c1 = ones.len();
            if c1 < need || n - c1 < need {
                continue;
            }
            let zeros = set.and_not(&ones);
            let (small, large) = if c1 <= n - c1 { (ones, zeros) } else { (zeros, ones) };
            if self.at_least(&small, t - 1) && self.at_least(&large, t - 1) {
                return Some(x);
            }
        }
        None
    }

    /// Exact Littlestone dimension of a non-empty set.
    pub fn ldim(&mut self, set: &HypSet) -> u32 {
        let mut d = 0;
        while self.at_least(set, d + 1) {
            d += 1;
        }
        d
    }

    /// A complete labeled tree of depth `t` shattered by `set`, if any.
    pub fn shattered_tree(&mut self, set: &HypSet, t: u32) -> Option<LabeledTree> {
        if t == 0 {
            return (!set.is_empty()).then_some(LabeledTree::Leaf);
        }
        if !self.at_least(set, t) {
            return None;
        }
        let x = self.find_split(set, t)?;
        let (zeros, ones) = self.split_at(set, x);
        let zero = self.shattered_tree(&zeros, t - 1)?;
        let one = self.shattered_tree(&ones, t - 1)?;
        Some(LabeledTree::Node {
            point: x,
            zero: Box::new(zero),
            one: Box::new(one),
        })
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypset_ops() {
        let a = HypSet::from_indices(70, [0, 5, 64, 69]);
        let b = HypSet::from_indices(70, [5, 69]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.and(&b), b);
        assert_eq!(a.and_not(&b).iter().collect::<Vec<_>>(), vec![0, 64]);
        assert!(HypSet::empty(3).is_empty());
        assert_eq!(HypSet::full(65).len(), 65);
    }

    #[test]
    fn floor_log2_values() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(3), 1);
        assert_eq!(floor_log2(1024), 10);
    }

    #[test]
    fn duplicates_and_redundant_columns_collapse() {
        let c = HypothesisClass::thresholds(3);
        let mut hyps = c.hypotheses().to_vec();
        hyps.push(hyps[0].clone().with_id("dup"));
        let s = LdimSolver::from_parts(c.domain(), &hyps);
        assert_eq!(s.distinct_count(), 4);
        assert_eq!(s.set_of([0, 4]).len(), 1);
    }
}
