//! Hypotheses, hypothesis classes, samples and consistent oracles.
//!
//! Every hypothesis is extensional: a finite table over a declared domain,
//! with the value 0 at every point outside of it. Two hypotheses are equal
//! when they agree everywhere, which reduces to having the same set of
//! points mapped to 1.

mod classfile;
mod oracle;

pub use classfile::{parse_class, read_class_file, ClassDocument, HypothesisRecord};
pub use oracle::{
    minimal_extension_oracle, table_oracle, ConsistentOracle, MinimalExtensionOracle,
    SeededTableOracle, TableOracle,
};

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisError {
    #[error("hypothesis `{id}`: domain has {points} points but {values} values")]
    LengthMismatch {
        id: String,
        points: usize,
        values: usize,
    },
    #[error("hypothesis `{id}`: point {point} appears more than once in the domain")]
    DuplicatePoint { id: String, point: Point },
    #[error("hypothesis `{id}`: invalid value character {found:?} (expected '0' or '1')")]
    InvalidValue { id: String, found: char },
    #[error("sample is not realizable by the class")]
    NonRealizable,
    #[error("sample labels point {0} both 0 and 1")]
    ContradictorySample(Point),
    #[error("a hypothesis class needs at least one hypothesis")]
    EmptyClass,
    #[error("class file: {0}")]
    Parse(String),
}

/// A domain element, identified with a natural number.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Point(pub u64);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Point {
    fn from(v: u64) -> Self {
        Point(v)
    }
}

/// A binary-valued function, stored as a table over a finite domain.
///
/// The table is kept sorted by point so evaluation is a binary search.
/// Equality and hashing ignore `id` and the declared domain: only the set of
/// points evaluating to 1 matters.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    id: String,
    points: Vec<Point>,
    values: Vec<bool>,
}

impl Hypothesis {
    pub fn new(
        id: impl Into<String>,
        domain: Vec<Point>,
        values: Vec<bool>,
    ) -> Result<Self, HypothesisError> {
        let id = id.into();
        if domain.len() != values.len() {
            return Err(HypothesisError::LengthMismatch {
                id,
                points: domain.len(),
                values: values.len(),
            });
        }
        if domain.windows(2).all(|w| w[0] < w[1]) {
            return Ok(Hypothesis {
                id,
                points: domain,
                values,
            });
        }
        let mut table: Vec<(Point, bool)> = domain.into_iter().zip(values).collect();
        table.sort_by_key(|&(p, _)| p);
        if let Some(w) = table.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(HypothesisError::DuplicatePoint { id, point: w[0].0 });
        }
        let (points, values) = table.into_iter().unzip();
        Ok(Hypothesis { id, points, values })
    }

    /// The function that is 0 everywhere, with an empty domain.
    pub fn zero(id: impl Into<String>) -> Self {
        Hypothesis {
            id: id.into(),
            points: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Indicator of `ones`, declared on `domain ∪ ones`.
    pub fn indicator(
        id: impl Into<String>,
        domain: impl IntoIterator<Item = Point>,
        ones: &[Point],
    ) -> Self {
        let ones: BTreeSet<Point> = ones.iter().copied().collect();
        let mut all: BTreeSet<Point> = domain.into_iter().collect();
        all.extend(ones.iter().copied());
        let points: Vec<Point> = all.into_iter().collect();
        let values = points.iter().map(|p| ones.contains(p)).collect();
        Hypothesis {
            id: id.into(),
            points,
            values,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Declared domain, in increasing order.
    pub fn domain(&self) -> &[Point] {
        &self.points
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn evaluate(&self, x: Point) -> bool {
        match self.points.binary_search(&x) {
            Ok(i) => self.values[i],
            Err(_) => false,
        }
    }

    pub fn is_consistent(&self, sample: &Sample) -> bool {
        sample.pairs().iter().all(|&(x, y)| self.evaluate(x) == y)
    }

    /// Points mapped to 1, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.points
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v)
            .map(|(&p, _)| p)
    }

    /// The hypothesis re-declared on `domain` (values outside the old
    /// domain read as 0; support outside the new domain is dropped).
    pub fn restricted_to(&self, domain: &[Point]) -> Hypothesis {
        let mut points = domain.to_vec();
        points.sort();
        points.dedup();
        let values = points.iter().map(|&p| self.evaluate(p)).collect();
        Hypothesis {
            id: self.id.clone(),
            points,
            values,
        }
    }

    /// Values over `domain` as a '0'/'1' string.
    pub fn bit_string(&self, domain: &[Point]) -> String {
        domain
            .iter()
            .map(|&p| if self.evaluate(p) { '1' } else { '0' })
            .collect()
    }
}

impl PartialEq for Hypothesis {
    fn eq(&self, other: &Self) -> bool {
        self.support().eq(other.support())
    }
}

impl Eq for Hypothesis {}

impl Hash for Hypothesis {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for p in self.support() {
            p.hash(state);
        }
    }
}

pub fn evaluate(h: &Hypothesis, x: Point) -> bool {
    h.evaluate(x)
}

pub fn is_consistent(h: &Hypothesis, s: &Sample) -> bool {
    h.is_consistent(s)
}

/// An ordered list of (point, label) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sample {
    pairs: Vec<(Point, bool)>,
}

impl Sample {
    pub fn new() -> Self {
        Sample::default()
    }

    pub fn push(&mut self, x: Point, y: bool) {
        self.pairs.push((x, y));
    }

    pub fn pairs(&self) -> &[(Point, bool)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn with(&self, x: Point, y: bool) -> Sample {
        let mut s = self.clone();
        s.push(x, y);
        s
    }

    /// First point carrying both labels, if any.
    pub fn contradiction(&self) -> Option<Point> {
        let mut seen = std::collections::HashMap::new();
        for &(x, y) in &self.pairs {
            if let Some(&prev) = seen.get(&x) {
                if prev != y {
                    return Some(x);
                }
            } else {
                seen.insert(x, y);
            }
        }
        None
    }
}

impl FromIterator<(Point, bool)> for Sample {
    fn from_iter<I: IntoIterator<Item = (Point, bool)>>(iter: I) -> Self {
        Sample {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<(u64, bool)>> for Sample {
    fn from(v: Vec<(u64, bool)>) -> Self {
        v.into_iter().map(|(x, y)| (Point(x), y)).collect()
    }
}

/// A non-empty, ordered set of hypotheses over a shared domain.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisClass {
    domain: Vec<Point>,
    hypotheses: Vec<Hypothesis>,
}

impl HypothesisClass {
    /// Builds a class; each hypothesis is re-declared on `domain`.
    pub fn new(domain: Vec<Point>, hypotheses: Vec<Hypothesis>) -> Result<Self, HypothesisError> {
        if hypotheses.is_empty() {
            return Err(HypothesisError::EmptyClass);
        }
        let mut seen = BTreeSet::new();
        if let Some(&p) = domain.iter().find(|p| !seen.insert(**p)) {
            return Err(HypothesisError::DuplicatePoint {
                id: "<class domain>".into(),
                point: p,
            });
        }
        let hypotheses = hypotheses
            .into_iter()
            .map(|h| h.restricted_to(&domain))
            .collect();
        Ok(HypothesisClass { domain, hypotheses })
    }

    /// Class over the union of the hypotheses' declared domains. Nothing is
    /// lost: all hypotheses are 0 outside that union.
    pub fn from_hypotheses(hypotheses: Vec<Hypothesis>) -> Result<Self, HypothesisError> {
        let domain: BTreeSet<Point> = hypotheses
            .iter()
            .flat_map(|h| h.domain().iter().copied())
            .collect();
        HypothesisClass::new(domain.into_iter().collect(), hypotheses)
    }

    pub fn domain(&self) -> &[Point] {
        &self.domain
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    /// Removes extensional duplicates, keeping the first occurrence.
    pub fn deduplicated(&self) -> HypothesisClass {
        let mut seen = std::collections::HashSet::new();
        let hypotheses = self
            .hypotheses
            .iter()
            .filter(|h| seen.insert(*h))
            .cloned()
            .collect();
        HypothesisClass {
            domain: self.domain.clone(),
            hypotheses,
        }
    }

    pub fn distinct_count(&self) -> usize {
        self.hypotheses
            .iter()
            .collect::<std::collections::HashSet<_>>()
            .len()
    }

    /// Members consistent with `sample`, in class order.
    pub fn consistent_with(&self, sample: &Sample) -> Vec<&Hypothesis> {
        self.hypotheses
            .iter()
            .filter(|h| h.is_consistent(sample))
            .collect()
    }

    pub fn is_realizable(&self, sample: &Sample) -> bool {
        self.hypotheses.iter().any(|h| h.is_consistent(sample))
    }

    /// All `n + 1` threshold functions `x ↦ [x ≥ t]` on points `0..n`.
    pub fn thresholds(n: u64) -> HypothesisClass {
        let domain: Vec<Point> = (0..n).map(Point).collect();
        let hypotheses = (0..=n)
            .map(|t| {
                let values = (0..n).map(|x| x >= t).collect();
                Hypothesis::new(format!("t{t}"), domain.clone(), values).expect("aligned")
            })
            .collect();
        HypothesisClass { domain, hypotheses }
    }

    /// A random truth-table class with 1..=max_hypotheses members over
    /// 1..=max_points points.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        max_hypotheses: usize,
        max_points: usize,
    ) -> HypothesisClass {
        let n_points = rng.gen_range(1..=max_points.max(1));
        let n_hyps = rng.gen_range(1..=max_hypotheses.max(1));
        let domain: Vec<Point> = (0..n_points as u64).map(Point).collect();
        let hypotheses = (0..n_hyps)
            .map(|i| {
                let values = (0..n_points).map(|_| rng.gen_bool(0.5)).collect();
                Hypothesis::new(format!("h{i}"), domain.clone(), values).expect("aligned")
            })
            .collect();
        HypothesisClass { domain, hypotheses }
    }

    /// A uniformly shuffled copy; used to vary oracle tie-breaking.
    pub fn shuffled<R: Rng + ?Sized>(&self, rng: &mut R) -> HypothesisClass {
        let mut hypotheses = self.hypotheses.clone();
        hypotheses.shuffle(rng);
        HypothesisClass {
            domain: self.domain.clone(),
            hypotheses,
        }
    }
}
