//! The `3^d` adversary.
//!
//! Points `0, 1, ..., 3^d - 1` are played in increasing order and every
//! prediction is contradicted. After round `r` the adversary reveals `f_r`:
//! the recorded label on `0..=r`; for `r < x < 3^d` the digit of `r` at the
//! most significant ternary position where `r` and `x` differ; 0 beyond
//! `3^d`.

use std::sync::Arc;

use crate::game::{Adversary, Reply};
use crate::hypotheses::{Hypothesis, Point};

use super::{pow3, AdversaryError};

/// Fixed-length ternary digits, most significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryExpansion {
    digits: Vec<u8>,
}

impl TernaryExpansion {
    pub fn new(value: u64, d: u32) -> Result<Self, AdversaryError> {
        if value >= pow3(d)? {
            return Err(AdversaryError::InvalidParameter(format!(
                "{value} has more than {d} ternary digits"
            )));
        }
        let mut digits = vec![0u8; d as usize];
        let mut v = value;
        for slot in digits.iter_mut().rev() {
            *slot = (v % 3) as u8;
            v /= 3;
        }
        Ok(TernaryExpansion { digits })
    }

    /// Digits `x_{d-1} ... x_0`.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// The digit multiplying `3^i`.
    pub fn digit(&self, i: usize) -> u8 {
        self.digits[self.digits.len() - 1 - i]
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0, |v, &x| 3 * v + u64::from(x))
    }
}

/// Digit of `x` multiplying `3^i`.
pub(crate) fn digit(x: u64, i: u32) -> u8 {
    (x / 3u64.pow(i) % 3) as u8
}

/// `f_r(x)` for labels `y_0, y_1, ...` (at least `r + 1` of them).
pub fn ternary_value(r: u64, d: u32, labels: &[bool], x: u64) -> bool {
    if x <= r {
        return labels[x as usize];
    }
    if x >= 3u64.pow(d) {
        return false;
    }
    let i = (0..d)
        .rev()
        .find(|&i| digit(r, i) != digit(x, i))
        .expect("r < x differ somewhere");
    digit(r, i) == 1
}

/// `f_r` declared on `0..3^d`.
pub fn ternary_function(r: u64, d: u32, labels: &[bool]) -> Result<Hypothesis, AdversaryError> {
    let n = pow3(d)?;
    if r >= n {
        return Err(AdversaryError::InvalidParameter(format!("r = {r} ≥ 3^{d}")));
    }
    if (labels.len() as u64) < r + 1 {
        return Err(AdversaryError::ShortLabels {
            got: labels.len(),
            need: r as usize + 1,
        });
    }
    let domain: Vec<Point> = (0..n).map(Point).collect();
    let values = (0..n).map(|x| ternary_value(r, d, labels, x)).collect();
    Ok(Hypothesis::new(format!("f{r}"), domain, values).expect("aligned table"))
}

#[derive(Debug, Clone)]
pub struct TernaryAdversary {
    d: u32,
    n: u64,
    next: u64,
    labels: Vec<bool>,
}

impl TernaryAdversary {
    pub fn new(d: u32) -> Result<Self, AdversaryError> {
        if d == 0 {
            return Err(AdversaryError::InvalidParameter("d must be at least 1".into()));
        }
        Ok(TernaryAdversary {
            d,
            n: pow3(d)?,
            next: 0,
            labels: Vec::new(),
        })
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }
}

impl Adversary for TernaryAdversary {
    fn name(&self) -> String {
        format!("ternary:{}", self.d)
    }

    fn next_point(&mut self) -> Option<Point> {
        (self.next < self.n).then_some(Point(self.next))
    }

    fn respond(&mut self, x: Point, prediction: bool) -> crate::Result<Reply> {
        if x.0 != self.next || self.next >= self.n {
            return Err(AdversaryError::InvalidParameter(format!("unexpected point {x}")).into());
        }
        let label = !prediction;
        self.labels.push(label);
        let f = ternary_function(self.next, self.d, &self.labels)?;
        self.next += 1;
        Ok(Reply {
            label,
            function: Arc::new(f),
        })
    }
}
