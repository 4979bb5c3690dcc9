use std::fmt::Write;

use crate::hypotheses::{Hypothesis, Point, Sample};

/// Complete rooted binary tree whose internal nodes are labeled by points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabeledTree {
    Leaf,
    Node {
        point: Point,
        zero: Box<LabeledTree>,
        one: Box<LabeledTree>,
    },
}

impl LabeledTree {
    /// Length of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            LabeledTree::Leaf => 0,
            LabeledTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// All leaves at the same depth.
    pub fn is_complete(&self) -> bool {
        fn leaf_depths(t: &LabeledTree, d: usize, out: &mut Vec<usize>) {
            match t {
                LabeledTree::Leaf => out.push(d),
                LabeledTree::Node { zero, one, .. } => {
                    leaf_depths(zero, d + 1, out);
                    leaf_depths(one, d + 1, out);
                }
            }
        }
        let mut depths = Vec::new();
        leaf_depths(self, 0, &mut depths);
        depths.windows(2).all(|w| w[0] == w[1])
    }

    /// The partial assignment leading to each leaf, left (0) to right (1).
    pub fn leaf_samples(&self) -> Vec<Sample> {
        fn walk(t: &LabeledTree, path: &mut Sample, out: &mut Vec<Sample>) {
            match t {
                LabeledTree::Leaf => out.push(path.clone()),
                LabeledTree::Node { point, zero, one } => {
                    for (label, child) in [(false, zero), (true, one)] {
                        let mut next = path.with(*point, label);
                        walk(child, &mut next, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Sample::new(), &mut out);
        out
    }

    /// Complete, and every leaf is consistent with some hypothesis.
    pub fn is_shattered_by(&self, hypotheses: &[Hypothesis]) -> bool {
        self.is_complete()
            && self
                .leaf_samples()
                .iter()
                .all(|s| hypotheses.iter().any(|h| h.is_consistent(s)))
    }

    /// Indented rendering. Leaves name a consistent witness when one is
    /// found in `hypotheses`.
    pub fn render(&self, hypotheses: &[Hypothesis]) -> String {
        fn go(
            t: &LabeledTree,
            path: &Sample,
            indent: usize,
            edge: &str,
            hyps: &[Hypothesis],
            out: &mut String,
        ) {
            let pad = "  ".repeat(indent);
            match t {
                LabeledTree::Leaf => {
                    let witness = hyps
                        .iter()
                        .find(|h| h.is_consistent(path))
                        .map(|h| h.id().to_string())
                        .unwrap_or_else(|| "?".into());
                    let _ = writeln!(out, "{pad}{edge}leaf {witness}");
                }
                LabeledTree::Node { point, zero, one } => {
                    let _ = writeln!(out, "{pad}{edge}x={point}");
                    go(zero, &path.with(*point, false), indent + 1, "0: ", hyps, out);
                    go(one, &path.with(*point, true), indent + 1, "1: ", hyps, out);
                }
            }
        }
        let mut out = String::new();
        go(self, &Sample::new(), 0, "", hypotheses, &mut out);
        out
    }
}
