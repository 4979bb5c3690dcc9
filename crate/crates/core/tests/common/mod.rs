//! Reference implementations used as test oracles. They are written from
//! the definitions, share no code with the library's algorithms, and favor
//! obviousness over speed.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use consistent_oracle::{Hypothesis, HypothesisClass, LabeledTree, Point, Sample};

/// Truth tables of the distinct members of `hyps` over the union of their
/// domains.
pub fn tables(hyps: &[Hypothesis]) -> (Vec<Point>, Vec<Vec<bool>>) {
    let domain: Vec<Point> = hyps
        .iter()
        .flat_map(|h| h.domain().iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: BTreeSet<Vec<bool>> = hyps
        .iter()
        .map(|h| domain.iter().map(|&x| h.evaluate(x)).collect())
        .collect();
    (domain, rows.into_iter().collect())
}

/// Littlestone dimension by the plain recursion
/// `ldim(H) = max_x 1 + min(ldim(H_x0), ldim(H_x1))` over splitting points,
/// memoized on the sorted set of row indices.
pub fn brute_ldim(hyps: &[Hypothesis]) -> u32 {
    let (domain, rows) = tables(hyps);
    assert!(!rows.is_empty(), "empty class");
    let mut memo = HashMap::new();
    let all: Vec<usize> = (0..rows.len()).collect();
    rec(&rows, domain.len(), &all, &mut memo)
}

fn rec(rows: &[Vec<bool>], width: usize, set: &[usize], memo: &mut HashMap<Vec<usize>, u32>) -> u32 {
    if set.len() <= 1 {
        return 0;
    }
    if let Some(&v) = memo.get(set) {
        return v;
    }
    let mut best = 0;
    for col in 0..width {
        let zeros: Vec<usize> = set.iter().copied().filter(|&i| !rows[i][col]).collect();
        let ones: Vec<usize> = set.iter().copied().filter(|&i| rows[i][col]).collect();
        if zeros.is_empty() || ones.is_empty() {
            continue;
        }
        let v = 1 + rec(rows, width, &zeros, memo).min(rec(rows, width, &ones, memo));
        best = best.max(v);
    }
    memo.insert(set.to_vec(), best);
    best
}

pub fn brute_ldim_class(class: &HypothesisClass) -> u32 {
    brute_ldim(class.hypotheses())
}

/// Every root-to-leaf labeling of a complete tree is realized by some member.
pub fn tree_is_shattered(tree: &LabeledTree, hyps: &[Hypothesis]) -> bool {
    fn go(t: &LabeledTree, path: &mut Vec<(Point, bool)>, depth: usize, want: usize, hyps: &[Hypothesis]) -> bool {
        match t {
            LabeledTree::Leaf => {
                depth == want
                    && hyps
                        .iter()
                        .any(|h| path.iter().all(|&(x, y)| h.evaluate(x) == y))
            }
            LabeledTree::Node { point, zero, one } => [(zero, false), (one, true)].iter().all(|(child, y)| {
                path.push((*point, *y));
                let ok = go(child, path, depth + 1, want, hyps);
                path.pop();
                ok
            }),
        }
    }
    go(tree, &mut Vec::new(), 0, tree.depth(), hyps)
}

/// Base-3 digits of `v`, least significant first, padded to `d`.
pub fn base3(mut v: u64, d: u32) -> Vec<u64> {
    let mut out = Vec::new();
    for _ in 0..d {
        out.push(v % 3);
        v /= 3;
    }
    out
}

/// `f_r(x)` straight from its definition.
pub fn ternary_oracle(r: u64, d: u32, labels: &[bool], x: u64) -> bool {
    let n = 3u64.pow(d);
    if x <= r {
        labels[x as usize]
    } else if x >= n {
        false
    } else {
        let (rd, xd) = (base3(r, d), base3(x, d));
        let top = (0..d as usize).rev().find(|&i| rd[i] != xd[i]).unwrap();
        rd[top] == 1
    }
}

/// `16 + 16^2 + ... + 16^(k+1)`.
pub fn halting_mistakes(k: u32) -> u64 {
    (1..=k + 1).map(|j| 16u64.pow(j)).sum()
}

/// Procedure parameters of the dimension-independent schedule: for each
/// `N ≥ 1`, `0` then `3j + 1` for `j = 1..=i`, where `16^i` exactly divides
/// `N`.
pub fn predict_schedule(len: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut n: u64 = 0;
    while out.len() < len {
        n += 1;
        out.push(0);
        let mut i = 0;
        let mut m = n;
        while m.is_multiple_of(16) {
            m /= 16;
            i += 1;
        }
        out.extend((1..=i).map(|j| 3 * j + 1));
    }
    out.truncate(len);
    out
}

/// Recursive flattening of the nested procedure calls.
pub fn nested_schedule(k: u32) -> Vec<u32> {
    if k == 0 {
        return vec![0; 16];
    }
    let inner = nested_schedule(k - 1);
    let mut out = Vec::new();
    for _ in 0..16 {
        out.extend_from_slice(&inner);
        out.push(3 * k + 1);
    }
    out
}

pub fn all_functions_on(n: u64) -> HypothesisClass {
    let domain: Vec<Point> = (0..n).map(Point).collect();
    let hyps = (0..1u64 << n)
        .map(|m| Hypothesis::new(format!("a{m}"), domain.clone(), (0..n).map(|i| m >> i & 1 == 1).collect()).unwrap())
        .collect();
    HypothesisClass::new(domain, hyps).unwrap()
}

/// Sub-families of size 2 and 3 of the thresholds `[x ≥ t]`, `t = 0..=8`,
/// on the points `0..8`.
pub fn small_threshold_families() -> Vec<HypothesisClass> {
    let domain: Vec<Point> = (0..8).map(Point).collect();
    let th = |t: u64| Hypothesis::new(format!("t{t}"), domain.clone(), (0..8).map(|x| x >= t).collect()).unwrap();
    let mut out = Vec::new();
    for a in 0..=8u64 {
        for b in a + 1..=8 {
            out.push(HypothesisClass::new(domain.clone(), vec![th(a), th(b)]).unwrap());
            for c in b + 1..=8 {
                out.push(HypothesisClass::new(domain.clone(), vec![th(a), th(b), th(c)]).unwrap());
            }
        }
    }
    out
}

/// Labels realized so far contradict `f` nowhere.
pub fn consistent_with(f: &Hypothesis, history: &Sample) -> bool {
    history.pairs().iter().all(|&(x, y)| f.evaluate(x) == y)
}
