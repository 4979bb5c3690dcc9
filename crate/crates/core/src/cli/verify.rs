//! Verification suites behind `verify`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adversary::{
    pow3, ternary_function, ClassGreedyAdversary, ClassRandomAdversary, FloodAdversary,
    FreeAdversary, InformativeLearner, TernaryAdversary,
};
use crate::game::{
    run_game, validate_transcript, Adversary, GameConfig, Learner, LdimStatus, Termination,
    Transcript, Validation, ValidationReport,
};
use crate::hypotheses::{Hypothesis, HypothesisClass, Point};
use crate::learner::{
    appended_functions, check_advanced, create_advanced_flattening, create_advanced_gamma,
    mistake_budget, mistakes_to_halt, ConsistentLearner, Gamma, ProcedureSchedule, SubsetMode,
    EXACT_SUBSET_LIMIT,
};
use crate::littlestone::{
    find_shattered_tree, minimax_adversary_value, LdimError, LdimSolver, SoaLearner,
};

use super::family::ldim_family;

pub const MAX_ADVANCED_K: u32 = 2;
pub const MAX_PREFIX_K: u32 = 4;
pub const MAX_TERNARY_D: u32 = 6;
pub const MAX_FLOOD_D: u32 = 10;
pub const MAX_UPPER_D: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifySuite {
    Advanced(u32),
    Prefix(u32),
    Lower(u32),
    Upper(u32),
    Props,
}

impl FromStr for VerifySuite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "props" {
            return Ok(VerifySuite::Props);
        }
        let (name, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("unknown check `{s}`"))?;
        let n: u32 = arg.parse().map_err(|_| format!("bad parameter `{arg}`"))?;
        match name {
            "advanced" => Ok(VerifySuite::Advanced(n)),
            "prefix" => Ok(VerifySuite::Prefix(n)),
            "lower" => Ok(VerifySuite::Lower(n)),
            "upper" => Ok(VerifySuite::Upper(n)),
            _ => Err(format!(
                "unknown check `{s}` (advanced:<k> | prefix:<k> | lower:<d> | upper:<d> | props)"
            )),
        }
    }
}

impl fmt::Display for VerifySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifySuite::Advanced(k) => write!(f, "advanced:{k}"),
            VerifySuite::Prefix(k) => write!(f, "prefix:{k}"),
            VerifySuite::Lower(d) => write!(f, "lower:{d}"),
            VerifySuite::Upper(d) => write!(f, "upper:{d}"),
            VerifySuite::Props => write!(f, "props"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(suite: impl Into<String>) -> Self {
        VerifyReport {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn expect_eq<T: PartialEq + fmt::Display>(&mut self, name: &str, got: T, want: T) -> bool {
        let detail = format!("{got} (expected {want})");
        self.check(name, got == want, detail)
    }

    fn fail(&mut self, name: &str, e: impl fmt::Display) {
        self.check(name, false, e.to_string());
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "verify {}: {verdict}", self.suite)
    }
}

pub fn cmd_verify(suite: &VerifySuite, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(suite.to_string());
    match *suite {
        VerifySuite::Advanced(k) => verify_advanced(&mut report, k),
        VerifySuite::Prefix(k) => verify_prefix(&mut report, k),
        VerifySuite::Lower(d) => verify_lower(&mut report, d, seed),
        VerifySuite::Upper(d) => verify_upper(&mut report, d, seed),
        VerifySuite::Props => verify_props(&mut report, 200, seed),
    }
    report
}

fn guard(report: &mut VerifyReport, what: &str, value: u32, range: std::ops::RangeInclusive<u32>) -> bool {
    report.check(
        "size guard",
        range.contains(&value),
        format!("{what} = {value}, supported {}..={}", range.start(), range.end()),
    )
}

fn play(
    learner: &mut dyn Learner,
    adversary: &mut dyn Adversary,
    config: &GameConfig,
) -> Result<Transcript, crate::Error> {
    run_game(learner, adversary, config)
}

/// Plays `CreateAdvanced(k)` against the free adversary until it halts and
/// returns the final active list with the transcript.
pub fn create_advanced_run(k: u32) -> Result<(Vec<Hypothesis>, Transcript), crate::Error> {
    let mut learner = ConsistentLearner::create_advanced(k);
    let cap = mistakes_to_halt(k) as usize + 1;
    let t = play(&mut learner, &mut FreeAdversary::new(), &GameConfig::new(None, cap))?;
    let active = learner
        .state()
        .active()
        .as_slice()
        .iter()
        .map(|f| (**f).clone())
        .collect();
    Ok((active, t))
}

fn verify_advanced(report: &mut VerifyReport, k: u32) {
    if !guard(report, "k", k, 0..=MAX_ADVANCED_K) {
        return;
    }
    let (active, t) = match create_advanced_run(k) {
        Ok(run) => run,
        Err(e) => return report.fail("game", e),
    };
    report.expect_eq("termination", t.termination == Termination::LearnerHalted, true);
    report.expect_eq("mistakes", t.mistake_count as u128, mistakes_to_halt(k));
    report.expect_eq("active functions", active.len() as u128, appended_functions(k));
    let distinct = active.iter().collect::<HashSet<_>>().len();
    report.expect_eq("pairwise distinct", distinct, active.len());

    let gamma = create_advanced_gamma(k);
    let n = active.len();
    if n <= EXACT_SUBSET_LIMIT {
        match check_advanced(&active, &gamma, SubsetMode::Exact) {
            Ok(r) => {
                report.check(
                    format!("{gamma}-advanced (all subsets)"),
                    r.holds,
                    format!("{} subsets checked", r.subsets_checked),
                );
            }
            Err(e) => report.fail("advanced check", e),
        }
        return;
    }
    let depth = gamma.required_ldim(n, n);
    let class = HypothesisClass::from_hypotheses(active.clone()).expect("non-empty");
    match find_shattered_tree(&class, depth) {
        Ok(Some(tree)) => {
            report.check(
                format!("shattered tree of depth {depth}"),
                tree.is_shattered_by(&active) && tree.depth() == depth as usize,
                format!("certificate of depth {}", tree.depth()),
            );
        }
        Ok(None) => report.fail(&format!("shattered tree of depth {depth}"), "none found"),
        Err(e) => report.fail("shattered tree", e),
    }
    match check_advanced(&active, &gamma, SubsetMode::Sampled { count: 200, seed: 0 }) {
        Ok(r) => {
            report.check(
                format!("{gamma}-advanced (sampled)"),
                r.holds,
                format!("{} subsets checked", r.subsets_checked),
            );
        }
        Err(e) => report.fail("advanced check", e),
    }
}

fn verify_prefix(report: &mut VerifyReport, k: u32) {
    if !guard(report, "k", k, 0..=MAX_PREFIX_K) {
        return;
    }
    let flat = create_advanced_flattening(k);
    let prefix: Vec<u32> = ProcedureSchedule::predict().take(flat.len()).collect();
    report.expect_eq("flattening length", flat.len() as u128, mistakes_to_halt(k));
    let mismatch = flat.iter().zip(&prefix).position(|(a, b)| a != b);
    report.check(
        "prefix match",
        prefix.len() == flat.len() && mismatch.is_none(),
        match mismatch {
            None => format!("{} calls agree", flat.len()),
            Some(i) => format!("first difference at call {i}"),
        },
    );
}

fn ternary_game(d: u32) -> Result<(Transcript, Vec<bool>), crate::Error> {
    let mut adversary = TernaryAdversary::new(d)?;
    let rounds = pow3(d)? as usize;
    let config = GameConfig::new(Some(d), rounds + 1).with_validation(Validation::Full);
    let t = play(&mut ConsistentLearner::predict(), &mut adversary, &config)?;
    Ok((t, adversary.labels().to_vec()))
}

/// Worst mistake count of the informative learner over every `f_r` and
/// `orderings` shuffled query sequences (including out-of-range points).
pub fn informative_worst_case(d: u32, labels: &[bool], orderings: usize, seed: u64) -> Result<usize, crate::Error> {
    let n = pow3(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0;
    for _ in 0..orderings {
        let mut order: Vec<u64> = (0..n + 3).collect();
        order.shuffle(&mut rng);
        for r in 0..n {
            let f = ternary_function(r, d, labels)?;
            let mut learner = InformativeLearner::new(d, labels.to_vec())?;
            let mut mistakes = 0;
            for &z in &order {
                let p = learner.predict_label(z)?;
                let y = f.evaluate(Point(z));
                learner.update(p, y)?;
                mistakes += usize::from(p != y);
            }
            worst = worst.max(mistakes);
        }
    }
    Ok(worst)
}

fn violation_text(v: &ValidationReport) -> String {
    match &v.first_violation {
        None => "no violation".into(),
        Some(x) => format!("{x:?}"),
    }
}

fn ldim_text(status: LdimStatus) -> String {
    match status {
        LdimStatus::NotRequested => "not requested".into(),
        LdimStatus::Passed => "checked after every round".into(),
        LdimStatus::SkippedSizeGuard { from_round } => {
            format!("checked up to round {}, skipped after (size guard)", from_round - 1)
        }
    }
}

fn verify_lower(report: &mut VerifyReport, d: u32, seed: u64) {
    if !guard(report, "d", d, 1..=MAX_TERNARY_D) {
        return;
    }
    match ternary_game(d) {
        Ok((t, labels)) => {
            let n = 3u64.pow(d);
            report.expect_eq("ternary mistakes", t.mistake_count as u64, n);
            report.expect_eq("ternary rounds", t.rounds.len() as u64, n);
            let v = validate_transcript(&t, Some(d));
            report.check("ternary transcript", v.passed(), violation_text(&v));
            report.check(format!("ternary ldim <= {d}"), v.passed(), ldim_text(v.ldim));
            if d <= 3 {
                match informative_worst_case(d, &labels, 100, seed) {
                    Ok(w) => {
                        report.check(
                            "informative learner",
                            w <= d as usize,
                            format!("worst {w} mistakes over 100 orderings (bound {d})"),
                        );
                    }
                    Err(e) => report.fail("informative learner", e),
                }
            }
        }
        Err(e) => report.fail("ternary game", e),
    }
    if d > MAX_FLOOD_D {
        return;
    }
    let flood = FloodAdversary::new(d).map_err(crate::Error::from).and_then(|mut adv| {
        let config = GameConfig::new(Some(d), adv.points() as usize + 1).with_validation(Validation::Full);
        play(&mut ConsistentLearner::predict(), &mut adv, &config)
    });
    match flood {
        Ok(t) => {
            report.expect_eq("flood mistakes", t.mistake_count as u64, (1u64 << (d + 1)) - 1);
            let v = validate_transcript(&t, Some(d));
            report.check("flood transcript", v.passed(), violation_text(&v));
            report.check(format!("flood ldim <= {d}"), v.passed(), ldim_text(v.ldim));
        }
        Err(e) => report.fail("flood game", e),
    }
}

/// Cap for upper-bound games: past the budget, at least 300 rounds.
pub fn upper_cap(d: u32) -> usize {
    (mistake_budget(d) as usize).max(300)
}

fn verify_upper(report: &mut VerifyReport, d: u32, seed: u64) {
    if !guard(report, "d", d, 1..=MAX_UPPER_D) {
        return;
    }
    let family = ldim_family(d, seed);
    let bound = mistake_budget(d) - 1;
    let cap = upper_cap(d);
    let mut worst_predict = 0;
    let mut worst_soa = 0;
    let mut errors = Vec::new();
    for (i, class) in family.iter().enumerate() {
        let config = GameConfig::new(Some(d), cap);
        match play(&mut ConsistentLearner::predict(), &mut ClassGreedyAdversary::new(class), &config) {
            Ok(t) => worst_predict = worst_predict.max(t.mistake_count),
            Err(e) => errors.push(format!("class {i} predict: {e}")),
        }
        let soa = SoaLearner::new(class).map_err(crate::Error::from);
        match soa.and_then(|mut l| play(&mut l, &mut ClassGreedyAdversary::new(class), &config)) {
            Ok(t) => worst_soa = worst_soa.max(t.mistake_count),
            Err(e) => errors.push(format!("class {i} soa: {e}")),
        }
    }
    report.check(
        "games legal",
        errors.is_empty(),
        errors.first().cloned().unwrap_or_else(|| format!("{} classes", family.len())),
    );
    report.check(
        "predict vs class-greedy",
        worst_predict as u128 <= bound,
        format!("worst {worst_predict} mistakes (bound {bound})"),
    );
    report.check(
        "soa vs class-greedy",
        worst_soa <= d as usize,
        format!("worst {worst_soa} mistakes (bound {d})"),
    );
}

/// Outcome of the random-class property battery.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropsOutcome {
    pub classes: usize,
    pub log_bound_failures: usize,
    pub restriction_failures: usize,
    pub minimax_compared: usize,
    pub minimax_failures: usize,
    pub soa_games: usize,
    pub soa_failures: usize,
    pub errors: Vec<String>,
}

fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

/// Dimension properties on `count` seeded random classes with at most 10
/// hypotheses over at most 8 points.
pub fn props_outcome(count: usize, seed: u64) -> PropsOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropsOutcome::default();
    for i in 0..count {
        let class = HypothesisClass::random(&mut rng, 10, 8);
        out.classes += 1;
        let mut solver = LdimSolver::new(&class);
        let full = solver.full_set();
        let d = solver.ldim(&full);
        if d > floor_log2(solver.distinct_count()) {
            out.log_bound_failures += 1;
        }
        for &x in class.domain() {
            let (zeros, ones) = solver.split_at(&full, x);
            if zeros.is_empty() || ones.is_empty() {
                continue;
            }
            let lower = 1 + solver.ldim(&zeros).min(solver.ldim(&ones));
            if d < lower {
                out.restriction_failures += 1;
            }
        }
        match minimax_adversary_value(&class) {
            Ok(v) => {
                out.minimax_compared += 1;
                out.minimax_failures += usize::from(v != d);
            }
            Err(LdimError::SizeLimitExceeded { .. }) => {}
            Err(e) => out.errors.push(format!("class {i}: {e}")),
        }
        let config = GameConfig::new(Some(d), 40);
        let adversaries: [Box<dyn Adversary>; 2] = [
            Box::new(ClassGreedyAdversary::new(&class)),
            Box::new(ClassRandomAdversary::new(&class, seed ^ i as u64)),
        ];
        for mut adversary in adversaries {
            let game = SoaLearner::new(&class)
                .map_err(crate::Error::from)
                .and_then(|mut l| play(&mut l, adversary.as_mut(), &config));
            out.soa_games += 1;
            match game {
                Ok(t) => out.soa_failures += usize::from(t.mistake_count > d as usize),
                Err(e) => out.errors.push(format!("class {i}: {e}")),
            }
        }
    }
    out
}

fn verify_props(report: &mut VerifyReport, count: usize, seed: u64) {
    let o = props_outcome(count, seed);
    report.check(
        "errors",
        o.errors.is_empty(),
        o.errors.first().cloned().unwrap_or_else(|| "none".into()),
    );
    report.check(
        "ldim <= floor(log2 |H|)",
        o.log_bound_failures == 0,
        format!("{} of {} classes violate", o.log_bound_failures, o.classes),
    );
    report.check(
        "restriction inequality",
        o.restriction_failures == 0,
        format!("{} violating splits", o.restriction_failures),
    );
    report.check(
        "minimax = ldim",
        o.minimax_failures == 0 && o.minimax_compared > 0,
        format!("{} mismatches in {} guarded classes", o.minimax_failures, o.minimax_compared),
    );
    report.check(
        "soa <= ldim",
        o.soa_failures == 0,
        format!("{} of {} games exceed", o.soa_failures, o.soa_games),
    );
}
