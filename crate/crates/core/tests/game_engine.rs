mod common;

use std::sync::Arc;

use consistent_oracle::game::{
    read_transcript, validate_transcript, GameError, LdimStatus, Reply, Termination, Violation,
};
use consistent_oracle::{
    run_game, Adversary, ClassGreedyAdversary, ConsistentLearner, Error, FloodAdversary,
    FreeAdversary, GameConfig, Hypothesis, Point, SoaLearner, TernaryAdversary, Validation,
};

use common::*;

#[test]
fn predict_against_ternary_one() {
    let mut adv = TernaryAdversary::new(1).unwrap();
    let config = GameConfig::new(Some(1), 100).with_validation(Validation::Full);
    let t = run_game(&mut ConsistentLearner::predict(), &mut adv, &config).unwrap();
    assert_eq!(t.rounds.len(), 3);
    assert_eq!(t.mistake_count, 3);
    assert_eq!(t.termination, Termination::AdversaryDone);
    assert_eq!(t.ldim_status, LdimStatus::Passed);
    assert!(validate_transcript(&t, Some(1)).passed());
}

#[test]
fn soa_on_all_functions_of_two_points() {
    let class = all_functions_on(2);
    let config = GameConfig::new(Some(2), 100);
    let mut soa = SoaLearner::new(&class).unwrap();
    let t = run_game(&mut soa, &mut ClassGreedyAdversary::new(&class), &config).unwrap();
    assert!(t.mistake_count <= 2);
    assert_eq!(t.termination, Termination::RoundCapReached);
    assert_eq!(t.rounds.len(), 100);
}

#[test]
fn create_advanced_zero_halts_after_sixteen() {
    let mut learner = ConsistentLearner::create_advanced(0);
    let t = run_game(&mut learner, &mut FreeAdversary::new(), &GameConfig::new(None, 100)).unwrap();
    assert_eq!(t.mistake_count, 16);
    assert_eq!(t.termination, Termination::LearnerHalted);
    assert_eq!(learner.state().active().len(), 16);
}

#[test]
fn flood_five_skips_dimension_check() {
    let mut adv = FloodAdversary::new(5).unwrap();
    let t = run_game(&mut ConsistentLearner::predict(), &mut adv, &GameConfig::new(Some(5), 100)).unwrap();
    assert_eq!(t.mistake_count, 63);
    let v = validate_transcript(&t, Some(5));
    assert!(v.passed());
    assert!(matches!(v.ldim, LdimStatus::SkippedSizeGuard { .. }));
}

/// Declares dimension 1 while revealing all four functions on two points.
struct TooRich {
    round: u64,
}

impl Adversary for TooRich {
    fn name(&self) -> String {
        "too-rich".into()
    }

    fn next_point(&mut self) -> Option<Point> {
        (self.round < 4).then_some(Point(9))
    }

    fn respond(&mut self, _x: Point, _prediction: bool) -> consistent_oracle::Result<Reply> {
        let r = self.round;
        self.round += 1;
        let ones: Vec<Point> = [0, 1].into_iter().filter(|i| r >> i & 1 == 1).map(Point).collect();
        Ok(Reply {
            label: false,
            function: Arc::new(Hypothesis::indicator(format!("g{r}"), [], &ones)),
        })
    }
}

#[test]
fn dimension_violation_under_full_validation() {
    let config = GameConfig::new(Some(1), 10).with_validation(Validation::Full);
    let err = run_game(&mut ConsistentLearner::predict(), &mut TooRich { round: 0 }, &config).unwrap_err();
    assert!(
        matches!(err, Error::Game(GameError::DimensionViolation { ldim: 2, bound: 1, .. })),
        "{err:?}"
    );
    // consistency alone accepts the same play
    let config = GameConfig::new(Some(1), 10);
    assert!(run_game(&mut ConsistentLearner::predict(), &mut TooRich { round: 0 }, &config).is_ok());
}

#[test]
fn tampered_label_is_located() {
    let mut adv = TernaryAdversary::new(2).unwrap();
    let t = run_game(&mut ConsistentLearner::predict(), &mut adv, &GameConfig::new(Some(2), 50)).unwrap();
    let mut text = String::new();
    for (i, line) in t.to_jsonl().lines().enumerate() {
        // flip y in the round-4 record
        if line.contains("\"round\":4,") {
            let flipped = if line.contains("\"y\":1") {
                line.replace("\"y\":1", "\"y\":0")
            } else {
                line.replace("\"y\":0", "\"y\":1")
            };
            assert_ne!(flipped, line, "line {i}");
            text.push_str(&flipped);
        } else {
            text.push_str(line);
        }
        text.push('\n');
    }
    let back = read_transcript(text.as_bytes()).unwrap();
    let v = validate_transcript(&back, Some(2));
    assert!(!v.passed());
    assert!(
        matches!(v.first_violation, Some(Violation::InconsistentFunction { round: 4, .. })),
        "{:?}",
        v.first_violation
    );
}

#[test]
fn same_inputs_same_bytes() {
    let play = || {
        let class = all_functions_on(3);
        let config = GameConfig::new(Some(3), 60).with_seed(5);
        let t = run_game(
            &mut ConsistentLearner::predict(),
            &mut consistent_oracle::ClassRandomAdversary::new(&class, 5),
            &config,
        )
        .unwrap();
        t.to_jsonl()
    };
    assert_eq!(play(), play());
}
