//! `bench`: mistakes observed against the theoretical bounds, one row per
//! (d, learner, adversary) cell.

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::adversary::{
    pow3, ClassGreedyAdversary, ClassRandomAdversary, FloodAdversary, TernaryAdversary,
};
use crate::game::{run_game, Adversary, GameConfig, Learner};
use crate::hypotheses::HypothesisClass;
use crate::learner::{mistake_budget, mistakes_to_halt};
use crate::littlestone::SoaLearner;

use super::family::ldim_family;
use super::verify::{upper_cap, MAX_FLOOD_D, MAX_TERNARY_D, MAX_UPPER_D};
use super::{build_learner, CliError, LearnerSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAdversary {
    Ternary,
    Flood,
    ClassGreedy,
    ClassRandom,
}

impl FromStr for BenchAdversary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ternary" => Ok(BenchAdversary::Ternary),
            "flood" => Ok(BenchAdversary::Flood),
            "class-greedy" => Ok(BenchAdversary::ClassGreedy),
            "class-random" => Ok(BenchAdversary::ClassRandom),
            _ => Err(format!(
                "unknown bench adversary `{s}` (ternary | flood | class-greedy | class-random)"
            )),
        }
    }
}

impl fmt::Display for BenchAdversary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchAdversary::Ternary => "ternary",
            BenchAdversary::Flood => "flood",
            BenchAdversary::ClassGreedy => "class-greedy",
            BenchAdversary::ClassRandom => "class-random",
        })
    }
}

/// `a-b` or a comma-separated list.
fn parse_dims(s: &str) -> Result<Vec<u32>, String> {
    let bad = |_| format!("bad dimension list `{s}`");
    if let Some((a, b)) = s.split_once('-') {
        let (a, b): (u32, u32) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|v| v.trim().parse().map_err(bad)).collect()
}

#[derive(Debug, Clone, clap::Args)]
pub struct BenchArgs {
    /// Dimensions, as `1-4` or `1,2`.
    #[arg(long = "d", default_value = "1-2", value_parser = parse_dims)]
    pub dims: std::vec::Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "predict")]
    pub learners: Vec<LearnerSpec>,
    #[arg(long, value_delimiter = ',', default_value = "ternary,flood")]
    pub adversaries: Vec<BenchAdversary>,
    /// Overrides the per-cell round cap.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Table path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print `-` in the runtime column so output is byte-stable.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub d: u32,
    pub learner: String,
    pub adversary: String,
    pub games: usize,
    /// Worst mistake count over the cell's games.
    pub mistakes: Option<u128>,
    pub bound: Option<u128>,
    /// `lower` (forced count), `upper` (budget) or `halt` (learner stops).
    pub bound_kind: &'static str,
    pub status: String,
    pub runtime_ms: Option<u128>,
}

impl BenchRow {
    pub const HEADER: &'static str =
        "d\tlearner\tadversary\tgames\tmistakes\tbound\tbound_kind\tstatus\truntime_ms";

    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn to_line(&self, timing: bool) -> String {
        let opt = |v: Option<u128>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.d,
            self.learner,
            self.adversary,
            self.games,
            opt(self.mistakes),
            opt(self.bound),
            self.bound_kind,
            self.status,
            if timing { opt(self.runtime_ms) } else { "-".into() },
        )
    }
}

struct Cell {
    d: u32,
    learner: LearnerSpec,
    adversary: BenchAdversary,
}

/// Mistakes the learner can make at most before halting on its own.
fn halting_budget(learner: &LearnerSpec) -> Option<u128> {
    match learner {
        LearnerSpec::CreateAdvanced(k) => Some(mistakes_to_halt(*k)),
        _ => None,
    }
}

fn run_cell(cell: &Cell, cap: Option<usize>, seed: u64) -> BenchRow {
    let start = Instant::now();
    let mut row = BenchRow {
        d: cell.d,
        learner: cell.learner.to_string(),
        adversary: cell.adversary.to_string(),
        games: 0,
        mistakes: None,
        bound: None,
        bound_kind: "-",
        status: String::new(),
        runtime_ms: None,
    };
    row.status = match evaluate(cell, cap, seed, &mut row) {
        Ok(()) => {
            let within = match (row.mistakes, row.bound, row.bound_kind) {
                (Some(m), Some(b), "lower") => {
                    m >= halting_budget(&cell.learner).map_or(b, |h| h.min(b))
                }
                (Some(m), Some(b), _) => m <= b,
                _ => false,
            };
            if within { "ok" } else { "violation" }.to_string()
        }
        Err(e) => format!("error: {e}"),
    };
    row.runtime_ms = Some(start.elapsed().as_millis());
    row
}

fn evaluate(cell: &Cell, cap: Option<usize>, seed: u64, row: &mut BenchRow) -> Result<(), CliError> {
    let d = cell.d;
    let lower = |row: &mut BenchRow, max_d: u32, bound: u128| -> Result<(), CliError> {
        if d == 0 || d > max_d {
            return Err(CliError::Usage(format!("d = {d} outside 1..={max_d}")));
        }
        if cell.learner == LearnerSpec::Soa {
            return Err(CliError::Usage("soa needs a class adversary".into()));
        }
        row.bound = Some(bound);
        row.bound_kind = "lower";
        Ok(())
    };
    let game = |learner: &mut dyn Learner, adversary: &mut dyn Adversary, rounds: usize| {
        let config = GameConfig::new(Some(d), cap.unwrap_or(rounds)).with_seed(seed);
        run_game(learner, adversary, &config).map_err(CliError::from)
    };
    match cell.adversary {
        BenchAdversary::Ternary => {
            let n = pow3(d.min(MAX_TERNARY_D + 1)).map_err(crate::Error::from)?;
            lower(row, MAX_TERNARY_D, u128::from(n))?;
            let mut learner = build_learner(&cell.learner, None)?;
            let mut adversary = TernaryAdversary::new(d).map_err(crate::Error::from)?;
            let t = game(learner.as_mut(), &mut adversary, n as usize + 1)?;
            row.games = 1;
            row.mistakes = Some(t.mistake_count as u128);
        }
        BenchAdversary::Flood => {
            lower(row, MAX_FLOOD_D, (1u128 << (d.min(MAX_FLOOD_D) + 1)) - 1)?;
            let mut learner = build_learner(&cell.learner, None)?;
            let mut adversary = FloodAdversary::new(d).map_err(crate::Error::from)?;
            let rounds = adversary.points() as usize + 1;
            let t = game(learner.as_mut(), &mut adversary, rounds)?;
            row.games = 1;
            row.mistakes = Some(t.mistake_count as u128);
        }
        BenchAdversary::ClassGreedy | BenchAdversary::ClassRandom => {
            if d == 0 || d > MAX_UPPER_D {
                return Err(CliError::Usage(format!("d = {d} outside 1..={MAX_UPPER_D}")));
            }
            let (bound, kind) = match cell.learner {
                LearnerSpec::Predict => (mistake_budget(d) - 1, "upper"),
                LearnerSpec::Soa => (u128::from(d), "upper"),
                LearnerSpec::CreateAdvanced(k) => (mistakes_to_halt(k), "halt"),
            };
            row.bound = Some(bound);
            row.bound_kind = kind;
            let family: Vec<HypothesisClass> = ldim_family(d, seed);
            let mut worst = 0u128;
            for (i, class) in family.iter().enumerate() {
                let mut learner: Box<dyn Learner> = match cell.learner {
                    LearnerSpec::Soa => Box::new(SoaLearner::new(class).map_err(crate::Error::from)?),
                    ref spec => build_learner(spec, Some(class))?,
                };
                let mut adversary: Box<dyn Adversary> = match cell.adversary {
                    BenchAdversary::ClassGreedy => Box::new(ClassGreedyAdversary::new(class)),
                    _ => Box::new(ClassRandomAdversary::new(class, seed.wrapping_add(i as u64))),
                };
                let t = game(learner.as_mut(), adversary.as_mut(), upper_cap(d))?;
                worst = worst.max(t.mistake_count as u128);
            }
            row.games = family.len();
            row.mistakes = Some(worst);
        }
    }
    Ok(())
}

/// Runs every cell (concurrently) and returns rows in cell order.
pub fn bench_rows(args: &BenchArgs) -> Vec<BenchRow> {
    let cells: Vec<Cell> = args
        .dims
        .iter()
        .flat_map(|&d| {
            args.adversaries.iter().flat_map(move |&adversary| {
                args.learners.iter().map(move |learner| Cell {
                    d,
                    learner: learner.clone(),
                    adversary,
                })
            })
        })
        .collect();
    cells
        .par_iter()
        .map(|cell| run_cell(cell, args.cap, args.seed))
        .collect()
}

pub fn render_table(rows: &[BenchRow], timing: bool) -> String {
    let mut out = String::from(BenchRow::HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_line(timing));
        out.push('\n');
    }
    out
}

/// Writes the table; `Ok(false)` when some cell broke its bound or failed.
pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let rows = bench_rows(args);
    let table = render_table(&rows, !args.no_timing);
    match &args.out {
        Some(path) => {
            let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
            f.write_all(table.as_bytes()).map_err(|e| CliError::io(path, e))?;
        }
        None => out
            .write_all(table.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
    }
    Ok(rows.iter().all(BenchRow::ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(dims: &str, learners: &[&str], adversaries: &[&str]) -> BenchArgs {
        BenchArgs {
            dims: parse_dims(dims).unwrap(),
            learners: learners.iter().map(|s| s.parse().unwrap()).collect(),
            adversaries: adversaries.iter().map(|s| s.parse().unwrap()).collect(),
            cap: None,
            seed: 0,
            out: None,
            no_timing: true,
        }
    }

    #[test]
    fn dims() {
        assert_eq!(parse_dims("1-4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_dims("2,3").unwrap(), vec![2, 3]);
        assert!(parse_dims("3-1").is_err());
    }

    #[test]
    fn lower_bound_rows() {
        let rows = bench_rows(&args("1-2", &["predict"], &["ternary", "flood"]));
        let got: Vec<_> = rows.iter().map(|r| (r.adversary.as_str(), r.mistakes)).collect();
        assert_eq!(
            got,
            vec![
                ("ternary", Some(3)),
                ("flood", Some(3)),
                ("ternary", Some(9)),
                ("flood", Some(7)),
            ]
        );
        assert!(rows.iter().all(BenchRow::ok));
    }

    #[test]
    fn unsupported_cell_is_recorded() {
        let rows = bench_rows(&args("1", &["soa"], &["ternary"]));
        assert!(rows[0].status.starts_with("error"));
    }
}
