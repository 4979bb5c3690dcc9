//! Command-line front end: `simulate`, `ldim`, `verify` and `bench`.

mod bench;
mod family;
mod verify;

pub use bench::{cmd_bench, BenchArgs, BenchRow};
pub use family::{ldim_family, ldim_one_family, random_classes_with_ldim, threshold_family};
pub use verify::{cmd_verify, Check, VerifyReport, VerifySuite};

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::adversary::{
    ClassGreedyAdversary, ClassRandomAdversary, FloodAdversary, FreeAdversary, TernaryAdversary,
};
use crate::game::{
    run_game, validate_transcript, write_transcript, Adversary, GameConfig, Learner, LdimStatus,
    Transcript, Validation, ValidationReport,
};
use crate::hypotheses::{read_class_file, HypothesisClass};
use crate::learner::ConsistentLearner;
use crate::littlestone::{find_shattered_tree, ldim, SoaLearner};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

macro_rules! core_err {
    ($e:expr) => {
        $e.map_err(|e| CliError::Core(e.into()))
    };
}

#[derive(Debug, Parser)]
#[command(name = "consistent-oracle", version, about = "Online learning with a consistent oracle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play a learner against an adversary and record the transcript.
    Simulate(SimulateArgs),
    /// Print the Littlestone dimension of a class file.
    Ldim(LdimArgs),
    /// Run a verification suite: advanced:<k>, prefix:<k>, lower:<d>,
    /// upper:<d> or props.
    Verify(VerifyArgs),
    /// Tabulate mistakes against theoretical bounds.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValidateLevel {
    Consistency,
    Full,
}

impl From<ValidateLevel> for Validation {
    fn from(v: ValidateLevel) -> Self {
        match v {
            ValidateLevel::Consistency => Validation::Consistency,
            ValidateLevel::Full => Validation::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LearnerSpec {
    Predict,
    CreateAdvanced(u32),
    Soa,
}

impl FromStr for LearnerSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "predict" => Ok(LearnerSpec::Predict),
            None if s == "soa" => Ok(LearnerSpec::Soa),
            Some(("create-adv", k)) => k
                .parse()
                .map(LearnerSpec::CreateAdvanced)
                .map_err(|_| format!("bad create-adv level `{k}`")),
            _ => Err(format!("unknown learner `{s}` (predict | create-adv:<k> | soa)")),
        }
    }
}

impl std::fmt::Display for LearnerSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LearnerSpec::Predict => write!(f, "predict"),
            LearnerSpec::CreateAdvanced(k) => write!(f, "create-adv:{k}"),
            LearnerSpec::Soa => write!(f, "soa"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversarySpec {
    Flood(u32),
    Ternary(u32),
    ClassGreedy(PathBuf),
    ClassRandom(PathBuf),
    Free,
}

impl FromStr for AdversarySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let level = |v: &str| v.parse::<u32>().map_err(|_| format!("bad dimension `{v}`"));
        match s.split_once(':') {
            None if s == "free" => Ok(AdversarySpec::Free),
            Some(("flood", d)) => level(d).map(AdversarySpec::Flood),
            Some(("ternary", d)) => level(d).map(AdversarySpec::Ternary),
            Some(("class-greedy", p)) if !p.is_empty() => Ok(AdversarySpec::ClassGreedy(p.into())),
            Some(("class-random", p)) if !p.is_empty() => Ok(AdversarySpec::ClassRandom(p.into())),
            _ => Err(format!(
                "unknown adversary `{s}` (flood:<d> | ternary:<d> | class-greedy:<file> | class-random:<file> | free)"
            )),
        }
    }
}

impl std::fmt::Display for AdversarySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdversarySpec::Flood(d) => write!(f, "flood:{d}"),
            AdversarySpec::Ternary(d) => write!(f, "ternary:{d}"),
            AdversarySpec::ClassGreedy(p) => write!(f, "class-greedy:{}", p.display()),
            AdversarySpec::ClassRandom(p) => write!(f, "class-random:{}", p.display()),
            AdversarySpec::Free => write!(f, "free"),
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "predict")]
    pub learner: LearnerSpec,
    #[arg(long)]
    pub adversary: AdversarySpec,
    /// Declared dimension bound; defaults to the adversary's own.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 300)]
    pub cap: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Repetitions, with seeds `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    pub reps: u32,
    /// Transcript path; repetitions after the first get a `.<i>` suffix.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "consistency")]
    pub validate: ValidateLevel,
}

#[derive(Debug, Clone, clap::Args)]
pub struct LdimArgs {
    pub classfile: PathBuf,
    /// Also print a shattered tree of full depth.
    #[arg(long)]
    pub certificate: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    pub check: VerifySuite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// One fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub learner: LearnerSpec,
    pub adversary: AdversarySpec,
    pub d: Option<u32>,
    pub round_cap: usize,
    pub seed: u64,
    pub reps: u32,
    pub out: Option<PathBuf>,
    pub validation: Validation,
}

impl ExperimentSpec {
    pub fn new(learner: LearnerSpec, adversary: AdversarySpec) -> Self {
        ExperimentSpec {
            learner,
            adversary,
            d: None,
            round_cap: 300,
            seed: 0,
            reps: 1,
            out: None,
            validation: Validation::Consistency,
        }
    }
}

impl From<SimulateArgs> for ExperimentSpec {
    fn from(a: SimulateArgs) -> Self {
        ExperimentSpec {
            learner: a.learner,
            adversary: a.adversary,
            d: a.d,
            round_cap: a.cap,
            seed: a.seed,
            reps: a.reps,
            out: a.out,
            validation: a.validate.into(),
        }
    }
}

fn load_class(path: &Path) -> Result<HypothesisClass, CliError> {
    core_err!(read_class_file(path))
}

/// Builds the learner, using `class` when the learner needs the class.
pub fn build_learner(
    spec: &LearnerSpec,
    class: Option<&HypothesisClass>,
) -> Result<Box<dyn Learner>, CliError> {
    Ok(match spec {
        LearnerSpec::Predict => Box::new(ConsistentLearner::predict()),
        LearnerSpec::CreateAdvanced(k) => Box::new(ConsistentLearner::create_advanced(*k)),
        LearnerSpec::Soa => {
            let class = class.ok_or_else(|| {
                CliError::Usage("soa needs a class-greedy or class-random adversary".into())
            })?;
            Box::new(core_err!(SoaLearner::new(class))?)
        }
    })
}

/// Builds the adversary and returns the class it plays from, if any.
pub fn build_adversary(
    spec: &AdversarySpec,
    seed: u64,
) -> Result<(Box<dyn Adversary>, Option<HypothesisClass>), CliError> {
    Ok(match spec {
        AdversarySpec::Flood(d) => (Box::new(core_err!(FloodAdversary::new(*d))?), None),
        AdversarySpec::Ternary(d) => (Box::new(core_err!(TernaryAdversary::new(*d))?), None),
        AdversarySpec::Free => (Box::new(FreeAdversary::new()), None),
        AdversarySpec::ClassGreedy(p) => {
            let class = load_class(p)?;
            (Box::new(ClassGreedyAdversary::new(&class)), Some(class))
        }
        AdversarySpec::ClassRandom(p) => {
            let class = load_class(p)?;
            (Box::new(ClassRandomAdversary::new(&class, seed)), Some(class))
        }
    })
}

/// The dimension an adversary promises when none is declared.
fn default_dimension(spec: &AdversarySpec, class: Option<&HypothesisClass>) -> Result<Option<u32>, CliError> {
    Ok(match spec {
        AdversarySpec::Flood(d) | AdversarySpec::Ternary(d) => Some(*d),
        AdversarySpec::Free => None,
        AdversarySpec::ClassGreedy(_) | AdversarySpec::ClassRandom(_) => {
            Some(core_err!(ldim(class.expect("class adversaries carry a class")))?)
        }
    })
}

/// Plays one game of `spec` with the given seed.
pub fn play(spec: &ExperimentSpec, seed: u64) -> Result<Transcript, CliError> {
    if spec.round_cap == 0 {
        return Err(CliError::Usage("--cap must be at least 1".into()));
    }
    let (mut adversary, class) = build_adversary(&spec.adversary, seed)?;
    let mut learner = build_learner(&spec.learner, class.as_ref())?;
    let dimension = match spec.d {
        Some(d) => Some(d),
        None => default_dimension(&spec.adversary, class.as_ref())?,
    };
    let config = GameConfig::new(dimension, spec.round_cap)
        .with_seed(seed)
        .with_validation(spec.validation);
    Ok(run_game(learner.as_mut(), adversary.as_mut(), &config)?)
}

pub fn summary_line(t: &Transcript, report: &ValidationReport) -> String {
    let ldim = match report.ldim {
        LdimStatus::NotRequested => "not-requested".to_string(),
        LdimStatus::Passed => "passed".to_string(),
        LdimStatus::SkippedSizeGuard { from_round } => format!("skipped-size-guard@{from_round}"),
    };
    let termination = serde_json::to_value(t.termination)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    format!(
        "learner={} adversary={} seed={} rounds={} mistakes={} termination={} validation={} ldim={}",
        t.header.learner,
        t.header.adversary,
        t.header.seed,
        t.rounds.len(),
        t.mistake_count,
        termination,
        if report.passed() { "pass" } else { "fail" },
        ldim,
    )
}

fn transcript_path(base: &Path, rep: u32) -> PathBuf {
    if rep == 0 {
        base.to_path_buf()
    } else {
        let mut s = base.as_os_str().to_owned();
        s.push(format!(".{rep}"));
        PathBuf::from(s)
    }
}

pub fn cmd_simulate(spec: &ExperimentSpec, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut ok = true;
    for rep in 0..spec.reps.max(1) {
        let seed = spec.seed.wrapping_add(u64::from(rep));
        let t = play(spec, seed)?;
        if let Some(base) = &spec.out {
            let path = transcript_path(base, rep);
            let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
            let mut w = BufWriter::new(file);
            core_err!(write_transcript(&t, &mut w))?;
            w.flush().map_err(|e| CliError::io(&path, e))?;
        }
        let report = validate_transcript(&t, t.header.dimension);
        ok &= report.passed();
        writeln!(out, "{}", summary_line(&t, &report)).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    }
    Ok(ok)
}

pub fn cmd_ldim(args: &LdimArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let class = load_class(&args.classfile)?;
    let d = core_err!(ldim(&class))?;
    let stdout = |e| CliError::io(Path::new("<stdout>"), e);
    writeln!(out, "ldim = {d}").map_err(stdout)?;
    if args.certificate && d >= 1 {
        let tree = core_err!(find_shattered_tree(&class, d))?
            .expect("a class of dimension d shatters a depth-d tree");
        write!(out, "{}", tree.render(class.hypotheses())).map_err(stdout)?;
    }
    Ok(true)
}

/// Runs a parsed command; `Ok(false)` means an assertion failed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a.into(), out),
        Command::Ldim(a) => cmd_ldim(&a, out),
        Command::Verify(a) => {
            let report = cmd_verify(&a.check, a.seed);
            write!(out, "{report}").map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            Ok(report.passed())
        }
        Command::Bench(a) => cmd_bench(&a, out),
    }
}

/// Process entry point: 0 on success, 1 on a failed assertion, 2 on error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
