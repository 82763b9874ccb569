//! `affqis` command-line front end.
//!
//! Exit codes: 0 success, 1 violated inequality or property, 2 usage or bad
//! grid, 3 parse error, 4 invalid state or dimension, 5 optimizer failure,
//! 6 I/O failure. Timing goes to stderr so stdout stays byte-reproducible.

mod format;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use affqis::io::parse_state;
use affqis::panel::{measure_panel, PanelOptions};
use affqis::sweep::{sweep, Family, Grid};
use affqis::verify::{self, Suite, VerifyOptions};
use affqis::{Error, Search};
use clap::{Args, Parser, Subcommand, ValueEnum};

use format::{panel_csv, sweep_csv, verify_csv};

#[derive(Parser, Debug)]
#[command(name = "affqis", version, about = "Affinity-based coherence and correlation measures")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for every random restart.
    #[arg(long, global = true, env = "AFFQIS_SEED", default_value_t = 0)]
    seed: u64,
    /// Multistart restarts per optimization.
    #[arg(long, global = true, env = "AFFQIS_RESTARTS", default_value_t = Search::default().restarts)]
    restarts: usize,
    /// Slack allowed on optimizer-backed inequalities and sweep gaps.
    #[arg(long, global = true, env = "AFFQIS_TOLERANCE", default_value_t = 1e-6)]
    tolerance: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "AFFQIS_OUTPUT")]
    output: Option<PathBuf>,
    #[arg(long, global = true, env = "AFFQIS_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Run on a single thread.
    #[arg(long, global = true, env = "AFFQIS_SEQUENTIAL")]
    sequential: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every measure on the state stored in a JSON file.
    Panel {
        state_file: PathBuf,
        /// Comma-separated generator spectrum for the interferometric power.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spectrum: Option<Vec<f64>>,
    },
    /// Compare family closed forms of Q_A with the optimizer over a grid.
    Sweep {
        #[arg(value_enum)]
        family: FamilyName,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Local dimension for werner and isotropic.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Correlation direction for bell-diagonal, scaled by the parameter.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,-1,1")]
        direction: Vec<f64>,
    },
    /// Run Monte-Carlo property suites.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: SuiteName,
        trials: usize,
        /// Overrides --seed.
        seed: Option<u64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FamilyName {
    BellDiagonal,
    Werner,
    Isotropic,
    Pure,
}

#[derive(Debug, Clone, Copy)]
enum SuiteName {
    All,
    One(Suite),
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    if s == "all" {
        return Ok(SuiteName::All);
    }
    s.parse().map(SuiteName::One).map_err(|_| {
        format!("expected one of all, {}", Suite::ALL.map(Suite::name).join(", "))
    })
}

enum Failure {
    Core(Error),
    Io(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Io(_) => 6,
            Failure::Core(e) => match e {
                Error::BadGrid(_) | Error::ParameterOutOfRange(_) => 2,
                Error::Parse(_) => 3,
                Error::OptimizationFailed(_) | Error::InternalConsistency(_) => 5,
                _ => 4,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Violation(m) => m.clone(),
        }
    }
}

fn search(common: &Common) -> Search {
    Search::default()
        .with_seed(common.seed)
        .with_restarts(common.restarts)
        .parallel(!common.sequential)
}

/// Report text plus the names of anything that did not hold.
struct Outcome {
    text: String,
    violations: Vec<String>,
}

fn run_panel(common: &Common, path: &PathBuf, spectrum: Option<Vec<f64>>) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let rho = parse_state(&text)?.density();
    let options = PanelOptions {
        search: search(common),
        spectrum,
        tolerance: common.tolerance,
    };
    let panel = measure_panel(&rho, &options)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let violations = panel.checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect();
    let text = match common.format {
        Format::Csv => panel_csv(&label, &panel),
        Format::Json => json(&serde_json::json!({ "input": label, "panel": panel })),
    };
    Ok(Outcome { text, violations })
}

fn run_sweep(
    common: &Common,
    family: FamilyName,
    grid: Grid,
    m: usize,
    direction: &[f64],
) -> Result<Outcome, Failure> {
    let family = match family {
        FamilyName::BellDiagonal => {
            let direction: [f64; 3] = direction
                .try_into()
                .map_err(|_| Error::BadGrid(format!("direction needs 3 components, got {}", direction.len())))?;
            Family::BellDiagonal { direction }
        }
        FamilyName::Werner => Family::Werner { m },
        FamilyName::Isotropic => Family::Isotropic { m },
        FamilyName::Pure => Family::Pure,
    };
    let rows = sweep(family, &grid, &search(common))?;
    let violations = rows
        .iter()
        .filter(|r| !(r.gap <= common.tolerance))
        .map(|r| format!("gap at {}", format::sig(r.param)))
        .collect();
    let text = match common.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => json(&rows),
    };
    Ok(Outcome { text, violations })
}

fn run_verify(common: &Common, suite: SuiteName, trials: usize, seed: Option<u64>) -> Result<Outcome, Failure> {
    let suites = match suite {
        SuiteName::All => Suite::ALL.to_vec(),
        SuiteName::One(s) => vec![s],
    };
    let options = VerifyOptions {
        trials,
        seed: seed.unwrap_or(common.seed),
        restarts: common.restarts,
        parallel: !common.sequential,
    };
    let report = verify::run(&suites, &options)?;
    let violations = report
        .violations()
        .iter()
        .map(|p| format!("{}/{}", p.suite, p.property))
        .collect();
    let text = match common.format {
        Format::Csv => verify_csv(&report),
        Format::Json => json(&report),
    };
    Ok(Outcome { text, violations })
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let outcome = match cli.command {
        Command::Panel { state_file, spectrum } => run_panel(common, &state_file, spectrum)?,
        Command::Sweep {
            family,
            from,
            to,
            points,
            m,
            direction,
        } => run_sweep(common, family, Grid::new(from, to, points)?, m, &direction)?,
        Command::Verify { suite, trials, seed } => run_verify(common, suite, trials, seed)?,
    };
    emit(common, &outcome.text)?;
    if outcome.violations.is_empty() {
        Ok(())
    } else {
        let mut msg = format!("{} violation(s):", outcome.violations.len());
        for v in &outcome.violations {
            let _ = write!(msg, " {v}");
        }
        Err(Failure::Violation(msg))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
