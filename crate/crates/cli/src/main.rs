use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncc_cli::record::to_json_lines;
use ncc_cli::sweep::{self, ConeGrid};
use ncc_cli::{output, run, CliError, Header, Options, RunConfig, Scenario};
use ncc_core::UnitSystem;

#[derive(Parser)]
#[command(
    name = "ncc",
    version,
    about = "Causal queries on noncommutative spacetime models"
)]
struct Cli {
    /// Comparison tolerance; overrides the scenario's `options.tol`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Fock space truncation for Moyal scenarios.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Polyline segments for the weighted proper-time search.
    #[arg(long, global = true)]
    segments: Option<usize>,
    /// Iteration budget for optimizers and witness searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Output file, written atomically. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include search diagnostics and witness matrices.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form predicate on every pair of a scenario.
    Check { scenario: PathBuf },
    /// Compare closed-form Moyal verdicts with an operator-level witness search.
    Verify { scenario: PathBuf },
    /// Tabulate coherent-state cone membership over a grid of displacements.
    ScanCone {
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        im_max: f64,
        /// Points per axis, unless set per axis.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long)]
        re_steps: Option<usize>,
        #[arg(long)]
        im_steps: Option<usize>,
    },
    /// Tabulate the level-jump bound against the level.
    BoundCurve {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        n_max: usize,
    },
    /// Zitterbewegung period and the cross-sheet proper-time bound.
    Zitter {
        /// Particle mass in kilograms.
        #[arg(long, allow_negative_numbers = true)]
        mass: f64,
        #[arg(long, value_enum, default_value_t = Units::Si)]
        units: Units,
        /// Mass used for the natural-units bound.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        natural_mass: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Units {
    Si,
    Natural,
}

fn batch(cli: &Cli, path: &Path, verify: bool) -> Result<bool, CliError> {
    let overrides = Options {
        tol: cli.tol,
        truncation: cli.truncation,
        segments: cli.segments,
        budget: cli.budget,
        seed: cli.seed,
    };
    let scenario = Scenario::load(path, overrides)?;
    for field in &scenario.ignored {
        log::warn!("ignoring `{field}`: it does not enter the causal predicate");
    }
    let config = RunConfig { verbose: cli.verbose };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = ncc_cli::requested_threads() {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Argument(e.to_string()))?;
    let records = pool.install(|| {
        if verify {
            run::verify(&scenario, &config)
        } else {
            run::check(&scenario, &config)
        }
    })?;
    let header = Header::now(if verify { "verify" } else { "check" }, scenario.model.name(), records.len());
    output::emit(cli.out.as_deref(), &to_json_lines(&header, &records))?;
    Ok(run::any_undetermined(&records))
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Check { scenario } => batch(cli, scenario, false),
        Command::Verify { scenario } => batch(cli, scenario, true),
        Command::ScanCone { re_min, re_max, im_min, im_max, steps, re_steps, im_steps } => {
            let grid = ConeGrid {
                re: (*re_min, *re_max),
                im: (*im_min, *im_max),
                re_steps: re_steps.unwrap_or(*steps),
                im_steps: im_steps.unwrap_or(*steps),
            };
            output::emit(cli.out.as_deref(), &sweep::cone_csv(&sweep::scan_cone(&grid)?))?;
            Ok(false)
        }
        Command::BoundCurve { theta, n_max } => {
            output::emit(cli.out.as_deref(), &sweep::bound_csv(&sweep::bound_curve(*theta, *n_max)?))?;
            Ok(false)
        }
        Command::Zitter { mass, units, natural_mass } => {
            let units = match units {
                Units::Si => UnitSystem::SI,
                Units::Natural => UnitSystem::NATURAL,
            };
            let report = sweep::zitter(*mass, units, *natural_mass)?;
            let json = serde_json::to_string(&report).expect("report serializes") + "\n";
            match &cli.out {
                Some(path) => {
                    output::emit(Some(path), &json)?;
                    print!("{}", report.text());
                }
                None => print!("{}{json}", report.text()),
            }
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // exit code 2 is reserved for undetermined verdicts
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
