mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{CliError, Outcome};
use crate::report::{Engine, RunReport};

#[derive(Parser, Debug)]
#[command(name = "bellgame", version, about = "Classical and GHZ-advised equilibria of a three-player Bell game")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Game definition: a JSON file or `builtin:table1`
    #[arg(long, global = true, default_value = "builtin:table1")]
    game: String,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Random hidden-variable mixtures drawn by `audit-bound`
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Optimizer restarts
    #[arg(long, global = true, default_value_t = 16)]
    restarts: usize,

    /// Grid points per angle for the optimizer's initial scan
    #[arg(long, global = true, default_value_t = 16)]
    grid: usize,

    /// Optimizer convergence tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    #[arg(long, global = true, default_value_t = 2000)]
    max_iterations: usize,

    /// Best-response search space used by `check`
    #[arg(long, global = true, value_enum, default_value_t = Mode::Planar)]
    mode: Mode,

    /// Record wall time in the report (makes reruns differ)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all deterministic Nash equilibria
    Equilibria,
    /// Check the classical total-payoff bound on deterministic profiles and sampled mixtures
    AuditBound,
    /// Bell values of every deterministic profile, optionally of a quantum setting
    Bell {
        /// Measurement setting (JSON) to evaluate on the GHZ advisor
        #[arg(long)]
        setting: Option<PathBuf>,
    },
    /// Maximize the GHZ payoff over equatorial measurements
    Optimize,
    /// Evaluate a measurement setting on the GHZ advisor
    Check {
        /// Measurement setting (JSON)
        setting: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Planar,
    Full,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let game = commands::load_game(&cli.game)?;
    let config = bellgame::optimize::OptimizationConfig {
        restarts: cli.restarts,
        grid: cli.grid,
        tol: cli.tol,
        max_iterations: cli.max_iterations,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Equilibria => commands::equilibria(&game),
        Command::AuditBound => commands::audit(&game, cli.samples, cli.seed),
        Command::Bell { setting } => commands::bell(&game, setting.as_deref()),
        Command::Optimize => commands::optimize(&game, &config),
        Command::Check { setting } => {
            let mode = match cli.mode {
                Mode::Planar => bellgame::optimize::SearchMode::Planar,
                Mode::Full => bellgame::optimize::SearchMode::FullSphere,
            };
            commands::check(&game, setting, mode, &config)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Equilibria => "equilibria",
        Command::AuditBound => "audit-bound",
        Command::Bell { .. } => "bell",
        Command::Optimize => "optimize",
        Command::Check { .. } => "check",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let report = RunReport {
        command: command_name(&cli.command).to_string(),
        inputs: outcome.inputs,
        engine: Engine::current(),
        results: outcome.results,
        wall_time_s: cli.timing.then(|| start.elapsed().as_secs_f64()),
    };
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let e = CliError::Io(format!("{}: {e}", path.display()));
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        }
        None => print!("{text}"),
    }
    if outcome.converged {
        ExitCode::SUCCESS
    } else {
        eprintln!("warning: optimizer did not converge within the iteration limit");
        ExitCode::from(3)
    }
}
