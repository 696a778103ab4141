//! `operadic`: simulate the operadic Lax representation of the harmonic
//! oscillator, or stress-test the operad laws on random tensors.
//!
//! Exit codes: 0 on success, 1 on runtime failure (blow-up, I/O trouble,
//! failing law suite), 2 on usage errors.

mod sim;
mod style;
mod suite;

use clap::{Parser, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "operadic",
    version,
    about = "Harmonic-oscillator simulations driven by an operadic Lax pair, \
             plus a randomized verifier for the operad laws"
)]
struct Cli {
    /// Angular frequency of the oscillator (must be positive).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega: f64,

    /// Initial position q(0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    q0: f64,

    /// Initial momentum p(0).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p0: f64,

    /// Integration step size [default: 2*pi/4000].
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,

    /// Number of RK4 steps; the emitted trajectory has steps+1 records.
    #[arg(long, default_value_t = 8000)]
    steps: usize,

    /// Trajectory output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for the law suite's random tensors.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Run the randomized operad law suite instead of a simulation.
    #[arg(long)]
    check_axioms: bool,

    /// Number of random trials in the law suite.
    #[arg(long, default_value_t = 1000)]
    trials: usize,

    /// Tolerance override applied to every law in the suite.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    if let Err(msg) = validate(&cli) {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }

    let to_file = cli.out.is_some();
    let mut writer: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return EXIT_RUNTIME;
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };

    let code = if cli.check_axioms {
        let styled = !to_file && io::stdout().is_terminal() && style::color_allowed_by_env();
        let cfg = suite::SuiteConfig {
            trials: cli.trials,
            seed: cli.seed,
            dims: vec![1, 2, 3],
            degrees: vec![1, 2, 3],
            tol_override: cli.tol,
        };
        match suite::run(&cfg, &mut writer, styled) {
            Ok(true) => EXIT_OK,
            Ok(false) => EXIT_RUNTIME,
            Err(e) if is_broken_pipe(&e) => return EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_RUNTIME
            }
        }
    } else {
        let cfg = sim::SimConfig {
            omega: cli.omega,
            q0: cli.q0,
            p0: cli.p0,
            dt: cli.dt.unwrap_or(std::f64::consts::TAU / 4000.0),
            steps: cli.steps,
            format: cli.format,
        };
        match sim::run_simulation(&cfg, &mut writer) {
            Ok(sim::SimOutcome::Completed) => EXIT_OK,
            Ok(sim::SimOutcome::Aborted(msg)) => {
                eprintln!("error: {msg}");
                EXIT_RUNTIME
            }
            Err(e) if is_broken_pipe(&e) => return EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_RUNTIME
            }
        }
    };

    match writer.flush() {
        Ok(()) => code,
        // A consumer like `head` closing the pipe early is not a failure.
        Err(e) if is_broken_pipe(&e) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

fn is_broken_pipe(e: &io::Error) -> bool {
    e.kind() == io::ErrorKind::BrokenPipe
}

fn validate(cli: &Cli) -> Result<(), String> {
    if cli.check_axioms {
        if cli.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        if let Some(tol) = cli.tol {
            if !(tol >= 0.0 && tol.is_finite()) {
                return Err(format!("--tol must be a finite non-negative number, got {tol}"));
            }
        }
        return Ok(());
    }

    if !(cli.omega > 0.0 && cli.omega.is_finite()) {
        return Err(format!("--omega must be positive and finite, got {}", cli.omega));
    }
    if !cli.q0.is_finite() || !cli.p0.is_finite() {
        return Err("--q0 and --p0 must be finite".into());
    }
    if let Some(dt) = cli.dt {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(format!("--dt must be positive and finite, got {dt}"));
        }
    }
    if cli.steps == 0 {
        return Err("--steps must be at least 1".into());
    }
    Ok(())
}
