use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coopetitive_cli::config::{load_config, GameConfig};
use coopetitive_cli::report::analyze;
use coopetitive_cli::svg::{render_figures, SvgError};
use coopetitive_cli::verify::{run_verification, DEFAULT_SEED};

const EXIT_CONFIG: u8 = 1;
const EXIT_ANALYSIS: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Exact payoff geometry and bargaining solutions for coopetitive Cournot duopolies.
#[derive(Parser)]
#[command(name = "coopetitive", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the game and write report.json.
    Analyze(Common),
    /// Write the SVG figures.
    Plot(Common),
    /// Run the sampling oracles and print one line per check.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Game config (JSON). Defaults to the worked example.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Grid resolution for sampling, overriding the config.
    #[arg(long)]
    resolution: Option<usize>,
}

impl Common {
    fn load(&self) -> Result<GameConfig, ExitCode> {
        let config = match &self.config {
            Some(path) => load_config(path),
            None => Ok(GameConfig::worked_example()),
        };
        let config = config.and_then(|c| match self.resolution {
            Some(r) => c.with_resolution(r),
            None => Ok(c),
        });
        config.map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        })
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<(), ExitCode> {
    match cli.command {
        Command::Analyze(common) => {
            let config = common.load()?;
            let report = analyze(&config).map_err(|e| fail(EXIT_ANALYSIS, e))?;
            let path = common.out.join("report.json");
            std::fs::create_dir_all(&common.out)
                .and_then(|_| std::fs::write(&path, report.to_json()))
                .map_err(|e| fail(EXIT_ANALYSIS, format!("cannot write {}: {e}", path.display())))?;
            println!("{}", path.display());
        }
        Command::Plot(common) => {
            let config = common.load()?;
            let written = render_figures(&config, &common.out).map_err(|e: SvgError| fail(EXIT_ANALYSIS, e))?;
            for path in written {
                println!("{}", path.display());
            }
        }
        Command::Verify { common, seed } => {
            let config = common.load()?;
            let summary = run_verification(&config, seed).map_err(|e| fail(EXIT_ANALYSIS, e))?;
            for check in &summary.checks {
                println!("{check}");
            }
            if !summary.all_passed() {
                return Err(ExitCode::from(EXIT_VERIFY));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
