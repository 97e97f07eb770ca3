use bellfield_cli::{config::SweepConfig, error::CliError, figures, sweep, validate};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

/// Bell-correlation sweeps for smeared field patches on static and
/// expanding backgrounds.
#[derive(Debug, Parser)]
#[command(name = "bellfield", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a parameter grid described by a JSON config file.
    Sweep {
        /// Path to the JSON sweep configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override a config key, e.g. --set fixed.delta=0.05 or
        /// --set axes.0.count=100 (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Reproduce a built-in figure: CSV dataset plus SVG plot(s).
    Figure {
        /// Figure id (one of: fig2L, fig2R, fig3, fig4, fig5, fig6, fig7,
        /// fig8, fig9, fig10).
        id: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the oracle cross-check suite and print its report.
    Validate {
        /// Seed for the sampling oracles.
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// Smaller grids and sample counts (seconds instead of minutes).
        #[arg(long)]
        fast: bool,
        /// Negative control: perturb one covariance so the sampling
        /// comparison must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn run(cli: Cli) -> bellfield_cli::Result<()> {
    match cli.command {
        Command::Sweep { config, set } => {
            let cfg = SweepConfig::from_file(&config, &set)?;
            let rows = sweep::execute(&cfg)?;
            let flagged = rows.iter().filter(|r| r.values.is_err()).count();
            println!(
                "wrote {} ({} rows, {} flagged)",
                cfg.output.path.display(),
                rows.len(),
                flagged
            );
            if cfg.output.plot {
                println!("wrote {}", cfg.output.path.with_extension("svg").display());
            }
            Ok(())
        }
        Command::Figure { id, out } => {
            for path in figures::reproduce(&id, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Validate {
            seed,
            fast,
            inject_fault,
        } => {
            let report = validate::run(&validate::Options {
                seed,
                fast,
                inject_fault,
            });
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Validation(
                    "oracle suite reported failures".into(),
                ))
            }
        }
    }
}

fn main() {
    // Exit codes: 0 success, 1 usage, 2 validation failure, 3 I/O.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
