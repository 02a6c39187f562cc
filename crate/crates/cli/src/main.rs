use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use msplect::{emit, identity_report, load, run, ConventionMode, Format, Options};

#[derive(Parser)]
#[command(name = "msplect", version, about = "Exact multisymplectic verification from workspace files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a workspace file.
    Run {
        file: PathBuf,
        /// Seed for tasks that draw random cases.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: Format,
        #[arg(long, default_value = "paper", value_parser = parse_mode)]
        convention: ConventionMode,
    },
    /// Check the exterior-calculus identities on random cases.
    CheckIdentities {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: Format,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<ConventionMode, String> {
    s.parse()
}

fn write(bytes: &[u8]) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).context("writing report")?;
    out.flush().context("writing report")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Run {
            file,
            seed,
            format,
            convention,
        } => {
            let src = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let model = load(&src).map_err(|d| anyhow::anyhow!("{}:{d}", file.display()))?;
            for w in &model.warnings {
                eprintln!("{}:{w}", file.display());
            }
            let report = run(&model, &Options { seed, mode: convention })?;
            write(&emit(&report, format))?;
            Ok(report.exit_code() as u8)
        }
        Command::CheckIdentities {
            dim,
            degree,
            cases,
            seed,
            format,
        } => {
            anyhow::ensure!((2..=6).contains(&dim), "--dim must be in 2..=6");
            anyhow::ensure!((1..=4).contains(&degree), "--degree must be in 1..=4");
            anyhow::ensure!(cases >= 1, "--cases must be positive");
            let report = identity_report(dim, degree, cases, seed);
            write(&emit(&report, format))?;
            Ok(report.exit_code() as u8)
        }
    }
}
