mod cli;
mod commands;
mod report;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Parser;
use cli::{Cli, Command, Format};
use report::{Report, Status};

fn run(cli: &Cli) -> Result<Report> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Sample { .. }) {
        bail!("invalid --format `csv`: only `sample` has a csv (histogram) output");
    }
    match &cli.command {
        Command::Metrics { input } => commands::metrics(input),
        Command::Extremal { n, stat } => commands::extremal(*n, *stat),
        Command::Construct { n, displacement } => commands::construct(*n, displacement),
        Command::Verify { max_n, allow_large } => verify::verify(*max_n, *allow_large),
        Command::Sample {
            n,
            trials,
            seed,
            epsilons,
        } => commands::sample(*n, *trials, *seed, epsilons),
        Command::Improve { input, stat } => commands::improve(input, *stat),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    if let Err(e) = report
        .write(cli.format, &mut out)
        .and_then(|_| Ok(out.flush()?))
    {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Failed => ExitCode::from(1),
    }
}
