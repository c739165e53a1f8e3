mod args;
mod commands;
mod report;

use args::{Cli, Command, RunConfig, UsageError};
use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let (common, f): (_, fn(&RunConfig) -> Result<report::Report, UsageError>) = match &cli.command {
        Command::Eval(c) => (c, commands::eval_cmd),
        Command::SeriesCoeffs(c) => (c, commands::series_coeffs_cmd),
        Command::Asymptotic(c) => (c, commands::asymptotic_cmd),
        Command::Derivative(c) => (c, commands::derivative_cmd),
        Command::Projection(c) => (c, commands::projection_cmd),
        Command::Verify(c) => (c, commands::verify_cmd),
        Command::Certify(c) => (c, commands::certify_cmd),
    };
    let report = match RunConfig::from_args(common).and_then(|cfg| f(&cfg).map(|r| (cfg, r))) {
        Ok((cfg, report)) => {
            match &cfg.out {
                Some(path) => {
                    let mut file = std::fs::File::create(path)?;
                    report.write(cfg.format, &mut file)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    report.write(cfg.format, &mut lock)?;
                    lock.flush()?;
                }
            }
            if cfg.format == args::Format::Csv {
                for f in &report.failures {
                    eprintln!("failure: {f}");
                }
            }
            report
        }
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    Ok(if report.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
