mod args;
mod commands;
mod render;

use std::io;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CmdResult, UsageError};

const DEFAULT_MAX_N: usize = 8;

fn max_n() -> Result<usize, UsageError> {
    match std::env::var("QCAT_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| UsageError(format!("QCAT_MAX_N: not a non-negative integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cap = max_n()?;
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| UsageError(format!("--jobs: {e}")))?;
    }
    match &cli.command {
        Command::Seq(a) => commands::seq(a, cap),
        Command::Enum(a) => commands::enumerate(a, cap),
        Command::Counterpart { eps } => commands::show_counterpart(eps),
        Command::Pset { eps, list } => commands::pset(eps, *list, cap),
        Command::Moment(a) => commands::moment(a, cap),
        Command::Verify(a) => commands::verify(a, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = out.write(cli.format, &mut io::stdout().lock()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
