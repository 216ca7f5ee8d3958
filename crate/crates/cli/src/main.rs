mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use commands::Outcome;

fn run(cli: Cli) -> Result<Outcome, fpn_core::Error> {
    match cli.command {
        Command::CheckPr { pattern } => commands::check_pr(&pattern),
        Command::Gen {
            p,
            n,
            r,
            seed,
            mode,
            output,
        } => commands::gen(p, n, r, seed, &mode, &output),
        Command::Density { pattern, colouring } => commands::density(&pattern, &colouring),
        Command::Arl {
            colouring,
            epsilon,
            max_codim,
        } => commands::arl_cmd(&colouring, &epsilon, max_codim),
        Command::Recolour {
            pattern,
            colouring,
            epsilon,
            seed,
            output,
            report,
        } => commands::recolour_cmd(&pattern, &colouring, &epsilon, seed, &output, report.as_ref()),
        Command::Verify {
            pattern,
            original,
            recoloured,
            epsilon,
        } => commands::verify(&pattern, &original, &recoloured, &epsilon),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::INPUT } else { commands::OK });
        }
    };
    match run(cli) {
        Ok(out) => match out.report.to_json() {
            Ok(text) => {
                // a closed pipe downstream is not our failure
                let _ = writeln!(std::io::stdout().lock(), "{text}");
                if let Some(note) = out.note {
                    eprintln!("{note}");
                }
                ExitCode::from(out.code)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(commands::INPUT)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
