mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use iexg_core::docs::{error_doc, to_json};

use args::{Cli, InvariantsCmd, Verb};
use run::{run, write_file, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // the report table always goes to stdout, -o holds its document
            let to_file = !matches!(cli.verb, Verb::Invariants(InvariantsCmd::Report));
            match (&cli.opts.output, to_file) {
                (Some(path), true) => {
                    if let Err(f) = write_file(path, &out.stdout) {
                        return fail(f);
                    }
                }
                _ => print_line(&out.stdout),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => fail(f),
    }
}

fn print_line(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn fail(f: Failure) -> ExitCode {
    match f {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Failure::Domain(e) => {
            print_line(&to_json(&error_doc(&e)).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(1)
        }
    }
}
