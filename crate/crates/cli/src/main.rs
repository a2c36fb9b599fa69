//! `hikita`: command-line front end for the orbit, coset, flatness and
//! Hikita-comparison computations.
//!
//! Exit codes: 0 when a verdict was computed (negative answers included),
//! 2 for usage and parse errors, 1 for internal failures.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use commands::{run_argv, Failure};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run_argv(&argv) {
        Ok(out) => {
            // A closed pipe downstream is not a failure of the computation.
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Clap(e)) => {
            // Help and version requests are not errors.
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
