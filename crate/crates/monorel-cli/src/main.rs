//! Binary entry point: parse arguments, run the command, print the report.
//!
//! Exit codes: 0 success (including `--help`/`--version`), 1 validation or
//! computation error, 2 failed `--assert`, 64 usage error.

use clap::error::ErrorKind;
use clap::Parser;

use monorel_cli::app::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            // Help and version go to stdout, usage errors to stderr.
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(out.exit_code);
        }
        Err(e) => {
            eprintln!("monorel: {e}");
            std::process::exit(1);
        }
    }
}
