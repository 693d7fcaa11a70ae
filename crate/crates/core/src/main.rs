use std::process::exit;

use clap::error::ErrorKind;
use clap::Parser;

use idealzeta::cli::{self, Cli, EXIT_INPUT_ERROR};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let outcome = cli::run(&cli);
    println!("{}", outcome.output);
    exit(outcome.exit_code);
}
