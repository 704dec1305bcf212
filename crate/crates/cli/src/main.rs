use std::process::ExitCode;

use clap::Parser;
use dblcat_cli::run::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports serialize"));
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.code)
}
