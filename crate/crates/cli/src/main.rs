//! `sl2fusion`: characters of sl2 fusion products from the command line.

mod args;
mod golden;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = std::time::Instant::now();
    let result = report::execute(&cli.command);
    let elapsed = start.elapsed().as_millis();
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            eprintln!("{{\"elapsed_ms\":{elapsed}}}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
