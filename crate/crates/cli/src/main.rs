use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fairspan_cli::args::Cli;
use fairspan_cli::commands::execute;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(output) => {
            for note in &output.notes {
                eprintln!("{note}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(fairspan_cli::EXIT_VALIDATION);
            }
            ExitCode::from(output.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
