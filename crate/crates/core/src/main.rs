use std::io::Write;
use std::process::ExitCode;

use octo_core::cli;

fn main() -> ExitCode {
    let config = match cli::parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            if e.exit_code == cli::EXIT_OK {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            return ExitCode::from(e.exit_code as u8);
        }
    };
    let outcome = cli::run(&config);
    let _ = std::io::stdout().write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
