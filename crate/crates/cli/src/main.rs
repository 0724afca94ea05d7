use std::io::Write;
use std::process::ExitCode;

use bellkit_cli::error::exit;
use bellkit_cli::Cli;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let env = |key: &str| std::env::var(key).ok();
    match bellkit_cli::run(&cli, &env) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(exit::USAGE);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("bellkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
