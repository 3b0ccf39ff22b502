//! Binary entry point. All behavior lives in [`condsplit::cli`]; this
//! only parses arguments and maps errors to the exit-code contract
//! (0 success, 1 I/O failure, 2 malformed data).

use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = condsplit::cli::Cli::parse();
    match condsplit::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("condsplit: error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
