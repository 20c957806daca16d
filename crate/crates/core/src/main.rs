use std::io;
use std::process::ExitCode;

use binomverify::cli::{self, Config};

fn main() -> ExitCode {
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(cli::EXIT_USAGE as u8);
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = cli::run(std::env::args_os(), &config, &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
