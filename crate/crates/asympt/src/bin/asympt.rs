use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(asympt::cli::run() as u8)
}
