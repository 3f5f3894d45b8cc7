use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lowering::cli::run(std::env::args_os()))
}
