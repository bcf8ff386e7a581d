use std::process::ExitCode;

fn main() -> ExitCode {
    partsat_cli::main_with(std::env::args_os())
}
