use std::process::ExitCode;

fn main() -> ExitCode {
    fockent::cli::main_with_args(std::env::args_os())
}
