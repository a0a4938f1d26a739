use std::process::ExitCode;

fn main() -> ExitCode {
    roughtol::cli::main()
}
