use std::process::ExitCode;

fn main() -> ExitCode {
    matroid_exchange::cli::main()
}
