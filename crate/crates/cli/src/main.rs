use std::process::ExitCode;

fn main() -> ExitCode {
    gindex_cli::run()
}
