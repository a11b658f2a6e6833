use casimir_graphene_cli::{build_request, run, Cli, RunError};
use clap::Parser;

// Exit codes: 0 success, 1 usage/validation, 2 numerical failure,
// 3 verification failure.
fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful exits; everything else is usage
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let request = match build_request(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    match run(&request) {
        Ok(out) => print!("{out}"),
        Err(e @ RunError::Numerical(_)) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        Err(e @ RunError::Verification(_)) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
