use clap::error::ErrorKind;
use clap::Parser;

use symsel::cli::{self, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(2);
    }
}
