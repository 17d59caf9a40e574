use std::process::exit;

use clap::Parser;

use segchi::cli::{run, Cli, EXIT_ERROR};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            exit(EXIT_ERROR);
        }
    }
}
