use clap::Parser;

use contact_angle::cli::{self, Cli};

fn main() {
    // clap exits with 2 on usage errors and 0 for --help/--version.
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    std::process::exit(cli::run(cli));
}
