use clap::Parser;
use fracleib::cli::{main_with, Cli};

fn main() {
    std::process::exit(main_with(Cli::parse()));
}
