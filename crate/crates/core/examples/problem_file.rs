//! Driving the library from a problem file, as the `gkz` binary does.
//!
//! `cargo run --example problem_file -- problems/gauss.json`

use std::path::PathBuf;

use gkz::cli::{run_file, Command, Format, Overrides};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/problems/golden.toml")));
    for command in [Command::Analyze, Command::Exponents, Command::Classify] {
        let outcome = run_file(command, &path, &Overrides::default());
        println!("{command:?} (exit {}):\n{}", outcome.exit_code, outcome.render(Format::Text));
    }
}
