use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gkz::cli::{self, Command, Format, Overrides};

#[derive(Parser)]
#[command(version, about = "Logarithmic series solutions of codimension-one GKZ systems")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Relation, volume, singularity type and nonresonance.
    Analyze(Common),
    /// Fake exponents, E' with multiplicities, and the multiplicity tally.
    Exponents(Common),
    /// Log solutions for every exponent, optionally certified.
    Solve(Common),
    /// Build every solution and certify it against the operators.
    Verify(Common),
    /// Singularity type and maximal unipotent monodromy.
    Classify(Common),
}

#[derive(Parser)]
struct Common {
    /// Problem file (.toml or .json).
    #[arg(long)]
    input: PathBuf,
    /// Window of x0 powers, LO:HI.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Shift of beta, "c1,...,cd".
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Integer lift of the shift, "l1,...,ln".
    #[arg(long, allow_hyphen_values = true)]
    lift: Option<String>,
    /// Build only this log degree.
    #[arg(long)]
    r: Option<usize>,
    /// Skip operator certification
    #[arg(long)]
    no_verify: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

fn overrides(c: &Common) -> gkz::Result<Overrides> {
    Ok(Overrides {
        window: c.window.as_deref().map(cli::parse_window).transpose()?,
        u: c.u.as_deref().map(|s| cli::parse_int_list("--u", s)).transpose()?,
        lift: c.lift.as_deref().map(|s| cli::parse_int_list("--lift", s)).transpose()?,
        r: c.r,
        no_verify: c.no_verify,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, common) = match &args.command {
        Cmd::Analyze(c) => (Command::Analyze, c),
        Cmd::Exponents(c) => (Command::Exponents, c),
        Cmd::Solve(c) => (Command::Solve, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Classify(c) => (Command::Classify, c),
    };
    let format = match common.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    let outcome = match overrides(common) {
        Ok(o) => cli::run_file(command, &common.input, &o),
        Err(e) => cli::error_report(&e),
    };
    let text = outcome.render(format);
    // a closed pipe downstream is not an error of ours
    let _ = if outcome.report.get("error").is_some() {
        writeln!(std::io::stderr(), "{text}")
    } else {
        writeln!(std::io::stdout(), "{text}")
    };
    ExitCode::from(outcome.exit_code as u8)
}
