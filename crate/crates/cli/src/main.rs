use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prym_cli::commands::{self, Failure, Outcome};
use prym_core::criteria::CollisionTest;
use prym_core::enumerate::{Symmetry, DEFAULT_SEARCH_BOUND};

/// Invariants of abelian and metabelian covers of curves and the injectivity
/// criteria for their Prym maps.
///
/// Exit codes: 0 success, 1 parse or validation error, 2 inadmissible spec,
/// 3 search or size bound exceeded, 4 a consistency check failed.
#[derive(Parser)]
#[command(name = "prym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, Prym dimension, polarization type and eigenspace table.
    Invariants { file: PathBuf },
    /// Sufficient conditions for injectivity of the Prym map differential.
    Check { file: PathBuf },
    /// Every admissible type for a group, genus and branch count, one JSON record per line.
    Enumerate {
        /// Cyclic factor orders, e.g. `2,2`.
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        #[arg(long)]
        genus: u64,
        /// Number of branch points.
        #[arg(long)]
        branch: usize,
        #[arg(long, value_enum, default_value_t = SymArg::None)]
        sym: SymArg,
        /// Largest allowed |G|^r.
        #[arg(long, env = "PRYM_SEARCH_BOUND", default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u128,
    },
    /// Collision set of the Abel–Prym map for the given group.
    AbelPrym {
        /// Cyclic factor orders, e.g. `2,2`.
        orders: String,
        #[arg(long, value_enum, default_value_t = TestArg::Signed)]
        test: TestArg,
    },
    /// Runs every internal consistency identity on a spec.
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymArg {
    None,
    PermutePoints,
    PermuteAndAut,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestArg {
    Strict,
    Signed,
}

fn read(file: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| Failure {
        code: commands::EXIT_PARSE,
        record: None,
        message: format!("cannot read {}: {e}", file.display()),
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Invariants { file } => commands::invariants(&read(&file)?),
        Command::Check { file } => commands::check(&read(&file)?),
        Command::Verify { file } => commands::verify(&read(&file)?),
        Command::Enumerate { group, genus, branch, sym, bound } => {
            let symmetry = match sym {
                SymArg::None => Symmetry::None,
                SymArg::PermutePoints => Symmetry::PermutePoints,
                SymArg::PermuteAndAut => Symmetry::PermuteAndAut,
            };
            commands::enumerate(&group, genus, branch, symmetry, bound)
        }
        Command::AbelPrym { orders, test } => {
            let test = match test {
                TestArg::Strict => CollisionTest::Strict,
                TestArg::Signed => CollisionTest::Signed,
            };
            commands::abel_prym(&orders, test)
        }
    }
}

fn emit(lines: &[String]) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        // a closed pipe is not worth a panic
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { commands::EXIT_PARSE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(lines) => {
            emit(&lines);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(record) = &failure.record {
                emit(std::slice::from_ref(record));
            }
            eprintln!("prym: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
