mod args;
mod commands;
mod range;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{expand_config, Cli, Command};
use commands::{Failure, EXIT_CONFIG, EXIT_VERIFY};
use table::{Format, Table};

fn emit(table: &Table, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    let result = match out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            table.write(format, &mut w)?;
            w.flush()
        }),
        None => {
            let mut w = io::stdout().lock();
            table.write(format, &mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| Failure::config(format!("cannot write output: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (table, output) = match &cli.command {
        Command::PhaseShift(a) => (commands::phase_shifts(a)?, &a.output),
        Command::CrossSection(a) => (commands::cross_section(a)?, &a.output),
        Command::Bound(a) => (commands::bound(a)?, &a.output),
        Command::Wavefunction(a) => (commands::wavefunction(a)?, &a.output),
        Command::Verify(a) => {
            let (table, failed) = commands::verify(a);
            emit(&table, a.format, a.out.as_ref())?;
            if failed == 0 {
                return Ok(());
            }
            let message = format!("{failed} of {} checks failed", table.rows.len());
            return Err(Failure { code: EXIT_VERIFY, message });
        }
    };
    emit(&table, output.format, output.out.as_ref())
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("miescat: config error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    // clap exits with 2 on usage errors and 0 for --help
    let cli = Cli::parse_from(argv);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("miescat: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
