mod args;
mod commands;
mod output;
mod presets;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, OutputArgs};
use commands::Failure;
use output::{resolve_format, Table};

const THREADS_VAR: &str = "NLCS_THREADS";

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure {n} threads: {e}")))
}

fn emit(table: &Table, out: &OutputArgs) -> Result<(), Failure> {
    let format = resolve_format(out.format, out.out.as_deref());
    let bytes = table.render(format);
    match &out.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| Failure::Usage(format!("cannot write to stdout: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    match &cli.command {
        Command::State(c) => emit(&commands::state(c)?, &c.output),
        Command::Pdist(c) => emit(&commands::pdist(c)?, &c.output),
        Command::Qfunc(c) => emit(&commands::qfunc(c)?, &c.output),
        Command::Mandel(c) => emit(&commands::mandel(c)?, &c.output),
        Command::Waveguide(c) => emit(&commands::waveguide(c)?, &c.output),
        Command::Verify(c) if c.list => {
            for name in nlcs::verify::check_names() {
                println!("{name}");
            }
            Ok(())
        }
        Command::Verify(c) => {
            let (table, all_passed) = commands::verify(c)?;
            for row in &table.rows {
                if let [output::Cell::Text(name), output::Cell::Bool(ok), output::Cell::Text(detail)] =
                    row.as_slice()
                {
                    eprintln!("{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
                }
            }
            emit(&table, &c.output)?;
            if all_passed {
                Ok(())
            } else {
                Err(Failure::Numeric("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
