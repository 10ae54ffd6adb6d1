use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use graham_lab::{configure_threads, run, Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = configure_threads(cli.jobs).and_then(|()| run(&cli, &mut out));
    let flushed = out.flush();
    match result {
        Ok(Outcome::Success) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(Outcome::Success) => ExitCode::from(1),
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("graham-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
