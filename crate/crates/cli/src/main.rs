use std::fs::File;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pmlab_cli::{exit_code, run, Cli, CliError, Format, RunRecord};

fn emit(cli: &Cli, rec: &RunRecord) -> Result<(), CliError> {
    let text = match cli.format() {
        Format::Csv => rec.to_csv_string(),
        Format::Json => rec.to_json_string(),
    };
    let io = |e: std::io::Error| CliError::Record(e.into());
    match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())).map_err(io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("pmlab: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = run(&cli.command).and_then(|(mut rec, ok)| {
        rec.wall_time_s = start.elapsed().as_secs_f64();
        rec.timestamp = chrono::Utc::now().to_rfc3339();
        emit(&cli, &rec)?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("pmlab: verification rows failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("pmlab: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
