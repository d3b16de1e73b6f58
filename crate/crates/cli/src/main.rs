use std::process::ExitCode;

use clap::Parser;

use biplab_cli::{render, run, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::VerifyStructure(a) => a.common.clone(),
        Command::VerifyTopology(a) => a.common.clone(),
        Command::MoveGraph(a) => a.common.clone(),
        Command::Bcfw(a) => a.common.clone(),
    };
    let started = std::time::Instant::now();
    let mut report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("biplab: {e}");
            return ExitCode::from(2);
        }
    };
    if common.timings {
        let mut timings = std::collections::BTreeMap::new();
        timings.insert("total".to_string(), started.elapsed().as_millis());
        report.timings_ms = Some(timings);
    }
    let rendered = render(&report, common.format);
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("biplab: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
