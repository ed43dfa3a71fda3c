mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Check(a) => ("check", &a.common),
        Command::Tables(a) => ("tables", &a.common),
        Command::Bounds(a) => ("bounds", &a.common),
    };
    let run = || -> config::Usage<commands::Outcome> {
        let cfg = config::load_config(common.config.as_deref(), name)?;
        let outcome = match &cli.command {
            Command::Check(a) => commands::check(a, &cfg)?,
            Command::Tables(a) => commands::tables(a, &cfg)?,
            Command::Bounds(a) => commands::bounds(a, &cfg)?,
        };
        let rendered = outcome.report.render();
        if let Some(path) = config::out_path(common, &cfg) {
            std::fs::write(&path, &rendered).map_err(|e| config::UsageError(format!("{}: {e}", path.display())))?;
        }
        if common.json {
            print!("{rendered}");
        } else {
            for line in &outcome.summary {
                println!("{line}");
            }
        }
        Ok(outcome)
    };
    match run() {
        Ok(outcome) if outcome.report.all_healthy() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
