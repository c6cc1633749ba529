mod args;
mod commands;
mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use qwalk_core::WalkError;
use serde::{Deserialize, Serialize};

use args::{Cli, Command};
use format::fmt17;

/// Written next to every CSV as `<output>.manifest.json`.
#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    tool: String,
    version: String,
    threads: Option<usize>,
    output: Option<PathBuf>,
    wall_time_seconds: f64,
    command: Command,
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn output_of(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Simulate(a) => Some(&a.output),
        Command::Limit(a) => Some(&a.output),
        Command::Density(a) => a.output.as_ref(),
        Command::Game(a) => Some(&a.output),
        Command::Phase(a) => Some(&a.output),
        Command::StateSweep(a) => Some(&a.output),
        Command::Rerun(_) => None,
    }
}

fn set_output(command: &mut Command, path: PathBuf) {
    match command {
        Command::Simulate(a) => a.output = path,
        Command::Limit(a) => a.output = path,
        Command::Density(a) => a.output = Some(path),
        Command::Game(a) => a.output = path,
        Command::Phase(a) => a.output = path,
        Command::StateSweep(a) => a.output = path,
        Command::Rerun(_) => {}
    }
}

fn compute(command: &Command) -> Result<Option<String>> {
    let csv = match command {
        Command::Simulate(a) => commands::simulate(a)?,
        Command::Limit(a) => commands::limit(a)?,
        Command::Density(a) => {
            let out = commands::density(a)?;
            if let Some(m) = out.moment {
                println!("{}", fmt17(m));
            }
            return Ok(out.csv);
        }
        Command::Game(a) => commands::game(a)?,
        Command::Phase(a) => commands::phase(a)?,
        Command::StateSweep(a) => commands::state_sweep_csv(a)?,
        Command::Rerun(_) => bail!(args::ConfigError("a manifest cannot contain rerun".into())),
    };
    Ok(Some(csv))
}

fn execute(command: &Command, threads: Option<usize>) -> Result<()> {
    let start = Instant::now();
    let csv = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("building thread pool")?
            .install(|| compute(command))?,
        None => compute(command)?,
    };
    let (Some(csv), Some(output)) = (csv, output_of(command)) else {
        return Ok(());
    };
    std::fs::write(output, csv).with_context(|| format!("writing {}", output.display()))?;
    let manifest = Manifest {
        tool: "qwalk".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        threads,
        output: Some(output.clone()),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        command: command.clone(),
    };
    let path = manifest_path(output);
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if cli.threads == Some(0) {
        bail!(args::ConfigError("--threads must be at least 1".into()));
    }
    match cli.command {
        Command::Rerun(r) => {
            let text = std::fs::read_to_string(&r.manifest)
                .with_context(|| format!("reading {}", r.manifest.display()))?;
            let manifest: Manifest = serde_json::from_str(&text)
                .map_err(|e| args::ConfigError(format!("{}: {e}", r.manifest.display())))?;
            let mut command = manifest.command;
            if matches!(command, Command::Rerun(_)) {
                bail!(args::ConfigError("a manifest cannot contain rerun".into()));
            }
            if let Some(out) = r.output {
                set_output(&mut command, out);
            }
            execute(&command, cli.threads.or(manifest.threads))
        }
        command => execute(&command, cli.threads),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let invalid_angles = err.chain().any(|e| {
        matches!(
            e.downcast_ref::<WalkError>(),
            Some(WalkError::InvalidAngles { .. })
        )
    });
    if invalid_angles {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
