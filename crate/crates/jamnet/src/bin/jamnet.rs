//! Experiment runner CLI.
//!
//! Usage:
//!   jamnet run <spec-file|preset-name> [--out PATH] [--format csv|jsonl]
//!              [--trials N] [--seed S] [--engine analytic|mc|both]
//!              [--set section.key=value ...]
//!
//! Exit codes: 0 all rows ok, 1 invalid spec or usage, 2 partial failure.
//! The JAMNET_THREADS environment variable caps the worker count.

use std::path::PathBuf;
use std::process::ExitCode;

use jamnet::cli::{
    emit, emit_to_path, preset, preset_names, run_experiment, ExperimentSpec, OutputFormat,
};

struct Args {
    source: String,
    out: Option<PathBuf>,
    format: OutputFormat,
    overrides: Vec<(String, String)>,
}

fn usage() -> &'static str {
    "usage: jamnet run <spec-file|preset-name> [--out PATH] [--format csv|jsonl]\n\
     \x20            [--trials N] [--seed S] [--engine analytic|mc|both] [--set k=v ...]\n\
     \n\
     bundled presets:\n"
}

fn parse_args(mut argv: Vec<String>) -> Result<Args, String> {
    if argv.is_empty() || argv[0] != "run" {
        return Err("expected the `run` subcommand".into());
    }
    argv.remove(0);
    if argv.is_empty() {
        return Err("missing <spec-file|preset-name>".into());
    }
    let source = argv.remove(0);
    let mut out = None;
    let mut format = OutputFormat::Csv;
    let mut overrides = Vec::new();

    let mut it = argv.into_iter();
    while let Some(flag) = it.next() {
        let mut take = |name: &str| {
            it.next()
                .ok_or_else(|| format!("{name} requires a value"))
        };
        match flag.as_str() {
            "--out" => out = Some(PathBuf::from(take("--out")?)),
            "--format" => {
                format = match take("--format")?.as_str() {
                    "csv" => OutputFormat::Csv,
                    "jsonl" | "json-lines" => OutputFormat::JsonLines,
                    other => return Err(format!("unknown format `{other}`")),
                }
            }
            "--trials" => overrides.push(("experiment.trials".into(), take("--trials")?)),
            "--seed" => overrides.push(("experiment.seed".into(), take("--seed")?)),
            "--engine" => overrides.push(("experiment.engines".into(), take("--engine")?)),
            "--set" => {
                let kv = take("--set")?;
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| format!("--set expects section.key=value, got `{kv}`"))?;
                overrides.push((k.trim().to_string(), v.trim().to_string()));
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(Args {
        source,
        out,
        format,
        overrides,
    })
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("JAMNET_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(argv) {
        Ok(a) => a,
        Err(msg) => {
            eprint!("error: {msg}\n\n{}", usage());
            for name in preset_names() {
                eprintln!("  {name}");
            }
            return ExitCode::from(1);
        }
    };

    let text = match preset(&args.source) {
        Some(t) => t.to_string(),
        None => match std::fs::read_to_string(&args.source) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: `{}` is neither a preset nor a readable file: {e}", args.source);
                return ExitCode::from(1);
            }
        },
    };

    let spec = match ExperimentSpec::from_text(&text, &args.overrides) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let outcome = match run_experiment(&spec) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let write_result = match &args.out {
        Some(path) => emit_to_path(&outcome.rows, args.format, path).map_err(|e| e.to_string()),
        None => {
            let stdout = std::io::stdout();
            emit(&outcome.rows, args.format, &mut stdout.lock()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = write_result {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }

    if outcome.failed_rows > 0 {
        eprintln!("{} row(s) failed; see the flags column", outcome.failed_rows);
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
