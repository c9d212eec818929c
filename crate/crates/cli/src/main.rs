use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use parahoric_cli::{run, seed_check::seed_check, CliError, Job, Options};

/// Parahoric conformal-block combinatorics from a JSON job file.
#[derive(Debug, Parser)]
#[command(name = "parahoric", version)]
struct Args {
    /// Job file; reads standard input when absent or `-`.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Print the report as JSON instead of text.
    #[arg(long)]
    json: bool,

    /// Directory for cached fusion tables.
    #[arg(long, value_name = "DIR", conflicts_with = "no_cache")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write cached fusion tables.
    #[arg(long)]
    no_cache: bool,

    /// Run the built-in oracle suite and exit.
    #[arg(long)]
    seed_check: bool,
}

fn read_job(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|source| CliError::Read {
                path: p.clone(),
                source,
            })
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Read {
                    path: PathBuf::from("<stdin>"),
                    source,
                })?;
            Ok(text)
        }
    }
}

fn execute(args: &Args) -> Result<String, CliError> {
    let job = Job::parse(&read_job(args.input.as_ref())?)?;
    let cache_dir = if args.no_cache {
        None
    } else {
        args.cache_dir
            .clone()
            .or_else(|| dirs::cache_dir().map(|d| d.join("parahoric")))
    };
    let report = run(&job, &Options { cache_dir })?;
    Ok(if args.json {
        report.to_json()
    } else {
        report.to_human()
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = if args.seed_check {
        seed_check(&mut io::stdout().lock()).map(|()| String::new())
    } else {
        execute(&args)
    };
    match result {
        Ok(text) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
