use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use naads_cli::tasks::budget_cap_from_env;
use naads_cli::{check, rerun, run_scenario_file, CliError, CliResult, FamilySpec, RunOptions, RunOutcome, EXIT_OK, EXIT_USAGE};

/// Finite-scale checks of non-autonomous systems on the interval and circle.
#[derive(Parser)]
#[command(name = "naads", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Leave `generated_unix` out of reports so reruns are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
    /// Seed for random ball sampling (default sampling is low-discrepancy).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Directory for relative output paths (default: the scenario's).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run one task on a corpus family and print the report.
    Check {
        family: String,
        task: String,
        /// Task parameter as `key=value`; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Expected verdict; a mismatch exits with status 1.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Corpus of built-in families.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Re-run a saved report from its parameter record.
    Rerun {
        report: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// List family names with a one-line description.
    List,
}

fn options(common: &Common, out_dir: Option<PathBuf>) -> CliResult<RunOptions> {
    Ok(RunOptions {
        timestamp: !common.no_timestamp,
        seed: common.seed,
        out_dir,
        budget_cap: budget_cap_from_env()?,
    })
}

fn key_values(items: &[String]) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("`--param {item}` is not key=value")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("parameter `{k}` given twice")));
        }
    }
    Ok(out)
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    let outcome: RunOutcome = match cli.command {
        Command::Run { scenario, common, out_dir } => run_scenario_file(&scenario, &options(&common, out_dir)?)?,
        Command::Check { family, task, params, expect, common } => check(
            &FamilySpec::Corpus(family),
            &task,
            key_values(&params)?,
            expect.as_deref(),
            &options(&common, None)?,
        )?,
        Command::Corpus { command: CorpusCommand::List } => {
            for (name, summary) in naads_core::list_corpus() {
                println!("{name}\t{summary}");
            }
            return Ok(EXIT_OK);
        }
        Command::Rerun { report, common } => {
            let text = std::fs::read_to_string(&report).map_err(|e| CliError::Io { path: report, source: e })?;
            rerun(&text, &options(&common, None)?)?
        }
    };
    print!("{}", outcome.text());
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("naads: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
